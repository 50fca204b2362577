// Copyright 2026 The fluxcp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fluxcp/coupled.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace fluxcp {

void CoupledSpec::validate() const {
  qubit_a.validate();
  qubit_b.validate();
  if (!std::isfinite(j_c)) throw InvalidInput("j_c must be finite");
  if (levels_per_qubit < 4) throw InvalidInput("levels_per_qubit must be >= 4");
}

int LabeledSpectrum::index(Label l) const {
  if (l.a < 0 || l.b < 0 || l.a >= levels || l.b >= levels)
    throw InvalidInput("label |" + l.str() + "> outside the truncated space");
  return index_by_label[l.a * levels + l.b];
}

CMat LabeledSpectrum::drive_operator(double eps_a, double eps_b) const {
  return eps_a * charge_a + eps_b * charge_b;
}

std::vector<int> LabeledSpectrum::computational() const {
  return {index({0, 0}), index({0, 1}), index({1, 0}), index({1, 1})};
}

LabeledSpectrum assemble_and_label(const CoupledSpec& spec) {
  spec.validate();
  const int L = spec.levels_per_qubit;
  const int D = L * L;
  LabeledSpectrum out;
  out.levels = L;
  out.qubit_a = diagonalize(spec.qubit_a, L, spec.basis_dim);
  out.qubit_b = diagonalize(spec.qubit_b, L, spec.basis_dim);

  // Both charge operators are i * (real antisymmetric), so J n_A (x) n_B is
  // real and the coupled problem stays real symmetric.
  const RMat na = out.qubit_a.charge.imag();
  const RMat nb = out.qubit_b.charge.imag();
  RMat h = RMat::Zero(D, D);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      h(i * L + j, i * L + j) = out.qubit_a.energies(i) + out.qubit_b.energies(j);
      for (int k = 0; k < L; ++k)
        for (int l = 0; l < L; ++l) h(i * L + j, k * L + l) -= spec.j_c * na(i, k) * nb(j, l);
    }

  Eigen::SelfAdjointEigenSolver<RMat> es(h);
  out.energies = es.eigenvalues().array() - es.eigenvalues()(0);
  out.vectors = es.eigenvectors();

  out.labels.resize(D);
  out.overlap_quality.resize(D);
  out.index_by_label.assign(D, -1);
  std::ostringstream problems;
  for (int n = 0; n < D; ++n) {
    Eigen::Index arg;
    const double q = out.vectors.col(n).cwiseAbs2().maxCoeff(&arg);
    if (out.vectors(arg, n) < 0) out.vectors.col(n) = -out.vectors.col(n);
    const Label lab{int(arg) / L, int(arg) % L};
    out.labels[n] = lab;
    out.overlap_quality[n] = q;
    if (q <= 0.5) problems << " eigenstate " << n << " best |" << lab.str() << "> overlap " << q << ";";
    int& slot = out.index_by_label[arg];
    if (slot >= 0)
      problems << " |" << lab.str() << "> claimed by eigenstates " << slot << " (overlap "
               << out.overlap_quality[slot] << ") and " << n << " (overlap " << q << ");";
    else
      slot = n;
  }
  const std::string p = problems.str();
  if (!p.empty()) throw LabelingError("ambiguous labeling:" + p);

  RMat na_full = RMat::Zero(D, D), nb_full = RMat::Zero(D, D);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j)
      for (int k = 0; k < L; ++k) {
        na_full(i * L + j, k * L + j) = na(i, k);
        nb_full(j * L + i, j * L + k) = nb(i, k);
      }
  auto rotate = [&](const RMat& n) {
    const RMat m = out.vectors.transpose() * n * out.vectors;
    return CMat(kI * (0.5 * (m - m.transpose())).cast<cplx>());
  };
  out.charge_a = rotate(na_full);
  out.charge_b = rotate(nb_full);
  return out;
}

double static_zz(const LabeledSpectrum& s) {
  return s.energy({1, 1}) + s.energy({0, 0}) - s.energy({1, 0}) - s.energy({0, 1});
}

double transition_frequency(const LabeledSpectrum& s, Transition t) {
  return s.energy(t.to) - s.energy(t.from);
}

double doublet_splitting(const LabeledSpectrum& s, Transition first, Transition second) {
  return transition_frequency(s, second) - transition_frequency(s, first);
}

double rabi_frequency(const LabeledSpectrum& s, double eps_a, double eps_b, Label from,
                      Label to) {
  const int i = s.index(from), j = s.index(to);
  return std::abs(eps_a * s.charge_a(i, j) + eps_b * s.charge_b(i, j));
}

}  // namespace fluxcp
