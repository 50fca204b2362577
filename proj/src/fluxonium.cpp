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

#include "fluxcp/fluxonium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace fluxcp {

void FluxoniumSpec::validate() const {
  if (!(e_c > 0.0)) throw InvalidInput("e_c must be > 0");
  if (!(e_l > 0.0)) throw InvalidInput("e_l must be > 0");
  if (!(e_j >= 0.0)) throw InvalidInput("e_j must be >= 0");
  if (!std::isfinite(phi_ext)) throw InvalidInput("phi_ext must be finite");
}

namespace {

struct RawSpectrum {
  RVec energies;
  CMat charge;
};

RawSpectrum solve(const FluxoniumSpec& s, int n_levels, int dim) {
  // cos(phi - phi_ext) is built in a basis twice as large and then
  // truncated, so the retained block is free of edge artefacts.
  const int big = 2 * dim;
  const double phi_zpf = std::pow(8.0 * s.e_c / s.e_l, 0.25);
  RMat phi = RMat::Zero(big, big);
  for (int m = 1; m < big; ++m) {
    phi(m - 1, m) = phi(m, m - 1) = phi_zpf / std::sqrt(2.0) * std::sqrt(double(m));
  }
  Eigen::SelfAdjointEigenSolver<RMat> pes(phi);
  RVec c = (pes.eigenvalues().array() - s.phi_ext).cos();
  RMat cosm = pes.eigenvectors() * c.asDiagonal() * pes.eigenvectors().transpose();

  const double w0 = std::sqrt(8.0 * s.e_c * s.e_l);
  RMat h = -s.e_j * cosm.topLeftCorner(dim, dim);
  for (int m = 0; m < dim; ++m) h(m, m) += w0 * (m + 0.5);

  Eigen::SelfAdjointEigenSolver<RMat> es(h);
  RMat vec = es.eigenvectors().leftCols(n_levels);
  for (int k = 0; k < n_levels; ++k) {
    Eigen::Index arg;
    vec.col(k).cwiseAbs().maxCoeff(&arg);
    if (vec(arg, k) < 0) vec.col(k) = -vec.col(k);
  }

  // n = i (a^+ - a) / (sqrt2 phi_zpf): purely imaginary, antisymmetric.
  RMat nim = RMat::Zero(dim, dim);
  for (int m = 1; m < dim; ++m) {
    const double v = std::sqrt(double(m)) / (std::sqrt(2.0) * phi_zpf);
    nim(m, m - 1) = v;
    nim(m - 1, m) = -v;
  }
  RawSpectrum out;
  out.energies = es.eigenvalues().head(n_levels).array() - es.eigenvalues()(0);
  // Antisymmetrize so |n_kl| = |n_lk| holds exactly, not just to round-off.
  const RMat m = vec.transpose() * nim * vec;
  out.charge = kI * (0.5 * (m - m.transpose())).cast<cplx>();
  return out;
}

double spectrum_change(const RawSpectrum& a, const RawSpectrum& b) {
  double d = (a.energies - b.energies).cwiseAbs().maxCoeff();
  d = std::max(d, (a.charge.cwiseAbs() - b.charge.cwiseAbs()).cwiseAbs().maxCoeff());
  return d;
}

}  // namespace

QubitEigenSystem diagonalize(const FluxoniumSpec& spec, int n_levels, int basis_dim,
                             int max_basis_dim) {
  spec.validate();
  if (n_levels < 1) throw InvalidInput("n_levels must be >= 1");
  if (basis_dim < 20) throw InvalidInput("basis_dim must be >= 20");
  if (n_levels > basis_dim) throw InvalidInput("n_levels must be <= basis_dim");

  int dim = basis_dim;
  RawSpectrum cur = solve(spec, n_levels, dim);
  double change = 0.0;
  while (true) {
    RawSpectrum next = solve(spec, n_levels, dim + 20);
    change = spectrum_change(cur, next);
    if (change < kSpectrumTolerance) break;
    if (dim + 20 > max_basis_dim) {
      std::ostringstream msg;
      msg << "fluxonium spectrum not converged at basis_dim " << dim
          << " (residual change " << change << ")";
      throw NumericError(msg.str());
    }
    dim += 20;
    cur = std::move(next);
  }

  QubitEigenSystem out;
  out.energies = cur.energies;
  out.charge = cur.charge;
  out.n_levels = n_levels;
  out.basis_dim = dim;
  out.convergence = change;
  return out;
}

double transition_frequency(const QubitEigenSystem& eig, int k, int l) {
  if (k < 0 || l >= eig.n_levels || !(k < l))
    throw InvalidInput("transition_frequency requires 0 <= k < l < n_levels");
  return eig.energies(l) - eig.energies(k);
}

double charge_matrix_element(const QubitEigenSystem& eig, int k, int l) {
  if (k < 0 || l < 0 || k >= eig.n_levels || l >= eig.n_levels)
    throw InvalidInput("charge_matrix_element index out of range");
  return std::abs(eig.charge(k, l));
}

}  // namespace fluxcp
