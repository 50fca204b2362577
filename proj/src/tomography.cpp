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


#include "fluxcp/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace fluxcp {

namespace {

constexpr PulseOp kId{'X', 0.0};
constexpr PulseOp kXpi{'X', kPi};
constexpr PulseOp kX90{'X', kPi / 2};
constexpr PulseOp kXm90{'X', -kPi / 2};
constexpr PulseOp kY90{'Y', kPi / 2};
constexpr PulseOp kYm90{'Y', -kPi / 2};

std::string angle_token(double angle) {
  const double r = angle / kPi;
  std::string sign = r < 0 ? "-" : "";
  const double m = std::abs(r);
  if (std::abs(m - 1.0) < 1e-12) return sign + "pi";
  if (std::abs(m - 0.5) < 1e-12) return sign + "pi/2";
  std::ostringstream s;
  s << angle;
  return s.str();
}

CMat single(const PulseOp& p) {
  return p.angle == 0.0 ? CMat(CMat::Identity(2, 2)) : rotation(p.axis, p.angle);
}

}  // namespace

std::string pulse_token(const PulseOp& p) {
  if (p.angle == 0.0) return "I";
  return std::string(1, p.axis) + angle_token(p.angle);
}

std::string TwoQubitPulse::label() const { return pulse_token(a) + " " + pulse_token(b); }

CMat TwoQubitPulse::unitary() const { return kron(single(a), single(b)); }

const std::vector<TwoQubitPulse>& tomography_pulses() {
  static const std::vector<TwoQubitPulse> table = [] {
    const PulseOp set[6] = {kId, kXpi, kX90, kXm90, kY90, kYm90};
    std::vector<TwoQubitPulse> t;
    for (const PulseOp& b : set)
      for (const PulseOp& a : set) t.push_back({a, b});
    return t;
  }();
  return table;
}

const std::vector<TwoQubitPulse>& preparation_pulses() {
  static const std::vector<TwoQubitPulse> table = {
      {kId, kId},    {kId, kX90},    {kId, kY90},    {kId, kXm90},
      {kXpi, kId},   {kXpi, kXpi},   {kXpi, kY90},   {kXpi, kXm90},
      {kY90, kId},   {kY90, kXpi},   {kY90, kY90},   {kY90, kXm90},
      {kXm90, kId},  {kXm90, kXpi},  {kXm90, kY90},  {kXm90, kXm90}};
  return table;
}

const std::vector<TwoQubitPulse>& calibration_pulses() {
  static const std::vector<TwoQubitPulse> table = {
      {kId, kId}, {kId, kXpi}, {kXpi, kId}, {kXpi, kXpi}};
  return table;
}

int tomography_index(const std::string& label) {
  const auto& t = tomography_pulses();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].label() == label) return int(i);
  return -1;
}

CMat MeasurementOperator::matrix() const {
  const CMat id = CMat::Identity(2, 2), z = pauli('Z');
  return ii * kron(id, id) + iz * kron(id, z) + zi * kron(z, id) + zz * kron(z, z);
}

cplx predict_signal(const MeasurementOperator& op, const CMat& rho, const TwoQubitPulse& p) {
  const CMat u = p.unitary();
  return (op.matrix() * u * rho * u.adjoint()).trace();
}

MeasurementOperator calibrate_measurement_operator(const std::array<cplx, 4>& s,
                                                   const CMat& rho_init) {
  if (rho_init.rows() != 4 || rho_init.cols() != 4) throw InvalidInput("initial state must be 4 x 4");
  const CMat id = CMat::Identity(2, 2), z = pauli('Z');
  const double zb = (kron(id, z) * rho_init).trace().real();
  const double za = (kron(z, id) * rho_init).trace().real();
  const double zab = (kron(z, z) * rho_init).trace().real();
  if (std::abs(za) < 1e-9 || std::abs(zb) < 1e-9 || std::abs(zab) < 1e-9)
    throw NumericError("measurement calibration is singular: <ZI>, <IZ> or <ZZ> of the initial state vanishes");
  // Xpi on a qubit flips the sign of its Z expectation.
  RMat a(4, 4);
  a << 1, zb, za, zab,
       1, -zb, za, -zab,
       1, zb, -za, -zab,
       1, -zb, -za, zab;
  CVec rhs(4);
  for (int i = 0; i < 4; ++i) rhs(i) = s[i];
  const CVec beta = a.cast<cplx>().fullPivLu().solve(rhs);
  return {beta(0), beta(1), beta(2), beta(3)};
}

CMat rho_from_cholesky(const RVec& t) {
  if (t.size() != 16) throw InvalidInput("Cholesky parametrization needs 16 reals");
  CMat tm = CMat::Zero(4, 4);
  for (int i = 0; i < 4; ++i) tm(i, i) = t(i);
  tm(1, 0) = cplx(t(4), t(5));
  tm(2, 1) = cplx(t(6), t(7));
  tm(3, 2) = cplx(t(8), t(9));
  tm(2, 0) = cplx(t(10), t(11));
  tm(3, 1) = cplx(t(12), t(13));
  tm(3, 0) = cplx(t(14), t(15));
  const CMat rho = tm.adjoint() * tm;
  const double tr = rho.trace().real();
  if (!(tr > 0.0)) throw NumericError("Cholesky parameters give a zero matrix");
  return rho / tr;
}

RVec cholesky_from_rho(const CMat& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) throw InvalidInput("rho must be 4 x 4");
  // J rho J = L L^+ (J the exchange matrix) gives rho = T^+ T with T = J L^+ J lower.
  const CMat herm = 0.5 * (rho + rho.adjoint()) + 1e-9 * CMat::Identity(4, 4);
  const CMat flipped = herm.colwise().reverse().rowwise().reverse();
  Eigen::LLT<CMat> llt(flipped);
  if (llt.info() != Eigen::Success) throw NumericError("rho is not positive definite");
  const CMat l = llt.matrixL();
  const CMat tm = CMat(l.adjoint()).colwise().reverse().rowwise().reverse();
  RVec t(16);
  for (int i = 0; i < 4; ++i) t(i) = tm(i, i).real();
  const int pos[6][2] = {{1, 0}, {2, 1}, {3, 2}, {2, 0}, {3, 1}, {3, 0}};
  for (int k = 0; k < 6; ++k) {
    t(4 + 2 * k) = tm(pos[k][0], pos[k][1]).real();
    t(5 + 2 * k) = tm(pos[k][0], pos[k][1]).imag();
  }
  return t;
}

const std::vector<CMat>& pauli_basis() {
  static const std::vector<CMat> basis = [] {
    const char names[4] = {'I', 'X', 'Y', 'Z'};
    std::vector<CMat> b;
    for (char a : names)
      for (char c : names) {
        const CMat pa = a == 'I' ? CMat(CMat::Identity(2, 2)) : pauli(a);
        const CMat pc = c == 'I' ? CMat(CMat::Identity(2, 2)) : pauli(c);
        b.push_back(kron(pa, pc));
      }
    return b;
  }();
  return basis;
}

const std::vector<std::string>& pauli_labels() {
  static const std::vector<std::string> labels = [] {
    std::vector<std::string> l;
    for (char a : {'I', 'X', 'Y', 'Z'})
      for (char c : {'I', 'X', 'Y', 'Z'}) l.push_back(std::string{a, c});
    return l;
  }();
  return labels;
}

namespace {

std::vector<std::pair<int, cplx>> sorted_records(const std::vector<TomographyRecord>& records) {
  std::vector<std::pair<int, cplx>> out;
  for (const auto& r : records) {
    const int k = tomography_index(r.pulse);
    if (k < 0) throw InvalidInput("unknown tomography pulse '" + r.pulse + "'");
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
      throw InvalidInput("tomography value for '" + r.pulse + "' is not finite");
    out.emplace_back(k, r.value);
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    if (x.second.real() != y.second.real()) return x.second.real() < y.second.real();
    return x.second.imag() < y.second.imag();
  });
  return out;
}

}  // namespace

CMat linear_state_estimate(const std::vector<TomographyRecord>& records,
                           const MeasurementOperator& op) {
  const auto recs = sorted_records(records);
  const int n = int(recs.size());
  const auto& paulis = pauli_basis();
  const CMat m = op.matrix();
  // rho = sum_P c_P P / 4 with real c_P; each record gives Re and Im rows.
  RMat a(2 * n, 16);
  RVec b(2 * n);
  for (int r = 0; r < n; ++r) {
    const CMat u = tomography_pulses()[recs[r].first].unitary();
    for (int p = 0; p < 16; ++p) {
      const cplx v = (m * u * paulis[p] * u.adjoint()).trace() / 4.0;
      a(2 * r, p) = v.real();
      a(2 * r + 1, p) = v.imag();
    }
    b(2 * r) = recs[r].second.real();
    b(2 * r + 1) = recs[r].second.imag();
  }
  const Eigen::CompleteOrthogonalDecomposition<RMat> cod(a);
  if (cod.rank() < 16) throw NumericError("tomography records are rank-deficient");
  const RVec c = cod.solve(b);
  CMat rho = CMat::Zero(4, 4);
  for (int p = 0; p < 16; ++p) rho += c(p) * paulis[p] / 4.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (rho + rho.adjoint()));
  const RVec w = es.eigenvalues().cwiseMax(0.0);
  if (!(w.sum() > 0.0)) throw NumericError("linear estimate has no positive part");
  rho = es.eigenvectors() * w.cast<cplx>().asDiagonal() * es.eigenvectors().adjoint();
  return rho / rho.trace().real();
}

StateEstimate mle_state_tomography(const std::vector<TomographyRecord>& records,
                                   const MeasurementOperator& op) {
  const CMat start = linear_state_estimate(records, op);
  const auto recs = sorted_records(records);
  const CMat m = op.matrix();
  std::vector<CMat> effective;  // U^+ M U, so the signal is Tr(E rho)
  for (const auto& r : recs) {
    const CMat u = tomography_pulses()[r.first].unitary();
    effective.push_back(u.adjoint() * m * u);
  }
  auto cost = [&](const RVec& t) {
    const CMat rho = rho_from_cholesky(t);
    double s = 0.0;
    for (std::size_t k = 0; k < recs.size(); ++k)
      s += std::norm((effective[k] * rho).trace() - recs[k].second);
    return s;
  };
  NelderMeadOptions o;
  o.f_tol = 1e-16;
  o.x_tol = 1e-10;
  o.max_iterations = 20000;
  const NelderMeadResult res = nelder_mead_minimize(cost, cholesky_from_rho(start), o);
  StateEstimate out;
  out.rho = rho_from_cholesky(res.x);
  out.residual = res.f;
  out.iterations = res.iterations;
  // Keep the linear estimate if the simplex could not improve on it.
  const double f0 = cost(cholesky_from_rho(start));
  if (f0 < res.f) {
    out.rho = rho_from_cholesky(cholesky_from_rho(start));
    out.residual = f0;
  }
  return out;
}

CMat process_tomography(const std::vector<CMat>& inputs, const std::vector<CMat>& outputs) {
  if (inputs.size() != outputs.size() || inputs.empty())
    throw InvalidInput("process tomography needs matching input and output lists");
  const auto& p = pauli_basis();
  const int nj = int(inputs.size());
  CMat b(16 * nj, 256);
  CVec y(16 * nj);
  for (int j = 0; j < nj; ++j) {
    if (inputs[j].rows() != 4 || outputs[j].rows() != 4) throw InvalidInput("states must be 4 x 4");
    for (int mi = 0; mi < 16; ++mi) {
      const CMat left = p[mi] * inputs[j];
      for (int ni = 0; ni < 16; ++ni) {
        const CMat term = left * p[ni].adjoint();
        for (int a = 0; a < 4; ++a)
          for (int c = 0; c < 4; ++c) b(16 * j + 4 * a + c, 16 * mi + ni) = term(a, c);
      }
    }
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) y(16 * j + 4 * a + c) = outputs[j](a, c);
  }
  const Eigen::CompleteOrthogonalDecomposition<CMat> cod(b);
  if (cod.rank() < 256) throw NumericError("QPT input states are linearly dependent");
  const CVec x = cod.solve(y);
  CMat chi(16, 16);
  for (int mi = 0; mi < 16; ++mi)
    for (int ni = 0; ni < 16; ++ni) chi(mi, ni) = x(16 * mi + ni);
  return chi;
}

CMat apply_chi(const CMat& chi, const CMat& rho) {
  const auto& p = pauli_basis();
  CMat out = CMat::Zero(4, 4);
  for (int m = 0; m < 16; ++m)
    for (int n = 0; n < 16; ++n)
      if (chi(m, n) != cplx(0.0)) out += chi(m, n) * p[m] * rho * p[n].adjoint();
  return out;
}

CMat chi_from_kraus(const std::vector<CMat>& kraus) {
  const auto& p = pauli_basis();
  CMat chi = CMat::Zero(16, 16);
  for (const CMat& k : kraus) {
    CVec c(16);
    for (int m = 0; m < 16; ++m) c(m) = (p[m].adjoint() * k).trace() / 4.0;
    chi += c * c.adjoint();
  }
  return chi;
}

CMat chi_from_unitary(const CMat& u) { return chi_from_kraus({u}); }

double chi_fidelity(const CMat& chi, const CMat& chi_ideal) {
  constexpr double d = 4.0;
  return ((chi.adjoint() * chi_ideal).trace().real() * d + 1.0) / (d + 1.0);
}

std::vector<CMat> random_cptp_kraus(std::mt19937_64& rng, int n_kraus) {
  if (n_kraus < 1) throw InvalidInput("need at least one Kraus operator");
  std::normal_distribution<double> g(0.0, 1.0);
  CMat a(4 * n_kraus, 4);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) a(i, j) = cplx(g(rng), g(rng));
  const Eigen::HouseholderQR<CMat> qr(a);
  const CMat v = qr.householderQ() * CMat::Identity(4 * n_kraus, 4);  // isometry
  std::vector<CMat> k;
  for (int i = 0; i < n_kraus; ++i) k.push_back(v.middleRows(4 * i, 4));
  return k;
}

std::vector<CMat> prepared_inputs(const CMat& rho_init) {
  std::vector<CMat> out;
  for (const auto& p : preparation_pulses()) {
    const CMat u = p.unitary();
    out.push_back(u * rho_init * u.adjoint());
  }
  return out;
}

}  // namespace fluxcp
