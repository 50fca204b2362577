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

#include "fluxcp/ramsey.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace fluxcp {

FloquetDrive::FloquetDrive(const FullModel& m, double f_d, double eps_a, double eps_ratio,
                           int steps_per_period)
    : model_(m) {
  if (!(f_d >= 0.0) || !std::isfinite(eps_a)) throw InvalidInput("invalid continuous drive");
  if (steps_per_period < 16) throw InvalidInput("steps_per_period must be >= 16");
  driven_ = f_d > 0.0 && eps_a != 0.0;
  if (!driven_) return;
  period_ = 1.0 / f_d;

  // One period in the interaction picture of H_static, RK4.
  const int d = m.dim();
  const RMat r = eps_a * (m.charge_a + eps_ratio * m.charge_b);
  const RVec w = kTwoPi * m.energies;
  const double dt = period_ / steps_per_period;
  auto rhs = [&](double t, const CMat& x) {
    const double c = std::cos(kTwoPi * f_d * t);
    CVec u(d);
    for (int i = 0; i < d; ++i) u(i) = std::polar(1.0, w(i) * t);
    const CMat tmp = u.conjugate().asDiagonal() * x;
    const RMat yr = r * tmp.real(), yi = r * tmp.imag();
    CMat out(d, d);
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i) out(i, j) = kTwoPi * c * u(i) * cplx(yr(i, j), yi(i, j));
    return out;
  };
  CMat psi = CMat::Identity(d, d);
  for (int s = 0; s < steps_per_period; ++s) {
    const double t = s * dt;
    const CMat k1 = rhs(t, psi);
    const CMat k2 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k1);
    const CMat k3 = rhs(t + 0.5 * dt, psi + 0.5 * dt * k2);
    const CMat k4 = rhs(t + dt, psi + dt * k3);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  for (int i = 0; i < d; ++i) psi.row(i) *= std::polar(1.0, -w(i) * period_);

  Eigen::ComplexEigenSolver<CMat> es(psi);
  vecs_ = es.eigenvectors();
  vecs_inv_ = vecs_.inverse();
  quasi_.resize(d);
  for (int k = 0; k < d; ++k) quasi_(k) = -std::arg(es.eigenvalues()(k)) / (kTwoPi * period_);
}

CMat FloquetDrive::propagator(double t) const {
  const int d = model_.dim();
  if (!driven_) {
    CVec ph(d);
    for (int i = 0; i < d; ++i) ph(i) = std::polar(1.0, -kTwoPi * model_.energies(i) * t);
    return ph.asDiagonal();
  }
  const double m = std::round(t / period_);
  CVec ph(d);
  for (int k = 0; k < d; ++k) ph(k) = std::polar(1.0, -kTwoPi * quasi_(k) * period_ * m);
  return vecs_ * ph.asDiagonal() * vecs_inv_;
}

std::array<int, 4> FloquetDrive::computational() const {
  const auto& c = model_.computational;
  return {c[0], c[1], c[2], c[3]};
}

double FloquetDrive::quasi_zz() const {
  const auto c = computational();
  if (!driven_) {
    const RVec& e = model_.energies;
    return e(c[3]) + e(c[0]) - e(c[2]) - e(c[1]);
  }
  auto dressed = [&](int bare) {
    Eigen::Index arg;
    vecs_.row(bare).cwiseAbs().maxCoeff(&arg);
    return quasi_(arg);
  };
  const double f_d = 1.0 / period_;
  const double xi = dressed(c[3]) + dressed(c[0]) - dressed(c[2]) - dressed(c[1]);
  return xi - f_d * std::round(xi / f_d);
}

RwaDrive::RwaDrive(const RwaModel& m, double omega_upper)
    : h_(m.hamiltonian(omega_upper, 1.0, 0.0)) {}

CMat RwaDrive::propagator(double t) const { return hermitian_propagator(h_, t); }

CMat embed_gate(const CMat& g4, const std::array<int, 4>& comp, int dim) {
  CMat full = CMat::Identity(dim, dim);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) full(comp[i], comp[j]) = g4(i, j);
  return full;
}

namespace {

struct LinearFit {
  double a, b, c, rss;
};

LinearFit solve_at(const RVec& t, const RVec& y, double f) {
  const long n = t.size();
  RMat x(n, 3);
  for (long i = 0; i < n; ++i) {
    x(i, 0) = std::cos(kTwoPi * f * t(i));
    x(i, 1) = std::sin(kTwoPi * f * t(i));
    x(i, 2) = 1.0;
  }
  const RVec p = x.colPivHouseholderQr().solve(y);
  return {p(0), p(1), p(2), (x * p - y).squaredNorm()};
}

}  // namespace

FringeFit fit_fringe(const std::vector<double>& tv, const std::vector<double>& yv) {
  const long n = long(tv.size());
  if (n < 5 || yv.size() != tv.size()) throw InvalidInput("fringe fit needs >= 5 matched points");
  const RVec t = Eigen::Map<const RVec>(tv.data(), n);
  const RVec y = Eigen::Map<const RVec>(yv.data(), n);
  if (y.maxCoeff() - y.minCoeff() < 1e-12) throw NumericError("fringe fit: signal is constant");

  const double span = t.maxCoeff() - t.minCoeff();
  double spacing = span;
  for (long i = 1; i < n; ++i) spacing = std::min(spacing, std::abs(t(i) - t(i - 1)));
  const double f_max = 0.5 / spacing, step = 1.0 / (20.0 * span);

  double best_f = 0.0, best_rss = solve_at(t, y, step * 0.01).rss;
  for (double f = step; f <= f_max; f += step) {
    const double rss = solve_at(t, y, f).rss;
    if (rss < best_rss) best_rss = rss, best_f = f;
  }
  // Golden-section refinement inside one grid cell on either side.
  double lo = std::max(best_f - step, step * 0.01), hi = best_f + step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = solve_at(t, y, x1).rss, f2 = solve_at(t, y, x2).rss;
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (f1 < f2) {
      hi = x2, x2 = x1, f2 = f1;
      x1 = hi - g * (hi - lo), f1 = solve_at(t, y, x1).rss;
    } else {
      lo = x1, x1 = x2, f1 = f2;
      x2 = lo + g * (hi - lo), f2 = solve_at(t, y, x2).rss;
    }
  }
  const double f = 0.5 * (lo + hi);
  const LinearFit lf = solve_at(t, y, f);

  FringeFit out;
  out.rate = f;
  out.amplitude = std::hypot(lf.a, lf.b);
  out.offset = lf.c;
  out.rms = std::sqrt(lf.rss / n);
  if (out.rms > 0.5 * out.amplitude)
    throw NumericError("fringe fit: data is not a sinusoid (residual RMS exceeds half the amplitude)");

  RMat j(n, 4);
  for (long i = 0; i < n; ++i) {
    const double ph = kTwoPi * f * t(i);
    j(i, 0) = std::cos(ph);
    j(i, 1) = std::sin(ph);
    j(i, 2) = 1.0;
    j(i, 3) = kTwoPi * t(i) * (-lf.a * std::sin(ph) + lf.b * std::cos(ph));
  }
  const double s2 = n > 4 ? lf.rss / double(n - 4) : 0.0;
  const RMat cov = (j.transpose() * j).completeOrthogonalDecomposition().pseudoInverse();
  out.rate_err = std::sqrt(std::max(0.0, s2 * cov(3, 3)));
  return out;
}

RamseyRecord simulate_zz_ramsey(const ContinuousDrive& drive, const std::vector<double>& times,
                                Exec exec) {
  if (times.empty()) throw InvalidInput("empty Ramsey time grid");
  for (double t : times)
    if (!(t >= 0.0)) throw InvalidInput("Ramsey times must be >= 0");
  const int d = drive.dim();
  const auto comp = drive.computational();
  const CMat half_a = embed_gate(kron(rotation('X', kPi / 2), pauli('I')), comp, d);
  const CMat echo = embed_gate(kron(rotation('X', kPi), rotation('X', kPi)), comp, d);
  CVec psi0 = CVec::Zero(d);
  psi0(comp[0]) = 1.0;

  RamseyRecord rec;
  rec.t = times;
  rec.zi.assign(times.size(), 0.0);
  auto point = [&](long k) {
    const CMat u = drive.propagator(times[k]);
    const CVec psi = half_a * u * echo * u * half_a * psi0;
    rec.zi[k] = std::norm(psi(comp[0])) + std::norm(psi(comp[1])) - std::norm(psi(comp[2])) -
                std::norm(psi(comp[3]));
  };
  const long n = long(times.size());
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) point(k);
  } else {
    for (long k = 0; k < n; ++k) point(k);
  }
  rec.fit = fit_fringe(rec.t, rec.zi);
  return rec;
}

std::vector<double> linear_grid(double t_max, int n) {
  if (n < 2 || !(t_max > 0.0)) throw InvalidInput("grid needs n >= 2 and t_max > 0");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = t_max * i / (n - 1);
  return g;
}

}  // namespace fluxcp
