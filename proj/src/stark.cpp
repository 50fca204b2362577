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

#include "fluxcp/stark.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace fluxcp {

double stark_shift(double omega, double detuning) {
  return (std::hypot(omega, detuning) - detuning) / 2.0;
}

double induced_zz_analytic(const StarkSetting& s) {
  return stark_shift(s.omega_upper, s.delta - s.splitting) - stark_shift(s.omega_lower, s.delta);
}

double solve_cancellation_amplitude(const CancellationProblem& p) {
  if (p.static_zz == 0.0) return 0.0;
  if (!(p.ratio > 0.0)) throw InvalidInput("ratio must be > 0");
  auto total = [&](double om) {
    return p.static_zz + stark_shift(om, p.delta - p.splitting) - stark_shift(om / p.ratio, p.delta);
  };
  double lo = 0.0, hi = std::abs(p.delta);
  const double flo = total(lo), fhi = total(hi);
  if (!(flo < 0.0 && fhi > 0.0))
    throw NumericError("no cancellation root for Omega in [0, |delta|]: xi(0) = " +
                       std::to_string(flo) + " GHz, xi(|delta|) = " + std::to_string(fhi) + " GHz");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (total(mid) < 0.0) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

CMat RwaModel::hamiltonian(double omega_upper, double gx, double gy) const {
  CMat h = CMat::Zero(kDim, kDim);
  h(k20, k20) = -delta;
  h(k21, k21) = -(delta - splitting) + static_zz;
  h(k11, k11) = static_zz;
  const cplx env(gx, -gy);
  const double omega_lower = omega_upper / ratio;
  h(k10, k20) = 0.5 * omega_lower * env;
  h(k20, k10) = std::conj(h(k10, k20));
  h(k11, k21) = 0.5 * omega_upper * env;
  h(k21, k11) = std::conj(h(k11, k21));
  return h;
}

double rwa_quasi_zz(const RwaModel& m, double omega_upper) {
  Eigen::SelfAdjointEigenSolver<CMat> es(m.hamiltonian(omega_upper, 1.0, 0.0));
  auto dressed = [&](int bare) {
    Eigen::Index arg;
    es.eigenvectors().row(bare).cwiseAbs2().maxCoeff(&arg);
    return es.eigenvalues()(arg);
  };
  return dressed(RwaModel::k11) - dressed(RwaModel::k10);
}

double dressing_lambda(double omega_upper, double detuning_upper) {
  return omega_upper / std::abs(detuning_upper);
}

double dressed_dephasing_rate(double lambda, double gamma1_12) {
  if (lambda < 0.0 || gamma1_12 < 0.0) throw InvalidInput("lambda and gamma must be >= 0");
  return lambda * lambda * gamma1_12 / 8.0;
}

DriveGeometry drive_geometry(const LabeledSpectrum& s, double eps_ratio) {
  DriveGeometry g;
  g.eps_ratio = eps_ratio;
  g.f_10_20 = transition_frequency(s, {{1, 0}, {2, 0}});
  g.f_11_21 = transition_frequency(s, {{1, 1}, {2, 1}});
  g.splitting = g.f_11_21 - g.f_10_20;
  g.static_zz = static_zz(s);
  g.n_upper = rabi_frequency(s, 1.0, eps_ratio, {1, 1}, {2, 1});
  g.ratio = g.n_upper / rabi_frequency(s, 1.0, eps_ratio, {1, 0}, {2, 0});
  return g;
}

RwaModel rwa_model(const DriveGeometry& g, double f_d) {
  return RwaModel{f_d - g.f_10_20, g.splitting, g.ratio, g.static_zz};
}

StarkSetting stark_setting(const DriveGeometry& g, double f_d, double omega_upper) {
  return StarkSetting{omega_upper, omega_upper / g.ratio, f_d - g.f_10_20, g.splitting,
                      g.static_zz};
}

std::vector<ZzSweepPoint> zz_sweep(const DriveGeometry& g, const std::vector<double>& f_d,
                                   const std::vector<double>& omega_upper, Exec exec) {
  const long nf = long(f_d.size()), no = long(omega_upper.size());
  std::vector<ZzSweepPoint> out(nf * no);
  auto point = [&](long k) {
    const double fd = f_d[k / no], om = omega_upper[k % no];
    out[k] = {fd, om, total_zz_analytic(stark_setting(g, fd, om))};
  };
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(static)
    for (long k = 0; k < nf * no; ++k) point(k);
  } else {
    for (long k = 0; k < nf * no; ++k) point(k);
  }
  return out;
}

}  // namespace fluxcp
