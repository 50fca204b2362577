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

#pragma once

#include <vector>

#include "fluxcp/coupled.hpp"

namespace fluxcp {

// Two-level ac-Stark shift (sqrt(omega^2 + detuning^2) - detuning) / 2.
double stark_shift(double omega, double detuning);

// All rates in GHz. delta = f_d - f(|10>-|20>), splitting = f(11-21) - f(10-20).
struct StarkSetting {
  double omega_upper = 0.0;  // Omega_11-21
  double omega_lower = 0.0;  // Omega_10-20
  double delta = 0.0;
  double splitting = 0.0;
  double static_zz = 0.0;
};

double induced_zz_analytic(const StarkSetting& s);
inline double total_zz_analytic(const StarkSetting& s) {
  return s.static_zz + induced_zz_analytic(s);
}

// Blue-detuned cancellation with a fixed ratio Omega_u / Omega_l.
struct CancellationProblem {
  double delta = 0.0;
  double splitting = 0.0;
  double ratio = 1.0;
  double static_zz = 0.0;
};

// Bisection on Omega_u in [0, delta]; throws NumericError without a root.
double solve_cancellation_amplitude(const CancellationProblem& p);

// Six-level rotating-frame model on [00, 01, 10, 11, 20, 21].
struct RwaModel {
  double delta = 0.0;
  double splitting = 0.0;
  double ratio = 1.0;  // Omega_u / Omega_l
  double static_zz = 0.0;  // undriven shift of |11>, carried by |21>

  static constexpr int kDim = 6;
  static constexpr int k00 = 0, k01 = 1, k10 = 2, k11 = 3, k20 = 4, k21 = 5;

  CMat hamiltonian(double omega_upper, double gx, double gy) const;
};

// ZZ from exact eigenvalues of the constant-drive RWA model; includes
// m.static_zz, so it is the induced part only when that is 0.
double rwa_quasi_zz(const RwaModel& m, double omega_upper);

// lambda = Omega_11-21 / |f_d - f(11-21)|.
double dressing_lambda(double omega_upper, double detuning_upper);
// Gamma'_phi = lambda^2 Gamma_1 / 8.
double dressed_dephasing_rate(double lambda, double gamma1_12);

// Spectrum quantities the drive models need, for a port ratio eps_B / eps_A.
struct DriveGeometry {
  double f_10_20 = 0.0;
  double f_11_21 = 0.0;
  double splitting = 0.0;
  double static_zz = 0.0;
  double ratio = 1.0;       // Omega_11-21 / Omega_10-20
  double n_upper = 0.0;     // Omega_11-21 per unit eps_A
  double eps_ratio = 1.0;
};

DriveGeometry drive_geometry(const LabeledSpectrum& s, double eps_ratio);
// Includes the static ZZ of the spectrum.
RwaModel rwa_model(const DriveGeometry& g, double f_d);
StarkSetting stark_setting(const DriveGeometry& g, double f_d, double omega_upper);

struct ZzSweepPoint {
  double f_d = 0.0;
  double omega_upper = 0.0;
  double xi_total = 0.0;
};

// Total analytic ZZ on the (f_d, Omega_u) grid, row-major over f_d.
std::vector<ZzSweepPoint> zz_sweep(const DriveGeometry& g, const std::vector<double>& f_d,
                                   const std::vector<double>& omega_upper,
                                   Exec exec = Exec::kParallel);

}  // namespace fluxcp
