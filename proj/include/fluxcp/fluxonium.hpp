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

#include "fluxcp/linalg.hpp"

namespace fluxcp {

// Circuit energies in GHz (h = 1) and the external flux phase in radians.
struct FluxoniumSpec {
  double e_c = 0.0;
  double e_l = 0.0;
  double e_j = 0.0;
  double phi_ext = kPi;

  void validate() const;
  bool operator==(const FluxoniumSpec&) const = default;
};

struct QubitEigenSystem {
  RVec energies;  // ascending, ground state at 0
  CMat charge;    // <k|n|l>, n_levels x n_levels
  int n_levels = 0;
  int basis_dim = 0;
  // Largest change of any retained energy or |n_kl| against basis_dim + 20.
  double convergence = 0.0;
};

inline constexpr int kDefaultBasisDim = 80;
inline constexpr double kSpectrumTolerance = 1e-6;

// Diagonalizes H = 4 E_C n^2 + E_L phi^2 / 2 - E_J cos(phi - phi_ext) in the
// oscillator basis of the (E_C, E_L) part. The basis grows by 20 until the
// retained levels stop moving by more than kSpectrumTolerance.
QubitEigenSystem diagonalize(const FluxoniumSpec& spec, int n_levels = 6,
                             int basis_dim = kDefaultBasisDim,
                             int max_basis_dim = 400);

double transition_frequency(const QubitEigenSystem& eig, int k, int l);
double charge_matrix_element(const QubitEigenSystem& eig, int k, int l);

}  // namespace fluxcp
