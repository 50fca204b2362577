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

#include <array>
#include <optional>
#include <vector>

#include "fluxcp/lindblad.hpp"

namespace fluxcp {

// diag(1, 1, 1, e^{-i phi}) on |00>, |01>, |10>, |11>.
CMat cp_unitary(double phi);

struct GateReport {
  CMat u_projected;  // 4 x 4
  CMat u_z;          // single-qubit Z correction
  CMat u_prime;      // u_z * u_projected
  std::array<double, 4> phases{};  // phi_kl = -arg U_kk
  double phi_accumulated = 0.0;
  double phi_target = 0.0;
  double delta_phi = 0.0;
  double fidelity = 0.0;
  double phase_error = 0.0;
  double leakage = 0.0;
  std::optional<double> incoherent_error;
};

// Computational block of a propagator whose columns are the computational
// states; `rows` are their positions in the full space.
CMat project(const CMat& columns, const std::array<int, 4>& rows);

GateReport project_and_phase(const CMat& u4, double phi_target);
double gate_fidelity(const CMat& u_prime, double phi);
double leakage(const CMat& u4);
// (4/5) sin^2(delta_phi / 4).
double phase_error(double delta_phi);
CMat z_adjustment(const std::array<double, 4>& phases, double delta_phi, double phi);

// The 36 products of {|0>, |1>, |+>, |->, |+i>, |-i>}, A outer.
std::vector<CVec> cardinal_product_states();

// Average of 1 - <psi_ideal| rho |psi_ideal> over the 36 product states,
// psi_ideal = U_Z^+ U_CP(phi) psi0, with U_Z taken from the closed-system
// RWA propagator of the same pulse.
double incoherent_gate_error(const RwaModel& m, const PulseProgram& p,
                             const std::vector<CMat>& ops, double phi,
                             const SolverOptions& opts = {}, Exec exec = Exec::kParallel);

// Open-system channel of the gate on the computational block (16 x 16),
// followed by the virtual-Z correction U_Z, so it approximates CP(phi).
CMat corrected_gate_channel(const RwaModel& m, const PulseProgram& p,
                            const std::vector<CMat>& ops, double phi,
                            const SolverOptions& opts = {});

}  // namespace fluxcp
