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

#include <functional>
#include <limits>
#include <vector>

#include "fluxcp/dynamics.hpp"

namespace fluxcp {

inline constexpr double kForever = std::numeric_limits<double>::infinity();

// Coherence times in microseconds; infinity switches a channel off.
struct CoherenceTable {
  double t1_a = kForever, t2e_a = kForever;    // |00>-|10>
  double t1_b = kForever, t2e_b = kForever;    // |00>-|01>
  double t1_12 = kForever, t2e_12 = kForever;  // |11>-|21>

  void validate() const;
  // Averages of the measured device.
  static CoherenceTable measured_average();
  // Same T1 = T2E for both qubits, and for the 1-2 transition.
  static CoherenceTable uniform(double t_qubit_us, double t_12_us);
  bool operator==(const CoherenceTable&) const = default;
};

struct DecayRates {  // GHz
  double g1_a = 0, gphi_a = 0, g1_b = 0, gphi_b = 0, g1_12 = 0, gphi_12 = 0;
};

// Gamma_1 = 1/T1, Gamma_phi = 1/T2E - 1/(2 T1), clipped at 0 when the
// excess is within 1e-6 GHz; a larger negative rate throws InvalidInput.
DecayRates decay_rates(const CoherenceTable& t);

// Six operators on the RWA basis, in the order
// L1_A, L1_B, Lphi_A, Lphi_B, L1_12, Lphi_12.
std::vector<CMat> build_collapse_operators(const CoherenceTable& t);

// drho/dt = -i 2 pi [H(t), rho] + sum_k D[L_k] rho, fixed-step RK4.
CMat lindblad_rk4(const std::function<CMat(double)>& hamiltonian, const std::vector<CMat>& ops,
                  const CMat& rho0, double t_end, double dt);

EvolutionResult evolve_lindblad(const RwaModel& m, const PulseProgram& p,
                                const std::vector<CMat>& ops, const CMat& rho0,
                                const SolverOptions& opts = {});

// Row-major vectorization: vec(rho)[i d + j] = rho(i, j), so
// vec(A rho B) = kron(A, B^T) vec(rho).
CVec vec(const CMat& rho);
CMat unvec(const CVec& v, int d);
CMat unitary_superop(const CMat& u);

// Channel of the RWA gate restricted to the computational block (16 x 16).
CMat computational_channel(const RwaModel& m, const PulseProgram& p,
                           const std::vector<CMat>& ops, const SolverOptions& opts = {});

struct QubitCoherence {
  double t1_us = kForever;
  double t2e_us = kForever;
};

// Resonant single-qubit pulse with T1/T2E decay as a 4 x 4 superoperator.
// The rotation axis is cos(axis) X + sin(axis) Y; the envelope amplitude is
// chosen so the closed-system rotation angle equals `angle`.
CMat qubit_pulse_channel(double angle, double axis, const PulseProgram& shape,
                         const QubitCoherence& c, double dt = 0.05);
// Free decay for `duration` ns.
CMat qubit_idle_channel(double duration, const QubitCoherence& c);

}  // namespace fluxcp
