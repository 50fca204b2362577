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
#include "fluxcp/pulse.hpp"
#include "fluxcp/stark.hpp"

namespace fluxcp {

struct SolverOptions {
  double dt = 0.0;           // initial step (ns); 0 selects the model default
  double tolerance = 1e-8;   // max entry change under step halving
  int max_halvings = 12;
  bool check = true;         // false: one fixed-step run, no halving
};

enum class EvolutionKind { kPropagator, kDensity };

struct EvolutionResult {
  EvolutionKind kind = EvolutionKind::kPropagator;
  CMat op;              // propagator columns or final density matrix
  double dt = 0.0;      // step of the returned result
  long steps = 0;
  double accuracy = 0.0;  // last step-halving change (0 if unchecked)
};

// Static Hamiltonian and drive operator of the coupled system in its
// eigenbasis. Both charge operators are i * (real antisymmetric).
struct FullModel {
  RVec energies;
  RMat charge_a;  // Im <i|n_A|j>
  RMat charge_b;  // Im <i|n_B|j>
  std::vector<int> computational;

  static FullModel from(const LabeledSpectrum& s);
  int dim() const { return int(energies.size()); }
};

// Propagator of H_static + (eps_A n_A + eps_B n_B)(g_x cos 2 pi f_d t + g_y sin 2 pi f_d t)
// over [0, t_gate], with eps_A = pulse.amplitude and eps_B = eps_ratio * eps_A.
// `columns` selects the initial basis states (all when empty); the returned
// operator has one column per selected state.
EvolutionResult evolve_unitary(const FullModel& m, const PulseProgram& p,
                               const SolverOptions& opts = {},
                               const std::vector<int>& columns = {});

// Fixed-step run of the above with no accuracy check; empty `columns` means all.
CMat full_propagator(const FullModel& m, const PulseProgram& p, double dt,
                     const std::vector<int>& columns);

// Rotating-frame six-level propagator; pulse.amplitude is Omega_11-21 (GHz)
// and the detunings come from the model.
EvolutionResult evolve_rwa(const RwaModel& m, const PulseProgram& p,
                           const SolverOptions& opts = {});
CMat rwa_propagator(const RwaModel& m, const PulseProgram& p, double dt);

}  // namespace fluxcp
