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

#include <string>
#include <vector>

#include "fluxcp/linalg.hpp"

namespace fluxcp {

// One rotation exp(-i angle/2 sigma_axis); Z is virtual (zero duration).
struct PulseOp {
  char axis = 'X';
  double angle = 0.0;
  bool physical() const { return axis != 'Z' && angle != 0.0; }
};

struct CliffordGate {
  std::string name;
  std::vector<PulseOp> ops;  // time order
  int physical_pulse_count() const;
  CMat unitary() const;
};

// The 24 single-qubit Cliffords, each written as an operator product and
// stored in time order (rightmost factor first).
const std::vector<CliffordGate>& clifford_table();

// True when a and b agree up to a global phase.
bool equal_up_to_phase(const CMat& a, const CMat& b, double tol = 1e-9);
// Table index of u up to global phase, or -1.
int clifford_index(const CMat& u);
// Index of table[second] * table[first].
int clifford_compose(int second, int first);
int clifford_inverse(int k);

}  // namespace fluxcp
