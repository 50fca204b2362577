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

#include "fluxcp/linalg.hpp"

namespace fluxcp {

enum class Qubit { kA = 0, kB = 1 };

// Flat-top Gaussian-edge pulse with a DRAG quadrature. Times in ns,
// f_d and amplitude in GHz, drag in ns.
struct PulseProgram {
  double f_d = 0.0;
  double t_rise = 0.0;
  double t_flat = 0.0;
  double sigma = 0.0;  // 0 selects t_rise / sqrt(2 pi)
  double amplitude = 0.0;
  double drag = 0.0;
  double eps_ratio = 1.0;
  std::array<double, 2> frame_phases{0.0, 0.0};

  double t_gate() const { return 2.0 * t_rise + t_flat; }
  double sigma_eff() const;
  void validate() const;
  bool operator==(const PulseProgram&) const = default;
};

struct Envelope {
  double gx = 0.0;
  double gy = 0.0;
};

// Throws InvalidInput for t outside [0, t_gate].
Envelope sample_envelope(const PulseProgram& p, double t);
// Same shape, zero outside [0, t_gate]; used inside integrators.
Envelope envelope_at(const PulseProgram& p, double t);
// Integral of g_x over the whole pulse (ns).
double envelope_area(const PulseProgram& p);

PulseProgram apply_virtual_z(const PulseProgram& p, Qubit q, double phase);

}  // namespace fluxcp
