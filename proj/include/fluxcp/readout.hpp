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

#include "fluxcp/linalg.hpp"

namespace fluxcp {

// Six-parameter readout error model. a: A flips (0->1, 1->0), b: A/B
// excitation hops, c: cross-talk swaps. Populations are ordered
// gg, ge, eg, ee with qubit A first.
struct ReadoutParams {
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0, c1 = 0.0, c2 = 0.0;
  void validate() const;  // each in [0, 0.5)
};

// measured = M * true; every column of M sums to 1.
RMat readout_matrix(const ReadoutParams& r);
RVec apply_readout(const ReadoutParams& r, const RVec& populations);

// Solves M x = measured and renormalizes. Throws InvalidInput when the input
// does not sum to 1 (+-1e-6), NumericError for a singular M or a result
// outside [-0.05, 1.05].
RVec correct_readout(const RVec& measured, const ReadoutParams& r);

// Rabi experiment on one qubit while the other sits in |+>; the rotated
// qubit starts with ground population pg. Rows hold the measured
// populations at each angle.
struct RabiData {
  std::vector<double> angles;
  std::vector<RVec> rabi_a;  // A rotated
  std::vector<RVec> rabi_b;  // B rotated
};

RabiData synthesize_rabi(const ReadoutParams& r, double pg_a, double pg_b,
                         const std::vector<double>& angles);

struct ReadoutCalibration {
  ReadoutParams params;
  double pg_a = 1.0, pg_b = 1.0;
  RVec std_err;  // a1 a2 b1 b2 c1 c2 pg_a pg_b
  double rss = 0.0;
};

// Least-squares fit of the six error parameters and both initial ground
// populations to the two Rabi traces.
ReadoutCalibration calibrate_readout(const RabiData& data);

}  // namespace fluxcp
