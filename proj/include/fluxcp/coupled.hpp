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

#include "fluxcp/fluxonium.hpp"

namespace fluxcp {

// Product label |kl>: k for qubit A, l for qubit B.
struct Label {
  int a = 0;
  int b = 0;
  bool operator==(const Label&) const = default;
  std::string str() const { return std::to_string(a) + std::to_string(b); }
};

struct Transition {
  Label from;
  Label to;
};

class LabelingError : public NumericError {
 public:
  using NumericError::NumericError;
};

struct CoupledSpec {
  FluxoniumSpec qubit_a;
  FluxoniumSpec qubit_b;
  double j_c = 0.0;
  int levels_per_qubit = 6;
  int basis_dim = kDefaultBasisDim;

  void validate() const;
  bool operator==(const CoupledSpec&) const = default;
};

struct LabeledSpectrum {
  int levels = 0;                 // per qubit
  RVec energies;                  // eigen index order, ascending, lowest = 0
  RMat vectors;                   // product-basis columns (real)
  CMat charge_a;                  // n_A in the coupled eigenbasis
  CMat charge_b;                  // n_B in the coupled eigenbasis
  std::vector<Label> labels;      // label of each eigen index
  std::vector<double> overlap_quality;
  std::vector<int> index_by_label;  // a * levels + b -> eigen index
  QubitEigenSystem qubit_a;
  QubitEigenSystem qubit_b;

  int dim() const { return levels * levels; }
  int index(Label l) const;
  double energy(Label l) const { return energies(index(l)); }
  // eps_a n_A + eps_b n_B in the coupled eigenbasis.
  CMat drive_operator(double eps_a, double eps_b) const;
  // Eigen indices of |00>, |01>, |10>, |11>.
  std::vector<int> computational() const;
};

LabeledSpectrum assemble_and_label(const CoupledSpec& spec);

double static_zz(const LabeledSpectrum& s);
double transition_frequency(const LabeledSpectrum& s, Transition t);
// f(second) - f(first), signed.
double doublet_splitting(const LabeledSpectrum& s, Transition first, Transition second);
double rabi_frequency(const LabeledSpectrum& s, double eps_a, double eps_b, Label from,
                      Label to);

}  // namespace fluxcp
