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

#include "fluxcp/clifford.hpp"

#include <array>

namespace fluxcp {

int CliffordGate::physical_pulse_count() const {
  int n = 0;
  for (const PulseOp& p : ops) n += p.physical();
  return n;
}

CMat CliffordGate::unitary() const {
  CMat u = CMat::Identity(2, 2);
  for (const PulseOp& p : ops) u = rotation(p.axis, p.angle) * u;
  return u;
}

namespace {

// Operator-product spelling, leftmost factor applied last.
CliffordGate make(std::string name, std::vector<PulseOp> product) {
  return {std::move(name), std::vector<PulseOp>(product.rbegin(), product.rend())};
}

std::vector<CliffordGate> build_table() {
  constexpr double p = kPi, h = kPi / 2;
  return {
      make("I", {}),
      make("X_pi", {{'X', p}}),
      make("Y_pi", {{'Y', p}}),
      make("Z_pi", {{'Z', p}}),
      make("X_pi/2", {{'X', h}}),
      make("X_-pi/2", {{'X', -h}}),
      make("Y_pi/2", {{'Y', h}}),
      make("Y_-pi/2", {{'Y', -h}}),
      make("Z_pi/2", {{'Z', h}}),
      make("Z_-pi/2", {{'Z', -h}}),
      make("Y_pi/2 Z_pi/2", {{'Y', h}, {'Z', h}}),
      make("Y_-pi/2 Z_-pi/2", {{'Y', -h}, {'Z', -h}}),
      make("Y_pi/2 Z_-pi/2", {{'Y', h}, {'Z', -h}}),
      make("Y_-pi/2 Z_pi/2", {{'Y', -h}, {'Z', h}}),
      make("X_pi/2 Z_-pi/2", {{'X', h}, {'Z', -h}}),
      make("X_-pi/2 Z_pi/2", {{'X', -h}, {'Z', h}}),
      make("X_pi/2 Z_pi/2", {{'X', h}, {'Z', h}}),
      make("X_-pi/2 Z_-pi/2", {{'X', -h}, {'Z', -h}}),
      make("Z_pi/2 X_pi/2 Z_pi/2", {{'Z', h}, {'X', h}, {'Z', h}}),
      make("Z_pi/2 X_-pi/2 Z_pi/2", {{'Z', h}, {'X', -h}, {'Z', h}}),
      make("Z_-pi/2 Y_pi/2 Z_-pi/2", {{'Z', -h}, {'Y', h}, {'Z', -h}}),
      make("Z_-pi/2 Y_-pi/2 Z_-pi/2", {{'Z', -h}, {'Y', -h}, {'Z', -h}}),
      make("Z_-pi/2 X_pi Z_-pi", {{'Z', -h}, {'X', p}, {'Z', -p}}),
      make("Z_pi/2 X_pi Z_-pi", {{'Z', h}, {'X', p}, {'Z', -p}}),
  };
}

struct Tables {
  std::vector<CliffordGate> gates;
  std::vector<CMat> unitaries;
  std::array<std::array<int, 24>, 24> product{};
  std::array<int, 24> inverse{};
};

int find(const std::vector<CMat>& us, const CMat& u) {
  for (std::size_t k = 0; k < us.size(); ++k)
    if (equal_up_to_phase(us[k], u)) return int(k);
  return -1;
}

const Tables& tables() {
  static const Tables t = [] {
    Tables t;
    t.gates = build_table();
    for (const auto& g : t.gates) t.unitaries.push_back(g.unitary());
    for (int a = 0; a < 24; ++a) {
      for (int b = 0; b < 24; ++b) t.product[a][b] = find(t.unitaries, t.unitaries[a] * t.unitaries[b]);
      t.inverse[a] = find(t.unitaries, t.unitaries[a].adjoint());
    }
    return t;
  }();
  return t;
}

}  // namespace

const std::vector<CliffordGate>& clifford_table() { return tables().gates; }

bool equal_up_to_phase(const CMat& a, const CMat& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const cplx overlap = (a.adjoint() * b).trace();
  const double n = double(a.rows());
  if (std::abs(overlap) < 1e-12) return false;
  const cplx phase = overlap / std::abs(overlap);
  return max_abs(a * phase - b) < tol * std::max(1.0, n);
}

int clifford_index(const CMat& u) { return find(tables().unitaries, u); }

int clifford_compose(int second, int first) {
  if (second < 0 || second >= 24 || first < 0 || first >= 24) throw InvalidInput("Clifford index out of range");
  return tables().product[second][first];
}

int clifford_inverse(int k) {
  if (k < 0 || k >= 24) throw InvalidInput("Clifford index out of range");
  return tables().inverse[k];
}

}  // namespace fluxcp
