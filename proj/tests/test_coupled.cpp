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


#include <gtest/gtest.h>

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fluxcp/coupled.hpp"

namespace fluxcp {
namespace {

CoupledSpec main_spec() {
  CoupledSpec s;
  s.qubit_a = {1.051, 0.753, 5.263, kPi};
  s.qubit_b = {1.069, 0.771, 3.870, kPi};
  s.j_c = 0.248;
  return s;
}

// Second device; five levels per qubit keep the max-overlap labels injective.
CoupledSpec second_spec() {
  CoupledSpec s;
  s.qubit_a = {1.1, 0.84, 3.5, kPi};
  s.qubit_b = {1.0, 1.7, 4.0, kPi};
  s.j_c = 0.33;
  s.levels_per_qubit = 5;
  return s;
}

const LabeledSpectrum& main_spectrum() {
  static const LabeledSpectrum s = assemble_and_label(main_spec());
  return s;
}

TEST(Coupled, ComputationalTransitions) {
  const auto& s = main_spectrum();
  const double fa = transition_frequency(s, {{0, 0}, {1, 0}});
  const double fb = transition_frequency(s, {{0, 0}, {0, 1}});
  EXPECT_NEAR(fa, 0.2172, 1e-3);
  EXPECT_NEAR(fb, 0.4889, 1e-3);
  // tests/oracles/spectrum_oracle.py, six levels per qubit
  EXPECT_NEAR(fa, 0.217250332, 2e-9);
  EXPECT_NEAR(fb, 0.489519812, 2e-9);
}

TEST(Coupled, StaticZzAndDoubletAgainstOracle) {
  const auto& s = main_spectrum();
  EXPECT_NEAR(static_zz(s), -293.2681e-6, 1e-10);
  const double split = doublet_splitting(s, {{1, 0}, {2, 0}}, {{1, 1}, {2, 1}});
  EXPECT_NEAR(split, 7.684354e-3, 1e-9);
  EXPECT_LT(static_zz(s), 0.0);
}

TEST(Coupled, StaticZzConvergedWithLevels) {
  // The 14-level oracle gives -294.71 kHz; six levels are within 0.5%.
  EXPECT_NEAR(static_zz(main_spectrum()), -294.7072e-6, 0.005 * 294.7e-6);
}

TEST(Coupled, HigherDoubletIsNonzero) {
  const auto& s = main_spectrum();
  const double d = doublet_splitting(s, {{0, 0}, {3, 0}}, {{0, 1}, {3, 1}});
  EXPECT_NEAR(d, -15.213931e-3, 1e-9);
}

TEST(Coupled, UncoupledLimitFactorizes) {
  CoupledSpec spec = main_spec();
  spec.j_c = 0.0;
  const auto s = assemble_and_label(spec);
  for (int a = 0; a < s.levels; ++a)
    for (int b = 0; b < s.levels; ++b)
      EXPECT_NEAR(s.energy({a, b}), s.qubit_a.energies(a) + s.qubit_b.energies(b), 1e-9);
  EXPECT_NEAR(static_zz(s), 0.0, 1e-9);
  EXPECT_NEAR(doublet_splitting(s, {{1, 0}, {2, 0}}, {{1, 1}, {2, 1}}), 0.0, 1e-9);
  EXPECT_LT(rabi_frequency(s, 0.1, 0.13, {0, 0}, {1, 1}), 1e-8);
}

TEST(Coupled, SecondDevice) {
  const auto s = assemble_and_label(second_spec());
  // oracle: -2268.7324 kHz at five levels
  EXPECT_NEAR(static_zz(s), -2268.7324e-6, 1e-9);
  EXPECT_NEAR(static_zz(s), -2.1e-3, 0.2 * 2.1e-3);
  for (int n : s.computational()) EXPECT_GT(s.overlap_quality[n], 0.9);
  for (double q : s.overlap_quality) EXPECT_GT(q, 0.5);
}

TEST(Coupled, LabelsAreABijection) {
  for (const auto& spec : {main_spec(), second_spec()}) {
    const auto s = assemble_and_label(spec);
    std::vector<int> idx = s.index_by_label;
    std::sort(idx.begin(), idx.end());
    for (int i = 0; i < s.dim(); ++i) EXPECT_EQ(idx[i], i);
    for (int n = 0; n < s.dim(); ++n) EXPECT_EQ(s.index(s.labels[n]), n);
    for (double q : s.overlap_quality) EXPECT_GT(q, 0.5);
  }
}

TEST(Coupled, EigenvectorsOrthonormal) {
  const auto& s = main_spectrum();
  const RMat g = s.vectors.transpose() * s.vectors;
  EXPECT_LT((g - RMat::Identity(s.dim(), s.dim())).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Coupled, RayleighQuotientsMatchEnergies) {
  // Rebuild H in the product basis from the single-qubit data.
  const auto& s = main_spectrum();
  const int L = s.levels;
  const RMat na = s.qubit_a.charge.imag(), nb = s.qubit_b.charge.imag();
  RMat h = RMat::Zero(L * L, L * L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      h(i * L + j, i * L + j) = s.qubit_a.energies(i) + s.qubit_b.energies(j);
      for (int k = 0; k < L; ++k)
        for (int l = 0; l < L; ++l) h(i * L + j, k * L + l) -= 0.248 * na(i, k) * nb(j, l);
    }
  const double e0 = (s.vectors.col(0).transpose() * h * s.vectors.col(0))(0);
  for (int n = 0; n < s.dim(); ++n) {
    const double rq = (s.vectors.col(n).transpose() * h * s.vectors.col(n))(0) - e0;
    EXPECT_NEAR(rq, s.energies(n), 1e-9);
  }
}

TEST(Coupled, WeakCouplingMatchesSecondOrderPerturbation) {
  CoupledSpec spec = main_spec();
  spec.j_c = 1e-3;
  spec.levels_per_qubit = 4;
  const auto s = assemble_and_label(spec);
  const int L = 4;
  const RMat na = s.qubit_a.charge.imag(), nb = s.qubit_b.charge.imag();
  auto e0 = [&](int a, int b) { return s.qubit_a.energies(a) + s.qubit_b.energies(b); };
  auto shift = [&](int a, int b) {
    double d = 0.0;
    for (int k = 0; k < L; ++k)
      for (int l = 0; l < L; ++l) {
        if (k == a && l == b) continue;
        const double v = spec.j_c * na(a, k) * nb(b, l);
        d += v * v / (e0(a, b) - e0(k, l));
      }
    return d;
  };
  const double pt = shift(1, 1) + shift(0, 0) - shift(1, 0) - shift(0, 1);
  EXPECT_NEAR(static_zz(s), pt, 0.05 * std::abs(pt));
}

TEST(Coupled, RabiRatioForSharedPort) {
  const auto& s = main_spectrum();
  const double eps = 0.05;
  const double up = rabi_frequency(s, eps, 1.3 * eps, {1, 1}, {2, 1});
  const double lo = rabi_frequency(s, eps, 1.3 * eps, {1, 0}, {2, 0});
  EXPECT_NEAR(up / lo, 1.114, 0.005);
  // Scale eps so Omega_11-21 = 52.4 MHz; the ratio is amplitude independent.
  const double k = 0.0524 / up;
  EXPECT_NEAR(rabi_frequency(s, k * eps, 1.3 * k * eps, {1, 1}, {2, 1}), 0.0524, 1e-12);
  EXPECT_NEAR(rabi_frequency(s, k * eps, 1.3 * k * eps, {1, 1}, {2, 1}) /
                  rabi_frequency(s, k * eps, 1.3 * k * eps, {1, 0}, {2, 0}),
              up / lo, 1e-12);
}

TEST(Coupled, RabiFrequencyProperties) {
  const auto& s = main_spectrum();
  EXPECT_EQ(rabi_frequency(s, 0.0, 0.0, {0, 0}, {1, 0}), 0.0);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      const Label from{a, b}, to{a + 1, b};
      const double o = rabi_frequency(s, 0.02, 0.03, from, to);
      EXPECT_GE(o, 0.0);
      EXPECT_DOUBLE_EQ(o, rabi_frequency(s, 0.02, 0.03, to, from));
      EXPECT_NEAR(rabi_frequency(s, 0.04, 0.06, from, to), 2.0 * o, 1e-12 * std::max(o, 1e-300));
    }
}

TEST(Coupled, MissingLabelRejected) {
  const auto& s = main_spectrum();
  EXPECT_THROW(s.energy({6, 0}), InvalidInput);
  EXPECT_THROW(static_cast<void>(transition_frequency(s, {{0, 0}, {0, 9}})), InvalidInput);
}

TEST(Coupled, SpecValidation) {
  CoupledSpec s = main_spec();
  s.levels_per_qubit = 3;
  EXPECT_THROW(assemble_and_label(s), InvalidInput);
  s = main_spec();
  s.j_c = std::nan("");
  EXPECT_THROW(assemble_and_label(s), InvalidInput);
  s = main_spec();
  s.qubit_a.e_c = -1.0;
  EXPECT_THROW(assemble_and_label(s), InvalidInput);
}

TEST(Coupled, OverlapThresholdFailureIsReported) {
  // Six levels on the second device: max-overlap labels collide.
  CoupledSpec s = second_spec();
  s.levels_per_qubit = 6;
  EXPECT_THROW(assemble_and_label(s), LabelingError);
}

TEST(Coupled, RunsUnderTenSeconds) {
  const auto t0 = std::chrono::steady_clock::now();
  assemble_and_label(main_spec());
  assemble_and_label(second_spec());
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(), 10.0);
}

}  // namespace
}  // namespace fluxcp
