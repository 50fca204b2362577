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

#include <cmath>
#include <numeric>
#include <random>

#include "fluxcp/benchmarking.hpp"
#include "fluxcp/clifford.hpp"
#include "fluxcp/metrics.hpp"
#include "fluxcp/readout.hpp"

namespace fluxcp {
namespace {

TEST(Clifford, TableSizeAndPulseCount) {
  const auto& t = clifford_table();
  ASSERT_EQ(t.size(), 24u);
  int pulses = 0;
  for (const auto& g : t) pulses += g.physical_pulse_count();
  EXPECT_EQ(pulses, 20);
  EXPECT_NEAR(pulses / 24.0, 0.8333, 1e-4);
}

TEST(Clifford, ElementsAreDistinctUnitaries) {
  const auto& t = clifford_table();
  for (size_t i = 0; i < t.size(); ++i) {
    const CMat u = t[i].unitary();
    EXPECT_LT(max_abs(u.adjoint() * u - CMat::Identity(2, 2)), 1e-12);
    EXPECT_EQ(clifford_index(u), int(i));
    for (size_t j = 0; j < i; ++j) EXPECT_FALSE(equal_up_to_phase(u, t[j].unitary()));
  }
}

TEST(Clifford, GroupClosure) {
  const auto& t = clifford_table();
  for (int a = 0; a < 24; ++a)
    for (int b = 0; b < 24; ++b) {
      const int c = clifford_compose(a, b);
      ASSERT_GE(c, 0);
      EXPECT_TRUE(equal_up_to_phase(t[c].unitary(), t[a].unitary() * t[b].unitary()));
    }
}

TEST(Clifford, InverseAndPauliConjugation) {
  const auto& t = clifford_table();
  for (int k = 0; k < 24; ++k) {
    EXPECT_TRUE(equal_up_to_phase(t[clifford_inverse(k)].unitary() * t[k].unitary(),
                                  CMat::Identity(2, 2)));
    // Cliffords map Paulis to signed Paulis.
    for (char p : {'X', 'Y', 'Z'}) {
      const CMat q = t[k].unitary() * pauli(p) * t[k].unitary().adjoint();
      bool hit = false;
      for (char r : {'X', 'Y', 'Z'}) hit |= equal_up_to_phase(q, pauli(r));
      EXPECT_TRUE(hit) << k << p;
    }
  }
  EXPECT_EQ(clifford_index(rotation('X', 0.3)), -1);
}

TEST(ErrorConversion, MethodsArithmetic) {
  EXPECT_NEAR(cycle_error(0.99, 4), 0.0075, 1e-15);
  EXPECT_NEAR(pauli_error(0.0075, 4), 0.009375, 1e-15);
  EXPECT_NEAR(cycle_error(0.99, 2), 0.005, 1e-15);
  EXPECT_NEAR(pauli_error(0.005, 2), 0.0075, 1e-15);
}

TEST(ErrorConversion, RoundTrip) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 0.2);
  for (int n : {2, 4})
    for (int i = 0; i < 1000; ++i) {
      const double r = u(rng);
      EXPECT_NEAR(average_error(pauli_error(r, n), n), r, 1e-12);
    }
}

TEST(ErrorConversion, CpExtractionInvertsProduct) {
  const double a = 2e-3, b = 1e-3, cp = 1.1e-2;
  const double cycle = 1.0 - (1 - a) * (1 - b) * (1 - cp);
  EXPECT_NEAR(cp_pauli_error(cycle, a, b), cp, 1e-15);
  EXPECT_NEAR(cp_pauli_error(0.0, 0.0, 0.0), 0.0, 0.0);
}

TEST(DecayFit, ExactDataRecovered) {
  std::vector<double> m, f;
  for (int k : {1, 3, 5, 10, 20, 40, 60, 100}) {
    m.push_back(k);
    f.push_back(0.75 * std::pow(0.97, k) + 0.25);
  }
  const DecayFit fit = fit_exponential_decay(m, f, 0.25);
  EXPECT_NEAR(fit.a, 0.75, 1e-9);
  EXPECT_NEAR(fit.p, 0.97, 1e-9);
  EXPECT_NEAR(fit.b, 0.25, 1e-9);
}

TEST(DecayFit, NoisyDataWithinTolerance) {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 0.01);
    std::vector<double> m, f;
    for (int k = 0; k < 20; ++k) {
      m.push_back(1 + 10 * k);
      f.push_back(0.75 * std::pow(0.97, m.back()) + 0.25 + noise(rng));
    }
    EXPECT_NEAR(fit_exponential_decay(m, f, 0.25).p, 0.97, 0.005) << seed;
  }
}

TEST(DecayFit, DegenerateInputs) {
  const std::vector<double> m{1, 2, 4, 8, 16};
  EXPECT_THROW(fit_exponential_decay(m, std::vector<double>(5, 0.25), 0.25), NumericError);
  EXPECT_THROW(fit_exponential_decay({1, 2, 3}, {0.9, 0.8, 0.7}, 0.5), NumericError);
  EXPECT_THROW(fit_exponential_decay({1, 1, 2, 2}, {0.9, 0.9, 0.8, 0.8}, 0.5), NumericError);
  const DecayFit flat = fit_exponential_decay(m, std::vector<double>(5, 1.0), 0.5);
  EXPECT_EQ(flat.p, 1.0);
  EXPECT_NEAR(flat.a, 0.5, 1e-15);
}

TEST(Rb, IdealGatesNeverDecay) {
  RbOptions o;
  o.n_random = 5;
  const BenchmarkRecord r = simulate_rb(QubitBackend::ideal(), o);
  for (double f : r.fidelity) EXPECT_NEAR(f, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(r.fit.p, 1.0);
  EXPECT_NEAR(r.error, 0.0, 1e-12);
}

TEST(Rb, InjectedDepolarizingRecovered) {
  RbOptions o;
  o.n_random = 51;
  const BenchmarkRecord r = simulate_rb(QubitBackend::depolarizing(1e-3), o);
  EXPECT_NEAR(r.error, 1e-3, 2e-4);
  EXPECT_GT(r.fit.p, 0.0);
  EXPECT_LE(r.fit.p, 1.0);
  for (double f : r.fidelity) {
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
  }
}

TEST(Rb, LindbladBackendBracketsMeasuredErrors) {
  const auto t = CoherenceTable::measured_average();
  const QubitBackend a = QubitBackend::lindblad({t.t1_a, t.t2e_a}, 45.0);
  const QubitBackend b = QubitBackend::lindblad({t.t1_b, t.t2e_b}, 26.0);
  RbOptions o;
  o.n_random = 20;
  const auto rec = simulate_simultaneous_rb(a, b, o);
  // Same order as the measured 3.1e-3 / 0.9e-3; control errors are not modelled.
  EXPECT_GT(rec[0].error, 3e-4);
  EXPECT_LT(rec[0].error, 1e-2);
  EXPECT_GT(rec[1].error, 2e-4);
  EXPECT_LT(rec[1].error, 3e-3);
  EXPECT_GT(rec[0].error, rec[1].error);
}

TEST(Rb, SeededAndExecutionIndependent) {
  const auto t = CoherenceTable::measured_average();
  const QubitBackend a = QubitBackend::lindblad({t.t1_a, t.t2e_a}, 45.0);
  RbOptions o;
  o.n_random = 8;
  o.lengths = {1, 10, 30, 60};
  o.seed = 77;
  const BenchmarkRecord par = simulate_rb(a, o);
  o.exec = Exec::kSerial;
  const BenchmarkRecord ser = simulate_rb(a, o);
  EXPECT_EQ(par.fidelity, ser.fidelity);
  o.seed = 78;
  EXPECT_NE(simulate_rb(a, o).fidelity, ser.fidelity);
}

TEST(Xeb, CrossEntropyBasics) {
  RVec p(4), q(4);
  p << 0.25, 0.25, 0.25, 0.25;
  q << 1.0, 0.0, 0.0, 0.0;
  EXPECT_NEAR(cross_entropy(p, p), std::log(4.0), 1e-15);
  EXPECT_NEAR(cross_entropy(p, q), -0.75 * std::log(1e-9), 1e-12);
}

TEST(Xeb, ApplyLocalActsOnOneQubit) {
  CMat rho = CMat::Zero(4, 4);
  rho(0, 0) = 1.0;
  const CMat x = unitary_superop(pauli('X'));
  EXPECT_NEAR(apply_local(rho, x, 0)(2, 2).real(), 1.0, 1e-15);  // |10>
  EXPECT_NEAR(apply_local(rho, x, 1)(1, 1).real(), 1.0, 1e-15);  // |01>
}

TEST(Xeb, IdealEverything) {
  XebOptions o;
  o.shots = 0;
  o.n_random = 10;
  const XebRecord r = simulate_xeb(XebBackend{}, kPi, o, 0.0, 0.0);
  for (double f : r.cycle.fidelity) EXPECT_NEAR(f, 1.0, 1e-9);
  EXPECT_NEAR(r.r_cp, 0.0, 1e-9);
}

TEST(Xeb, InjectedDepolarizingSelfConsistent) {
  // Depolarizing parameter lambda per cycle: Pauli error (15/16)(1 - lambda).
  const double lambda = 0.99;
  const double injected = pauli_error(cycle_error(lambda, 4), 4);
  XebBackend be;
  be.cycle_depolarizing = lambda;
  std::vector<double> got;
  for (std::uint64_t s = 1; s <= 20; ++s) {
    XebOptions o;
    o.seed = s;
    o.n_random = 20;
    got.push_back(simulate_xeb(be, kPi, o, 0.0, 0.0).rp_cycle);
  }
  const double mean = std::accumulate(got.begin(), got.end(), 0.0) / got.size();
  double var = 0.0;
  for (double g : got) var += (g - mean) * (g - mean);
  const double se = std::sqrt(var / (got.size() - 1) / got.size());
  EXPECT_LT(std::abs(mean - injected), 2.0 * se + 1e-12) << mean << " vs " << injected;
}

TEST(Xeb, ExactProbabilitiesRecoverDepolarizingExactly) {
  XebBackend be;
  be.cycle_depolarizing = 0.98;
  XebOptions o;
  o.shots = 0;
  o.n_random = 10;
  const XebRecord r = simulate_xeb(be, kPi / 2, o, 0.0, 0.0);
  EXPECT_NEAR(r.cycle.fit.p, 0.98, 1e-6);
  EXPECT_NEAR(r.rp_cycle, pauli_error(cycle_error(0.98, 4), 4), 1e-6);
}

TEST(Xeb, DeterministicPerSeed) {
  XebBackend be;
  be.cycle_depolarizing = 0.99;
  XebOptions o;
  o.n_random = 6;
  o.seed = 5;
  const XebRecord a = simulate_xeb(be, kPi, o, 0.0, 0.0);
  o.exec = Exec::kSerial;
  const XebRecord b = simulate_xeb(be, kPi, o, 0.0, 0.0);
  EXPECT_EQ(a.cycle.fidelity, b.cycle.fidelity);
  EXPECT_EQ(a.r_cp, b.r_cp);
}

TEST(Readout, ZeroParamsIsIdentity) {
  const ReadoutParams z;
  EXPECT_EQ(readout_matrix(z), RMat::Identity(4, 4));
  RVec p(4);
  p << 0.1, 0.2, 0.3, 0.4;
  EXPECT_LT((correct_readout(p, z) - p).cwiseAbs().maxCoeff(), 1e-15);
}

ReadoutParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 0.08);
  return {u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

TEST(Readout, ColumnSumsAndRoundTrip) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0), big(0.0, 0.4999);
  for (int trial = 0; trial < 500; ++trial) {
    const ReadoutParams any{big(rng), big(rng), big(rng), big(rng), big(rng), big(rng)};
    const RVec sums = readout_matrix(any).colwise().sum();
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(sums(j), 1.0, 1e-15);
    const ReadoutParams r = random_params(rng);
    RVec p(4);
    for (int i = 0; i < 4; ++i) p(i) = u(rng);
    p /= p.sum();
    EXPECT_LT((correct_readout(apply_readout(r, p), r) - p).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(Readout, InputChecks) {
  ReadoutParams r;
  RVec p(4);
  p << 0.5, 0.5, 0.5, 0.5;
  EXPECT_THROW(correct_readout(p, r), InvalidInput);
  r.a1 = 0.6;
  p << 0.25, 0.25, 0.25, 0.25;
  EXPECT_THROW(correct_readout(p, r), InvalidInput);
}

TEST(Readout, RabiCalibrationRecoversParameters) {
  std::mt19937_64 rng(12);
  std::vector<double> angles;
  for (int i = 0; i <= 40; ++i) angles.push_back(2 * kPi * i / 40.0);
  for (int trial = 0; trial < 10; ++trial) {
    const ReadoutParams r = random_params(rng);
    const double pg_a = 0.95, pg_b = 0.9;
    const RabiData d = synthesize_rabi(r, pg_a, pg_b, angles);
    const ReadoutCalibration c = calibrate_readout(d);
    EXPECT_NEAR(c.params.a1, r.a1, 0.005);
    EXPECT_NEAR(c.params.a2, r.a2, 0.005);
    EXPECT_NEAR(c.params.b1, r.b1, 0.005);
    EXPECT_NEAR(c.params.b2, r.b2, 0.005);
    EXPECT_NEAR(c.params.c1, r.c1, 0.005);
    EXPECT_NEAR(c.params.c2, r.c2, 0.005);
    // Corrected A-ground marginal oscillates symmetrically about 0.5.
    double lo = 1.0, hi = 0.0;
    for (const RVec& m : d.rabi_a) {
      const RVec x = correct_readout(m, c.params);
      lo = std::min(lo, x(0) + x(1));
      hi = std::max(hi, x(0) + x(1));
    }
    EXPECT_NEAR(0.5 * (lo + hi), 0.5, 1e-3);
  }
}

}  // namespace
}  // namespace fluxcp
