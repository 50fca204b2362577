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

// Every OpenMP kernel against its serial reference, bit for bit, at several
// thread counts. Work items are independent and seeded by index, so the
// schedule must not leak into the numbers.

#include <gtest/gtest.h>
#include <omp.h>

#include "fluxcp/benchmarking.hpp"
#include "fluxcp/calibration.hpp"
#include "fluxcp/experiment.hpp"
#include "fluxcp/metrics.hpp"
#include "fluxcp/optimize.hpp"
#include "fluxcp/ramsey.hpp"
#include "fluxcp/stark.hpp"

namespace fluxcp {
namespace {

const Device& device() {
  static const Device d = Device::build(DeviceConfig::main_device().coupled, 1.3);
  return d;
}

class Threads : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

 private:
  int saved_ = 1;
};

void expect_same(const BenchmarkRecord& a, const BenchmarkRecord& b) {
  EXPECT_EQ(a.lengths, b.lengths);
  EXPECT_EQ(a.fidelity, b.fidelity);
  EXPECT_EQ(a.error, b.error);
  EXPECT_EQ(a.error_err, b.error_err);
  EXPECT_EQ(a.pauli_error, b.pauli_error);
}

TEST_P(Threads, ZzSweep) {
  std::vector<double> f, om;
  for (int i = 0; i < 31; ++i) f.push_back(4.40 + 0.01 * i);
  for (int i = 0; i < 17; ++i) om.push_back(0.004 * i);
  const auto a = zz_sweep(device().geometry, f, om, Exec::kSerial);
  const auto b = zz_sweep(device().geometry, f, om, Exec::kParallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].f_d, b[i].f_d);
    EXPECT_EQ(a[i].omega_upper, b[i].omega_upper);
    EXPECT_EQ(a[i].xi_total, b[i].xi_total);
  }
}

TEST_P(Threads, ZzRamsey) {
  const RwaDrive drive(device().rwa(4.65), 0.03);
  std::vector<double> t;
  for (int i = 0; i < 24; ++i) t.push_back(500.0 * i);
  const auto a = simulate_zz_ramsey(drive, t, Exec::kSerial);
  const auto b = simulate_zz_ramsey(drive, t, Exec::kParallel);
  EXPECT_EQ(a.zi, b.zi);
  EXPECT_EQ(a.fit.rate, b.fit.rate);
}

TEST_P(Threads, IncoherentGateError) {
  const RwaModel m = device().rwa(4.545);
  PulseProgram p;
  p.f_d = 4.545;
  p.t_rise = 10.0;
  p.t_flat = 40.0;
  p.amplitude = 0.03;
  const auto ops = build_collapse_operators(CoherenceTable::measured_average());
  EXPECT_EQ(incoherent_gate_error(m, p, ops, kPi / 2, {}, Exec::kSerial),
            incoherent_gate_error(m, p, ops, kPi / 2, {}, Exec::kParallel));
}

TEST_P(Threads, SimultaneousRb) {
  RbOptions o;
  o.lengths = {1, 4, 9, 16, 30};
  o.n_random = 9;
  o.seed = 5;
  const auto qa = QubitBackend::lindblad({182.5, 14.5}, 45.0);
  const auto qb = QubitBackend::lindblad({128.5, 22.5}, 26.0);
  o.exec = Exec::kSerial;
  const auto a = simulate_simultaneous_rb(qa, qb, o);
  const auto s = simulate_rb(qa, o);
  o.exec = Exec::kParallel;
  const auto b = simulate_simultaneous_rb(qa, qb, o);
  expect_same(a[0], b[0]);
  expect_same(a[1], b[1]);
  expect_same(s, simulate_rb(qa, o));
}

TEST_P(Threads, Xeb) {
  XebBackend be{QubitBackend::depolarizing(1e-3), QubitBackend::depolarizing(2e-3), CMat(), 0.99};
  XebOptions o;
  o.lengths = {1, 3, 6, 10};
  o.n_random = 7;
  o.shots = 300;
  o.seed = 8;
  o.exec = Exec::kSerial;
  const auto a = simulate_xeb(be, kPi, o, 5e-4, 1e-3);
  o.exec = Exec::kParallel;
  const auto b = simulate_xeb(be, kPi, o, 5e-4, 1e-3);
  expect_same(a.cycle, b.cycle);
  EXPECT_EQ(a.r_cp, b.r_cp);
  EXPECT_EQ(a.r_cp_err, b.r_cp_err);
}

TEST_P(Threads, NelderMeadSimplexEvaluations) {
  RVec x0(6);
  x0 << 0.4, -1.0, 2.0, 0.1, -0.3, 1.5;
  auto f = [](const RVec& x) {
    double s = 0.0;
    for (int i = 0; i + 1 < x.size(); ++i) s += 100 * std::pow(x(i + 1) - x(i) * x(i), 2) + std::pow(1 - x(i), 2);
    return s;
  };
  NelderMeadOptions s, p;
  s.max_iterations = p.max_iterations = 3000;
  p.exec = Exec::kParallel;
  const auto a = nelder_mead_minimize(f, x0, s);
  const auto b = nelder_mead_minimize(f, x0, p);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.f, b.f);
  EXPECT_EQ(a.evaluations, b.evaluations);
}

TEST_P(Threads, FlatScan) {
  const std::vector<double> flats{0.0, 80.0};
  const auto a = scan_t_flat(device(), kPi / 4, 50.0, 4.545, flats, Exec::kSerial);
  const auto b = scan_t_flat(device(), kPi / 4, 50.0, 4.545, flats, Exec::kParallel);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].omega_upper, b[i].omega_upper);
    EXPECT_EQ(a[i].infidelity, b[i].infidelity);
    EXPECT_EQ(a[i].leakage, b[i].leakage);
  }
}

INSTANTIATE_TEST_SUITE_P(Parallel, Threads, ::testing::Values(1, 2, 4));

// The tomography fan-out has no serial switch; thread count must not matter.
TEST(Parallel, QptArtifactIndependentOfThreadCount) {
  ExperimentConfig e = default_experiment(ExperimentKind::kQpt);
  e.qpt.cp_model = "ideal";
  e.qpt.signal_noise = 0.01;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const RunResult a = run_experiment(DeviceConfig::main_device(), e);
  omp_set_num_threads(4);
  const RunResult b = run_experiment(DeviceConfig::main_device(), e);
  omp_set_num_threads(saved);
  ASSERT_EQ(a.artifacts.size(), b.artifacts.size());
  for (std::size_t i = 0; i < a.artifacts.size(); ++i) EXPECT_EQ(a.artifacts[i].content, b.artifacts[i].content);
}

}  // namespace
}  // namespace fluxcp
