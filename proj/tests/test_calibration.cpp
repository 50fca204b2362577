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
#include <random>

#include "fluxcp/calibration.hpp"
#include "fluxcp/optimize.hpp"

namespace fluxcp {
namespace {

const Device& main_device() {
  static const Device d = [] {
    CoupledSpec s;
    s.qubit_a = {1.051, 0.753, 5.263, kPi};
    s.qubit_b = {1.069, 0.771, 3.870, kPi};
    s.j_c = 0.248;
    return Device::build(s, 1.3);
  }();
  return d;
}

CalibrationProblem rwa_problem(int k) {
  CalibrationProblem pr;
  pr.phi = kPi * k / 16.0;
  const Timing t = experimental_timing(k);
  pr.t_rise = t.t_rise;
  pr.t_flat = t.t_flat;
  pr.full_model = false;
  return pr;
}

double rosenbrock(const RVec& x) {
  return 100.0 * std::pow(x(1) - x(0) * x(0), 2) + std::pow(1.0 - x(0), 2);
}

TEST(NelderMead, Quadratic) {
  RVec x0(1);
  x0 << 0.0;
  const auto r = nelder_mead_minimize([](const RVec& x) { return std::pow(x(0) - 2.0, 2); }, x0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x(0), 2.0, 1e-6);
}

TEST(NelderMead, Rosenbrock) {
  RVec x0(2);
  x0 << -1.2, 1.0;
  const auto r = nelder_mead_minimize(rosenbrock, x0);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x(0), 1.0, 1e-4);
  EXPECT_NEAR(r.x(1), 1.0, 1e-4);
}

TEST(NelderMead, ConstantStopsAtOnce) {
  RVec x0(3);
  x0 << 1.0, -2.0, 0.5;
  const auto r = nelder_mead_minimize([](const RVec&) { return 7.0; }, x0);
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.iterations, 0);
  EXPECT_EQ(r.evaluations, 5);  // four vertices plus the centroid
  EXPECT_EQ(r.x, x0);
}

TEST(NelderMead, NanObjectiveThrows) {
  RVec x0(1);
  x0 << 1.0;
  EXPECT_THROW(nelder_mead_minimize([](const RVec&) { return std::nan(""); }, x0), NumericError);
}

TEST(NelderMead, ExhaustionReturnsBestWithFlag) {
  RVec x0(2);
  x0 << -1.2, 1.0;
  NelderMeadOptions o;
  o.max_iterations = 5;
  const auto r = nelder_mead_minimize(rosenbrock, x0, o);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 5);
  EXPECT_LE(r.f, rosenbrock(x0));
  EXPECT_DOUBLE_EQ(r.f, rosenbrock(r.x));
}

TEST(NelderMead, NeverWorseThanStart) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 50; ++trial) {
    RVec x0(3);
    for (int i = 0; i < 3; ++i) x0(i) = u(rng);
    auto f = [](const RVec& x) {
      return std::sin(3 * x(0)) + std::cos(2 * x(1)) * x(2) + 0.1 * x.squaredNorm();
    };
    NelderMeadOptions o;
    o.max_iterations = 1 + trial;
    EXPECT_LE(nelder_mead_minimize(f, x0, o).f, f(x0));
  }
}

TEST(NelderMead, SerialEqualsParallel) {
  RVec x0(4);
  x0 << 0.3, -0.7, 1.1, 2.0;
  auto f = [](const RVec& x) { return (x.array() - 0.5).square().sum() + rosenbrock(x.head(2)); };
  NelderMeadOptions s, p;
  p.exec = Exec::kParallel;
  const auto a = nelder_mead_minimize(f, x0, s);
  const auto b = nelder_mead_minimize(f, x0, p);
  EXPECT_EQ(a.x, b.x);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Calibration, ProblemValidation) {
  CalibrationProblem pr;
  pr.phi = 0.0;
  EXPECT_THROW(pr.validate(), InvalidInput);
  pr.phi = kPi;
  pr.f_window = 0.006;
  EXPECT_THROW(pr.validate(), InvalidInput);
  pr.f_window = 0.005;
  pr.omega_max = INFINITY;
  EXPECT_THROW(pr.validate(), InvalidInput);
  pr.omega_max = 0.1;
  pr.start = {0.05};
  EXPECT_THROW(pr.validate(), InvalidInput);
  EXPECT_THROW(experimental_timing(0), InvalidInput);
  EXPECT_THROW(experimental_timing(17), InvalidInput);
}

TEST(Calibration, ExperimentalTimingTable) {
  EXPECT_EQ(experimental_timing(16).t_rise, 10.0);
  for (int k = 1; k < 16; ++k) {
    EXPECT_EQ(experimental_timing(k).t_rise, 50.0);
    if (k > 1) EXPECT_GT(experimental_timing(k).t_flat, experimental_timing(k - 1).t_flat);
  }
}

class AllPhases : public ::testing::TestWithParam<int> {};

TEST_P(AllPhases, RwaCalibrationMeetsThresholds) {
  const int k = GetParam();
  const CalibrationResult r = calibrate_cp_gate(main_device(), rwa_problem(k));
  EXPECT_TRUE(r.success) << r.diagnostics;
  EXPECT_LT(1.0 - r.report.fidelity, 1e-4);
  EXPECT_LT(r.report.leakage, 1e-4);
  EXPECT_LT(r.report.phase_error, 1e-5);
  EXPECT_LE(std::abs(r.pulse.f_d - 4.545), 0.005 + 1e-12);
  EXPECT_FALSE(r.t_flat_freed);
}

INSTANTIATE_TEST_SUITE_P(Calibration, AllPhases, ::testing::Range(1, 17));

TEST(Calibration, DeterministicAndFixedPoint) {
  const CalibrationProblem pr = rwa_problem(8);
  const CalibrationResult a = calibrate_cp_gate(main_device(), pr);
  const CalibrationResult b = calibrate_cp_gate(main_device(), pr);
  ASSERT_TRUE(a.success);
  EXPECT_EQ(a.pulse, b.pulse);
  EXPECT_EQ(a.evaluations, b.evaluations);

  CalibrationProblem warm = pr;
  warm.start = {a.omega_upper, a.pulse.drag, a.pulse.f_d - pr.f_d0};
  const CalibrationResult c = calibrate_cp_gate(main_device(), warm);
  EXPECT_LE(c.iterations, 5);
  EXPECT_TRUE(c.success);
  EXPECT_LE(1.0 - c.report.fidelity, 1.0 - a.report.fidelity + 1e-12);
}

TEST(Calibration, ZeroAmplitudeBoundFails) {
  CalibrationProblem pr = rwa_problem(8);
  pr.omega_max = 0.0;
  pr.free_t_flat = false;
  const CalibrationResult r = calibrate_cp_gate(main_device(), pr);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.omega_upper, 0.0);
  EXPECT_FALSE(r.diagnostics.empty());
}

TEST(Calibration, FreedPlateauWhenPhaseOutOfReach) {
  // Too little amplitude for pi at the short pi timing; a longer plateau helps.
  CalibrationProblem pr = rwa_problem(16);
  pr.omega_max = 0.03;
  pr.t_flat_max = 400.0;
  const CalibrationResult r = calibrate_cp_gate(main_device(), pr);
  EXPECT_TRUE(r.t_flat_freed) << r.diagnostics;
  EXPECT_GT(r.pulse.t_flat, pr.t_flat);
}

TEST(Calibration, HalfPiScanKeepsLeakageLow) {
  const auto& dev = main_device();
  const std::vector<double> flats{0.0, 50.0, 100.0, 150.0, 200.0};
  const auto pts = scan_t_flat(dev, kPi / 2, 50.0, 4.545, flats);
  ASSERT_EQ(pts.size(), flats.size());
  for (const auto& p : pts) {
    EXPECT_LT(p.leakage, 1e-4) << p.t_flat;
    EXPECT_LT(p.infidelity, 1e-4) << p.t_flat;
  }
  // Longer plateaus need less drive.
  for (size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i].omega_upper, pts[i - 1].omega_upper);
  const std::vector<double> two{0.0, 100.0};
  const auto serial = scan_t_flat(dev, kPi / 2, 50.0, 4.545, two, Exec::kSerial);
  EXPECT_EQ(serial[0].omega_upper, pts[0].omega_upper);
  EXPECT_EQ(serial[1].omega_upper, pts[2].omega_upper);
}

TEST(Calibration, ShortRiseScanHasSharpLeakageMinima) {
  std::vector<double> flats;
  for (double t = 60.0; t <= 200.0; t += 5.0) flats.push_back(t);
  const auto pts = scan_t_flat(main_device(), kPi, 10.0, 4.545, flats);
  double lo = 1.0, hi = 0.0, lo_at = 0.0;
  for (const auto& p : pts) {
    hi = std::max(hi, p.leakage);
    if (p.leakage < lo) lo = p.leakage, lo_at = p.t_flat;
  }
  EXPECT_GT(hi, 5e-3);
  EXPECT_LT(hi, 5e-2);
  EXPECT_LT(lo, 1e-6);
  // The minimum is narrow: 15 ns away leakage is back above 1e-5.
  for (const auto& p : pts)
    if (std::abs(p.t_flat - lo_at) >= 15.0) EXPECT_GT(p.leakage, 1e-5) << p.t_flat;
}

}  // namespace
}  // namespace fluxcp
