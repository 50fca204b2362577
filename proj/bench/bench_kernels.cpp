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

// Serial reference vs OpenMP kernel. Arg 0 runs serial, 1 parallel.

#include <benchmark/benchmark.h>

#include "fluxcp/benchmarking.hpp"
#include "fluxcp/calibration.hpp"
#include "fluxcp/config.hpp"
#include "fluxcp/metrics.hpp"
#include "fluxcp/ramsey.hpp"
#include "fluxcp/stark.hpp"

namespace {

using namespace fluxcp;

const Device& device() {
  static const Device d = Device::build(DeviceConfig::main_device().coupled, 1.3);
  return d;
}

Exec exec_of(const benchmark::State& s) { return s.range(0) ? Exec::kParallel : Exec::kSerial; }

void BM_ZzSweep(benchmark::State& state) {
  std::vector<double> f, om;
  for (int i = 0; i < 121; ++i) f.push_back(4.40 + 0.0025 * i);
  for (int i = 0; i < 121; ++i) om.push_back(0.0005 * i);
  for (auto _ : state) benchmark::DoNotOptimize(zz_sweep(device().geometry, f, om, exec_of(state)));
}
BENCHMARK(BM_ZzSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_IncoherentError(benchmark::State& state) {
  PulseProgram p;
  p.f_d = 4.545;
  p.t_rise = 10.0;
  p.t_flat = 123.0;
  p.amplitude = 0.05;
  const RwaModel m = device().rwa(p.f_d);
  const auto ops = build_collapse_operators(CoherenceTable::measured_average());
  for (auto _ : state) benchmark::DoNotOptimize(incoherent_gate_error(m, p, ops, kPi, {}, exec_of(state)));
}
BENCHMARK(BM_IncoherentError)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_ZzRamsey(benchmark::State& state) {
  const RwaDrive drive(device().rwa(4.65), 0.028);
  const auto t = linear_grid(40000.0, 81);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_zz_ramsey(drive, t, exec_of(state)));
}
BENCHMARK(BM_ZzRamsey)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SimultaneousRb(benchmark::State& state) {
  RbOptions o;
  o.n_random = 20;
  o.exec = exec_of(state);
  const auto a = QubitBackend::lindblad({182.5, 14.5}, 45.0);
  const auto b = QubitBackend::lindblad({128.5, 22.5}, 26.0);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_simultaneous_rb(a, b, o));
}
BENCHMARK(BM_SimultaneousRb)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Xeb(benchmark::State& state) {
  XebBackend be{QubitBackend::depolarizing(1e-3), QubitBackend::depolarizing(1e-3), CMat(), 0.99};
  XebOptions o;
  o.n_random = 20;
  o.exec = exec_of(state);
  for (auto _ : state) benchmark::DoNotOptimize(simulate_xeb(be, kPi, o, 6.7e-4, 6.7e-4));
}
BENCHMARK(BM_Xeb)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
