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


// fluxcp command-line driver: one subcommand per experiment kind.

#include <cstdio>
#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "fluxcp/experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

struct Options {
  std::string device;
  std::string experiment;
  std::string out = ".";
  std::string phi;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int threads = 0;
  bool print_config = false;
};

int run(fluxcp::ExperimentKind kind, const Options& o) {
  using namespace fluxcp;
  const DeviceConfig dev = o.device.empty() ? DeviceConfig::main_device() : load_device(o.device);
  ExperimentConfig exp = default_experiment(kind);
  if (!o.experiment.empty()) {
    exp = load_experiment(o.experiment);
    if (exp.kind != kind)
      throw ConfigError(o.experiment + ": kind is '" + kind_name(exp.kind) + "', subcommand is '" +
                        kind_name(kind) + "'");
  }
  if (o.seed_set) exp.seed = o.seed;
  if (!o.phi.empty()) exp.phi = parse_phase(o.phi);
  exp.validate();
  if (o.print_config) {
    std::cout << serialize(exp);
    return 0;
  }
  if (o.threads > 0) omp_set_num_threads(o.threads);
  const RunResult r = run_experiment(dev, exp);
  for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  write_artifacts(r, o.out);
  for (const auto& a : r.artifacts) std::cerr << "wrote " << o.out << "/" << a.name << "\n";
  std::cout << kind_name(kind) << ": " << r.summary << "\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace fluxcp;
  CLI::App app{"Two-fluxonium controlled-phase gate toolkit"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  Options o;
  ExperimentKind chosen = ExperimentKind::kSpectrum;
  for (ExperimentKind k : {ExperimentKind::kSpectrum, ExperimentKind::kZzMap, ExperimentKind::kCancel,
                           ExperimentKind::kGate, ExperimentKind::kCalibrate, ExperimentKind::kRb,
                           ExperimentKind::kXeb, ExperimentKind::kQpt, ExperimentKind::kZzRamsey}) {
    CLI::App* sub = app.add_subcommand(kind_name(k), "run a " + kind_name(k) + " experiment");
    sub->add_option("--device", o.device, "device config (built-in main device when omitted)");
    sub->add_option("--experiment", o.experiment, "experiment config (defaults for the kind when omitted)");
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "master seed (overrides the config)")
        ->each([&](const std::string&) { o.seed_set = true; });
    sub->add_option("--threads", o.threads, "worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--phi", o.phi, "target phase, e.g. pi or 3pi/4");
    sub->add_flag("--print-config", o.print_config, "print the effective experiment config and exit");
    sub->callback([&chosen, k] { chosen = k; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    return run(chosen, o);
  } catch (const InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}
