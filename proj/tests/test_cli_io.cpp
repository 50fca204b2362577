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
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fluxcp/experiment.hpp"
#include "json.hpp"

namespace fluxcp {
namespace {

namespace fs = std::filesystem;

const std::string kConfigs = FLUXCP_CONFIG_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fluxcp_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

// Exit status of the CLI; stdout/stderr are discarded.
int cli(const std::string& args) {
  const std::string cmd = std::string(FLUXCP_CLI) + " " + args + " >/dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

DeviceConfig random_device(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.1, 6.0);
  std::uniform_real_distribution<double> t(1.0, 500.0);
  DeviceConfig d;
  d.name = "dev" + std::to_string(rng() % 1000);
  d.coupled.qubit_a = {u(rng), u(rng), u(rng), u(rng)};
  d.coupled.qubit_b = {u(rng), u(rng), u(rng), u(rng)};
  d.coupled.j_c = 0.1 * u(rng);
  d.coupled.levels_per_qubit = 4 + int(rng() % 3);
  d.coupled.basis_dim = 20 + int(rng() % 100);
  auto time = [&] { return rng() % 5 == 0 ? INFINITY : t(rng); };
  d.coherence = {time(), time(), time(), time(), time(), time()};
  d.eps_ratio = u(rng);
  return d;
}

ExperimentConfig random_experiment(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ExperimentConfig e;
  e.kind = ExperimentKind(rng() % 9);
  if (rng() % 2) e.seed = rng();
  e.phi = 0.01 + 6.2 * u(rng);
  if (rng() % 2) {
    PulseProgram p;
    p.f_d = 4.0 + u(rng);
    p.t_rise = 1.0 + 60.0 * u(rng);
    p.t_flat = 200.0 * u(rng);
    p.sigma = rng() % 2 ? 0.0 : 10.0 * u(rng);
    p.amplitude = 0.1 * u(rng);
    p.drag = u(rng) - 0.5;
    p.eps_ratio = 2.0 * u(rng);
    p.frame_phases = {u(rng) * 6, -u(rng) * 6};
    e.pulse = p;
  }
  if (rng() % 2) e.f_d = 4.0 + u(rng);
  if (rng() % 2) e.omega_upper = 0.1 * u(rng);
  if (rng() % 2) e.f_d_grid = Grid{4.4, 4.4 + u(rng), 2 + int(rng() % 50)};
  if (rng() % 2) e.omega_grid = Grid{0.0, 0.1 * u(rng), 2 + int(rng() % 50)};
  e.drive_eps = 0.05 * u(rng);
  e.incoherent = rng() % 2;
  e.calibration.timing = rng() % 2 ? "fixed" : "experimental";
  e.calibration.t_rise = 5.0 + 50.0 * u(rng);
  e.calibration.t_flat = 100.0 * u(rng);
  e.calibration.free_t_flat = rng() % 2;
  e.calibration.full_model = rng() % 2;
  e.calibration.max_iterations = 1 + int(rng() % 1000);
  e.calibration.threshold = 1e-6 + u(rng) * 1e-3;
  e.rb.lengths = {0, 2, 7, 11 + int(rng() % 100)};
  e.rb.n_random = 1 + int(rng() % 60);
  e.rb.qubit_a = {"depolarizing", 0.01 * u(rng), 10.0 + u(rng)};
  e.rb.qubit_b = {rng() % 2 ? "ideal" : "lindblad", 0.0, 20.0 + u(rng)};
  e.xeb.lengths = {1, 2, 4, 8, 16 + int(rng() % 10)};
  e.xeb.n_random = 1 + int(rng() % 40);
  e.xeb.shots = int(rng() % 10000);
  e.xeb.excited_a = u(rng);
  e.xeb.excited_b = u(rng);
  e.xeb.cp_model = rng() % 2 ? "ideal" : "lindblad";
  e.xeb.cycle_depolarizing = u(rng);
  e.qpt.excited_a = u(rng);
  e.qpt.excited_b = u(rng);
  for (double& b : e.qpt.beta) b = u(rng) - 0.5;
  e.qpt.signal_noise = 0.01 * u(rng);
  e.qpt.cp_model = rng() % 2 ? "ideal" : "lindblad";
  e.ramsey.model = rng() % 2 ? "rwa" : "floquet";
  e.ramsey.t_max = 1000.0 + 1e5 * u(rng);
  e.ramsey.points = 8 + int(rng() % 200);
  if (rng() % 3 == 0) e.output_name = "run" + std::to_string(rng() % 100);
  // Fill whatever the kind requires.
  switch (e.kind) {
    case ExperimentKind::kZzMap:
      if (!e.f_d_grid) e.f_d_grid = Grid{4.4, 4.7, 7};
      if (!e.omega_grid) e.omega_grid = Grid{0.0, 0.05, 6};
      break;
    case ExperimentKind::kCancel:
    case ExperimentKind::kZzRamsey:
      if (!e.f_d) e.f_d = 4.65;
      break;
    case ExperimentKind::kGate:
      if (!e.pulse) e.pulse = PulseProgram{4.545, 10.0, 123.0, 0.0, 0.05, 0.0, 1.3, {0.0, 0.0}};
      break;
    case ExperimentKind::kRb:
    case ExperimentKind::kXeb:
    case ExperimentKind::kQpt:
      if (!e.seed) e.seed = rng();
      break;
    default: break;
  }
  return e;
}

TEST(Config, BundledDeviceLoadsAndReproducesQubitA) {
  const DeviceConfig d = load_device(kConfigs + "/device_main.cfg");
  EXPECT_EQ(d, DeviceConfig::main_device());
  ExperimentConfig e = default_experiment(ExperimentKind::kSpectrum);
  const RunResult r = run_experiment(d, e);
  const auto j = nlohmann::json::parse(r.artifacts.at(0).content);
  EXPECT_NEAR(j["qubit_a"]["f01_GHz"].get<double>(), 0.2172, 1e-3);
  EXPECT_NO_THROW(load_device(kConfigs + "/device_second.cfg"));
}

TEST(Config, BundledExperimentsLoadAndValidate) {
  for (const char* name : {"spectrum", "zz-map", "cancel", "gate", "calibrate", "rb", "xeb", "qpt",
                           "zz-ramsey", "xeb_fast"}) {
    SCOPED_TRACE(name);
    ExperimentConfig e;
    ASSERT_NO_THROW(e = load_experiment(kConfigs + "/" + name + ".cfg"));
    EXPECT_NO_THROW(e.validate());
  }
}

TEST(Config, DeviceRoundTripOnRandomConfigs) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const DeviceConfig d = random_device(rng);
    const std::string text = serialize(d);
    const DeviceConfig back = parse_device(text);
    EXPECT_EQ(back, d);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Config, ExperimentRoundTripOnRandomConfigs) {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 300; ++i) {
    const ExperimentConfig e = random_experiment(rng);
    const std::string text = serialize(e);
    ExperimentConfig back;
    ASSERT_NO_THROW(back = parse_experiment(text)) << text;
    EXPECT_EQ(back, e);
    EXPECT_EQ(serialize(back), text);
  }
}

TEST(Config, NegativeChargingEnergyCitesFieldPath) {
  std::string text = serialize(DeviceConfig::main_device());
  const auto at = text.find("\"E_C_GHz\": 1.051");
  ASSERT_NE(at, std::string::npos);
  text.replace(at, 16, "\"E_C_GHz\": -1");
  const std::string msg = message_of([&] { parse_device(text); });
  EXPECT_NE(msg.find("qubit_a.E_C_GHz"), std::string::npos) << msg;
  EXPECT_NE(msg.find("> 0"), std::string::npos) << msg;
}

TEST(Config, UnknownKeyRejectedWithLocation) {
  auto j = nlohmann::ordered_json::parse(serialize(DeviceConfig::main_device()));
  j["qubit_b"]["E_X_GHz"] = 1.0;
  const std::string msg = message_of([&] { parse_device(j.dump(2)); });
  EXPECT_NE(msg.find("qubit_b"), std::string::npos) << msg;
  EXPECT_NE(msg.find("E_X_GHz"), std::string::npos) << msg;
}

TEST(Config, SyntaxErrorReportsLineAndColumn) {
  const std::string msg = message_of([] { parse_experiment("{\n  \"kind\": \"rb\",\n  \"seed\": ,\n}\n"); });
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("column"), std::string::npos) << msg;
}

TEST(Config, SchemaVersionRequired) {
  EXPECT_THROW(parse_experiment("{\"kind\": \"rb\", \"seed\": 1}"), ConfigError);
  EXPECT_THROW(parse_experiment("{\"schema_version\": 2, \"kind\": \"rb\", \"seed\": 1}"), ConfigError);
  EXPECT_NO_THROW(parse_experiment("{\"schema_version\": 1, \"kind\": \"rb\", \"seed\": 1}"));
}

TEST(Config, KindSpecificRequirements) {
  ExperimentConfig e = default_experiment(ExperimentKind::kXeb);
  e.seed.reset();
  EXPECT_THROW(e.validate(), ConfigError);
  e = default_experiment(ExperimentKind::kGate);
  EXPECT_THROW(e.validate(), ConfigError);
  e = default_experiment(ExperimentKind::kZzMap);
  e.omega_grid.reset();
  EXPECT_THROW(e.validate(), ConfigError);
}

TEST(Config, PhaseStrings) {
  EXPECT_DOUBLE_EQ(parse_phase("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_phase("pi/2"), kPi / 2);
  EXPECT_DOUBLE_EQ(parse_phase("3pi/4"), 3 * kPi / 4);
  EXPECT_DOUBLE_EQ(parse_phase("-pi/8"), -kPi / 8);
  EXPECT_DOUBLE_EQ(parse_phase("1.5707"), 1.5707);
  for (const char* bad : {"", "pie", "pi/0", "2x", "nan"}) EXPECT_THROW(parse_phase(bad), ConfigError) << bad;
}

TEST(Config, FuzzedInputsFailCleanly) {
  const std::string seeds[] = {serialize(DeviceConfig::main_device()),
                               serialize(default_experiment(ExperimentKind::kXeb)),
                               slurp(kConfigs + "/gate.cfg")};
  std::mt19937_64 rng(77);
  const std::string alphabet = "{}[]\":,-+.eE0123456789 \nabcnulltrue";
  int rejected = 0;
  for (int i = 0; i < 3000; ++i) {
    std::string s = seeds[i % 3];
    const int edits = 1 + int(rng() % 4);
    for (int k = 0; k < edits && !s.empty(); ++k) {
      const std::size_t at = rng() % s.size();
      switch (rng() % 4) {
        case 0: s[at] = alphabet[rng() % alphabet.size()]; break;
        case 1: s.erase(at, 1 + rng() % 8); break;
        case 2: s.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
        default: s.resize(at); break;
      }
    }
    try {
      if (i % 3 == 0) parse_device(s).validate();
      else parse_experiment(s).validate();
    } catch (const ConfigError&) {
      ++rejected;
    } catch (const std::exception& e) {
      ADD_FAILURE() << "unstructured error " << e.what() << " on:\n" << s;
    }
  }
  EXPECT_GT(rejected, 2000);
}

TEST(Config, HashTracksContent) {
  const DeviceConfig d = DeviceConfig::main_device();
  ExperimentConfig e = default_experiment(ExperimentKind::kRb);
  const std::string h = config_hash(d, e);
  EXPECT_EQ(h.size(), 16u);
  EXPECT_EQ(config_hash(d, e), h);
  e.seed = 2;
  EXPECT_NE(config_hash(d, e), h);
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Experiment, ZzMapHasZeroCrossingNearCancellationPoint) {
  const RunResult r =
      run_experiment(load_device(kConfigs + "/device_main.cfg"), load_experiment(kConfigs + "/zz-map.cfg"));
  ASSERT_EQ(r.artifacts.size(), 1u);
  std::istringstream in(r.artifacts[0].content);
  std::string line;
  std::vector<std::pair<double, double>> row;  // (f_d, xi) at Omega = 30 MHz
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      EXPECT_EQ(line, "f_d_GHz,omega_upper_GHz,xi_zz_MHz");
      header = true;
      continue;
    }
    double f, om, xi;
    char c1, c2;
    std::istringstream ls(line);
    ls >> f >> c1 >> om >> c2 >> xi;
    if (std::abs(om - 0.03) < 1e-9) row.emplace_back(f, xi);
  }
  ASSERT_EQ(row.size(), 61u);
  // Drive-induced ZZ dominates near the transition; the static part wins far above it.
  EXPECT_GT(row.front().second, 0.0);
  EXPECT_LT(row.back().second, 0.0);
  int crossings = 0;
  double at = 0.0;
  for (std::size_t i = 1; i < row.size(); ++i)
    if ((row[i - 1].second < 0) != (row[i].second < 0)) {
      ++crossings;
      at = row[i - 1].first - row[i - 1].second * (row[i].first - row[i - 1].first) /
                                  (row[i].second - row[i - 1].second);
    }
  EXPECT_EQ(crossings, 1);
  EXPECT_NEAR(at, 4.65, 0.02);
}

TEST(Experiment, ArtifactsCarryMetadata) {
  const RunResult r = run_experiment(DeviceConfig::main_device(), load_experiment(kConfigs + "/xeb_fast.cfg"));
  ASSERT_EQ(r.artifacts.size(), 2u);
  const auto j = nlohmann::json::parse(r.artifacts[0].content);
  EXPECT_EQ(j["metadata"]["tool_version"], kToolVersion);
  EXPECT_EQ(j["metadata"]["seed"], 1);
  EXPECT_EQ(j["metadata"]["config_hash"].get<std::string>().size(), 16u);
  EXPECT_EQ(r.artifacts[1].content.rfind("# tool_version=", 0), 0u);
  EXPECT_EQ(r.artifacts[0].name, "xeb_fast.json");
}

TEST(Cli, ExitCodes) {
  const fs::path out = scratch("codes");
  const std::string o = " --out " + out.string();
  EXPECT_EQ(cli("--version"), 0);
  EXPECT_EQ(cli("no-such-command"), 2);
  EXPECT_EQ(cli("spectrum --no-such-flag"), 2);
  EXPECT_EQ(cli("spectrum --device /nonexistent.cfg" + o), 2);
  EXPECT_EQ(cli("xeb --experiment " + kConfigs + "/rb.cfg" + o), 2);  // kind mismatch
  EXPECT_EQ(cli("calibrate --phi 0" + o), 2);

  std::string bad = slurp(kConfigs + "/device_main.cfg");
  bad.replace(bad.find("1.051"), 5, "-1");
  std::ofstream(out / "bad.cfg") << bad;
  EXPECT_EQ(cli("spectrum --device " + (out / "bad.cfg").string() + o), 2);
  EXPECT_FALSE(fs::exists(out / "spectrum.json"));

  EXPECT_EQ(cli("spectrum --device " + kConfigs + "/device_main.cfg" + o), 0);
  EXPECT_TRUE(fs::exists(out / "spectrum.json"));
  EXPECT_TRUE(fs::exists(out / "spectrum_levels.csv"));
}

TEST(Cli, NumericFailureExitsThree) {
  // A drive far beyond the model's validity breaks the adaptive integrator.
  const fs::path out = scratch("numeric");
  auto j = nlohmann::ordered_json::parse(slurp(kConfigs + "/gate.cfg"));
  j["pulse"]["amplitude_GHz"] = 1e6;
  std::ofstream(out / "huge.cfg") << j.dump(2);
  EXPECT_EQ(cli("gate --experiment " + (out / "huge.cfg").string() + " --out " + (out / "res").string()), 3);
  EXPECT_FALSE(fs::exists(out / "res" / "gate.json"));
}

TEST(Cli, CalibrationMissExitsFour) {
  const fs::path out = scratch("miss");
  auto j = nlohmann::ordered_json::parse(slurp(kConfigs + "/calibrate.cfg"));
  j["calibration"]["full_model"] = false;
  j["calibration"]["max_iterations"] = 2;
  j["calibration"]["threshold"] = 1e-12;
  std::ofstream(out / "miss.cfg") << j.dump(2);
  EXPECT_EQ(cli("calibrate --experiment " + (out / "miss.cfg").string() + " --out " + out.string()), 4);
  EXPECT_TRUE(fs::exists(out / "calibrate.json"));
}

TEST(Cli, XebRunTwiceIsByteIdentical) {
  const fs::path a = scratch("det_a"), b = scratch("det_b");
  const std::string args = "xeb --phi pi --seed 7 --experiment " + kConfigs + "/xeb_fast.cfg --out ";
  ASSERT_EQ(cli(args + a.string()), 0);
  ASSERT_EQ(cli(args + b.string() + " --threads 1"), 0);
  for (const char* f : {"xeb_fast.json", "xeb_fast_decay.csv"}) {
    const std::string sa = slurp(a / f);
    EXPECT_FALSE(sa.empty()) << f;
    EXPECT_EQ(sa, slurp(b / f)) << f;
  }
  const auto j = nlohmann::json::parse(slurp(a / "xeb_fast.json"));
  EXPECT_EQ(j["metadata"]["seed"], 7);
}

TEST(Cli, PrintConfigRoundTrips) {
  const fs::path out = scratch("print");
  const std::string cmd = std::string(FLUXCP_CLI) + " rb --seed 5 --print-config > " + (out / "rb.cfg").string();
  ASSERT_EQ(std::system(cmd.c_str()), 0);
  ExperimentConfig want = default_experiment(ExperimentKind::kRb);
  want.seed = 5;
  EXPECT_EQ(load_experiment((out / "rb.cfg").string()), want);
}

}  // namespace
}  // namespace fluxcp
