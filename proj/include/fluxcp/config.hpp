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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluxcp/coupled.hpp"
#include "fluxcp/lindblad.hpp"
#include "fluxcp/pulse.hpp"

namespace fluxcp {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

// Config errors carry the location (line/column or field path); the CLI maps
// them to exit code 2 like every InvalidInput.
class ConfigError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct DeviceConfig {
  std::string name = "device";
  CoupledSpec coupled;
  CoherenceTable coherence;
  double eps_ratio = 1.0;  // eps_B / eps_A of the shared drive port

  void validate() const;
  bool operator==(const DeviceConfig&) const = default;
  // The main two-fluxonium device with its measured coherence averages.
  static DeviceConfig main_device();
};

enum class ExperimentKind { kSpectrum, kZzMap, kCancel, kGate, kCalibrate, kRb, kXeb, kQpt, kZzRamsey };

std::string kind_name(ExperimentKind k);
// Throws ConfigError for unknown names.
ExperimentKind parse_kind(const std::string& s);

struct Grid {
  double start = 0.0;
  double stop = 0.0;
  int points = 1;
  std::vector<double> values() const;
  bool operator==(const Grid&) const = default;
};

struct CalibrationBlock {
  std::string timing = "experimental";  // or "fixed"
  double t_rise = 10.0;                 // used with "fixed"
  double t_flat = 0.0;
  bool free_t_flat = true;
  bool full_model = true;
  int max_iterations = 400;
  double threshold = 1e-4;
  bool operator==(const CalibrationBlock&) const = default;
};

struct QubitModel {
  std::string kind = "lindblad";  // ideal | depolarizing | lindblad
  double error_per_clifford = 0.0;
  double pulse_ns = 45.0;
  bool operator==(const QubitModel&) const = default;
};

struct RbBlock {
  std::vector<int> lengths{1, 5, 10, 20, 40, 70, 100, 150, 200};
  int n_random = 51;
  QubitModel qubit_a{"lindblad", 0.0, 45.0};
  QubitModel qubit_b{"lindblad", 0.0, 26.0};
  bool operator==(const RbBlock&) const = default;
};

struct XebBlock {
  std::vector<int> lengths{1, 3, 5, 10, 15, 20, 30, 40, 60};
  int n_random = 30;
  int shots = 4096;
  double excited_a = 0.69;
  double excited_b = 0.82;
  std::string cp_model = "lindblad";  // ideal | lindblad
  double cycle_depolarizing = 1.0;     // injected two-qubit depolarizing, 1: none
  bool operator==(const XebBlock&) const = default;
};

struct QptBlock {
  double excited_a = 0.69;
  double excited_b = 0.82;
  std::array<double, 8> beta{1.0, 0.0, -0.3, 0.0, -0.4, 0.0, 0.2, 0.0};  // re/im of II, IZ, ZI, ZZ
  double signal_noise = 0.0;
  std::string cp_model = "lindblad";  // ideal | lindblad
  bool operator==(const QptBlock&) const = default;
};

struct RamseyBlock {
  std::string model = "floquet";  // floquet | rwa
  double t_max = 40000.0;         // per-block evolution time, ns
  int points = 81;
  bool operator==(const RamseyBlock&) const = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kSpectrum;
  std::optional<std::uint64_t> seed;
  double phi = kPi;
  std::optional<PulseProgram> pulse;      // amplitude = eps_A (GHz)
  std::optional<double> f_d;              // GHz
  std::optional<double> omega_upper;      // Omega_11-21, GHz
  std::optional<Grid> f_d_grid;
  std::optional<Grid> omega_grid;
  double drive_eps = 0.01;                // spectrum table: eps_A (GHz)
  bool incoherent = false;                // gate: add the Lindblad error
  CalibrationBlock calibration;
  RbBlock rb;
  XebBlock xeb;
  QptBlock qpt;
  RamseyBlock ramsey;
  std::string output_name;                // artifact stem, kind name when empty

  void validate() const;  // kind-specific requirements
  std::string stem() const { return output_name.empty() ? kind_name(kind) : output_name; }
  bool operator==(const ExperimentConfig&) const = default;
};

// "pi", "pi/2", "3pi/4", "-pi/8", "1.5707". Throws ConfigError.
double parse_phase(const std::string& s);

DeviceConfig parse_device(const std::string& text);
ExperimentConfig parse_experiment(const std::string& text);
std::string serialize(const DeviceConfig& d);
std::string serialize(const ExperimentConfig& e);

DeviceConfig load_device(const std::string& path);
ExperimentConfig load_experiment(const std::string& path);

// FNV-1a 64-bit, rendered as 16 hex digits.
std::string fnv1a_hex(const std::string& data);

}  // namespace fluxcp
