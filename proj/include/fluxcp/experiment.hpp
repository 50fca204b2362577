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

#include "fluxcp/config.hpp"

namespace fluxcp {

struct Artifact {
  std::string name;     // file name inside the output directory
  std::string content;  // JSON or CSV, metadata header included
};

struct RunResult {
  std::vector<Artifact> artifacts;
  int exit_code = 0;    // 0, or 4 when a calibration misses its threshold
  std::string summary;  // one line for the terminal
  std::vector<std::string> warnings;
};

// Hash of the canonical device and experiment text.
std::string config_hash(const DeviceConfig& dev, const ExperimentConfig& exp);

// A runnable configuration for each kind on the main device; rb, xeb and
// qpt get seed 1.
ExperimentConfig default_experiment(ExperimentKind kind);

// Runs one experiment in memory. Errors propagate (InvalidInput,
// NumericError) with the experiment kind in the message.
RunResult run_experiment(const DeviceConfig& dev, const ExperimentConfig& exp);

// Writes every artifact to a temporary name first and renames once all
// writes succeeded; on failure the temporaries are removed.
void write_artifacts(const RunResult& r, const std::string& out_dir);

}  // namespace fluxcp
