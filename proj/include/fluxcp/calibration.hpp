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

#include "fluxcp/metrics.hpp"
#include "fluxcp/optimize.hpp"

namespace fluxcp {

// Everything the drive models need about one device.
struct Device {
  LabeledSpectrum spectrum;
  FullModel full;
  DriveGeometry geometry;
  double eps_ratio = 1.0;

  static Device build(const CoupledSpec& spec, double eps_ratio);
  RwaModel rwa(double f_d) const { return rwa_model(geometry, f_d); }
  // Omega_11-21 <-> eps_A.
  double omega_upper(double eps_a) const { return eps_a * geometry.n_upper; }
  double eps_a(double omega_upper) const { return omega_upper / geometry.n_upper; }
};

struct CalibrationProblem {
  double phi = kPi;
  double t_rise = 10.0;
  double t_flat = 0.0;
  double sigma = 0.0;
  double f_d0 = 4.545;          // centre of the frequency window (GHz)
  double f_window = 0.005;      // +- (GHz)
  double omega_max = 0.1;       // bound on Omega_11-21 (GHz)
  double drag_max = 20.0;       // bound on |alpha| (ns)
  bool free_t_flat = true;      // fallback when phi is out of reach at fixed timing
  double t_flat_max = 400.0;
  double threshold = 1e-4;      // coherent 1 - F regarded as success
  bool full_model = true;       // refine and verify on the full model
  double search_dt = 0.01;      // full-model step during the search (ns)
  double rwa_dt = 0.25;         // RWA step during the search (ns)
  int max_iterations = 400;     // per Nelder-Mead stage
  // Warm start {Omega_11-21, alpha, f_d - f_d0}; skips the coarse grid.
  std::vector<double> start;

  void validate() const;
};

struct CalibrationResult {
  PulseProgram pulse;       // amplitude = eps_A, eps_ratio of the device
  double omega_upper = 0.0;
  GateReport report;        // final model, step-halving verified
  GateReport rwa_report;    // RWA model at the same parameters
  bool success = false;
  bool t_flat_freed = false;
  int evaluations = 0;
  int iterations = 0;       // Nelder-Mead iterations over all stages
  std::string diagnostics;
};

// Same pulse with amplitude eps_A replaced by Omega_11-21.
PulseProgram rwa_pulse(const Device& dev, const PulseProgram& p);

CalibrationResult calibrate_cp_gate(const Device& dev, const CalibrationProblem& prob);

// Coherent RWA / full-model reports for given parameters.
GateReport rwa_gate_report(const Device& dev, const PulseProgram& p, double phi,
                           const SolverOptions& opts = {});
GateReport full_gate_report(const Device& dev, const PulseProgram& p, double phi,
                            const SolverOptions& opts = {});

// Experimental timing for phi = k pi / 16.
struct Timing {
  double t_rise = 0.0;
  double t_flat = 0.0;
};
Timing experimental_timing(int k);

struct FlatScanPoint {
  double t_flat = 0.0;
  double omega_upper = 0.0;
  double infidelity = 0.0;
  double leakage = 0.0;
  double delta_phi = 0.0;
};

// RWA calibration (amplitude, DRAG, f_d within +-5 MHz of f_d0) at each
// t_flat of the grid, with t_flat held fixed.
std::vector<FlatScanPoint> scan_t_flat(const Device& dev, double phi, double t_rise, double f_d0,
                                       const std::vector<double>& t_flat,
                                       Exec exec = Exec::kParallel);

}  // namespace fluxcp
