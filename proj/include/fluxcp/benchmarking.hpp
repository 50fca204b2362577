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
#include <vector>

#include "fluxcp/clifford.hpp"
#include "fluxcp/lindblad.hpp"

namespace fluxcp {

// SplitMix64 finalizer; derives independent per-job seeds from one master seed.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t job);

struct DecayFit {
  double a = 0.0, p = 1.0, b = 0.0;
  double a_err = 0.0, p_err = 0.0, b_err = 0.0;
};

// Least-squares fit of A p^m + B; `baseline` seeds B (and identifies the
// degenerate constant case). With free_baseline = false, B stays at the
// baseline. Throws NumericError for fewer than 4 distinct lengths, constant
// data at the baseline, or p outside (0, 1].
DecayFit fit_exponential_decay(const std::vector<double>& lengths,
                               const std::vector<double>& fidelity, double baseline,
                               bool free_baseline = true);

// r_cycle = ((N-1)/N)(1-p).
double cycle_error(double p, int n_dim);
// r^P = ((N+1)/N) r and its inverse.
double pauli_error(double r, int n_dim);
double average_error(double r_pauli, int n_dim);
// Solves (1 - r^P_cycle) = (1 - r^P_A)(1 - r^P_B)(1 - r^P_CP) for r^P_CP.
double cp_pauli_error(double rp_cycle, double rp_a, double rp_b);

// Single-qubit gate channels (4 x 4 superoperators, row-major vec).
class QubitBackend {
 public:
  static QubitBackend ideal();
  // Depolarizing channel with average error r after every Clifford.
  static QubitBackend depolarizing(double r_per_clifford);
  // Flat-top pulses (t_flat = 0) of the given length with T1/T2E decay; idles decay too.
  static QubitBackend lindblad(const QubitCoherence& c, double pulse_ns);

  double clifford_duration(int k) const;
  // Clifford k followed by idling until `slot_ns`.
  CMat clifford_channel(int k, double slot_ns) const;

 private:
  enum class Kind { kIdeal, kDepolarizing, kLindblad } kind_ = Kind::kIdeal;
  double r_ = 0.0;
  double pulse_ns_ = 0.0;
  QubitCoherence coherence_;
  std::vector<CMat> clifford_;  // 24 channels without padding
};

struct BenchmarkRecord {
  std::vector<int> lengths;
  std::vector<double> fidelity;
  DecayFit fit;
  double error = 0.0;        // average gate (or cycle) error
  double error_err = 0.0;
  double pauli_error = 0.0;
};

struct RbOptions {
  std::vector<int> lengths{1, 5, 10, 20, 40, 70, 100, 150, 200};
  int n_random = 51;
  std::uint64_t seed = 1;
  Exec exec = Exec::kParallel;
};

// Survival of |0> after m random Cliffords plus the recovery gate.
BenchmarkRecord simulate_rb(const QubitBackend& q, const RbOptions& o);
// Both qubits driven together; each Clifford slot lasts as long as the longer
// of the two. Returns the records of A and B.
std::array<BenchmarkRecord, 2> simulate_simultaneous_rb(const QubitBackend& a,
                                                        const QubitBackend& b,
                                                        const RbOptions& o);

// Two-qubit cycle model for XEB: simultaneous single-qubit Cliffords, then
// the CP channel (16 x 16 on the computational block) and an optional
// two-qubit depolarizing channel with parameter `cycle_depolarizing`.
// Trace lost by the CP channel (leakage) is returned to |11>.
struct XebBackend {
  QubitBackend a = QubitBackend::ideal();
  QubitBackend b = QubitBackend::ideal();
  CMat cp_channel;                 // empty: ideal CP(phi)
  double cycle_depolarizing = 1.0;  // 1: none
};

struct XebOptions {
  std::vector<int> lengths{1, 3, 5, 10, 15, 20, 30, 40, 60};
  int n_random = 30;
  int shots = 4096;          // 0: exact probabilities
  double excited_a = 0.69;   // initialization state
  double excited_b = 0.82;
  std::uint64_t seed = 1;
  Exec exec = Exec::kParallel;
};

struct XebRecord {
  BenchmarkRecord cycle;     // sequence fidelity per length, r_cycle in `error`
  double rp_cycle = 0.0;
  double rp_a = 0.0, rp_b = 0.0;
  double rp_cp = 0.0;
  double r_cp = 0.0;
  double r_cp_err = 0.0;
};

// Cross entropy H(p, q) = -sum p log q, with q floored at 1e-9.
double cross_entropy(const RVec& p, const RVec& q);

XebRecord simulate_xeb(const XebBackend& backend, double phi, const XebOptions& o, double rp_a,
                       double rp_b);

// Applies a single-qubit superoperator to qubit 0 (A) or 1 (B) of a 4 x 4 state.
CMat apply_local(const CMat& rho, const CMat& s, int qubit);

}  // namespace fluxcp
