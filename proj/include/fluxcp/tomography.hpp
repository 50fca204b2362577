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
#include <random>
#include <string>
#include <vector>

#include "fluxcp/clifford.hpp"
#include "fluxcp/optimize.hpp"

namespace fluxcp {

// Simultaneous single-qubit pulses; `a` acts on qubit A.
struct TwoQubitPulse {
  PulseOp a, b;
  std::string label() const;  // e.g. "X-pi/2 Ypi/2", A token first
  CMat unitary() const;       // kron(U_A, U_B)
};

// Token of one pulse: I, Xpi, Xpi/2, X-pi/2, Ypi/2, Y-pi/2, ...
std::string pulse_token(const PulseOp& p);

// The 36 state-tomography pulses (B outer, A inner).
const std::vector<TwoQubitPulse>& tomography_pulses();
// The 16 QPT preparation pulses.
const std::vector<TwoQubitPulse>& preparation_pulses();
// II, IXpi, XpiI, XpiXpi.
const std::vector<TwoQubitPulse>& calibration_pulses();
// Index of a tomography pulse by label, -1 when unknown.
int tomography_index(const std::string& label);

// Measured signal Tr(M rho), M = b_II II + b_IZ IZ + b_ZI ZI + b_ZZ ZZ.
struct MeasurementOperator {
  cplx ii{1.0, 0.0}, iz{0.0, 0.0}, zi{0.0, 0.0}, zz{0.0, 0.0};
  CMat matrix() const;
};

cplx predict_signal(const MeasurementOperator& op, const CMat& rho, const TwoQubitPulse& p);

// Solves for the four coefficients from the calibration-pulse signals on a
// known initial state. NumericError when <IZ>, <ZI> or <ZZ> vanishes.
MeasurementOperator calibrate_measurement_operator(const std::array<cplx, 4>& signals,
                                                   const CMat& rho_init);

struct TomographyRecord {
  std::string pulse;  // tomography pulse label
  cplx value;
};

// Lower-triangular Cholesky map t (16 reals) -> rho = T^+ T / Tr(T^+ T).
CMat rho_from_cholesky(const RVec& t);
// Inverse map (rho regularized by 1e-9 I).
RVec cholesky_from_rho(const CMat& rho);

// Linear-inversion estimate, eigenvalues clipped at 0 and renormalized.
// NumericError when the records do not determine rho.
CMat linear_state_estimate(const std::vector<TomographyRecord>& records,
                           const MeasurementOperator& op);

struct StateEstimate {
  CMat rho;
  double residual = 0.0;  // sum |predicted - measured|^2
  int iterations = 0;
};

// Least-squares likelihood over the Cholesky parameters, Nelder-Mead from
// the linear estimate. Records are sorted by pulse first.
StateEstimate mle_state_tomography(const std::vector<TomographyRecord>& records,
                                   const MeasurementOperator& op);

// Two-qubit Paulis P = kron(sigma_A, sigma_B) ordered II, IX, IY, IZ, XI, ..., ZZ.
const std::vector<CMat>& pauli_basis();
const std::vector<std::string>& pauli_labels();

// Linear inversion of E(rho_j) = sum chi_mn P_m rho_j P_n^+ (unnormalized
// Paulis, Tr chi = 1 for trace-preserving maps).
CMat process_tomography(const std::vector<CMat>& inputs, const std::vector<CMat>& outputs);
CMat apply_chi(const CMat& chi, const CMat& rho);
CMat chi_from_kraus(const std::vector<CMat>& kraus);
CMat chi_from_unitary(const CMat& u);
// (d Tr(chi^+ chi_ideal) + 1) / (d + 1), d = 4.
double chi_fidelity(const CMat& chi, const CMat& chi_ideal);

// Kraus operators of a random CPTP map on two qubits (Stinespring isometry
// from a QR factorization).
std::vector<CMat> random_cptp_kraus(std::mt19937_64& rng, int n_kraus);

// Preparation pulses applied to rho_init.
std::vector<CMat> prepared_inputs(const CMat& rho_init);

}  // namespace fluxcp
