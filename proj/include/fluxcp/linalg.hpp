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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fluxcp {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline constexpr cplx kI{0.0, 1.0};

// Execution policy for kernels that have a parallel and a serial version.
enum class Exec { kSerial, kParallel };

// Library errors. The CLI maps InvalidInput to exit code 2 and
// NumericError to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

CMat kron(const CMat& a, const CMat& b);

// exp(-i 2 pi h t) for Hermitian h (GHz) and t (ns).
CMat hermitian_propagator(const CMat& h, double t);

double max_abs(const CMat& m);

// Wraps an angle to (-pi, pi].
double wrap_phase(double x);

// Pauli matrices and rotations exp(-i angle/2 sigma).
CMat pauli(char which);
CMat rotation(char axis, double angle);

}  // namespace fluxcp
