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

#include "fluxcp/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace fluxcp {

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat hermitian_propagator(const CMat& h, double t) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  CVec phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k)
    phases(k) = std::exp(-kI * kTwoPi * es.eigenvalues()(k) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double max_abs(const CMat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double wrap_phase(double x) {
  double y = std::remainder(x, kTwoPi);
  if (y <= -kPi) y += kTwoPi;
  return y;
}

CMat pauli(char which) {
  CMat p(2, 2);
  switch (which) {
    case 'I': p << 1, 0, 0, 1; break;
    case 'X': p << 0, 1, 1, 0; break;
    case 'Y': p << 0, -kI, kI, 0; break;
    case 'Z': p << 1, 0, 0, -1; break;
    default: throw InvalidInput(std::string("unknown Pauli '") + which + "'");
  }
  return p;
}

CMat rotation(char axis, double angle) {
  return std::cos(angle / 2) * pauli('I') - kI * std::sin(angle / 2) * pauli(axis);
}

}  // namespace fluxcp
