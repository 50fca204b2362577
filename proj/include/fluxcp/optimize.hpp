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

#include <functional>
#include <limits>

#include "fluxcp/linalg.hpp"

namespace fluxcp {

struct NelderMeadOptions {
  double x_tol = 1e-8;      // simplex diameter, each coordinate scaled by max(1, |x|)
  double f_tol = 1e-10;     // spread of objective values, relative to their magnitude
  double f_target = -std::numeric_limits<double>::infinity();  // stop once reached
  int max_iterations = 2000;
  double rel_step = 0.05;   // initial simplex
  double abs_step = 1e-4;   // floor for coordinates near zero
  Exec exec = Exec::kSerial;  // vertex evaluations of the initial simplex and shrinks
};

struct NelderMeadResult {
  RVec x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;  // false on iteration exhaustion
};

// Reflection 1, expansion 2, contraction 0.5, shrink 0.5. Stops on the scaled
// diameter, on f_target, or on a flat simplex whose centroid value agrees.
// Throws NumericError for a NaN objective value.
NelderMeadResult nelder_mead_minimize(const std::function<double(const RVec&)>& f,
                                      const RVec& x0, const NelderMeadOptions& opts = {});

struct LeastSquaresResult {
  RVec x;
  RVec std_err;  // sqrt(diag(s^2 (J^T J)^-1)), s^2 = rss / (m - n)
  double rss = 0.0;
  bool converged = false;
};

// Levenberg-Marquardt with forward-difference Jacobian; `residual` fills a
// vector of length m.
LeastSquaresResult fit_least_squares(const std::function<void(const RVec&, RVec&)>& residual,
                                     const RVec& x0, int m);

}  // namespace fluxcp
