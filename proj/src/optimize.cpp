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

#include "fluxcp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace fluxcp {

NelderMeadResult nelder_mead_minimize(const std::function<double(const RVec&)>& f,
                                      const RVec& x0, const NelderMeadOptions& opts) {
  const int n = int(x0.size());
  if (n == 0) throw InvalidInput("Nelder-Mead needs at least one parameter");
  NelderMeadResult res;
  auto eval = [&](const RVec& x) {
    const double v = f(x);
    if (std::isnan(v)) throw NumericError("objective returned NaN");
    return v;
  };

  std::vector<RVec> pts(n + 1, x0);
  for (int i = 0; i < n; ++i) {
    const double step = std::abs(x0(i)) * opts.rel_step;
    pts[i + 1](i) += std::max(step, opts.abs_step);
  }
  std::vector<double> vals(n + 1);
  auto eval_all = [&](int from) {
    if (opts.exec == Exec::kParallel) {
      std::vector<double> out(n + 1);
      bool nan = false;
#pragma omp parallel for schedule(dynamic)
      for (int k = from; k <= n; ++k) {
        out[k] = f(pts[k]);
        if (std::isnan(out[k])) {
#pragma omp atomic write
          nan = true;
        }
      }
      if (nan) throw NumericError("objective returned NaN");
      for (int k = from; k <= n; ++k) vals[k] = out[k];
    } else {
      for (int k = from; k <= n; ++k) vals[k] = eval(pts[k]);
    }
    res.evaluations += n + 1 - from;
  };
  eval_all(0);

  std::vector<int> order(n + 1);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<RVec> p2;
    std::vector<double> v2;
    for (int k : order) p2.push_back(pts[k]), v2.push_back(vals[k]);
    pts.swap(p2);
    vals.swap(v2);
  };
  auto flat = [&](double lo, double hi) {
    return hi - lo <= opts.f_tol * std::max(std::abs(lo), std::abs(hi));
  };
  auto done = [&] {
    if (vals[0] <= opts.f_target) return true;
    double diam = 0.0;
    for (int k = 1; k <= n; ++k)
      for (int i = 0; i < n; ++i)
        diam = std::max(diam, std::abs(pts[k](i) - pts[0](i)) / std::max(1.0, std::abs(pts[0](i))));
    if (diam <= opts.x_tol) return true;
    if (!flat(vals[0], vals[n])) return false;
    // Equal vertex values can straddle a minimum; the centroid tells them
    // apart from a plateau.
    RVec c = RVec::Zero(n);
    for (const RVec& p : pts) c += p;
    const double fc = eval(c / double(n + 1));
    ++res.evaluations;
    return flat(std::min(vals[0], fc), std::max(vals[n], fc));
  };

  sort_simplex();
  while (!done()) {
    if (res.iterations >= opts.max_iterations) {
      res.x = pts[0];
      res.f = vals[0];
      res.converged = false;
      return res;
    }
    ++res.iterations;
    RVec centroid = RVec::Zero(n);
    for (int k = 0; k < n; ++k) centroid += pts[k];
    centroid /= n;
    const RVec& worst = pts[n];

    const RVec xr = centroid + (centroid - worst);
    const double fr = eval(xr);
    ++res.evaluations;
    if (fr < vals[0]) {
      const RVec xe = centroid + 2.0 * (centroid - worst);
      const double fe = eval(xe);
      ++res.evaluations;
      if (fe < fr) pts[n] = xe, vals[n] = fe;
      else pts[n] = xr, vals[n] = fr;
    } else if (fr < vals[n - 1]) {
      pts[n] = xr, vals[n] = fr;
    } else {
      // Outside contraction when the reflection beats the worst, inside otherwise.
      const bool outside = fr < vals[n];
      const RVec xc = outside ? RVec(centroid + 0.5 * (xr - centroid))
                              : RVec(centroid + 0.5 * (worst - centroid));
      const double fc = eval(xc);
      ++res.evaluations;
      if (fc < (outside ? fr : vals[n])) {
        pts[n] = xc, vals[n] = fc;
      } else {
        for (int k = 1; k <= n; ++k) pts[k] = pts[0] + 0.5 * (pts[k] - pts[0]);
        eval_all(1);
      }
    }
    sort_simplex();
  }
  res.x = pts[0];
  res.f = vals[0];
  res.converged = true;
  return res;
}

namespace {

struct Functor {
  using Scalar = double;
  using InputType = RVec;
  using ValueType = RVec;
  using JacobianType = RMat;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const std::function<void(const RVec&, RVec&)>* f;
  int n, m;
  int inputs() const { return n; }
  int values() const { return m; }
  int operator()(const RVec& x, RVec& r) const {
    (*f)(x, r);
    return 0;
  }
};

}  // namespace

LeastSquaresResult fit_least_squares(const std::function<void(const RVec&, RVec&)>& residual,
                                     const RVec& x0, int m) {
  const int n = int(x0.size());
  if (m < n) throw InvalidInput("least squares needs at least as many residuals as parameters");
  Functor fn{&residual, n, m};
  Eigen::NumericalDiff<Functor> nd(fn);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Functor>> lm(nd);
  lm.parameters.xtol = 1e-14;
  lm.parameters.ftol = 1e-14;
  lm.parameters.maxfev = 4000;
  LeastSquaresResult out;
  out.x = x0;
  const auto status = lm.minimize(out.x);
  out.converged = status == Eigen::LevenbergMarquardtSpace::RelativeReductionTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::RelativeErrorTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::RelativeErrorAndReductionTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::CosinusTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::XtolTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::FtolTooSmall ||
                  status == Eigen::LevenbergMarquardtSpace::GtolTooSmall;
  RVec r(m);
  residual(out.x, r);
  if (!r.allFinite()) throw NumericError("least-squares residual is not finite");
  out.rss = r.squaredNorm();
  RMat j(m, n);
  nd.df(out.x, j);
  const double s2 = m > n ? out.rss / double(m - n) : 0.0;
  const RMat cov = (j.transpose() * j).completeOrthogonalDecomposition().pseudoInverse();
  out.std_err = (s2 * cov.diagonal()).cwiseMax(0.0).cwiseSqrt();
  return out;
}

}  // namespace fluxcp
