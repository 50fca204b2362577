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


#include "fluxcp/readout.hpp"

#include <cmath>
#include <sstream>

#include "fluxcp/optimize.hpp"

namespace fluxcp {

void ReadoutParams::validate() const {
  const double v[6] = {a1, a2, b1, b2, c1, c2};
  const char* names[6] = {"a1", "a2", "b1", "b2", "c1", "c2"};
  for (int i = 0; i < 6; ++i)
    if (!(v[i] >= 0.0 && v[i] < 0.5))
      throw InvalidInput(std::string("readout.") + names[i] + " must be in [0, 0.5)");
}

RMat readout_matrix(const ReadoutParams& r) {
  RMat m(4, 4);
  m << 1 - r.a1 - r.b1, r.b2, r.a2, 0,
       r.b1, 1 - r.a1 - r.b2 - r.c1, r.c2, r.a2,
       r.a1, r.c1, 1 - r.a2 - r.b1 - r.c2, r.b2,
       0, r.a1, r.b1, 1 - r.a2 - r.b2;
  return m;
}

RVec apply_readout(const ReadoutParams& r, const RVec& p) {
  if (p.size() != 4) throw InvalidInput("populations must have 4 entries");
  return readout_matrix(r) * p;
}

RVec correct_readout(const RVec& measured, const ReadoutParams& r) {
  r.validate();
  if (measured.size() != 4) throw InvalidInput("populations must have 4 entries");
  if (std::abs(measured.sum() - 1.0) > 1e-6) throw InvalidInput("measured populations must sum to 1");
  const Eigen::FullPivLU<RMat> lu(readout_matrix(r));
  if (!lu.isInvertible() || std::abs(lu.determinant()) < 1e-12)
    throw NumericError("readout matrix is singular");
  RVec x = lu.solve(measured);
  x /= x.sum();
  for (int i = 0; i < 4; ++i)
    if (x(i) < -0.05 || x(i) > 1.05) {
      std::ostringstream msg;
      msg << "corrected population " << i << " = " << x(i) << " violates the readout model";
      throw NumericError(msg.str());
    }
  return x;
}

namespace {

RVec product_populations(double pg_a, double pg_b) {
  RVec p(4);
  p << pg_a * pg_b, pg_a * (1 - pg_b), (1 - pg_a) * pg_b, (1 - pg_a) * (1 - pg_b);
  return p;
}

double rotated_ground(double pg, double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return pg * c * c + (1 - pg) * s * s;
}

ReadoutParams unpack(const RVec& x) { return {x(0), x(1), x(2), x(3), x(4), x(5)}; }

}  // namespace

RabiData synthesize_rabi(const ReadoutParams& r, double pg_a, double pg_b,
                         const std::vector<double>& angles) {
  r.validate();
  if (!(pg_a >= 0 && pg_a <= 1 && pg_b >= 0 && pg_b <= 1))
    throw InvalidInput("initial ground populations must be in [0, 1]");
  const RMat m = readout_matrix(r);
  RabiData d;
  d.angles = angles;
  for (double th : angles) {
    d.rabi_a.push_back(m * product_populations(rotated_ground(pg_a, th), 0.5));
    d.rabi_b.push_back(m * product_populations(0.5, rotated_ground(pg_b, th)));
  }
  return d;
}

ReadoutCalibration calibrate_readout(const RabiData& d) {
  const int n = int(d.angles.size());
  if (n < 3 || int(d.rabi_a.size()) != n || int(d.rabi_b.size()) != n)
    throw InvalidInput("Rabi calibration needs >= 3 angles and matching traces");
  for (int i = 0; i < n; ++i)
    if (d.rabi_a[i].size() != 4 || d.rabi_b[i].size() != 4)
      throw InvalidInput("Rabi points must have 4 populations");

  auto resid = [&](const RVec& x, RVec& r) {
    const RMat m = readout_matrix(unpack(x));
    for (int i = 0; i < n; ++i) {
      r.segment(8 * i, 4) = m * product_populations(rotated_ground(x(6), d.angles[i]), 0.5) - d.rabi_a[i];
      r.segment(8 * i + 4, 4) = m * product_populations(0.5, rotated_ground(x(7), d.angles[i])) - d.rabi_b[i];
    }
  };
  // Seed the initial populations from the first point's marginals.
  RVec x0 = RVec::Zero(8);
  x0(6) = d.rabi_a[0](0) + d.rabi_a[0](1);
  x0(7) = d.rabi_b[0](0) + d.rabi_b[0](2);
  const LeastSquaresResult lsq = fit_least_squares(resid, x0, 8 * n);
  RVec x = lsq.x;
  for (int i = 0; i < 6; ++i) {
    if (x(i) < 0.0 && x(i) > -1e-6) x(i) = 0.0;  // round-off around the bound
  }
  ReadoutCalibration out;
  out.params = unpack(x);
  out.pg_a = x(6);
  out.pg_b = x(7);
  out.std_err = lsq.std_err;
  out.rss = lsq.rss;
  try {
    out.params.validate();
  } catch (const InvalidInput& e) {
    throw NumericError(std::string("readout fit left the model range: ") + e.what());
  }
  return out;
}

}  // namespace fluxcp
