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
#include <vector>

#include "fluxcp/dynamics.hpp"

namespace fluxcp {

// Evolution under a continuous drive, queried at arbitrary times.
class ContinuousDrive {
 public:
  virtual ~ContinuousDrive() = default;
  virtual CMat propagator(double t) const = 0;
  // Positions of |00>, |01>, |10>, |11> in the state vector.
  virtual std::array<int, 4> computational() const = 0;
  virtual int dim() const = 0;
};

// Full model with g_x = 1, g_y = 0. The one-period propagator is built once;
// U(t) = U_T^m with m = round(t / T). Drive off (eps_a = 0 or f_d = 0)
// falls back to exact free evolution.
class FloquetDrive : public ContinuousDrive {
 public:
  FloquetDrive(const FullModel& m, double f_d, double eps_a, double eps_ratio,
               int steps_per_period = 1024);
  CMat propagator(double t) const override;
  std::array<int, 4> computational() const override;
  int dim() const override { return model_.dim(); }
  double period() const { return period_; }
  // ZZ rate from the Floquet quasi-energies of the dressed computational states (GHz).
  double quasi_zz() const;

 private:
  FullModel model_;
  double period_ = 0.0;
  bool driven_ = false;
  CMat vecs_, vecs_inv_;
  RVec quasi_;  // quasi-energies (GHz), folded into (-f_d/2, f_d/2]
};

// Six-level rotating-frame model with a constant envelope.
class RwaDrive : public ContinuousDrive {
 public:
  RwaDrive(const RwaModel& m, double omega_upper);
  CMat propagator(double t) const override;
  std::array<int, 4> computational() const override {
    return {RwaModel::k00, RwaModel::k01, RwaModel::k10, RwaModel::k11};
  }
  int dim() const override { return RwaModel::kDim; }

 private:
  CMat h_;
};

struct FringeFit {
  double rate = 0.0;       // |xi| in GHz
  double rate_err = 0.0;   // one-sigma least-squares uncertainty (GHz)
  double amplitude = 0.0;
  double offset = 0.0;
  double rms = 0.0;        // residual RMS
};

// Fits y = a cos 2 pi f t + b sin 2 pi f t + c. Throws NumericError for
// constant data or data that is not a sinusoid.
FringeFit fit_fringe(const std::vector<double>& t, const std::vector<double>& y);

struct RamseyRecord {
  std::vector<double> t;   // per-block evolution time (ns)
  std::vector<double> zi;  // <Z x I>
  FringeFit fit;
};

// pi/2 on A, U(t), pi on both, U(t), pi/2 on A, measure <ZI>. With
// instantaneous ideal pulses the fringe is cos(2 pi xi_ZZ t).
RamseyRecord simulate_zz_ramsey(const ContinuousDrive& drive, const std::vector<double>& times,
                                Exec exec = Exec::kParallel);

std::vector<double> linear_grid(double t_max, int n);

// Embeds a 4 x 4 computational-subspace gate; other levels are untouched.
CMat embed_gate(const CMat& g4, const std::array<int, 4>& comp, int dim);

}  // namespace fluxcp
