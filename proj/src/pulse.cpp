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

#include "fluxcp/pulse.hpp"

#include <cmath>

namespace fluxcp {

double PulseProgram::sigma_eff() const {
  return sigma > 0.0 ? sigma : t_rise / std::sqrt(kTwoPi);
}

void PulseProgram::validate() const {
  if (!(t_rise > 0.0)) throw InvalidInput("t_rise must be > 0");
  if (!(t_flat >= 0.0)) throw InvalidInput("t_flat must be >= 0");
  if (!(sigma >= 0.0)) throw InvalidInput("sigma must be >= 0");
  if (!(f_d >= 0.0) || !std::isfinite(f_d)) throw InvalidInput("f_d must be finite and >= 0");
  if (!std::isfinite(amplitude) || !std::isfinite(drag) || !std::isfinite(eps_ratio))
    throw InvalidInput("pulse amplitude, drag and eps_ratio must be finite");
}

Envelope envelope_at(const PulseProgram& p, double t) {
  const double tg = p.t_gate();
  if (t < 0.0 || t > tg) return {};
  double x;
  if (t < p.t_rise) x = t - p.t_rise;
  else if (t > p.t_rise + p.t_flat) x = t - (p.t_rise + p.t_flat);
  else return {1.0, 0.0};
  const double s = p.sigma_eff();
  const double offset = std::exp(-p.t_rise * p.t_rise / (2 * s * s));
  const double norm = 1.0 - offset;
  const double gauss = std::exp(-x * x / (2 * s * s));
  const double gx = (gauss - offset) / norm;
  const double dgx = -x / (s * s) * gauss / norm;
  return {gx, p.drag * dgx};
}

Envelope sample_envelope(const PulseProgram& p, double t) {
  if (!(t >= 0.0 && t <= p.t_gate()))
    throw InvalidInput("envelope time outside [0, t_gate]");
  return envelope_at(p, t);
}

double envelope_area(const PulseProgram& p) {
  const double s = p.sigma_eff();
  const double offset = std::exp(-p.t_rise * p.t_rise / (2 * s * s));
  const double edge =
      (s * std::sqrt(kPi / 2) * std::erf(p.t_rise / (std::sqrt(2.0) * s)) - offset * p.t_rise) /
      (1.0 - offset);
  return 2.0 * edge + p.t_flat;
}

PulseProgram apply_virtual_z(const PulseProgram& p, Qubit q, double phase) {
  PulseProgram out = p;
  double& f = out.frame_phases[static_cast<int>(q)];
  f = std::fmod(f + phase, kTwoPi);
  if (f < 0.0) f += kTwoPi;
  return out;
}

}  // namespace fluxcp
