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

#include "fluxcp/dynamics.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace fluxcp {

FullModel FullModel::from(const LabeledSpectrum& s) {
  FullModel m;
  m.energies = s.energies;
  m.charge_a = s.charge_a.imag();
  m.charge_b = s.charge_b.imag();
  m.computational = s.computational();
  return m;
}

namespace {

long step_count(double t, double dt) {
  return std::max(1L, long(std::ceil(t / dt - 1e-9)));
}

// Runs `run(dt)` and halves dt until two successive results agree to the
// tolerance. Returns the finer result.
EvolutionResult converge(const std::function<CMat(double, long*)>& run, double dt0,
                         const SolverOptions& opts, EvolutionKind kind) {
  EvolutionResult res;
  res.kind = kind;
  long steps = 0;
  double dt = dt0;
  CMat prev = run(dt, &steps);
  if (!opts.check) {
    res.op = std::move(prev);
    res.dt = dt;
    res.steps = steps;
    return res;
  }
  double change = 0.0;
  for (int h = 0; h < opts.max_halvings; ++h) {
    dt *= 0.5;
    CMat next = run(dt, &steps);
    change = max_abs(next - prev);
    prev = std::move(next);
    if (change < opts.tolerance) {
      res.op = std::move(prev);
      res.dt = dt;
      res.steps = steps;
      res.accuracy = change;
      return res;
    }
  }
  std::ostringstream msg;
  msg << "step halving did not reach tolerance " << opts.tolerance << " (last change " << change
      << " at dt " << dt << " ns)";
  throw NumericError(msg.str());
}

}  // namespace

CMat full_propagator(const FullModel& m, const PulseProgram& p, double dt_target,
                     const std::vector<int>& columns_in) {
  const int d = m.dim();
  std::vector<int> columns = columns_in;
  if (columns.empty())
    for (int i = 0; i < d; ++i) columns.push_back(i);
  const double tg = p.t_gate();
  const long n = step_count(tg, dt_target);
  const double dt = tg / n;
  const int k = int(columns.size());

  // Interaction picture of the diagonal static part:
  // dpsi/dt = 2 pi c(t) eps_A u o (R (u* o psi)), u = exp(i 2 pi E t).
  const RMat r = p.amplitude * (m.charge_a + p.eps_ratio * m.charge_b);
  CMat psi = CMat::Zero(d, k);
  for (int c = 0; c < k; ++c) psi(columns[c], c) = 1.0;

  const RVec w = kTwoPi * m.energies;
  CVec u(d);
  CMat tmp(d, k);
  RMat yr(d, k), yi(d, k);
  auto rhs = [&](double t, const CMat& x, CMat& out) {
    const Envelope e = envelope_at(p, t);
    const double phase = kTwoPi * p.f_d * t;
    const double c = e.gx * std::cos(phase) + e.gy * std::sin(phase);
    for (int i = 0; i < d; ++i) u(i) = std::polar(1.0, w(i) * t);
    tmp = u.conjugate().asDiagonal() * x;
    yr.noalias() = r * tmp.real();
    yi.noalias() = r * tmp.imag();
    out.resize(d, k);
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < d; ++i) out(i, j) = kTwoPi * c * u(i) * cplx(yr(i, j), yi(i, j));
  };

  CMat k1, k2, k3, k4, stage;
  for (long s = 0; s < n; ++s) {
    const double t = s * dt;
    rhs(t, psi, k1);
    stage = psi + 0.5 * dt * k1;
    rhs(t + 0.5 * dt, stage, k2);
    stage = psi + 0.5 * dt * k2;
    rhs(t + 0.5 * dt, stage, k3);
    stage = psi + dt * k3;
    rhs(t + dt, stage, k4);
    psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  for (int i = 0; i < d; ++i) psi.row(i) *= std::polar(1.0, -w(i) * tg);
  return psi;
}

EvolutionResult evolve_unitary(const FullModel& m, const PulseProgram& p,
                               const SolverOptions& opts, const std::vector<int>& columns) {
  p.validate();
  double dt0 = opts.dt;
  if (dt0 <= 0.0) {
    dt0 = p.t_rise / 200.0;
    if (p.f_d > 0.0) dt0 = std::min(dt0, 1.0 / (50.0 * p.f_d));
  }
  auto run = [&](double dt, long* steps) {
    *steps = step_count(p.t_gate(), dt);
    return full_propagator(m, p, dt, columns);
  };
  return converge(run, dt0, opts, EvolutionKind::kPropagator);
}

CMat rwa_propagator(const RwaModel& m, const PulseProgram& p, double dt_target) {
  const double tg = p.t_gate();
  const long n = step_count(tg, dt_target);
  const double dt = tg / n;
  // Fourth-order commutator-free Magnus step with Gauss-Legendre nodes.
  const double c1 = 0.5 - std::sqrt(3.0) / 6.0, c2 = 0.5 + std::sqrt(3.0) / 6.0;
  const double a1 = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0, a2 = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;
  CMat u = CMat::Identity(RwaModel::kDim, RwaModel::kDim);
  for (long s = 0; s < n; ++s) {
    const double t = s * dt;
    const Envelope e1 = envelope_at(p, t + c1 * dt), e2 = envelope_at(p, t + c2 * dt);
    const CMat h1 = m.hamiltonian(p.amplitude, e1.gx, e1.gy);
    const CMat h2 = m.hamiltonian(p.amplitude, e2.gx, e2.gy);
    u = hermitian_propagator(a1 * h1 + a2 * h2, dt) * hermitian_propagator(a2 * h1 + a1 * h2, dt) * u;
  }
  return u;
}

EvolutionResult evolve_rwa(const RwaModel& m, const PulseProgram& p, const SolverOptions& opts) {
  p.validate();
  const double dt0 = opts.dt > 0.0 ? opts.dt : 0.5;
  auto run = [&](double dt, long* steps) {
    *steps = step_count(p.t_gate(), dt);
    return rwa_propagator(m, p, dt);
  };
  return converge(run, dt0, opts, EvolutionKind::kPropagator);
}

}  // namespace fluxcp
