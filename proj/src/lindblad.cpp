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

#include "fluxcp/lindblad.hpp"

#include <cmath>
#include <sstream>

namespace fluxcp {

namespace {

constexpr double kRateSlack = 1e-6;  // GHz

void check_pair(double t1, double t2, const char* name) {
  if (!(t1 > 0.0) || !(t2 > 0.0)) {
    std::ostringstream msg;
    msg << "coherence times for " << name << " must be positive";
    throw InvalidInput(msg.str());
  }
}

// 1/us -> 1/ns.
double per_ns(double t_us) { return std::isinf(t_us) ? 0.0 : 1e-3 / t_us; }

double dephasing(double t1, double t2, const char* name) {
  const double g = per_ns(t2) - 0.5 * per_ns(t1);
  if (g < -kRateSlack) {
    std::ostringstream msg;
    msg << "T2E exceeds 2 T1 for " << name << " (Gamma_phi = " << g << " GHz)";
    throw InvalidInput(msg.str());
  }
  return std::max(g, 0.0);
}

long steps_for(double t, double dt) { return std::max(1L, long(std::ceil(t / dt - 1e-9))); }

}  // namespace

void CoherenceTable::validate() const {
  check_pair(t1_a, t2e_a, "qubit A");
  check_pair(t1_b, t2e_b, "qubit B");
  check_pair(t1_12, t2e_12, "the 1-2 transition");
}

CoherenceTable CoherenceTable::measured_average() {
  return {182.5, 14.5, 128.5, 22.5, 5.55, 3.3};
}

CoherenceTable CoherenceTable::uniform(double tq, double t12) {
  return {tq, tq, tq, tq, t12, t12};
}

DecayRates decay_rates(const CoherenceTable& t) {
  t.validate();
  DecayRates r;
  r.g1_a = per_ns(t.t1_a);
  r.g1_b = per_ns(t.t1_b);
  r.g1_12 = per_ns(t.t1_12);
  r.gphi_a = dephasing(t.t1_a, t.t2e_a, "qubit A");
  r.gphi_b = dephasing(t.t1_b, t.t2e_b, "qubit B");
  r.gphi_12 = dephasing(t.t1_12, t.t2e_12, "the 1-2 transition");
  return r;
}

std::vector<CMat> build_collapse_operators(const CoherenceTable& t) {
  using M = RwaModel;
  const DecayRates r = decay_rates(t);
  auto op = [](std::initializer_list<std::pair<int, int>> entries, double rate) {
    CMat l = CMat::Zero(M::kDim, M::kDim);
    for (auto [i, j] : entries) l(i, j) = std::sqrt(rate);
    return l;
  };
  return {
      op({{M::k00, M::k10}, {M::k01, M::k11}}, r.g1_a),
      op({{M::k00, M::k01}, {M::k10, M::k11}, {M::k20, M::k21}}, r.g1_b),
      op({{M::k00, M::k00}, {M::k01, M::k01}}, 2 * r.gphi_a),
      op({{M::k00, M::k00}, {M::k10, M::k10}, {M::k20, M::k20}}, 2 * r.gphi_b),
      op({{M::k10, M::k20}, {M::k11, M::k21}}, r.g1_12),
      op({{M::k20, M::k20}, {M::k21, M::k21}}, 2 * r.gphi_12),
  };
}

CMat lindblad_rk4(const std::function<CMat(double)>& hamiltonian, const std::vector<CMat>& ops,
                  const CMat& rho0, double t_end, double dt_target) {
  const int d = int(rho0.rows());
  // drho = -i G rho + i rho G^+ + sum L rho L^+, G = 2 pi H - i K / 2.
  CMat k_sum = CMat::Zero(d, d);
  std::vector<CMat> active;
  for (const CMat& l : ops) {
    if (l.cwiseAbs().maxCoeff() == 0.0) continue;
    k_sum += l.adjoint() * l;
    active.push_back(l);
  }
  auto rhs = [&](double t, const CMat& rho) {
    const CMat g = kTwoPi * hamiltonian(t) - 0.5 * kI * k_sum;
    // rho need not be Hermitian (channel columns), so keep rho G^+ explicit.
    CMat out = -kI * (g * rho) + kI * (rho * g.adjoint());
    for (const CMat& l : active) out.noalias() += l * rho * l.adjoint();
    return out;
  };
  const long n = steps_for(t_end, dt_target);
  const double dt = t_end / n;
  CMat rho = rho0;
  for (long s = 0; s < n; ++s) {
    const double t = s * dt;
    const CMat k1 = rhs(t, rho);
    const CMat k2 = rhs(t + 0.5 * dt, rho + 0.5 * dt * k1);
    const CMat k3 = rhs(t + 0.5 * dt, rho + 0.5 * dt * k2);
    const CMat k4 = rhs(t + dt, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return rho;
}

EvolutionResult evolve_lindblad(const RwaModel& m, const PulseProgram& p,
                                const std::vector<CMat>& ops, const CMat& rho0,
                                const SolverOptions& opts) {
  p.validate();
  if (rho0.rows() != RwaModel::kDim || rho0.cols() != RwaModel::kDim)
    throw InvalidInput("rho0 must be 6 x 6");
  if (max_abs(rho0 - rho0.adjoint()) > 1e-10 || std::abs(rho0.trace() - 1.0) > 1e-8)
    throw InvalidInput("rho0 must be Hermitian with unit trace");
  auto h = [&](double t) {
    const Envelope e = envelope_at(p, t);
    return m.hamiltonian(p.amplitude, e.gx, e.gy);
  };
  EvolutionResult res;
  res.kind = EvolutionKind::kDensity;
  double dt = opts.dt > 0.0 ? opts.dt : 0.5;
  CMat prev = lindblad_rk4(h, ops, rho0, p.t_gate(), dt);
  if (opts.check) {
    double change = 0.0;
    int h_count = 0;
    for (; h_count < opts.max_halvings; ++h_count) {
      dt *= 0.5;
      CMat next = lindblad_rk4(h, ops, rho0, p.t_gate(), dt);
      change = max_abs(next - prev);
      prev = std::move(next);
      if (change < opts.tolerance) break;
    }
    if (h_count == opts.max_halvings) {
      std::ostringstream msg;
      msg << "Lindblad step halving did not reach " << opts.tolerance << " (last change "
          << change << ")";
      throw NumericError(msg.str());
    }
    res.accuracy = change;
  }
  res.op = 0.5 * (prev + prev.adjoint());
  res.dt = dt;
  res.steps = steps_for(p.t_gate(), dt);
  return res;
}

CVec vec(const CMat& rho) {
  const int d = int(rho.rows());
  CVec v(d * d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v(i * d + j) = rho(i, j);
  return v;
}

CMat unvec(const CVec& v, int d) {
  CMat rho(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) rho(i, j) = v(i * d + j);
  return rho;
}

CMat unitary_superop(const CMat& u) { return kron(u, u.conjugate()); }

CMat computational_channel(const RwaModel& m, const PulseProgram& p,
                           const std::vector<CMat>& ops, const SolverOptions& opts) {
  constexpr int kComp = 4;  // |00>, |01>, |10>, |11> lead the RWA ordering
  auto h = [&](double t) {
    const Envelope e = envelope_at(p, t);
    return m.hamiltonian(p.amplitude, e.gx, e.gy);
  };
  // Fix the step on the |11><11| input, then reuse it for every element.
  CMat probe = CMat::Zero(RwaModel::kDim, RwaModel::kDim);
  probe(RwaModel::k11, RwaModel::k11) = 1.0;
  const double dt = evolve_lindblad(m, p, ops, probe, opts).dt;
  CMat s(kComp * kComp, kComp * kComp);
  for (int i = 0; i < kComp; ++i)
    for (int j = 0; j < kComp; ++j) {
      CMat in = CMat::Zero(RwaModel::kDim, RwaModel::kDim);
      in(i, j) = 1.0;
      const CMat out = lindblad_rk4(h, ops, in, p.t_gate(), dt);
      s.col(i * kComp + j) = vec(out.topLeftCorner(kComp, kComp));
    }
  return s;
}

namespace {

std::vector<CMat> qubit_ops(const QubitCoherence& c) {
  if (!(c.t1_us > 0.0) || !(c.t2e_us > 0.0)) throw InvalidInput("qubit T1/T2E must be > 0");
  const double g1 = per_ns(c.t1_us);
  const double gphi = dephasing(c.t1_us, c.t2e_us, "qubit");
  CMat lower = CMat::Zero(2, 2), proj = CMat::Zero(2, 2);
  lower(0, 1) = std::sqrt(g1);
  proj(0, 0) = std::sqrt(2 * gphi);
  return {lower, proj};
}

CMat channel_of(const std::function<CMat(double)>& h, const std::vector<CMat>& ops, double t,
                double dt) {
  CMat s(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      CMat in = CMat::Zero(2, 2);
      in(i, j) = 1.0;
      s.col(i * 2 + j) = vec(t > 0.0 ? lindblad_rk4(h, ops, in, t, dt) : in);
    }
  return s;
}

}  // namespace

CMat qubit_pulse_channel(double angle, double axis, const PulseProgram& shape,
                         const QubitCoherence& c, double dt) {
  shape.validate();
  const std::vector<CMat> ops = qubit_ops(c);
  if (angle == 0.0) return qubit_idle_channel(shape.t_gate(), c);
  // exp(-i 2 pi (Omega g / 2) sigma dt) integrates to a rotation by 2 pi Omega area.
  const double omega = angle / (kTwoPi * envelope_area(shape));
  const CMat sigma = std::cos(axis) * pauli('X') + std::sin(axis) * pauli('Y');
  auto h = [&](double t) -> CMat { return 0.5 * omega * envelope_at(shape, t).gx * sigma; };
  return channel_of(h, ops, shape.t_gate(), dt);
}

CMat qubit_idle_channel(double duration, const QubitCoherence& c) {
  if (duration < 0.0) throw InvalidInput("idle duration must be >= 0");
  qubit_ops(c);  // validation
  // Closed form: amplitude damping plus pure dephasing.
  const double g1 = per_ns(c.t1_us), gphi = dephasing(c.t1_us, c.t2e_us, "qubit");
  const double decay = std::exp(-g1 * duration);
  const double coh = std::exp(-(0.5 * g1 + gphi) * duration);
  CMat s = CMat::Zero(4, 4);
  s(0, 0) = 1.0;
  s(0, 3) = 1.0 - decay;
  s(3, 3) = decay;
  s(1, 1) = coh;
  s(2, 2) = coh;
  return s;
}

}  // namespace fluxcp
