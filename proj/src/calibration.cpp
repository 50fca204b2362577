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

#include "fluxcp/calibration.hpp"

#include <cmath>
#include <sstream>

namespace fluxcp {

Device Device::build(const CoupledSpec& spec, double eps_ratio) {
  Device d;
  d.spectrum = assemble_and_label(spec);
  d.full = FullModel::from(d.spectrum);
  d.geometry = drive_geometry(d.spectrum, eps_ratio);
  d.eps_ratio = eps_ratio;
  return d;
}

void CalibrationProblem::validate() const {
  if (!(phi > 0.0 && phi <= kPi)) throw InvalidInput("target phase must lie in (0, pi]");
  if (!(t_rise > 0.0) || !(t_flat >= 0.0)) throw InvalidInput("need t_rise > 0 and t_flat >= 0");
  if (!(f_d0 > 0.0)) throw InvalidInput("f_d0 must be > 0");
  if (!(f_window >= 0.0 && f_window <= 0.005 + 1e-12))
    throw InvalidInput("frequency window must be within +-5 MHz");
  if (!(omega_max >= 0.0) || !std::isfinite(omega_max)) throw InvalidInput("bad amplitude bound");
  if (!(drag_max >= 0.0) || !std::isfinite(drag_max)) throw InvalidInput("bad DRAG bound");
  if (!(t_flat_max >= t_flat) || !std::isfinite(t_flat_max)) throw InvalidInput("bad t_flat bound");
  if (!(search_dt > 0.0) || !(rwa_dt > 0.0)) throw InvalidInput("step sizes must be > 0");
  if (!start.empty() && start.size() != 3) throw InvalidInput("warm start needs 3 values");
}

PulseProgram rwa_pulse(const Device& dev, const PulseProgram& p) {
  PulseProgram q = p;
  q.amplitude = dev.omega_upper(p.amplitude);
  return q;
}

GateReport rwa_gate_report(const Device& dev, const PulseProgram& p, double phi,
                           const SolverOptions& opts) {
  const RwaModel m = dev.rwa(p.f_d);
  const PulseProgram q = rwa_pulse(dev, p);
  const CMat u = opts.check ? evolve_rwa(m, q, opts).op : rwa_propagator(m, q, opts.dt);
  return project_and_phase(u.topLeftCorner(4, 4), phi);
}

GateReport full_gate_report(const Device& dev, const PulseProgram& p, double phi,
                            const SolverOptions& opts) {
  const auto& c = dev.full.computational;
  const CMat cols = opts.check ? evolve_unitary(dev.full, p, opts, c).op
                               : full_propagator(dev.full, p, opts.dt, c);
  return project_and_phase(project(cols, {c[0], c[1], c[2], c[3]}), phi);
}

namespace {

// Parameter vector: Omega_11-21 (GHz), alpha (ns), f_d - f_d0 (GHz)[, t_flat (ns)].
struct Search {
  const Device& dev;
  const CalibrationProblem& prob;
  int evaluations = 0;

  double excess(const RVec& x) const {
    double e = std::max(0.0, -x(0)) + std::max(0.0, x(0) - prob.omega_max);
    e += std::max(0.0, std::abs(x(1)) - prob.drag_max) * 1e-2;
    e += std::max(0.0, std::abs(x(2)) - prob.f_window);
    if (x.size() > 3) e += std::max(0.0, -x(3)) * 1e-2 + std::max(0.0, x(3) - prob.t_flat_max) * 1e-2;
    return e;
  }

  PulseProgram pulse(const RVec& x) const {
    PulseProgram p;
    p.f_d = prob.f_d0 + x(2);
    p.t_rise = prob.t_rise;
    p.t_flat = x.size() > 3 ? x(3) : prob.t_flat;
    p.sigma = prob.sigma;
    p.amplitude = dev.eps_a(x(0));
    p.drag = x(1);
    p.eps_ratio = dev.eps_ratio;
    return p;
  }

  double infidelity(const RVec& x, bool full) {
    ++evaluations;
    const double e = excess(x);
    if (e > 0.0) return 1.0 + e;
    SolverOptions o;
    o.check = false;
    o.dt = full ? prob.search_dt : prob.rwa_dt;
    try {
      CMat u4;
      if (full) {
        // Unit columns strip the fixed-step norm drift, which would otherwise
        // bias 1 - F by more than the target.
        const auto& c = dev.full.computational;
        CMat cols = full_propagator(dev.full, pulse(x), o.dt, c);
        cols.colwise().normalize();
        u4 = project(cols, {c[0], c[1], c[2], c[3]});
      } else {
        const PulseProgram q = rwa_pulse(dev, pulse(x));
        u4 = rwa_propagator(dev.rwa(q.f_d), q, o.dt).topLeftCorner(4, 4);
      }
      const GateReport r = project_and_phase(u4, prob.phi);
      const double f = ((r.u_prime.adjoint() * r.u_prime).trace().real() +
                        std::norm((cp_unitary(prob.phi).adjoint() * r.u_prime).trace())) / 20.0;
      return 1.0 - f;
    } catch (const NumericError&) {
      return 1.0;  // vanishing diagonal: far from any useful gate
    }
  }
};

NelderMeadResult run_nm(Search& s, const RVec& x0, bool full, int max_it) {
  NelderMeadOptions o;
  o.f_target = 1e-9;
  o.max_iterations = max_it;
  return nelder_mead_minimize([&](const RVec& x) { return s.infidelity(x, full); }, x0, o);
}

// Coarse grid, then Nelder-Mead, on the RWA model.
NelderMeadResult rwa_search(Search& s, bool with_flat) {
  const auto& p = s.prob;
  std::vector<double> flats{p.t_flat};
  if (with_flat)
    for (double t = p.t_flat + 20.0; t <= p.t_flat_max; t += 20.0) flats.push_back(t);
  RVec best;
  double best_f = INFINITY;
  for (double tf : flats)
    for (int i = 1; i <= 13; ++i)
      for (double a : {-2.0, 0.0, 2.0}) {
        RVec x(with_flat ? 4 : 3);
        x(0) = p.omega_max * i / 13.0;
        x(1) = std::clamp(a, -p.drag_max, p.drag_max);
        x(2) = 0.0;
        if (with_flat) x(3) = tf;
        const double f = s.infidelity(x, false);
        if (f < best_f) best_f = f, best = x;
      }
  return run_nm(s, best, false, p.max_iterations);
}

}  // namespace

CalibrationResult calibrate_cp_gate(const Device& dev, const CalibrationProblem& prob) {
  prob.validate();
  Search s{dev, prob};
  CalibrationResult res;
  std::ostringstream diag;

  NelderMeadResult nm;
  if (prob.start.empty()) {
    nm = rwa_search(s, false);
  } else {
    const RVec x0 = Eigen::Map<const RVec>(prob.start.data(), 3);
    nm = run_nm(s, x0, prob.full_model, prob.max_iterations);
  }
  res.iterations += nm.iterations;
  diag << (prob.start.empty() || !prob.full_model ? "rwa" : "warm full") << ": 1-F = " << nm.f
       << " after " << nm.iterations << " iterations";
  if (nm.f > prob.threshold && prob.free_t_flat && prob.t_flat_max > prob.t_flat) {
    const NelderMeadResult nm4 = rwa_search(s, true);
    diag << "; rwa with free t_flat: 1-F = " << nm4.f;
    res.iterations += nm4.iterations;
    if (nm4.f < nm.f) {
      nm = nm4;
      res.t_flat_freed = true;
    }
  }
  RVec x = nm.x;
  if (prob.full_model && prob.start.empty() && s.excess(x) == 0.0) {
    const NelderMeadResult fm = run_nm(s, x, true, prob.max_iterations);
    res.iterations += fm.iterations;
    diag << "; full: 1-F = " << fm.f << " after " << fm.iterations << " iterations";
    x = fm.x;
  }

  res.pulse = s.pulse(x);
  res.omega_upper = x(0);
  res.evaluations = s.evaluations;
  SolverOptions verify;
  try {
    res.rwa_report = rwa_gate_report(dev, res.pulse, prob.phi, verify);
    res.report = prob.full_model ? full_gate_report(dev, res.pulse, prob.phi, verify)
                                 : res.rwa_report;
  } catch (const NumericError& e) {
    diag << "; verification failed: " << e.what();
    res.diagnostics = diag.str();
    res.success = false;
    return res;
  }
  const GateReport& r = res.report;
  res.success = (1.0 - r.fidelity) < prob.threshold && r.leakage < prob.threshold &&
                r.phase_error < 1e-5;
  if (!res.success)
    diag << "; target not reached (1-F = " << 1.0 - r.fidelity << ", leakage = " << r.leakage
         << ", phase error = " << r.phase_error << ")";
  res.diagnostics = diag.str();
  return res;
}

Timing experimental_timing(int k) {
  if (k < 1 || k > 16) throw InvalidInput("phase index must be in 1..16");
  if (k == 16) return {10.0, 123.0};
  return {50.0, 40.0 * (k - 1) / 14.0};
}

std::vector<FlatScanPoint> scan_t_flat(const Device& dev, double phi, double t_rise, double f_d0,
                                       const std::vector<double>& t_flat, Exec exec) {
  if (!(phi > 0.0 && phi <= kPi)) throw InvalidInput("target phase must lie in (0, pi]");
  std::vector<FlatScanPoint> out(t_flat.size());
  auto point = [&](long k) {
    CalibrationProblem pr;
    pr.phi = phi;
    pr.t_rise = t_rise;
    pr.t_flat = t_flat[k];
    pr.f_d0 = f_d0;
    pr.free_t_flat = false;
    pr.full_model = false;
    pr.rwa_dt = 0.1;
    const CalibrationResult r = calibrate_cp_gate(dev, pr);
    const GateReport& g = r.report;
    out[k] = {t_flat[k], r.omega_upper, 1.0 - g.fidelity, g.leakage, g.delta_phi};
  };
  const long n = long(t_flat.size());
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) point(k);
  } else {
    for (long k = 0; k < n; ++k) point(k);
  }
  return out;
}

}  // namespace fluxcp
