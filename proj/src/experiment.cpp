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


#include "fluxcp/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include <unistd.h>

#include "fluxcp/benchmarking.hpp"
#include "fluxcp/calibration.hpp"
#include "fluxcp/ramsey.hpp"
#include "fluxcp/tomography.hpp"
#include "json.hpp"

namespace fluxcp {

using json = nlohmann::ordered_json;

namespace {

std::string num(double x) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

struct Context {
  const DeviceConfig& dev_cfg;
  const ExperimentConfig& exp;
  std::string hash;

  json metadata() const {
    json m = {{"tool_version", kToolVersion}, {"config_hash", hash}};
    m["seed"] = exp.seed ? json(*exp.seed) : json(nullptr);
    m["kind"] = kind_name(exp.kind);
    return m;
  }

  Artifact json_artifact(const std::string& suffix, json body) const {
    json j = {{"metadata", metadata()}};
    for (auto& [k, v] : body.items()) j[k] = v;
    return {exp.stem() + suffix + ".json", j.dump(2) + "\n"};
  }

  // rows are already comma-joined
  Artifact csv_artifact(const std::string& suffix, const std::string& header,
                        const std::vector<std::string>& rows) const {
    std::string s = "# tool_version=" + std::string(kToolVersion) + "\n# config_hash=" + hash +
                    "\n# seed=" + (exp.seed ? std::to_string(*exp.seed) : "none") + "\n" +
                    header + "\n";
    for (const auto& r : rows) s += r + "\n";
    return {exp.stem() + suffix + ".csv", s};
  }
};

std::string row(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) s += (s.empty() ? "" : ",") + c;
  return s;
}

json report_json(const GateReport& r) {
  json j = {{"infidelity", 1.0 - r.fidelity},
            {"leakage", r.leakage},
            {"phase_error", r.phase_error},
            {"phi_accumulated", r.phi_accumulated},
            {"phi_target", r.phi_target},
            {"delta_phi", r.delta_phi},
            {"phases", {r.phases[0], r.phases[1], r.phases[2], r.phases[3]}}};
  if (r.incoherent_error) j["incoherent_error"] = *r.incoherent_error;
  return j;
}

json pulse_json(const PulseProgram& p) {
  return {{"f_d_GHz", p.f_d},         {"t_rise_ns", p.t_rise},       {"t_flat_ns", p.t_flat},
          {"sigma_ns", p.sigma},      {"amplitude_GHz", p.amplitude}, {"drag_ns", p.drag},
          {"eps_ratio", p.eps_ratio}, {"frame_phases_rad", {p.frame_phases[0], p.frame_phases[1]}}};
}

json fit_json(const DecayFit& f) {
  return {{"A", f.a}, {"p", f.p}, {"B", f.b}, {"A_err", f.a_err}, {"p_err", f.p_err}, {"B_err", f.b_err}};
}

json record_json(const BenchmarkRecord& r) {
  return {{"error", r.error},   {"error_err", r.error_err}, {"pauli_error", r.pauli_error},
          {"fit", fit_json(r.fit)}, {"lengths", r.lengths},  {"fidelity", r.fidelity}};
}

Timing timing_for(const ExperimentConfig& e) {
  if (e.calibration.timing == "fixed") return {e.calibration.t_rise, e.calibration.t_flat};
  const double k = e.phi * 16.0 / kPi;
  const long ki = std::lround(k);
  if (std::abs(k - double(ki)) > 1e-6 || ki < 1 || ki > 16)
    throw ConfigError("phi: experimental timing needs phi = k pi/16 with k in 1..16 (set calibration.timing to \"fixed\" otherwise)");
  return experimental_timing(int(ki));
}

CalibrationProblem calibration_problem(const ExperimentConfig& e) {
  CalibrationProblem p;
  p.phi = e.phi;
  const Timing t = timing_for(e);
  p.t_rise = t.t_rise;
  p.t_flat = t.t_flat;
  if (e.f_d) p.f_d0 = *e.f_d;
  p.free_t_flat = e.calibration.free_t_flat;
  p.full_model = e.calibration.full_model;
  p.max_iterations = e.calibration.max_iterations;
  p.threshold = e.calibration.threshold;
  return p;
}

// Pulse for the Lindblad stage, amplitude = Omega_11-21. Calibrated on the
// RWA model unless the experiment carries one.
PulseProgram lindblad_pulse(const Device& dev, const ExperimentConfig& e, json& info) {
  if (e.pulse) {
    info["pulse_source"] = "config";
    return rwa_pulse(dev, *e.pulse);
  }
  CalibrationProblem p = calibration_problem(e);
  p.full_model = false;
  const CalibrationResult r = calibrate_cp_gate(dev, p);
  info["pulse_source"] = "rwa-calibration";
  info["calibration_success"] = r.success;
  info["calibrated_pulse"] = pulse_json(r.pulse);
  return rwa_pulse(dev, r.pulse);
}

QubitBackend backend(const QubitModel& q, const QubitCoherence& c) {
  if (q.kind == "ideal") return QubitBackend::ideal();
  if (q.kind == "depolarizing") return QubitBackend::depolarizing(q.error_per_clifford);
  return QubitBackend::lindblad(c, q.pulse_ns);
}

std::array<QubitBackend, 2> rb_backends(const DeviceConfig& d, const RbBlock& rb) {
  const CoherenceTable& c = d.coherence;
  return {backend(rb.qubit_a, {c.t1_a, c.t2e_a}), backend(rb.qubit_b, {c.t1_b, c.t2e_b})};
}

// ---- kinds ---------------------------------------------------------------

RunResult run_spectrum(const Context& ctx, const Device& dev) {
  const LabeledSpectrum& s = dev.spectrum;
  auto qubit = [](const QubitEigenSystem& q) {
    return json{{"f01_GHz", transition_frequency(q, 0, 1)},
                {"f12_GHz", transition_frequency(q, 1, 2)},
                {"n01", charge_matrix_element(q, 0, 1)},
                {"n12", charge_matrix_element(q, 1, 2)},
                {"basis_dim", q.basis_dim},
                {"convergence_GHz", q.convergence}};
  };
  const DriveGeometry& g = dev.geometry;
  json body = {{"qubit_a", qubit(s.qubit_a)},
               {"qubit_b", qubit(s.qubit_b)},
               {"static_zz_GHz", g.static_zz},
               {"doublet_splitting_GHz", g.splitting},
               {"f_10_20_GHz", g.f_10_20},
               {"f_11_21_GHz", g.f_11_21},
               {"omega_ratio", g.ratio},
               {"omega_upper_per_eps_a", g.n_upper}};

  std::vector<std::string> levels;
  for (int i = 0; i < s.dim(); ++i)
    levels.push_back(row({s.labels[i].str(), num(s.energies(i)), num(s.overlap_quality[i])}));

  const double ea = ctx.exp.drive_eps, eb = ctx.dev_cfg.eps_ratio * ea;
  std::vector<std::string> trans;
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j) {
      if (s.energies(j) <= s.energies(i)) continue;
      const Transition t{s.labels[i], s.labels[j]};
      trans.push_back(row({t.from.str(), t.to.str(), num(transition_frequency(s, t)),
                           num(rabi_frequency(s, ea, eb, t.from, t.to))}));
    }

  RunResult r;
  r.artifacts.push_back(ctx.json_artifact("", body));
  r.artifacts.push_back(ctx.csv_artifact("_levels", "label,energy_GHz,overlap_quality", levels));
  r.artifacts.push_back(ctx.csv_artifact("_transitions", "from,to,frequency_GHz,rabi_GHz", trans));
  r.summary = "static ZZ " + num(g.static_zz * 1e6) + " kHz, f01 A " +
              num(transition_frequency(s.qubit_a, 0, 1)) + " GHz";
  return r;
}

RunResult run_zz_map(const Context& ctx, const Device& dev) {
  const auto pts = zz_sweep(dev.geometry, ctx.exp.f_d_grid->values(), ctx.exp.omega_grid->values());
  std::vector<std::string> rows;
  for (const auto& p : pts) rows.push_back(row({num(p.f_d), num(p.omega_upper), num(p.xi_total * 1e3)}));
  RunResult r;
  const long outside = std::count_if(pts.begin(), pts.end(), [&](const ZzSweepPoint& p) {
    return p.omega_upper > std::abs(p.f_d - dev.geometry.f_10_20) / 2.0;
  });
  if (outside > 0)
    r.warnings.push_back(std::to_string(outside) + " grid points have Omega_11-21 > delta/2, where the two-level Stark picture is unreliable");
  r.artifacts.push_back(ctx.csv_artifact("", "f_d_GHz,omega_upper_GHz,xi_zz_MHz", rows));
  r.summary = std::to_string(pts.size()) + " grid points";
  return r;
}

// Ramsey at a constant drive; shared by cancel and zz-ramsey.
json ramsey_block(const Context& ctx, const Device& dev, double f_d, double omega,
                  std::vector<std::string>& rows) {
  const RamseyBlock& rb = ctx.exp.ramsey;
  const auto times = linear_grid(rb.t_max, rb.points);
  RamseyRecord rec;
  json j = {{"model", rb.model}};
  if (rb.model == "rwa") {
    rec = simulate_zz_ramsey(RwaDrive(dev.rwa(f_d), omega), times);
  } else {
    const FloquetDrive drive(dev.full, f_d, dev.eps_a(omega), dev.eps_ratio);
    rec = simulate_zz_ramsey(drive, times);
    j["floquet_zz_GHz"] = drive.quasi_zz();
  }
  j["fringe_rate_GHz"] = rec.fit.rate;
  j["fringe_rate_err_GHz"] = rec.fit.rate_err;
  j["fringe_amplitude"] = rec.fit.amplitude;
  j["fringe_rms"] = rec.fit.rms;
  for (std::size_t i = 0; i < rec.t.size(); ++i) rows.push_back(row({num(rec.t[i]), num(rec.zi[i])}));
  return j;
}

json& r_warnings(json& body) {
  if (!body.contains("warnings")) body["warnings"] = json::array();
  return body["warnings"];
}

RunResult run_ramsey(const Context& ctx, const Device& dev, bool solve) {
  const double f_d = *ctx.exp.f_d;
  const DriveGeometry& g = dev.geometry;
  double omega = ctx.exp.omega_upper.value_or(0.0);
  json body = {{"f_d_GHz", f_d}};
  if (solve) {
    omega = solve_cancellation_amplitude({f_d - g.f_10_20, g.splitting, g.ratio, g.static_zz});
  }
  body["omega_upper_GHz"] = omega;
  const double delta = f_d - g.f_10_20;
  if (omega > std::abs(delta) / 2.0)
    r_warnings(body).push_back("Omega_11-21 exceeds delta/2; the two-level Stark picture is unreliable");
  body["eps_a_GHz"] = dev.eps_a(omega);
  body["analytic_zz_GHz"] = total_zz_analytic(stark_setting(g, f_d, omega));
  body["rwa_zz_GHz"] = rwa_quasi_zz(dev.rwa(f_d), omega);
  std::vector<std::string> rows;
  body["ramsey"] = ramsey_block(ctx, dev, f_d, omega, rows);
  RunResult r;
  if (body.contains("warnings"))
    for (const auto& w : body["warnings"]) r.warnings.push_back(w.get<std::string>());
  r.artifacts.push_back(ctx.json_artifact("", body));
  r.artifacts.push_back(ctx.csv_artifact("_fringe", "t_ns,zi", rows));
  r.summary = "Omega_11-21 " + num(omega * 1e3) + " MHz, fringe " +
              num(body["ramsey"]["fringe_rate_GHz"].get<double>() * 1e6) + " kHz";
  return r;
}

RunResult run_gate(const Context& ctx, const Device& dev) {
  const PulseProgram& p = *ctx.exp.pulse;
  const double phi = ctx.exp.phi;
  GateReport rwa = rwa_gate_report(dev, p, phi);
  const GateReport full = full_gate_report(dev, p, phi);
  if (ctx.exp.incoherent) {
    const auto ops = build_collapse_operators(ctx.dev_cfg.coherence);
    rwa.incoherent_error = incoherent_gate_error(dev.rwa(p.f_d), rwa_pulse(dev, p), ops, phi);
  }
  json body = {{"phi", phi}, {"pulse", pulse_json(p)}, {"omega_upper_GHz", dev.omega_upper(p.amplitude)},
               {"t_gate_ns", p.t_gate()}, {"full_model", report_json(full)}, {"rwa_model", report_json(rwa)}};
  RunResult r;
  r.artifacts.push_back(ctx.json_artifact("", body));
  r.summary = "1-F " + num(1.0 - full.fidelity) + ", leakage " + num(full.leakage);
  if (rwa.incoherent_error) r.summary += ", incoherent " + num(*rwa.incoherent_error);
  return r;
}

RunResult run_calibrate(const Context& ctx, const Device& dev) {
  const CalibrationResult c = calibrate_cp_gate(dev, calibration_problem(ctx.exp));
  json body = {{"phi", ctx.exp.phi},
               {"success", c.success},
               {"pulse", pulse_json(c.pulse)},
               {"omega_upper_GHz", c.omega_upper},
               {"t_flat_freed", c.t_flat_freed},
               {"report", report_json(c.report)},
               {"rwa_report", report_json(c.rwa_report)},
               {"evaluations", c.evaluations},
               {"iterations", c.iterations},
               {"diagnostics", c.diagnostics}};
  RunResult r;
  r.artifacts.push_back(ctx.json_artifact("", body));
  r.exit_code = c.success ? 0 : 4;
  r.summary = std::string(c.success ? "calibrated" : "threshold missed") + ", 1-F " +
              num(1.0 - c.report.fidelity) + ", leakage " + num(c.report.leakage);
  return r;
}

RunResult run_rb(const Context& ctx) {
  const RbBlock& b = ctx.exp.rb;
  const auto be = rb_backends(ctx.dev_cfg, b);
  RbOptions o;
  o.lengths = b.lengths;
  o.n_random = b.n_random;
  o.seed = *ctx.exp.seed;
  const auto rec = simulate_simultaneous_rb(be[0], be[1], o);
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < rec[0].lengths.size(); ++i)
    rows.push_back(row({std::to_string(rec[0].lengths[i]), num(rec[0].fidelity[i]), num(rec[1].fidelity[i])}));
  RunResult r;
  r.artifacts.push_back(ctx.json_artifact("", {{"qubit_a", record_json(rec[0])}, {"qubit_b", record_json(rec[1])}}));
  r.artifacts.push_back(ctx.csv_artifact("_decay", "length,survival_a,survival_b", rows));
  r.summary = "r_A " + num(rec[0].error) + ", r_B " + num(rec[1].error);
  return r;
}

RunResult run_xeb(const Context& ctx, const Device& dev) {
  const ExperimentConfig& e = ctx.exp;
  const std::uint64_t seed = *e.seed;
  json body = {{"phi", e.phi}};

  // Single-qubit Pauli errors from simultaneous RB on the same backends.
  const auto be = rb_backends(ctx.dev_cfg, e.rb);
  RbOptions ro;
  ro.lengths = e.rb.lengths;
  ro.n_random = e.rb.n_random;
  ro.seed = stream_seed(seed, 1);
  const auto rb = simulate_simultaneous_rb(be[0], be[1], ro);

  XebBackend xb{be[0], be[1], CMat(), e.xeb.cycle_depolarizing};
  if (e.xeb.cp_model == "lindblad") {
    json info;
    const PulseProgram q = lindblad_pulse(dev, e, info);
    const auto ops = build_collapse_operators(ctx.dev_cfg.coherence);
    xb.cp_channel = corrected_gate_channel(dev.rwa(q.f_d), q, ops, e.phi);
    body["gate"] = info;
  }
  XebOptions xo;
  xo.lengths = e.xeb.lengths;
  xo.n_random = e.xeb.n_random;
  xo.shots = e.xeb.shots;
  xo.excited_a = e.xeb.excited_a;
  xo.excited_b = e.xeb.excited_b;
  xo.seed = stream_seed(seed, 2);
  const XebRecord x = simulate_xeb(xb, e.phi, xo, rb[0].pauli_error, rb[1].pauli_error);

  body["r_cp"] = x.r_cp;
  body["r_cp_err"] = x.r_cp_err;
  body["rp_cp"] = x.rp_cp;
  body["rp_cycle"] = x.rp_cycle;
  body["rp_a"] = x.rp_a;
  body["rp_b"] = x.rp_b;
  body["cycle"] = record_json(x.cycle);
  body["rb"] = {{"qubit_a", record_json(rb[0])}, {"qubit_b", record_json(rb[1])}};
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < x.cycle.lengths.size(); ++i)
    rows.push_back(row({std::to_string(x.cycle.lengths[i]), num(x.cycle.fidelity[i])}));
  RunResult r;
  r.artifacts.push_back(ctx.json_artifact("", body));
  r.artifacts.push_back(ctx.csv_artifact("_decay", "cycles,sequence_fidelity", rows));
  r.summary = "r_CP " + num(x.r_cp) + " +- " + num(x.r_cp_err);
  return r;
}

RunResult run_qpt(const Context& ctx, const Device& dev) {
  const ExperimentConfig& e = ctx.exp;
  const QptBlock& b = e.qpt;
  json body = {{"phi", e.phi}};

  CMat channel;
  if (b.cp_model == "lindblad") {
    json info;
    const PulseProgram q = lindblad_pulse(dev, e, info);
    channel = corrected_gate_channel(dev.rwa(q.f_d), q, build_collapse_operators(ctx.dev_cfg.coherence), e.phi);
    body["gate"] = info;
  } else {
    channel = unitary_superop(cp_unitary(e.phi));
  }
  auto apply = [&](const CMat& rho) {
    CMat out = unvec(channel * vec(rho), 4);
    out(3, 3) += rho.trace() - out.trace();  // leaked population reads out as |11>
    return out;
  };

  CMat pa = CMat::Zero(2, 2), pb = CMat::Zero(2, 2);
  pa(0, 0) = 1.0 - b.excited_a;
  pa(1, 1) = b.excited_a;
  pb(0, 0) = 1.0 - b.excited_b;
  pb(1, 1) = b.excited_b;
  const CMat rho_init = kron(pa, pb);

  MeasurementOperator truth;
  truth.ii = {b.beta[0], b.beta[1]};
  truth.iz = {b.beta[2], b.beta[3]};
  truth.zi = {b.beta[4], b.beta[5]};
  truth.zz = {b.beta[6], b.beta[7]};

  std::mt19937_64 rng(*e.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto noisy = [&](cplx v) {
    if (b.signal_noise == 0.0) return v;
    const double re = gauss(rng), im = gauss(rng);
    return v + b.signal_noise * cplx(re, im);
  };

  std::array<cplx, 4> cal;
  for (int i = 0; i < 4; ++i) cal[i] = noisy(predict_signal(truth, rho_init, calibration_pulses()[i]));
  const MeasurementOperator op = calibrate_measurement_operator(cal, rho_init);

  const std::vector<CMat> inputs = prepared_inputs(rho_init);
  std::vector<CMat> states = inputs;
  for (const CMat& rho : inputs) states.push_back(apply(rho));

  // Noise is drawn serially so the records do not depend on the thread count.
  std::vector<std::vector<TomographyRecord>> records(states.size());
  for (std::size_t s = 0; s < states.size(); ++s)
    for (const auto& p : tomography_pulses()) records[s].push_back({p.label(), noisy(predict_signal(truth, states[s], p))});

  std::vector<CMat> est(states.size());
  std::vector<double> residual(states.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
  for (long s = 0; s < long(states.size()); ++s) {
    try {
      const StateEstimate se = mle_state_tomography(records[s], op);
      est[s] = se.rho;
      residual[s] = se.residual;
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  const std::vector<CMat> est_in(est.begin(), est.begin() + 16), est_out(est.begin() + 16, est.end());
  const std::vector<CMat> true_out(states.begin() + 16, states.end());
  const CMat chi = process_tomography(est_in, est_out);
  const CMat chi_exact = process_tomography(inputs, true_out);
  const CMat chi_ideal = chi_from_unitary(cp_unitary(e.phi));

  body["measurement_operator"] = {{"II", {op.ii.real(), op.ii.imag()}}, {"IZ", {op.iz.real(), op.iz.imag()}},
                                  {"ZI", {op.zi.real(), op.zi.imag()}}, {"ZZ", {op.zz.real(), op.zz.imag()}}};
  body["process_fidelity"] = chi_fidelity(chi, chi_ideal);
  body["process_fidelity_noiseless"] = chi_fidelity(chi_exact, chi_ideal);
  body["max_mle_residual"] = *std::max_element(residual.begin(), residual.end());
  json re = json::array(), im = json::array();
  std::vector<std::string> rows;
  const auto& labels = pauli_labels();
  for (int m = 0; m < 16; ++m) {
    json rr = json::array(), ri = json::array();
    for (int n = 0; n < 16; ++n) {
      rr.push_back(chi(m, n).real());
      ri.push_back(chi(m, n).imag());
      rows.push_back(row({labels[m], labels[n], num(chi(m, n).real()), num(chi(m, n).imag()), num(std::abs(chi(m, n)))}));
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  body["basis_order"] = "P_m = kron(sigma_A, sigma_B), row-major over A then B";
  body["pauli_labels"] = labels;
  body["chi_re"] = re;
  body["chi_im"] = im;
  RunResult r;
  r.artifacts.push_back(ctx.json_artifact("", body));
  r.artifacts.push_back(ctx.csv_artifact("_chi", "m,n,re,im,abs", rows));
  json recs = json::array();
  for (std::size_t s = 0; s < records.size(); ++s) {
    json one = json::object();
    for (const auto& t : records[s]) one[t.pulse] = {t.value.real(), t.value.imag()};
    recs.push_back({{"state", s < 16 ? "input" : "output"}, {"preparation", preparation_pulses()[s % 16].label()},
                    {"signals", one}});
  }
  r.artifacts.push_back(ctx.json_artifact("_records", {{"records", recs}}));
  r.summary = "process fidelity " + num(body["process_fidelity"].get<double>());
  return r;
}

}  // namespace

std::string config_hash(const DeviceConfig& dev, const ExperimentConfig& exp) {
  return fnv1a_hex(serialize(dev) + serialize(exp));
}

ExperimentConfig default_experiment(ExperimentKind kind) {
  ExperimentConfig e;
  e.kind = kind;
  switch (kind) {
    case ExperimentKind::kZzMap:
      e.f_d_grid = Grid{4.40, 4.70, 61};
      e.omega_grid = Grid{0.0, 0.06, 61};
      break;
    case ExperimentKind::kCancel:
    case ExperimentKind::kZzRamsey: e.f_d = 4.65; break;
    case ExperimentKind::kRb:
    case ExperimentKind::kXeb:
    case ExperimentKind::kQpt: e.seed = 1; break;
    default: break;
  }
  return e;
}

RunResult run_experiment(const DeviceConfig& dev_cfg, const ExperimentConfig& exp) {
  dev_cfg.validate();
  exp.validate();
  const Context ctx{dev_cfg, exp, config_hash(dev_cfg, exp)};
  const std::string where = kind_name(exp.kind) + ": ";
  try {
    if (exp.kind == ExperimentKind::kRb) return run_rb(ctx);
    const Device dev = Device::build(dev_cfg.coupled, dev_cfg.eps_ratio);
    switch (exp.kind) {
      case ExperimentKind::kSpectrum: return run_spectrum(ctx, dev);
      case ExperimentKind::kZzMap: return run_zz_map(ctx, dev);
      case ExperimentKind::kCancel: return run_ramsey(ctx, dev, true);
      case ExperimentKind::kZzRamsey: return run_ramsey(ctx, dev, false);
      case ExperimentKind::kGate: return run_gate(ctx, dev);
      case ExperimentKind::kCalibrate: return run_calibrate(ctx, dev);
      case ExperimentKind::kXeb: return run_xeb(ctx, dev);
      case ExperimentKind::kQpt: return run_qpt(ctx, dev);
      default: break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const NumericError& e) {
    throw NumericError(where + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(where + e.what());
  }
  throw InvalidInput(where + "unsupported kind");
}

void write_artifacts(const RunResult& r, const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw InvalidInput(out_dir + ": cannot create output directory: " + ec.message());
  const std::string tag = ".tmp" + std::to_string(::getpid());
  std::vector<fs::path> temps, finals;
  auto cleanup = [&] {
    for (const auto& t : temps) fs::remove(t, ec);
    for (const auto& f : finals) fs::remove(f, ec);
  };
  for (const Artifact& a : r.artifacts) {
    const fs::path target = fs::path(out_dir) / a.name;
    const fs::path tmp = target.string() + tag;
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary);
    out << a.content;
    out.close();
    if (!out) {
      cleanup();
      throw InvalidInput(tmp.string() + ": write failed");
    }
  }
  for (std::size_t i = 0; i < temps.size(); ++i) {
    const fs::path target = fs::path(out_dir) / r.artifacts[i].name;
    fs::rename(temps[i], target, ec);
    if (ec) {
      cleanup();
      throw InvalidInput(target.string() + ": rename failed: " + ec.message());
    }
    finals.push_back(target);
  }
}

}  // namespace fluxcp
