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


#include "fluxcp/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fluxcp {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path.empty() ? msg : path + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Strict view of one JSON object: every key must be consumed.
class Obj {
 public:
  Obj(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  bool has(const std::string& k) const { return j_.contains(k) && !j_.at(k).is_null(); }
  std::string at(const std::string& k) const { return join(path_, k); }

  // Marks k as consumed; null when absent.
  const json& raw(const std::string& k) {
    static const json kNull;
    seen_.insert(k);
    return j_.contains(k) ? j_.at(k) : kNull;
  }

  double number(const std::string& k, double def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    return as_number(j_.at(k), at(k));
  }
  double required_number(const std::string& k) {
    if (!j_.contains(k)) fail(at(k), "required field missing");
    return number(k, 0.0);
  }
  // null means "switched off" (infinite time).
  double time_or_forever(const std::string& k, double def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    if (j_.at(k).is_null()) return kForever;
    return as_number(j_.at(k), at(k));
  }
  std::optional<double> optional_number(const std::string& k) {
    seen_.insert(k);
    if (!has(k)) return std::nullopt;
    return as_number(j_.at(k), at(k));
  }
  int integer(const std::string& k, int def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    const json& v = j_.at(k);
    if (!v.is_number_integer()) fail(at(k), "expected an integer");
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
      fail(at(k), "integer out of range");
    return int(x);
  }
  bool boolean(const std::string& k, bool def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    if (!j_.at(k).is_boolean()) fail(at(k), "expected true or false");
    return j_.at(k).get<bool>();
  }
  std::string string(const std::string& k, const std::string& def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    if (!j_.at(k).is_string()) fail(at(k), "expected a string");
    return j_.at(k).get<std::string>();
  }
  std::vector<int> int_list(const std::string& k, const std::vector<int>& def) {
    seen_.insert(k);
    if (!j_.contains(k)) return def;
    const json& v = j_.at(k);
    if (!v.is_array()) fail(at(k), "expected an array of integers");
    std::vector<int> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number_integer()) fail(at(k) + "[" + std::to_string(i) + "]", "expected an integer");
      out.push_back(v[i].get<int>());
    }
    return out;
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) fail(at(it.key()), "unknown key");
  }

  static double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(path, "must be finite");
    return x;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') ++line, col = 1;
      else ++col;
    }
    std::string what = e.what();
    const auto pos = what.find("syntax error");
    if (pos != std::string::npos) what = what.substr(pos);
    throw ConfigError("parse error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + what);
  } catch (const json::exception& e) {
    // e.g. a numeric literal outside double range
    throw ConfigError(std::string("parse error: ") + e.what());
  }
}

void check_schema(Obj& o) {
  const int v = o.integer("schema_version", -1);
  if (v == -1) fail("schema_version", "required field missing");
  if (v != kSchemaVersion) fail("schema_version", "unsupported version " + std::to_string(v));
}

FluxoniumSpec read_qubit(const json& j, const std::string& path) {
  Obj o(j, path);
  FluxoniumSpec q;
  q.e_c = o.required_number("E_C_GHz");
  q.e_l = o.required_number("E_L_GHz");
  q.e_j = o.required_number("E_J_GHz");
  q.phi_ext = o.number("phi_ext_rad", kPi);
  o.finish();
  if (!(q.e_c > 0.0)) fail(o.at("E_C_GHz"), "must be > 0 (positive charging energy)");
  if (!(q.e_l > 0.0)) fail(o.at("E_L_GHz"), "must be > 0 (positive inductive energy)");
  if (!(q.e_j >= 0.0)) fail(o.at("E_J_GHz"), "must be >= 0");
  return q;
}

json write_time(double t) { return std::isinf(t) ? json(nullptr) : json(t); }

Grid read_grid(const json& j, const std::string& path) {
  Obj o(j, path);
  Grid g;
  g.start = o.required_number("start");
  g.stop = o.required_number("stop");
  g.points = o.integer("points", 1);
  o.finish();
  if (g.points < 1) fail(o.at("points"), "must be >= 1");
  if (g.stop < g.start) fail(o.at("stop"), "must be >= start");
  return g;
}

json write_grid(const Grid& g) { return {{"start", g.start}, {"stop", g.stop}, {"points", g.points}}; }

QubitModel read_qubit_model(const json& j, const std::string& path, QubitModel def) {
  Obj o(j, path);
  def.kind = o.string("model", def.kind);
  def.error_per_clifford = o.number("error_per_clifford", def.error_per_clifford);
  def.pulse_ns = o.number("pulse_ns", def.pulse_ns);
  o.finish();
  return def;
}

json write_qubit_model(const QubitModel& q) {
  return {{"model", q.kind}, {"error_per_clifford", q.error_per_clifford}, {"pulse_ns", q.pulse_ns}};
}

double read_phase(const json& v, const std::string& path) {
  if (v.is_string()) {
    try {
      return parse_phase(v.get<std::string>());
    } catch (const ConfigError& e) {
      fail(path, e.what());
    }
  }
  return Obj::as_number(v, path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path + ": cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <class F>
auto with_file(const std::string& path, F f) {
  try {
    return f(read_file(path));
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw ConfigError(path + ": " + msg);
  }
}

}  // namespace

std::string kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSpectrum: return "spectrum";
    case ExperimentKind::kZzMap: return "zz-map";
    case ExperimentKind::kCancel: return "cancel";
    case ExperimentKind::kGate: return "gate";
    case ExperimentKind::kCalibrate: return "calibrate";
    case ExperimentKind::kRb: return "rb";
    case ExperimentKind::kXeb: return "xeb";
    case ExperimentKind::kQpt: return "qpt";
    case ExperimentKind::kZzRamsey: return "zz-ramsey";
  }
  return "?";
}

ExperimentKind parse_kind(const std::string& s) {
  for (ExperimentKind k : {ExperimentKind::kSpectrum, ExperimentKind::kZzMap, ExperimentKind::kCancel,
                           ExperimentKind::kGate, ExperimentKind::kCalibrate, ExperimentKind::kRb,
                           ExperimentKind::kXeb, ExperimentKind::kQpt, ExperimentKind::kZzRamsey})
    if (kind_name(k) == s) return k;
  throw ConfigError("unknown experiment kind '" + s + "'");
}

std::vector<double> Grid::values() const {
  std::vector<double> v;
  for (int i = 0; i < points; ++i)
    v.push_back(points == 1 ? start : start + (stop - start) * i / (points - 1));
  return v;
}

double parse_phase(const std::string& s) {
  static const std::regex with_pi(R"(^\s*([+-]?)\s*(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, with_pi)) {
    double v = m[2].length() ? std::stod(m[2].str()) : 1.0;
    if (m[3].length()) {
      const double d = std::stod(m[3].str());
      if (d == 0.0) throw ConfigError("phase '" + s + "': division by zero");
      v /= d;
    }
    return (m[1] == "-" ? -1.0 : 1.0) * v * kPi;
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse phase '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError("cannot parse phase '" + s + "'");
  return v;
}

void DeviceConfig::validate() const {
  auto wrap = [](const std::string& path, auto f) {
    try {
      f();
    } catch (const ConfigError&) {
      throw;
    } catch (const InvalidInput& e) {
      fail(path, e.what());
    }
  };
  wrap("qubit_a", [&] { coupled.qubit_a.validate(); });
  wrap("qubit_b", [&] { coupled.qubit_b.validate(); });
  wrap("", [&] { coupled.validate(); });
  if (coupled.basis_dim < 20) fail("basis_dim", "must be >= 20");
  wrap("coherence_us", [&] { coherence.validate(); });
  if (!std::isfinite(eps_ratio)) fail("eps_ratio", "must be finite");
}

DeviceConfig DeviceConfig::main_device() {
  DeviceConfig d;
  d.name = "main";
  d.coupled.qubit_a = {1.051, 0.753, 5.263, kPi};
  d.coupled.qubit_b = {1.069, 0.771, 3.870, kPi};
  d.coupled.j_c = 0.248;
  d.coupled.levels_per_qubit = 6;
  d.coupled.basis_dim = kDefaultBasisDim;
  d.coherence = CoherenceTable::measured_average();
  d.eps_ratio = 1.3;
  return d;
}

DeviceConfig parse_device(const std::string& text) {
  const json j = parse_text(text);
  Obj o(j, "");
  check_schema(o);
  DeviceConfig d;
  d.name = o.string("name", d.name);
  if (!o.has("qubit_a")) fail("qubit_a", "required field missing");
  if (!o.has("qubit_b")) fail("qubit_b", "required field missing");
  d.coupled.qubit_a = read_qubit(o.raw("qubit_a"), "qubit_a");
  d.coupled.qubit_b = read_qubit(o.raw("qubit_b"), "qubit_b");
  d.coupled.j_c = o.required_number("J_C_GHz");
  d.coupled.levels_per_qubit = o.integer("levels_per_qubit", 6);
  d.coupled.basis_dim = o.integer("basis_dim", kDefaultBasisDim);
  d.eps_ratio = o.number("eps_ratio", 1.0);
  if (o.has("coherence_us")) {
    Obj c(o.raw("coherence_us"), "coherence_us");
    d.coherence.t1_a = c.time_or_forever("T1_A", kForever);
    d.coherence.t2e_a = c.time_or_forever("T2E_A", kForever);
    d.coherence.t1_b = c.time_or_forever("T1_B", kForever);
    d.coherence.t2e_b = c.time_or_forever("T2E_B", kForever);
    d.coherence.t1_12 = c.time_or_forever("T1_12", kForever);
    d.coherence.t2e_12 = c.time_or_forever("T2E_12", kForever);
    c.finish();
  } else {
    o.raw("coherence_us");  // absent: everything switched off
  }
  o.finish();
  if (d.coupled.levels_per_qubit < 4) fail("levels_per_qubit", "must be >= 4");
  d.validate();
  return d;
}

std::string serialize(const DeviceConfig& d) {
  auto qubit = [](const FluxoniumSpec& q) {
    return json{{"E_C_GHz", q.e_c}, {"E_L_GHz", q.e_l}, {"E_J_GHz", q.e_j}, {"phi_ext_rad", q.phi_ext}};
  };
  const CoherenceTable& c = d.coherence;
  json j = {{"schema_version", kSchemaVersion},
            {"name", d.name},
            {"qubit_a", qubit(d.coupled.qubit_a)},
            {"qubit_b", qubit(d.coupled.qubit_b)},
            {"J_C_GHz", d.coupled.j_c},
            {"levels_per_qubit", d.coupled.levels_per_qubit},
            {"basis_dim", d.coupled.basis_dim},
            {"eps_ratio", d.eps_ratio},
            {"coherence_us",
             {{"T1_A", write_time(c.t1_a)}, {"T2E_A", write_time(c.t2e_a)},
              {"T1_B", write_time(c.t1_b)}, {"T2E_B", write_time(c.t2e_b)},
              {"T1_12", write_time(c.t1_12)}, {"T2E_12", write_time(c.t2e_12)}}}};
  return j.dump(2) + "\n";
}

void ExperimentConfig::validate() const {
  auto need = [&](bool ok, const std::string& field) {
    if (!ok) fail(field, "required for kind '" + kind_name(kind) + "'");
  };
  switch (kind) {
    case ExperimentKind::kZzMap:
      need(f_d_grid.has_value(), "f_d_grid_GHz");
      need(omega_grid.has_value(), "omega_grid_GHz");
      break;
    case ExperimentKind::kCancel: need(f_d.has_value(), "f_d_GHz"); break;
    case ExperimentKind::kGate: need(pulse.has_value(), "pulse"); break;
    case ExperimentKind::kRb:
    case ExperimentKind::kXeb:
    case ExperimentKind::kQpt: need(seed.has_value(), "seed"); break;
    case ExperimentKind::kZzRamsey: need(f_d.has_value(), "f_d_GHz"); break;
    default: break;
  }
  if (!std::isfinite(phi)) fail("phi", "must be finite");
  if (kind == ExperimentKind::kCalibrate && !(phi > 0.0 && phi < kTwoPi))
    fail("phi", "must be in (0, 2 pi)");
  if (pulse) {
    try {
      pulse->validate();
    } catch (const InvalidInput& e) {
      fail("pulse", e.what());
    }
  }
  if (f_d && !(*f_d > 0.0)) fail("f_d_GHz", "must be > 0");
  if (omega_upper && !(*omega_upper >= 0.0)) fail("omega_upper_GHz", "must be >= 0");
  if (calibration.timing != "experimental" && calibration.timing != "fixed")
    fail("calibration.timing", "must be 'experimental' or 'fixed'");
  if (!(calibration.t_rise > 0.0)) fail("calibration.t_rise_ns", "must be > 0");
  if (!(calibration.t_flat >= 0.0)) fail("calibration.t_flat_ns", "must be >= 0");
  if (calibration.max_iterations < 1) fail("calibration.max_iterations", "must be >= 1");
  if (!(calibration.threshold > 0.0)) fail("calibration.threshold", "must be > 0");

  auto check_lengths = [](const std::vector<int>& l, const std::string& path) {
    if (l.empty()) fail(path, "must not be empty");
    for (std::size_t i = 0; i < l.size(); ++i)
      if (l[i] < 0 || (i > 0 && l[i] <= l[i - 1])) fail(path, "must be ascending and >= 0");
  };
  check_lengths(rb.lengths, "rb.lengths");
  check_lengths(xeb.lengths, "xeb.lengths");
  if (rb.n_random < 1) fail("rb.n_random", "must be >= 1");
  for (const auto& [q, path] : {std::pair{rb.qubit_a, "rb.qubit_a"}, std::pair{rb.qubit_b, "rb.qubit_b"}}) {
    const std::string p = path;
    if (q.kind != "ideal" && q.kind != "depolarizing" && q.kind != "lindblad")
      fail(p + ".model", "must be ideal, depolarizing or lindblad");
    if (!(q.error_per_clifford >= 0.0 && q.error_per_clifford <= 0.5))
      fail(p + ".error_per_clifford", "must be in [0, 0.5]");
    if (!(q.pulse_ns > 0.0)) fail(p + ".pulse_ns", "must be > 0");
  }
  if (xeb.lengths.size() < 4) fail("xeb.lengths", "needs at least 4 lengths");
  if (xeb.n_random < 1) fail("xeb.n_random", "must be >= 1");
  if (xeb.shots < 0) fail("xeb.shots", "must be >= 0");
  for (const auto& [v, path] : {std::pair{xeb.excited_a, "xeb.excited_a"}, std::pair{xeb.excited_b, "xeb.excited_b"},
                                std::pair{qpt.excited_a, "qpt.excited_a"}, std::pair{qpt.excited_b, "qpt.excited_b"}})
    if (!(v >= 0.0 && v <= 1.0)) fail(path, "must be in [0, 1]");
  if (xeb.cp_model != "ideal" && xeb.cp_model != "lindblad") fail("xeb.cp_model", "must be ideal or lindblad");
  if (!(xeb.cycle_depolarizing >= 0.0 && xeb.cycle_depolarizing <= 1.0))
    fail("xeb.cycle_depolarizing", "must be in [0, 1]");
  if (qpt.cp_model != "ideal" && qpt.cp_model != "lindblad") fail("qpt.cp_model", "must be ideal or lindblad");
  if (!(qpt.signal_noise >= 0.0)) fail("qpt.signal_noise", "must be >= 0");
  if (ramsey.model != "floquet" && ramsey.model != "rwa") fail("ramsey.model", "must be floquet or rwa");
  if (!(ramsey.t_max > 0.0)) fail("ramsey.t_max_ns", "must be > 0");
  if (ramsey.points < 8) fail("ramsey.points", "must be >= 8");
  if (!(drive_eps >= 0.0)) fail("drive_eps_GHz", "must be >= 0");
}

ExperimentConfig parse_experiment(const std::string& text) {
  const json j = parse_text(text);
  Obj o(j, "");
  check_schema(o);
  ExperimentConfig e;
  if (!o.has("kind")) fail("kind", "required field missing");
  try {
    e.kind = parse_kind(o.string("kind", ""));
  } catch (const ConfigError& err) {
    fail("kind", err.what());
  }
  if (o.has("seed")) {
    const json& s = o.raw("seed");
    if (!s.is_number_unsigned() && !(s.is_number_integer() && s.get<long long>() >= 0))
      fail("seed", "expected a non-negative integer");
    e.seed = s.get<std::uint64_t>();
  } else {
    o.raw("seed");
  }
  if (o.has("phi")) e.phi = read_phase(o.raw("phi"), "phi");
  else o.raw("phi");
  if (o.has("pulse")) {
    Obj p(o.raw("pulse"), "pulse");
    PulseProgram q;
    q.f_d = p.required_number("f_d_GHz");
    q.t_rise = p.required_number("t_rise_ns");
    q.t_flat = p.number("t_flat_ns", 0.0);
    q.sigma = p.number("sigma_ns", 0.0);
    q.amplitude = p.required_number("amplitude_GHz");
    q.drag = p.number("drag_ns", 0.0);
    q.eps_ratio = p.number("eps_ratio", 1.0);
    if (p.has("frame_phases_rad")) {
      const json& f = p.raw("frame_phases_rad");
      if (!f.is_array() || f.size() != 2) fail("pulse.frame_phases_rad", "expected two numbers");
      q.frame_phases = {Obj::as_number(f[0], "pulse.frame_phases_rad[0]"),
                        Obj::as_number(f[1], "pulse.frame_phases_rad[1]")};
    } else {
      p.raw("frame_phases_rad");
    }
    p.finish();
    e.pulse = q;
  } else {
    o.raw("pulse");
  }
  e.f_d = o.optional_number("f_d_GHz");
  e.omega_upper = o.optional_number("omega_upper_GHz");
  if (o.has("f_d_grid_GHz")) e.f_d_grid = read_grid(o.raw("f_d_grid_GHz"), "f_d_grid_GHz");
  else o.raw("f_d_grid_GHz");
  if (o.has("omega_grid_GHz")) e.omega_grid = read_grid(o.raw("omega_grid_GHz"), "omega_grid_GHz");
  else o.raw("omega_grid_GHz");
  e.drive_eps = o.number("drive_eps_GHz", e.drive_eps);
  e.incoherent = o.boolean("incoherent", e.incoherent);
  if (o.has("calibration")) {
    Obj c(o.raw("calibration"), "calibration");
    CalibrationBlock& b = e.calibration;
    b.timing = c.string("timing", b.timing);
    b.t_rise = c.number("t_rise_ns", b.t_rise);
    b.t_flat = c.number("t_flat_ns", b.t_flat);
    b.free_t_flat = c.boolean("free_t_flat", b.free_t_flat);
    b.full_model = c.boolean("full_model", b.full_model);
    b.max_iterations = c.integer("max_iterations", b.max_iterations);
    b.threshold = c.number("threshold", b.threshold);
    c.finish();
  } else {
    o.raw("calibration");
  }
  if (o.has("rb")) {
    Obj r(o.raw("rb"), "rb");
    e.rb.lengths = r.int_list("lengths", e.rb.lengths);
    e.rb.n_random = r.integer("n_random", e.rb.n_random);
    if (r.has("qubit_a")) e.rb.qubit_a = read_qubit_model(r.raw("qubit_a"), "rb.qubit_a", e.rb.qubit_a);
    else r.raw("qubit_a");
    if (r.has("qubit_b")) e.rb.qubit_b = read_qubit_model(r.raw("qubit_b"), "rb.qubit_b", e.rb.qubit_b);
    else r.raw("qubit_b");
    r.finish();
  } else {
    o.raw("rb");
  }
  if (o.has("xeb")) {
    Obj x(o.raw("xeb"), "xeb");
    XebBlock& b = e.xeb;
    b.lengths = x.int_list("lengths", b.lengths);
    b.n_random = x.integer("n_random", b.n_random);
    b.shots = x.integer("shots", b.shots);
    b.excited_a = x.number("excited_a", b.excited_a);
    b.excited_b = x.number("excited_b", b.excited_b);
    b.cp_model = x.string("cp_model", b.cp_model);
    b.cycle_depolarizing = x.number("cycle_depolarizing", b.cycle_depolarizing);
    x.finish();
  } else {
    o.raw("xeb");
  }
  if (o.has("qpt")) {
    Obj q(o.raw("qpt"), "qpt");
    QptBlock& b = e.qpt;
    b.excited_a = q.number("excited_a", b.excited_a);
    b.excited_b = q.number("excited_b", b.excited_b);
    b.signal_noise = q.number("signal_noise", b.signal_noise);
    b.cp_model = q.string("cp_model", b.cp_model);
    if (q.has("beta")) {
      Obj beta(q.raw("beta"), "qpt.beta");
      const char* names[4] = {"II", "IZ", "ZI", "ZZ"};
      for (int i = 0; i < 4; ++i) {
        if (!beta.has(names[i])) {
          beta.raw(names[i]);
          continue;
        }
        const json& v = beta.raw(names[i]);
        const std::string path = beta.at(names[i]);
        if (!v.is_array() || v.size() != 2) fail(path, "expected [re, im]");
        b.beta[2 * i] = Obj::as_number(v[0], path + "[0]");
        b.beta[2 * i + 1] = Obj::as_number(v[1], path + "[1]");
      }
      beta.finish();
    } else {
      q.raw("beta");
    }
    q.finish();
  } else {
    o.raw("qpt");
  }
  if (o.has("ramsey")) {
    Obj r(o.raw("ramsey"), "ramsey");
    e.ramsey.model = r.string("model", e.ramsey.model);
    e.ramsey.t_max = r.number("t_max_ns", e.ramsey.t_max);
    e.ramsey.points = r.integer("points", e.ramsey.points);
    r.finish();
  } else {
    o.raw("ramsey");
  }
  e.output_name = o.string("output_name", "");
  o.finish();
  e.validate();
  return e;
}

std::string serialize(const ExperimentConfig& e) {
  json j = {{"schema_version", kSchemaVersion}, {"kind", kind_name(e.kind)}};
  if (e.seed) j["seed"] = *e.seed;
  j["phi"] = e.phi;
  if (e.pulse) {
    const PulseProgram& p = *e.pulse;
    j["pulse"] = {{"f_d_GHz", p.f_d},          {"t_rise_ns", p.t_rise},
                  {"t_flat_ns", p.t_flat},     {"sigma_ns", p.sigma},
                  {"amplitude_GHz", p.amplitude}, {"drag_ns", p.drag},
                  {"eps_ratio", p.eps_ratio},  {"frame_phases_rad", {p.frame_phases[0], p.frame_phases[1]}}};
  }
  if (e.f_d) j["f_d_GHz"] = *e.f_d;
  if (e.omega_upper) j["omega_upper_GHz"] = *e.omega_upper;
  if (e.f_d_grid) j["f_d_grid_GHz"] = write_grid(*e.f_d_grid);
  if (e.omega_grid) j["omega_grid_GHz"] = write_grid(*e.omega_grid);
  j["drive_eps_GHz"] = e.drive_eps;
  j["incoherent"] = e.incoherent;
  const CalibrationBlock& c = e.calibration;
  j["calibration"] = {{"timing", c.timing},         {"t_rise_ns", c.t_rise},
                      {"t_flat_ns", c.t_flat},      {"free_t_flat", c.free_t_flat},
                      {"full_model", c.full_model}, {"max_iterations", c.max_iterations},
                      {"threshold", c.threshold}};
  j["rb"] = {{"lengths", e.rb.lengths},
             {"n_random", e.rb.n_random},
             {"qubit_a", write_qubit_model(e.rb.qubit_a)},
             {"qubit_b", write_qubit_model(e.rb.qubit_b)}};
  const XebBlock& x = e.xeb;
  j["xeb"] = {{"lengths", x.lengths},     {"n_random", x.n_random},   {"shots", x.shots},
              {"excited_a", x.excited_a}, {"excited_b", x.excited_b}, {"cp_model", x.cp_model},
              {"cycle_depolarizing", x.cycle_depolarizing}};
  const QptBlock& q = e.qpt;
  j["qpt"] = {{"excited_a", q.excited_a},
              {"excited_b", q.excited_b},
              {"signal_noise", q.signal_noise},
              {"cp_model", q.cp_model},
              {"beta",
               {{"II", {q.beta[0], q.beta[1]}}, {"IZ", {q.beta[2], q.beta[3]}},
                {"ZI", {q.beta[4], q.beta[5]}}, {"ZZ", {q.beta[6], q.beta[7]}}}}};
  j["ramsey"] = {{"model", e.ramsey.model}, {"t_max_ns", e.ramsey.t_max}, {"points", e.ramsey.points}};
  j["output_name"] = e.output_name;
  return j.dump(2) + "\n";
}

DeviceConfig load_device(const std::string& path) {
  return with_file(path, [](const std::string& t) { return parse_device(t); });
}

ExperimentConfig load_experiment(const std::string& path) {
  return with_file(path, [](const std::string& t) { return parse_experiment(t); });
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace fluxcp
