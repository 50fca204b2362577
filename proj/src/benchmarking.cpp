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

#include "fluxcp/benchmarking.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "fluxcp/metrics.hpp"
#include "fluxcp/optimize.hpp"

namespace fluxcp {

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t job) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (job + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

DecayFit fit_exponential_decay(const std::vector<double>& lengths,
                               const std::vector<double>& fidelity, double baseline,
                               bool free_baseline) {
  const int n = int(lengths.size());
  if (int(fidelity.size()) != n) throw InvalidInput("lengths and fidelities differ in size");
  if (std::set<double>(lengths.begin(), lengths.end()).size() < 4)
    throw NumericError("decay fit needs at least 4 distinct lengths");
  for (double f : fidelity)
    if (!std::isfinite(f)) throw NumericError("decay fit: non-finite fidelity");

  const auto [lo, hi] = std::minmax_element(fidelity.begin(), fidelity.end());
  if (*hi - *lo < 1e-12) {
    if (std::abs(*lo - baseline) < 1e-12)
      throw NumericError("decay fit: data constant at the baseline, p unidentifiable");
    DecayFit f;
    f.a = *lo - baseline;
    f.p = 1.0;
    f.b = baseline;
    return f;
  }

  // Log-linear seed for p on points above the baseline.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (int i = 0; i < n; ++i) {
    const double y = fidelity[i] - baseline;
    if (y <= 0) continue;
    sx += lengths[i], sy += std::log(y), sxx += lengths[i] * lengths[i], sxy += lengths[i] * std::log(y);
    ++k;
  }
  double p0 = 0.99;
  if (k >= 2 && k * sxx - sx * sx > 0) p0 = std::exp((k * sxy - sx * sy) / (k * sxx - sx * sx));
  p0 = std::clamp(p0, 0.5, 0.9999);
  const int i0 = int(std::min_element(lengths.begin(), lengths.end()) - lengths.begin());
  RVec x0(free_baseline ? 3 : 2);
  x0.head(2) << (fidelity[i0] - baseline) / std::pow(p0, lengths[i0]), p0;
  if (free_baseline) x0(2) = baseline;

  auto resid = [&](const RVec& x, RVec& r) {
    const double b = free_baseline ? x(2) : baseline;
    for (int i = 0; i < n; ++i) r(i) = x(0) * std::pow(std::abs(x(1)), lengths[i]) + b - fidelity[i];
  };
  const LeastSquaresResult lsq = fit_least_squares(resid, x0, n);
  DecayFit f{lsq.x(0), lsq.x(1), baseline, lsq.std_err(0), lsq.std_err(1), 0.0};
  if (free_baseline) f.b = lsq.x(2), f.b_err = lsq.std_err(2);
  if (!(f.p > 0.0 && f.p <= 1.0 + 1e-9)) {
    std::ostringstream msg;
    msg << "decay fit: p = " << f.p << " outside (0, 1]";
    throw NumericError(msg.str());
  }
  f.p = std::min(f.p, 1.0);
  return f;
}

double cycle_error(double p, int n) { return (n - 1.0) / n * (1.0 - p); }
double pauli_error(double r, int n) { return (n + 1.0) / n * r; }
double average_error(double rp, int n) { return n / (n + 1.0) * rp; }
double cp_pauli_error(double rp_cycle, double rp_a, double rp_b) {
  return 1.0 - (1.0 - rp_cycle) / ((1.0 - rp_a) * (1.0 - rp_b));
}

namespace {

CMat depolarizing_superop(double p, int d) {
  // rho -> p rho + (1 - p) Tr(rho) I / d
  CMat s = p * CMat::Identity(d * d, d * d);
  const CVec id = vec(CMat::Identity(d, d));
  s += (1.0 - p) / d * id * id.adjoint();
  return s;
}

double axis_phase(char axis) { return axis == 'Y' ? kPi / 2 : 0.0; }

}  // namespace

QubitBackend QubitBackend::ideal() {
  QubitBackend q;
  for (const auto& g : clifford_table()) q.clifford_.push_back(unitary_superop(g.unitary()));
  return q;
}

QubitBackend QubitBackend::depolarizing(double r) {
  if (!(r >= 0.0 && r <= 0.5)) throw InvalidInput("depolarizing error must be in [0, 0.5]");
  QubitBackend q = ideal();
  q.kind_ = Kind::kDepolarizing;
  q.r_ = r;
  const CMat d = depolarizing_superop(1.0 - 2.0 * r, 2);
  for (CMat& s : q.clifford_) s = d * s;
  return q;
}

QubitBackend QubitBackend::lindblad(const QubitCoherence& c, double pulse_ns) {
  if (!(pulse_ns > 0.0)) throw InvalidInput("pulse length must be > 0");
  QubitBackend q;
  q.kind_ = Kind::kLindblad;
  q.pulse_ns_ = pulse_ns;
  q.coherence_ = c;
  PulseProgram shape;
  shape.t_rise = pulse_ns / 2;
  shape.t_flat = 0.0;
  std::vector<std::pair<PulseOp, CMat>> cache;
  auto channel = [&](const PulseOp& op) -> CMat {
    if (!op.physical()) return unitary_superop(rotation(op.axis, op.angle));
    for (const auto& [k, s] : cache)
      if (k.axis == op.axis && k.angle == op.angle) return s;
    const CMat s = qubit_pulse_channel(op.angle, axis_phase(op.axis), shape, c);
    cache.emplace_back(op, s);
    return s;
  };
  for (const auto& g : clifford_table()) {
    CMat s = CMat::Identity(4, 4);
    for (const PulseOp& op : g.ops) s = channel(op) * s;
    q.clifford_.push_back(s);
  }
  return q;
}

double QubitBackend::clifford_duration(int k) const {
  return kind_ == Kind::kLindblad ? pulse_ns_ * clifford_table().at(k).physical_pulse_count() : 0.0;
}

CMat QubitBackend::clifford_channel(int k, double slot_ns) const {
  const CMat& s = clifford_.at(k);
  if (kind_ != Kind::kLindblad) return s;
  const double pad = slot_ns - clifford_duration(k);
  if (pad <= 0.0) return s;
  return qubit_idle_channel(pad, coherence_) * s;
}

namespace {

BenchmarkRecord finish_rb(const RbOptions& o, std::vector<double> mean) {
  BenchmarkRecord rec;
  rec.lengths = o.lengths;
  rec.fidelity = std::move(mean);
  std::vector<double> m(o.lengths.begin(), o.lengths.end());
  rec.fit = fit_exponential_decay(m, rec.fidelity, 0.5);
  rec.error = (1.0 - rec.fit.p) / 2.0;
  rec.error_err = rec.fit.p_err / 2.0;
  rec.pauli_error = pauli_error(rec.error, 2);
  return rec;
}

void check_rb(const RbOptions& o) {
  if (o.lengths.empty() || o.n_random < 1) throw InvalidInput("RB needs lengths and n_random >= 1");
  for (std::size_t i = 0; i < o.lengths.size(); ++i)
    if (o.lengths[i] < 0 || (i > 0 && o.lengths[i] <= o.lengths[i - 1]))
      throw InvalidInput("RB lengths must be ascending and non-negative");
}

template <class Job>
void run_jobs(long n, Exec exec, Job job) {
  if (exec == Exec::kParallel) {
#pragma omp parallel for schedule(dynamic)
    for (long k = 0; k < n; ++k) job(k);
  } else {
    for (long k = 0; k < n; ++k) job(k);
  }
}

}  // namespace

BenchmarkRecord simulate_rb(const QubitBackend& q, const RbOptions& o) {
  check_rb(o);
  const long nl = long(o.lengths.size()), nr = o.n_random;
  std::vector<double> surv(nl * nr);
  run_jobs(nl * nr, o.exec, [&](long job) {
    std::mt19937_64 rng(stream_seed(o.seed, std::uint64_t(job)));
    CVec rho = vec((CMat(2, 2) << 1, 0, 0, 0).finished());
    int net = 0;
    for (int i = 0; i < o.lengths[job / nr]; ++i) {
      const int k = int(rng() % 24);
      rho = q.clifford_channel(k, 0.0) * rho;
      net = clifford_compose(k, net);
    }
    rho = q.clifford_channel(clifford_inverse(net), 0.0) * rho;
    surv[job] = rho(0).real();
  });
  std::vector<double> mean(nl, 0.0);
  for (long j = 0; j < nl * nr; ++j) mean[j / nr] += surv[j] / double(nr);
  return finish_rb(o, std::move(mean));
}

std::array<BenchmarkRecord, 2> simulate_simultaneous_rb(const QubitBackend& a,
                                                        const QubitBackend& b,
                                                        const RbOptions& o) {
  check_rb(o);
  const long nl = long(o.lengths.size()), nr = o.n_random;
  std::vector<double> sa(nl * nr), sb(nl * nr);
  run_jobs(nl * nr, o.exec, [&](long job) {
    std::mt19937_64 rng(stream_seed(o.seed, std::uint64_t(job)));
    const CVec ground = vec((CMat(2, 2) << 1, 0, 0, 0).finished());
    CVec ra = ground, rb = ground;
    int na = 0, nb = 0;
    auto slot = [&](int ka, int kb) {
      const double t = std::max(a.clifford_duration(ka), b.clifford_duration(kb));
      ra = a.clifford_channel(ka, t) * ra;
      rb = b.clifford_channel(kb, t) * rb;
    };
    for (int i = 0; i < o.lengths[job / nr]; ++i) {
      const int ka = int(rng() % 24), kb = int(rng() % 24);
      slot(ka, kb);
      na = clifford_compose(ka, na);
      nb = clifford_compose(kb, nb);
    }
    slot(clifford_inverse(na), clifford_inverse(nb));
    sa[job] = ra(0).real();
    sb[job] = rb(0).real();
  });
  std::vector<double> ma(nl, 0.0), mb(nl, 0.0);
  for (long j = 0; j < nl * nr; ++j) {
    ma[j / nr] += sa[j] / double(nr);
    mb[j / nr] += sb[j] / double(nr);
  }
  return {finish_rb(o, std::move(ma)), finish_rb(o, std::move(mb))};
}

CMat apply_local(const CMat& rho, const CMat& s, int qubit) {
  CMat out = CMat::Zero(4, 4);
  // Index of (qubit value x, partner value y) in the two-qubit basis.
  auto idx = [&](int x, int y) { return qubit == 0 ? 2 * x + y : 2 * y + x; };
  for (int y = 0; y < 2; ++y)
    for (int y2 = 0; y2 < 2; ++y2) {
      CVec v(4);
      for (int x = 0; x < 2; ++x)
        for (int x2 = 0; x2 < 2; ++x2) v(2 * x + x2) = rho(idx(x, y), idx(x2, y2));
      const CVec w = s * v;
      for (int x = 0; x < 2; ++x)
        for (int x2 = 0; x2 < 2; ++x2) out(idx(x, y), idx(x2, y2)) = w(2 * x + x2);
    }
  return out;
}

double cross_entropy(const RVec& p, const RVec& q) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) h -= p(i) * std::log(std::max(q(i), 1e-9));
  return h;
}

XebRecord simulate_xeb(const XebBackend& be, double phi, const XebOptions& o, double rp_a,
                       double rp_b) {
  if (o.lengths.size() < 4 || o.n_random < 1 || o.shots < 0)
    throw InvalidInput("XEB needs >= 4 lengths, n_random >= 1, shots >= 0");
  if (!(o.excited_a >= 0 && o.excited_a <= 1 && o.excited_b >= 0 && o.excited_b <= 1))
    throw InvalidInput("initial excited populations must be in [0, 1]");
  if (be.cp_channel.size() != 0 && (be.cp_channel.rows() != 16 || be.cp_channel.cols() != 16))
    throw InvalidInput("CP channel must be 16 x 16");
  const CMat cp = cp_unitary(phi);
  const CMat cp_super = be.cp_channel.size() ? be.cp_channel : unitary_superop(cp);
  const auto& table = clifford_table();

  CMat rho_init = CMat::Zero(4, 4);
  const double ea = o.excited_a, eb = o.excited_b;
  rho_init.diagonal() << (1 - ea) * (1 - eb), (1 - ea) * eb, ea * (1 - eb), ea * eb;
  const RVec p_uniform = RVec::Constant(4, 0.25);

  const long nl = long(o.lengths.size()), nr = o.n_random;
  std::vector<double> num(nl * nr), den(nl * nr);
  run_jobs(nl * nr, o.exec, [&](long job) {
    std::mt19937_64 rng(stream_seed(o.seed, std::uint64_t(job)));
    CMat ideal = rho_init, noisy = rho_init;
    for (int c = 0; c < o.lengths[job / nr]; ++c) {
      const int ka = int(rng() % 24), kb = int(rng() % 24);
      const CMat u = cp * kron(table[ka].unitary(), table[kb].unitary());
      ideal = u * ideal * u.adjoint();
      const double t = std::max(be.a.clifford_duration(ka), be.b.clifford_duration(kb));
      noisy = apply_local(noisy, be.a.clifford_channel(ka, t), 0);
      noisy = apply_local(noisy, be.b.clifford_channel(kb, t), 1);
      const cplx before = noisy.trace();
      noisy = unvec(cp_super * vec(noisy), 4);
      // Population that left the block sits in |21>; it relaxes to |11> and reads out there.
      noisy(3, 3) += before - noisy.trace();
      if (be.cycle_depolarizing != 1.0)
        noisy = be.cycle_depolarizing * noisy +
                (1.0 - be.cycle_depolarizing) * noisy.trace() * CMat::Identity(4, 4) / 4.0;
    }
    const RVec p_exp = ideal.diagonal().real().cwiseMax(0.0);
    RVec p_meas = noisy.diagonal().real().cwiseMax(0.0);
    p_meas /= p_meas.sum();
    if (o.shots > 0) {
      // Multinomial draw as a chain of binomials.
      RVec counts = RVec::Zero(4);
      int left = o.shots;
      double mass = 1.0;
      for (int i = 0; i < 3 && left > 0; ++i) {
        const double q = mass > 0 ? std::clamp(p_meas(i) / mass, 0.0, 1.0) : 0.0;
        std::binomial_distribution<int> bin(left, q);
        const int c = bin(rng);
        counts(i) = c;
        left -= c;
        mass -= p_meas(i);
      }
      counts(3) += left;
      p_meas = counts / double(o.shots);
    }
    // Incoherent reference: a fully depolarized register scores 0 on every sequence.
    const double h_ref = cross_entropy(p_uniform, p_exp);
    num[job] = h_ref - cross_entropy(p_meas, p_exp);
    den[job] = h_ref - cross_entropy(p_exp, p_exp);
  });

  XebRecord rec;
  rec.cycle.lengths = o.lengths;
  rec.cycle.fidelity.assign(nl, 0.0);
  for (long l = 0; l < nl; ++l) {
    double sn = 0, sd = 0;
    for (long s = 0; s < nr; ++s) sn += num[l * nr + s], sd += den[l * nr + s];
    rec.cycle.fidelity[l] = sn / sd;
  }
  std::vector<double> m(o.lengths.begin(), o.lengths.end());
  rec.cycle.fit = fit_exponential_decay(m, rec.cycle.fidelity, 0.0, false);
  rec.cycle.error = cycle_error(rec.cycle.fit.p, 4);
  rec.cycle.error_err = 0.75 * rec.cycle.fit.p_err;
  rec.cycle.pauli_error = pauli_error(rec.cycle.error, 4);
  rec.rp_cycle = rec.cycle.pauli_error;
  rec.rp_a = rp_a;
  rec.rp_b = rp_b;
  rec.rp_cp = cp_pauli_error(rec.rp_cycle, rp_a, rp_b);
  rec.r_cp = average_error(rec.rp_cp, 4);
  rec.r_cp_err = average_error(pauli_error(rec.cycle.error_err, 4), 4) / ((1 - rp_a) * (1 - rp_b));
  if (rec.r_cp < -3.0 * rec.r_cp_err - 1e-12) {
    std::ostringstream msg;
    msg << "extracted CP error " << rec.r_cp << " is negative beyond 3 sigma (" << rec.r_cp_err << ")";
    throw NumericError(msg.str());
  }
  return rec;
}

}  // namespace fluxcp
