#include "gdalab/gda.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gdalab/boolinterp.hpp"

namespace gdalab {

std::string_view to_string(ParamMode mode) noexcept {
  return mode == ParamMode::Paper ? "paper" : "scaled";
}

namespace {

void check_m_rho(int m, double rho) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("rho must lie in (0,1)");
}

}  // namespace

PaperMagnitudes paper_magnitudes(int m, double rho) {
  check_m_rho(m, rho);
  const double md = m;
  PaperMagnitudes out;
  out.delta = std::pow(rho, 4) / (400.0 * md * md * std::exp(26.0));
  // log-space copies survive when the direct values over/underflow
  const double log_delta = 4.0 * std::log(rho) - std::log(400.0) - 2.0 * std::log(md) - 26.0;
  const double log_n = 13.0 * std::log(2.0) + 13.0 + 4.0 * std::log(md) - 3.0 * log_delta;
  out.n_real = std::ceil(8192.0 * std::exp(13.0) * std::pow(md, 4) / std::pow(out.delta, 3));
  out.log2_n = log_n / std::log(2.0);
  const double eps_a = out.delta / out.n_real;
  const double eps_b = out.delta * out.delta / (std::pow(md, 4) * 16.0 * std::exp(14.0));
  out.eps = std::min(eps_a, eps_b);
  const double log_eps_a = log_delta - log_n;
  const double log_eps_b = 2.0 * log_delta - 4.0 * std::log(md) - std::log(16.0) - 14.0;
  out.log10_eps = std::min(log_eps_a, log_eps_b) / std::log(10.0);
  return out;
}

ParamDerivation derive_parameters(int m, double rho) {
  PaperMagnitudes mag = paper_magnitudes(m, rho);
  // 2^64 is exactly representable; anything at or above it does not fit
  constexpr double kLimit = 18446744073709551616.0;
  if (!std::isfinite(mag.n_real) || mag.n_real >= kLimit || !(mag.eps > 0.0)) {
    std::ostringstream msg;
    msg << "paper-scale infeasible: n = 2^" << mag.log2_n << " exceeds 64 bits (eps = 10^" << mag.log10_eps
        << ")";
    return PaperScaleInfeasible{m, rho, mag, msg.str()};
  }
  GdaParams p;
  p.m = m;
  p.rho = rho;
  p.delta = mag.delta;
  p.n = static_cast<std::uint64_t>(mag.n_real);
  p.eps = mag.eps;
  p.mode = ParamMode::Paper;
  return p;
}

GdaParams scaled_parameters(int m, double rho, double delta, std::uint64_t n, double eps) {
  check_m_rho(m, rho);
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be positive");
  if (!(eps > 0.0) || !std::isfinite(eps)) throw std::invalid_argument("eps must be positive");
  if (n == 0 || n % 2 != 0) throw std::invalid_argument("n must be a positive even integer");
  GdaParams p;
  p.m = m;
  p.rho = rho;
  p.delta = delta;
  p.n = n;
  p.eps = eps;
  p.mode = ParamMode::Scaled;
  return p;
}

GdaInstance::GdaInstance(std::shared_ptr<const Circuit> circuit, GdaParams params, LedgerPtr ledger)
    : params_(params),
      map_(std::move(circuit), ledger),
      energy_step_(named_step(StepKind::Energy, std::max(params.m, 1))),
      dim_(0),
      ledger_(map_.ledger()) {
  if (params_.m < 1 || static_cast<std::size_t>(params_.m) != map_.dim()) {
    throw std::invalid_argument("params.m = " + std::to_string(params_.m) + " but the circuit has " +
                                std::to_string(map_.dim()) + " nodes");
  }
  if (params_.n == 0) throw std::invalid_argument("n must be positive");
  const std::size_t m = map_.dim();
  if (params_.n > std::numeric_limits<std::size_t>::max() / (m * m)) {
    throw std::invalid_argument("instance dimension overflows");
  }
  dim_ = static_cast<std::size_t>(params_.n) * m * m;
}

double GdaInstance::weight(std::size_t i) const noexcept {
  return params_.delta * (static_cast<double>(i + 1) - static_cast<double>(params_.n) / 2.0);
}

void GdaInstance::check_domain(std::span<const double> x, std::span<const double> y) const {
  if (x.size() != dim_ || y.size() != dim_) {
    throw std::invalid_argument("point has dimension " + std::to_string(x.size()) + "/" +
                                std::to_string(y.size()) + ", instance has " + std::to_string(dim_));
  }
  for (std::size_t k = 0; k < dim_; ++k) {
    if (!(x[k] >= 0.0 && x[k] <= 1.0 && y[k] >= 0.0 && y[k] <= 1.0)) {
      throw std::invalid_argument("point outside [0,1]^d at coordinate " + std::to_string(k));
    }
  }
}

double GdaInstance::squared_distance(std::size_t v, std::span<const double> x, std::span<const double> y) const {
  const std::size_t block = replicas() * nodes();
  double s = 0.0;
  for (std::size_t k = v * block; k < (v + 1) * block; ++k) {
    const double t = x[k] - y[k];
    s += t * t;
  }
  return s;
}

std::vector<double> GdaInstance::all_energies(std::span<const double> x, std::span<const double> y,
                                              std::vector<double>* sq) const {
  std::vector<double> e(nodes());
  if (sq) sq->resize(nodes());
  for (std::size_t v = 0; v < nodes(); ++v) {
    const double s = squared_distance(v, x, y);
    if (sq) (*sq)[v] = s;
    e[v] = energy_step_.value(s);
  }
  return e;
}

double GdaInstance::signal_from(std::size_t w, const std::vector<double>& e) const {
  const ResolvedGate& gate = map_.topology().gates[map_.topology().producer[w]];
  switch (gate.type) {
    case GateType::Nor:
      return g_step().value(e[gate.inputs[0]] + e[gate.inputs[1]]);
    case GateType::Purify:
      return ell_step().value(e[gate.inputs[0]] + (w == gate.outputs[0] ? -0.25 : 0.25));
    case GateType::Oracle: {
      std::vector<double> in(gate.inputs.size());
      for (std::size_t k = 0; k < in.size(); ++k) in[k] = e[gate.inputs[k]];
      return interp_eval(in, *circuit().oracle());
    }
  }
  return 0.0;
}

double GdaInstance::energy(std::size_t v, std::span<const double> x, std::span<const double> y) const {
  check_domain(x, y);
  return energy_step_.value(squared_distance(v, x, y));
}

double GdaInstance::signal(std::size_t w, std::span<const double> x, std::span<const double> y) const {
  check_domain(x, y);
  return signal_from(w, all_energies(x, y, nullptr));
}

double GdaInstance::gadget(std::size_t w, std::span<const double> x, std::span<const double> y) const {
  check_domain(x, y);
  const std::size_t m = nodes();
  std::vector<double> xi(m);
  double h = 0.0;
  for (std::size_t i = 0; i < replicas(); ++i) {
    const std::size_t base = index(w, i, 0);
    for (std::size_t j = 0; j < m; ++j) xi[j] = 0.5 * (x[base + j] + y[base + j]);
    const std::vector<double> F = map_.eval_F(xi);
    for (std::size_t j = 0; j < m; ++j) h += (F[j] - xi[j]) * (y[base + j] - x[base + j]);
  }
  return h;
}

double GdaInstance::eval_f(std::span<const double> x, std::span<const double> y) const {
  check_domain(x, y);
  const std::vector<double> e = all_energies(x, y, nullptr);
  double f = 0.0;
  for (std::size_t w = 0; w < nodes(); ++w) {
    const double s = signal_from(w, e);
    if (s != 0.0) f += s * gadget(w, x, y);
  }
  const std::size_t m = nodes();
  for (std::size_t w = 0; w < nodes(); ++w) {
    for (std::size_t i = 0; i < replicas(); ++i) {
      const std::size_t base = index(w, i, 0);
      double sq = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double t = x[base + j] - y[base + j];
        sq += t * t;
      }
      f += weight(i) * sq;
    }
  }
  return f;
}

MinMaxGradient GdaInstance::eval_grad_f(std::span<const double> x, std::span<const double> y) const {
  check_domain(x, y);
  const std::size_t m = nodes();
  const std::size_t n = replicas();
  const CircuitTopology& topo = map_.topology();

  std::vector<double> sq;
  const std::vector<double> e = all_energies(x, y, &sq);
  std::vector<double> s(m);
  for (std::size_t w = 0; w < m; ++w) s[w] = signal_from(w, e);

  // First pass: per block (w, i) the displacement G and R, and the gadget totals H_w.
  std::vector<double> G(dim_), R(dim_), H(m, 0.0);
  std::vector<double> xi(m);
  for (std::size_t w = 0; w < m; ++w) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t base = index(w, i, 0);
      for (std::size_t j = 0; j < m; ++j) xi[j] = 0.5 * (x[base + j] + y[base + j]);
      const BrouwerJet jet = map_.eval_jet(xi);
      for (std::size_t j = 0; j < m; ++j) {
        G[base + j] = jet.value[j] - xi[j];
        H[w] += G[base + j] * (y[base + j] - x[base + j]);
        // the -identity part of dG/dz
        R[base + j] = -0.5 * (y[base + j] - x[base + j]);
      }
      for (std::size_t k = 0; k < m; ++k) {
        const double dk = 0.5 * (y[base + k] - x[base + k]);
        if (dk == 0.0) continue;
        for (const auto& entry : jet.jacobian.rows[k]) R[base + entry.col] += dk * entry.value;
      }
    }
  }

  // Delta_q = sum over gates reading q of H_w * phi'(sq_q) * ds_w/dE_q.
  std::vector<double> delta(m, 0.0);
  std::vector<double> in;
  for (std::size_t gi = 0; gi < topo.gates.size(); ++gi) {
    const ResolvedGate& gate = topo.gates[gi];
    switch (gate.type) {
      case GateType::Nor: {
        const double d = g_step().d1(e[gate.inputs[0]] + e[gate.inputs[1]]);
        const std::size_t w = gate.outputs[0];
        for (std::size_t q : gate.inputs) delta[q] += H[w] * energy_step_.d1(sq[q]) * d;
        break;
      }
      case GateType::Purify: {
        const std::size_t q = gate.inputs[0];
        const double dphi = energy_step_.d1(sq[q]);
        delta[q] += H[gate.outputs[0]] * dphi * ell_step().d1(e[q] - 0.25);
        delta[q] += H[gate.outputs[1]] * dphi * ell_step().d1(e[q] + 0.25);
        break;
      }
      case GateType::Oracle: {
        bool any = false;
        for (std::size_t q : gate.inputs) any = any || energy_step_.d1(sq[q]) != 0.0;
        if (!any) break;  // no query needed
        in.resize(gate.inputs.size());
        for (std::size_t k = 0; k < in.size(); ++k) in[k] = e[gate.inputs[k]];
        const std::vector<double> grad = interp_grad(in, *circuit().oracle());
        const std::size_t w = gate.outputs[0];
        for (std::size_t k = 0; k < in.size(); ++k) {
          const std::size_t q = gate.inputs[k];
          delta[q] += H[w] * energy_step_.d1(sq[q]) * grad[k];
        }
        break;
      }
    }
  }

  MinMaxGradient out{std::vector<double>(dim_), std::vector<double>(dim_)};
  for (std::size_t q = 0; q < m; ++q) {
    for (std::size_t i = 0; i < n; ++i) {
      const double coef = 2.0 * (weight(i) + delta[q]);
      const std::size_t base = index(q, i, 0);
      for (std::size_t j = 0; j < m; ++j) {
        const std::size_t k = base + j;
        const double diff = x[k] - y[k];
        out.gx[k] = s[q] * (-G[k] + R[k]) + coef * diff;
        out.gy[k] = s[q] * (G[k] + R[k]) - coef * diff;
      }
    }
  }
  return out;
}

double GdaInstance::do_value(std::span<const double> x, std::span<const double> y) const { return eval_f(x, y); }

MinMaxGradient GdaInstance::do_gradient(std::span<const double> x, std::span<const double> y) const {
  return eval_grad_f(x, y);
}

Assignment GdaInstance::decode(std::span<const double> x, std::span<const double> y) const {
  check_domain(x, y);
  const std::vector<double> e = all_energies(x, y, nullptr);
  Assignment b;
  b.values.reserve(e.size());
  for (double v : e) b.values.push_back(v == 0.0 ? Trit::Zero : v == 1.0 ? Trit::One : Trit::Bottom);
  return b;
}

DichotomyResult GdaInstance::dichotomy(std::span<const double> x, std::span<const double> y) const {
  check_domain(x, y);
  DichotomyResult out;
  out.gap = gdalab::stationarity_gap(*this, x, y);
  if (out.gap > params_.eps) {
    std::ostringstream note;
    note << "point is not eps-stationary: gap " << out.gap << " > eps " << params_.eps;
    out.notes.push_back(note.str());
  }
  const std::size_t m = nodes();
  std::vector<double> xi(m);
  for (std::size_t v = 0; v < m; ++v) {
    for (std::size_t i = 0; i < replicas(); ++i) {
      const std::size_t base = index(v, i, 0);
      for (std::size_t j = 0; j < m; ++j) xi[j] = 0.5 * (x[base + j] + y[base + j]);
      const double r = brouwer_residual(map_, xi);
      if (r <= params_.rho) {
        out.witness = BrouwerWitness{v, i, xi, r};
        return out;
      }
    }
  }
  out.assignment = decode(x, y);
  out.violations = check_assignment(circuit(), *out.assignment);
  if (!out.violations.empty() && params_.mode == ParamMode::Scaled) {
    out.notes.push_back("assignment violates gates; expected at scaled parameters");
  }
  return out;
}

double energy(const GdaInstance& inst, std::size_t v, std::span<const double> x, std::span<const double> y) {
  return inst.energy(v, x, y);
}

double signal(const GdaInstance& inst, std::size_t w, std::span<const double> x, std::span<const double> y) {
  return inst.signal(w, x, y);
}

double eval_f(const GdaInstance& inst, std::span<const double> x, std::span<const double> y) {
  return inst.value(x, y);
}

MinMaxGradient eval_grad_f(const GdaInstance& inst, std::span<const double> x, std::span<const double> y) {
  return inst.gradient(x, y);
}

double stationarity_gap(const GdaInstance& inst, std::span<const double> x, std::span<const double> y) {
  return stationarity_gap(static_cast<const MinMaxOracle&>(inst), x, y);
}

Assignment decode_gda(const GdaInstance& inst, std::span<const double> x, std::span<const double> y) {
  return inst.decode(x, y);
}

DichotomyResult dichotomy_extract(const GdaInstance& inst, std::span<const double> x, std::span<const double> y) {
  return inst.dichotomy(x, y);
}

NormalizedGda::NormalizedGda(const GdaInstance& inner, double scale) : inner_(inner), scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw std::invalid_argument("scale must be positive");
}

double NormalizedGda::do_value(std::span<const double> x, std::span<const double> y) const {
  return inner_.eval_f(x, y) / scale_;
}

MinMaxGradient NormalizedGda::do_gradient(std::span<const double> x, std::span<const double> y) const {
  MinMaxGradient g = inner_.eval_grad_f(x, y);
  for (double& v : g.gx) v /= scale_;
  for (double& v : g.gy) v /= scale_;
  return g;
}

double sampled_scale(const MinMaxOracle& problem, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const std::size_t d = problem.dim();
  std::vector<double> x(d), y(d);
  double scale = 1.0;
  for (int s = 0; s < samples; ++s) {
    for (auto& v : x) v = U(rng);
    for (auto& v : y) v = U(rng);
    scale = std::max(scale, std::abs(problem.value(x, y)));
    const MinMaxGradient g = problem.gradient(x, y);
    for (double v : g.gx) scale = std::max(scale, std::abs(v));
    for (double v : g.gy) scale = std::max(scale, std::abs(v));
  }
  return scale;
}

}  // namespace gdalab
