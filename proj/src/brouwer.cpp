#include "gdalab/brouwer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include "gdalab/boolinterp.hpp"
#include "gdalab/smoothstep.hpp"

namespace gdalab {

double SparseJacobian::at(std::size_t row, std::size_t col) const {
  for (const auto& e : rows.at(row)) {
    if (e.col == col) return e.value;
  }
  return 0.0;
}

std::vector<double> SparseJacobian::dense() const {
  std::vector<double> out(dim * dim, 0.0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& e : rows[r]) out[r * dim + e.col] += e.value;
  }
  return out;
}

BrouwerMap::BrouwerMap(std::shared_ptr<const Circuit> circuit, LedgerPtr ledger)
    : circuit_(std::move(circuit)), topo_(compile(*circuit_)), ledger_(std::move(ledger)) {
  if (!ledger_) ledger_ = circuit_->oracle() ? circuit_->oracle()->ledger() : make_ledger();
  rules_.resize(circuit_->size());
  for (const auto& gate : topo_.gates) {
    switch (gate.type) {
      case GateType::Nor:
        rules_[gate.outputs[0]] = {GateType::Nor, gate.inputs, 0.0};
        break;
      case GateType::Purify:
        rules_[gate.outputs[0]] = {GateType::Purify, gate.inputs, +0.25};
        rules_[gate.outputs[1]] = {GateType::Purify, gate.inputs, -0.25};
        break;
      case GateType::Oracle:
        rules_[gate.outputs[0]] = {GateType::Oracle, gate.inputs, 0.0};
        break;
    }
  }
}

std::size_t BrouwerMap::oracle_coordinates() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(rules_.begin(), rules_.end(), [](const Rule& r) { return r.type == GateType::Oracle; }));
}

void BrouwerMap::check_domain(std::span<const double> z) const {
  if (z.size() != dim()) {
    throw std::invalid_argument("point has dimension " + std::to_string(z.size()) + ", map has " +
                                std::to_string(dim()));
  }
  for (double v : z) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("point outside [0,1]^d");
  }
}

double BrouwerMap::coordinate(const Rule& rule, std::span<const double> z, std::vector<double>& scratch) const {
  switch (rule.type) {
    case GateType::Nor:
      return g_step().value(z[rule.inputs[0]] + z[rule.inputs[1]]);
    case GateType::Purify:
      return ell_step().value(z[rule.inputs[0]] + rule.shift);
    case GateType::Oracle:
      scratch.resize(rule.inputs.size());
      for (std::size_t k = 0; k < rule.inputs.size(); ++k) scratch[k] = z[rule.inputs[k]];
      return interp_eval(scratch, *circuit_->oracle());
  }
  return 0.0;
}

void BrouwerMap::coordinate_jet(const Rule& rule, std::span<const double> z, std::vector<double>& scratch,
                                double& value, std::vector<SparseJacobian::Entry>& row) const {
  row.clear();
  switch (rule.type) {
    case GateType::Nor: {
      const double s = z[rule.inputs[0]] + z[rule.inputs[1]];
      value = g_step().value(s);
      const double d = g_step().d1(s);
      row.push_back({rule.inputs[0], d});
      row.push_back({rule.inputs[1], d});
      return;
    }
    case GateType::Purify: {
      const double s = z[rule.inputs[0]] + rule.shift;
      value = ell_step().value(s);
      row.push_back({rule.inputs[0], ell_step().d1(s)});
      return;
    }
    case GateType::Oracle: {
      scratch.resize(rule.inputs.size());
      for (std::size_t k = 0; k < rule.inputs.size(); ++k) scratch[k] = z[rule.inputs[k]];
      InterpJet jet = interp_jet(scratch, *circuit_->oracle());
      value = jet.value;
      for (std::size_t k = 0; k < rule.inputs.size(); ++k) row.push_back({rule.inputs[k], jet.grad[k]});
      return;
    }
  }
}

std::vector<double> BrouwerMap::eval_F(std::span<const double> z) const {
  check_domain(z);
  ledger_->add(counters::kBrouwerF);
  std::vector<double> out(dim()), scratch;
  for (std::size_t w = 0; w < dim(); ++w) out[w] = coordinate(rules_[w], z, scratch);
  return out;
}

SparseJacobian BrouwerMap::eval_JF(std::span<const double> z) const {
  check_domain(z);
  ledger_->add(counters::kBrouwerJF);
  SparseJacobian jac{dim(), std::vector<std::vector<SparseJacobian::Entry>>(dim())};
  std::vector<double> scratch;
  double unused;
  for (std::size_t w = 0; w < dim(); ++w) coordinate_jet(rules_[w], z, scratch, unused, jac.rows[w]);
  return jac;
}

BrouwerJet BrouwerMap::eval_jet(std::span<const double> z) const {
  check_domain(z);
  ledger_->add(counters::kBrouwerF);
  ledger_->add(counters::kBrouwerJF);
  BrouwerJet jet{std::vector<double>(dim()), {dim(), std::vector<std::vector<SparseJacobian::Entry>>(dim())}};
  std::vector<double> scratch;
  for (std::size_t w = 0; w < dim(); ++w) coordinate_jet(rules_[w], z, scratch, jet.value[w], jet.jacobian.rows[w]);
  return jet;
}

std::vector<double> BrouwerMap::displacement(std::span<const double> z) const {
  std::vector<double> g = eval_F(z);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] -= z[i];
  return g;
}

Assignment decode_brouwer(std::span<const double> z) {
  constexpr double kLow = 1.0 / 6.0;
  constexpr double kHigh = 5.0 / 6.0;
  Assignment b;
  b.values.reserve(z.size());
  for (double v : z) {
    if (v <= kLow) {
      b.values.push_back(Trit::Zero);
    } else if (v >= kHigh) {
      b.values.push_back(Trit::One);
    } else {
      b.values.push_back(Trit::Bottom);
    }
  }
  return b;
}

double brouwer_residual(const BrouwerMap& map, std::span<const double> z) {
  const std::vector<double> f = map.eval_F(z);
  double r = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) r = std::max(r, std::abs(f[i] - z[i]));
  return r;
}

bool verify_brouwer_solution(const BrouwerMap& map, std::span<const double> z, double eps) {
  return brouwer_residual(map, z) <= eps;
}

namespace {

double inf_norm(const std::vector<double>& v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

struct NewtonOutcome {
  std::vector<double> z;
  double residual;
};

// Levenberg-Marquardt on G(z) = F(z) - z, projected onto the cube.
NewtonOutcome newton_solve(const BrouwerMap& map, std::vector<double> z, int iterations, double target,
                           FixedPointResult& result, int& counter) {
  const std::size_t d = map.dim();
  std::vector<double> g = map.displacement(z);
  double merit = 0.0;
  for (double v : g) merit += v * v;
  double mu = 1e-3;
  for (int it = 0; it < iterations && inf_norm(g) > target; ++it) {
    const BrouwerJet jet = map.eval_jet(z);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t r = 0; r < d; ++r) {
      for (const auto& e : jet.jacobian.rows[r]) A(r, e.col) += e.value;
      A(r, r) -= 1.0;
    }
    Eigen::VectorXd rhs(d);
    for (std::size_t i = 0; i < d; ++i) rhs(i) = jet.value[i] - z[i];
    const Eigen::MatrixXd normal = A.transpose() * A;
    const Eigen::VectorXd grad = A.transpose() * rhs;
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      Eigen::MatrixXd sys = normal;
      sys.diagonal().array() += mu * (1.0 + normal.diagonal().array());
      const Eigen::VectorXd step = sys.ldlt().solve(-grad);
      std::vector<double> trial(d);
      for (std::size_t i = 0; i < d; ++i) trial[i] = std::clamp(z[i] + step(i), 0.0, 1.0);
      std::vector<double> gt = map.displacement(trial);
      double mt = 0.0;
      for (double v : gt) mt += v * v;
      if (std::isfinite(mt) && mt < merit) {
        z = std::move(trial);
        g = std::move(gt);
        merit = mt;
        mu = std::max(mu / 3.0, 1e-12);
        accepted = true;
      } else {
        mu *= 4.0;
      }
    }
    result.trace.push_back({counter++, "newton", inf_norm(g), map.ledger()->total()});
    if (!accepted) break;
  }
  return {std::move(z), inf_norm(g)};
}

}  // namespace

FixedPointResult find_fixed_point(const BrouwerMap& map, const FixedPointOptions& options) {
  const std::size_t d = map.dim();
  FixedPointResult result;
  int counter = 0;

  std::vector<double> z = options.start.empty() ? std::vector<double>(d, 0.5) : options.start;
  if (z.size() != d) throw std::invalid_argument("fixed-point start has wrong dimension");

  std::vector<double> best = z;
  double best_residual = brouwer_residual(map, z);
  auto consider = [&](const std::vector<double>& cand, double r, const char* method) {
    if (r < best_residual) {
      best = cand;
      best_residual = r;
      result.method = method;
    }
  };
  result.method = "start";

  for (int it = 0; it < options.damped_iterations && best_residual > options.eps; ++it) {
    const std::vector<double> f = map.eval_F(z);
    double r = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      r = std::max(r, std::abs(f[i] - z[i]));
      z[i] = (1.0 - options.gamma) * z[i] + options.gamma * f[i];
    }
    result.trace.push_back({counter++, "damped", r, map.ledger()->total()});
    consider(z, brouwer_residual(map, z), "damped");
  }

  const double newton_target = std::min(options.eps, 1e-10);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int restart = 0; restart < options.newton_restarts && best_residual > options.eps; ++restart) {
    std::vector<double> start(d);
    if (restart == 0) {
      start = best;
    } else {
      for (double& v : start) v = unit(rng);
    }
    NewtonOutcome out = newton_solve(map, std::move(start), options.newton_iterations, newton_target, result, counter);
    consider(out.z, out.residual, "newton");
  }

  if (best_residual > options.eps && d <= 3) {
    const int res = std::max(options.grid_resolution, 2);
    std::vector<int> idx(d, 0);
    std::vector<double> point(d);
    std::vector<double> grid_best;
    double grid_best_r = INFINITY;
    while (true) {
      for (std::size_t i = 0; i < d; ++i) point[i] = static_cast<double>(idx[i]) / (res - 1);
      const double r = brouwer_residual(map, point);
      if (r < grid_best_r) {
        grid_best_r = r;
        grid_best = point;
      }
      std::size_t k = 0;
      while (k < d && ++idx[k] == res) idx[k++] = 0;
      if (k == d) break;
    }
    result.trace.push_back({counter++, "grid", grid_best_r, map.ledger()->total()});
    consider(grid_best, grid_best_r, "grid");
    if (best_residual > options.eps) {
      NewtonOutcome out = newton_solve(map, grid_best, options.newton_iterations, newton_target, result, counter);
      consider(out.z, out.residual, "grid+newton");
    }
  }

  result.z = std::move(best);
  result.residual = best_residual;
  result.found = best_residual <= options.eps;
  return result;
}

void write_residual_trace_csv(std::ostream& out, const std::vector<ResidualTraceRow>& trace) {
  out << "iteration,phase,residual,ledger_total\n";
  char buf[64];
  for (const auto& row : trace) {
    std::snprintf(buf, sizeof buf, "%.17g", row.residual);
    out << row.iteration << ',' << row.phase << ',' << buf << ',' << row.ledger_total << '\n';
  }
}

}  // namespace gdalab
