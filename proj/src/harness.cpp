#include "gdalab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gdalab/config.hpp"
#include "gdalab/errors.hpp"

namespace gdalab {

BilinearToy::BilinearToy(std::size_t dim, double eps, LedgerPtr ledger)
    : dim_(dim), eps_(eps), ledger_(ledger ? std::move(ledger) : make_ledger()) {}

double BilinearToy::do_value(std::span<const double> x, std::span<const double> y) const {
  double f = 0.0;
  for (std::size_t j = 0; j < dim_; ++j) f += (x[j] - 0.5) * (y[j] - 0.5);
  return f;
}

MinMaxGradient BilinearToy::do_gradient(std::span<const double> x, std::span<const double> y) const {
  MinMaxGradient g{std::vector<double>(dim_), std::vector<double>(dim_)};
  for (std::size_t j = 0; j < dim_; ++j) {
    g.gx[j] = y[j] - 0.5;
    g.gy[j] = x[j] - 0.5;
  }
  return g;
}

ZeroProblem::ZeroProblem(std::size_t dim, LedgerPtr ledger)
    : dim_(dim), ledger_(ledger ? std::move(ledger) : make_ledger()) {}

double ZeroProblem::do_value(std::span<const double>, std::span<const double>) const { return 0.0; }

MinMaxGradient ZeroProblem::do_gradient(std::span<const double>, std::span<const double>) const {
  return {std::vector<double>(dim_, 0.0), std::vector<double>(dim_, 0.0)};
}

std::string_view to_string(Algorithm algo) noexcept {
  switch (algo) {
    case Algorithm::Pgda:
      return "pgda";
    case Algorithm::Extragradient:
      return "extragradient";
    case Algorithm::Grid:
      return "grid";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "pgda") return Algorithm::Pgda;
  if (name == "extragradient") return Algorithm::Extragradient;
  if (name == "grid") return Algorithm::Grid;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

namespace {

double clip01(double v) { return std::clamp(v, 0.0, 1.0); }

void check_finite(const MinMaxGradient& g, int iteration) {
  for (const auto* vec : {&g.gx, &g.gy}) {
    for (double v : *vec) {
      if (!std::isfinite(v)) {
        throw NumericError("non-finite gradient at iteration " + std::to_string(iteration));
      }
    }
  }
}

struct RunState {
  const MinMaxOracle& problem;
  const SolverConfig& config;
  SolverRun run;
  LedgerSnapshot start;
  std::vector<double> x, y;

  RunState(const MinMaxOracle& p, const SolverConfig& c, Algorithm algo, double lr) : problem(p), config(c) {
    if (c.steps < 0) throw std::invalid_argument("steps must be non-negative");
    if (!(lr >= 0.0) || !std::isfinite(lr)) throw std::invalid_argument("lr must be a finite non-negative number");
    if (c.gap_every < 1) throw std::invalid_argument("gap_every must be at least 1");
    const std::size_t d = p.dim();
    run.algorithm = algo;
    run.mode_tag = p.mode_tag();
    run.lr = lr;
    run.steps = c.steps;
    run.seed = c.seed;
    run.best_gap = std::numeric_limits<double>::infinity();
    start = p.ledger()->snapshot();
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    x = c.x0;
    y = c.y0;
    if (x.empty()) {
      x.resize(d);
      for (auto& v : x) v = U(rng);
    }
    if (y.empty()) {
      y.resize(d);
      for (auto& v : y) v = U(rng);
    }
    if (x.size() != d || y.size() != d) throw std::invalid_argument("start point has the wrong dimension");
    for (std::size_t j = 0; j < d; ++j) {
      if (!(x[j] >= 0.0 && x[j] <= 1.0 && y[j] >= 0.0 && y[j] <= 1.0)) {
        throw std::invalid_argument("start point outside [0,1]^d");
      }
    }
  }

  /// Records the iterate's gap; returns true when the target is met.
  bool observe(int t, const MinMaxGradient& g) {
    check_finite(g, t);
    const double gap = stationarity_gap(x, y, g);
    if (gap < run.best_gap) {
      run.best_gap = gap;
      run.best_iteration = t;
    }
    run.final_gap = gap;
    const bool last = t == config.steps;
    const bool hit = config.target_gap && gap <= *config.target_gap;
    if (t % config.gap_every == 0 || last || hit) {
      run.gap_curve.push_back({t, gap, problem.ledger()->total()});
    }
    if (config.record_trajectory) {
      std::vector<double> row(x);
      row.insert(row.end(), y.begin(), y.end());
      run.trajectory.push_back(std::move(row));
    }
    return hit;
  }

  SolverRun finish(int iterations) {
    run.iterations = iterations;
    run.x = std::move(x);
    run.y = std::move(y);
    run.ledger = ledger_delta(start, problem.ledger()->snapshot());
    return std::move(run);
  }
};

}  // namespace

SolverRun run_pgda(const MinMaxOracle& problem, const SolverConfig& config) {
  const double lr = config.lr.value_or(0.1 / std::sqrt(std::max(config.steps, 1)));
  RunState st(problem, config, Algorithm::Pgda, lr);
  const std::size_t d = problem.dim();
  for (int t = 0;; ++t) {
    const MinMaxGradient g = problem.gradient(st.x, st.y);
    if (st.observe(t, g) || t == config.steps) return st.finish(t);
    for (std::size_t j = 0; j < d; ++j) {
      st.x[j] = clip01(st.x[j] - lr * g.gx[j]);
      st.y[j] = clip01(st.y[j] + lr * g.gy[j]);
    }
  }
}

SolverRun run_extragradient(const MinMaxOracle& problem, const SolverConfig& config) {
  const double lr = config.lr.value_or(0.1);
  RunState st(problem, config, Algorithm::Extragradient, lr);
  const std::size_t d = problem.dim();
  std::vector<double> xh(d), yh(d);
  for (int t = 0;; ++t) {
    const MinMaxGradient g = problem.gradient(st.x, st.y);
    if (st.observe(t, g) || t == config.steps) return st.finish(t);
    for (std::size_t j = 0; j < d; ++j) {
      xh[j] = clip01(st.x[j] - lr * g.gx[j]);
      yh[j] = clip01(st.y[j] + lr * g.gy[j]);
    }
    const MinMaxGradient gh = problem.gradient(xh, yh);
    check_finite(gh, t);
    for (std::size_t j = 0; j < d; ++j) {
      st.x[j] = clip01(st.x[j] - lr * gh.gx[j]);
      st.y[j] = clip01(st.y[j] + lr * gh.gy[j]);
    }
  }
}

GridSearchResult grid_search_stationary(const MinMaxOracle& problem, int resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
  const std::size_t coords = 2 * problem.dim();
  const double budget = static_cast<double>(tolerances().stationary_grid_budget);
  const double total = std::pow(static_cast<double>(resolution), static_cast<double>(coords));
  if (total > budget) {
    std::ostringstream msg;
    msg << "grid of " << resolution << "^" << coords << " points exceeds the budget of " << budget;
    throw std::length_error(msg.str());
  }
  const std::size_t d = problem.dim();
  std::vector<int> idx(coords, 0);
  std::vector<double> x(d), y(d);
  GridSearchResult best;
  best.gap = std::numeric_limits<double>::infinity();
  const double step = 1.0 / (resolution - 1);
  for (;;) {
    for (std::size_t k = 0; k < d; ++k) {
      x[k] = idx[k] * step;
      y[k] = idx[d + k] * step;
    }
    const double gap = stationarity_gap(problem, x, y);
    ++best.points;
    if (gap < best.gap) {
      best.gap = gap;
      best.x = x;
      best.y = y;
    }
    std::size_t k = 0;
    while (k < coords && ++idx[k] == resolution) idx[k++] = 0;
    if (k == coords) break;
  }
  return best;
}

SolverRun run_solver(const MinMaxOracle& problem, Algorithm algo, const SolverConfig& config) {
  switch (algo) {
    case Algorithm::Pgda:
      return run_pgda(problem, config);
    case Algorithm::Extragradient:
      return run_extragradient(problem, config);
    case Algorithm::Grid: {
      const LedgerSnapshot before = problem.ledger()->snapshot();
      const GridSearchResult g = grid_search_stationary(problem, config.steps);
      SolverRun run;
      run.algorithm = Algorithm::Grid;
      run.mode_tag = problem.mode_tag();
      run.steps = config.steps;
      run.iterations = static_cast<int>(g.points);
      run.seed = config.seed;
      run.best_gap = run.final_gap = g.gap;
      run.gap_curve.push_back({0, g.gap, problem.ledger()->total()});
      run.x = g.x;
      run.y = g.y;
      run.ledger = ledger_delta(before, problem.ledger()->snapshot());
      return run;
    }
  }
  throw std::invalid_argument("unknown algorithm");
}

FdReport fd_check(const MinMaxOracle& problem, const std::vector<FdPoint>& points, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("h must be positive");
  const std::size_t d = problem.dim();
  FdReport report;
  for (std::size_t p = 0; p < points.size(); ++p) {
    std::vector<double> x = points[p].x;
    std::vector<double> y = points[p].y;
    if (x.size() != d || y.size() != d) throw std::invalid_argument("fd_check: point has the wrong dimension");
    bool near = false;
    for (std::size_t k = 0; k < d; ++k) {
      near = near || x[k] < h || x[k] > 1.0 - h || y[k] < h || y[k] > 1.0 - h;
    }
    if (near) {
      report.notes.push_back("point " + std::to_string(p) + " skipped: within h of the boundary");
      continue;
    }
    const MinMaxGradient g = problem.gradient(x, y);
    for (std::size_t k = 0; k < 2 * d; ++k) {
      std::vector<double>& v = k < d ? x : y;
      const std::size_t j = k < d ? k : k - d;
      const double orig = v[j];
      v[j] = orig + h;
      const double fp = problem.value(x, y);
      v[j] = orig - h;
      const double fm = problem.value(x, y);
      v[j] = orig;
      const double numeric = (fp - fm) / (2.0 * h);
      const double analytic = k < d ? g.gx[j] : g.gy[j];
      const double err = std::abs(analytic - numeric) / std::max({1.0, std::abs(analytic), std::abs(numeric)});
      if (!report.worst_point || err > report.max_error) {
        report.max_error = err;
        report.worst_point = p;
        report.worst_coordinate = k;
        report.analytic = analytic;
        report.numeric = numeric;
      }
    }
    ++report.checked;
  }
  return report;
}

std::vector<FdPoint> random_interior_points(std::size_t dim, std::size_t count, double margin,
                                            std::uint64_t seed) {
  if (!(margin >= 0.0 && margin < 0.5)) throw std::invalid_argument("margin must lie in [0, 1/2)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(margin, 1.0 - margin);
  std::vector<FdPoint> out(count);
  for (auto& p : out) {
    p.x.resize(dim);
    p.y.resize(dim);
    for (auto& v : p.x) v = U(rng);
    for (auto& v : p.y) v = U(rng);
  }
  return out;
}

}  // namespace gdalab
