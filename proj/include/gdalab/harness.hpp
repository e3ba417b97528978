#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gdalab/ledger.hpp"
#include "gdalab/minmax.hpp"

namespace gdalab {

/// f(x, y) = sum_j (x_j - 1/2)(y_j - 1/2); the unique stationary point is the centre.
class BilinearToy : public MinMaxOracle {
 public:
  explicit BilinearToy(std::size_t dim = 1, double eps = 1e-6, LedgerPtr ledger = nullptr);

  std::size_t dim() const override { return dim_; }
  const LedgerPtr& ledger() const override { return ledger_; }
  double tolerance() const override { return eps_; }
  std::string mode_tag() const override { return "bilinear"; }

 protected:
  double do_value(std::span<const double> x, std::span<const double> y) const override;
  MinMaxGradient do_gradient(std::span<const double> x, std::span<const double> y) const override;

 private:
  std::size_t dim_;
  double eps_;
  LedgerPtr ledger_;
};

/// f = 0.
class ZeroProblem : public MinMaxOracle {
 public:
  explicit ZeroProblem(std::size_t dim = 1, LedgerPtr ledger = nullptr);

  std::size_t dim() const override { return dim_; }
  const LedgerPtr& ledger() const override { return ledger_; }
  std::string mode_tag() const override { return "zero"; }

 protected:
  double do_value(std::span<const double> x, std::span<const double> y) const override;
  MinMaxGradient do_gradient(std::span<const double> x, std::span<const double> y) const override;

 private:
  std::size_t dim_;
  LedgerPtr ledger_;
};

enum class Algorithm { Pgda, Extragradient, Grid };

std::string_view to_string(Algorithm algo) noexcept;
/// "pgda", "extragradient", "grid"; throws std::invalid_argument otherwise.
Algorithm parse_algorithm(std::string_view name);

struct SolverConfig {
  int steps = 1000;
  /// Defaults to 0.1 / sqrt(steps) for pgda and 0.1 for extragradient.
  std::optional<double> lr;
  std::uint64_t seed = 1;
  /// Gap curve cadence in iterations.
  int gap_every = 100;
  /// Stop as soon as an iterate's gap is at or below this.
  std::optional<double> target_gap;
  /// Start point; uniform from mt19937_64(seed) when empty.
  std::vector<double> x0;
  std::vector<double> y0;
  bool record_trajectory = false;
};

struct GapSample {
  int iteration;
  double gap;
  std::uint64_t ledger_total;
};

struct SolverRun {
  Algorithm algorithm = Algorithm::Pgda;
  std::string mode_tag;
  double lr = 0.0;
  int steps = 0;
  int iterations = 0;  // steps actually taken
  std::uint64_t seed = 0;
  double best_gap = 0.0;
  int best_iteration = 0;
  double final_gap = 0.0;
  std::vector<GapSample> gap_curve;
  std::vector<double> x;  // final iterate
  std::vector<double> y;
  std::vector<std::vector<double>> trajectory;  // x then y per iterate, opt-in
  LedgerSnapshot ledger;  // counters consumed by this run
};

/// Projected GDA: x <- clip(x - lr gx), y <- clip(y + lr gy). The gap of each
/// iterate comes from the gradient the step already needs, so a run of k steps
/// makes k + 1 gradient calls. Throws NumericError on NaN/Inf.
SolverRun run_pgda(const MinMaxOracle& problem, const SolverConfig& config);

/// Extragradient: a projected half step, then the step from the original point
/// with the half-step gradient. Two gradient calls per step plus one for the
/// final iterate.
SolverRun run_extragradient(const MinMaxOracle& problem, const SolverConfig& config);

struct GridSearchResult {
  std::vector<double> x;
  std::vector<double> y;
  double gap = 0.0;
  std::uint64_t points = 0;
};

/// Exhaustive scan of {0, 1/(r-1), ..., 1}^{2d}. Throws std::length_error
/// before scanning when r^{2d} exceeds the configured budget.
GridSearchResult grid_search_stationary(const MinMaxOracle& problem, int resolution);

/// Runs the algorithm named in `algo`; grid uses `config.steps` as the resolution.
SolverRun run_solver(const MinMaxOracle& problem, Algorithm algo, const SolverConfig& config);

struct FdPoint {
  std::vector<double> x;
  std::vector<double> y;
};

struct FdReport {
  double max_error = 0.0;
  std::optional<std::size_t> worst_point;
  /// Flat coordinate: < dim is x_j, otherwise y_{j - dim}.
  std::optional<std::size_t> worst_coordinate;
  double analytic = 0.0;
  double numeric = 0.0;
  std::size_t checked = 0;
  std::vector<std::string> notes;
};

/// Central differences of the value oracle against the gradient oracle.
/// Error per coordinate is |a - b| / max(1, |a|, |b|). Points closer than h
/// to the boundary are skipped with a note.
FdReport fd_check(const MinMaxOracle& problem, const std::vector<FdPoint>& points, double h);

/// `count` seeded uniform points with every coordinate in [margin, 1 - margin].
std::vector<FdPoint> random_interior_points(std::size_t dim, std::size_t count, double margin,
                                            std::uint64_t seed);

}  // namespace gdalab
