#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gdalab/ledger.hpp"

namespace gdalab {

/// Grid coordinates are 1-based, each in [1, M].
using GridPoint = std::vector<int>;
/// One +1/-1 label per coordinate.
using Labels = std::vector<std::int8_t>;

/// A StrongSperner labeling lambda: [M]^d -> {-1,+1}^d behind a query-counted
/// interface. With boundary checking enabled every answer is validated against
/// x_i = 1 => +1 and x_i = M => -1, throwing std::logic_error on a violation.
class SpernerInstance {
 public:
  using Fn = std::function<Labels(std::span<const int>)>;

  SpernerInstance(int M, int d, Fn fn, LedgerPtr ledger, bool check_boundary = false);

  int M() const noexcept { return M_; }
  int d() const noexcept { return d_; }
  const LedgerPtr& ledger() const noexcept { return ledger_; }
  bool checks_boundary() const noexcept { return check_boundary_; }

  /// Throws std::out_of_range if p is not in [M]^d.
  Labels label(std::span<const int> p) const;

  SpernerInstance with_boundary_check() const;

 private:
  int M_;
  int d_;
  std::shared_ptr<const Fn> fn_;
  LedgerPtr ledger_;
  bool check_boundary_;
};

struct SpernerSolution {
  std::vector<GridPoint> points;
};

struct UncoveredLabel {
  int coordinate;  // 0-based
  int label;       // -1 or +1
  bool operator==(const UncoveredLabel&) const = default;
};

struct SpernerVerdict {
  bool valid = false;
  int max_distance = 0;
  std::vector<UncoveredLabel> uncovered;
};

/// Valid iff pairwise l-infinity distance is at most 1 and both labels appear
/// in every coordinate. One label query per point. Throws std::out_of_range for
/// points outside the grid and std::invalid_argument for an empty solution.
SpernerVerdict verify_sperner_solution(const SpernerInstance& inst, const SpernerSolution& sol);

/// A self-map of [0,1]^d with a stated l-infinity Lipschitz constant.
class ContinuousMap {
 public:
  using Fn = std::function<std::vector<double>(std::span<const double>)>;

  ContinuousMap(std::string name, int dim, double lipschitz, Fn fn, LedgerPtr ledger);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  double lipschitz() const noexcept { return lipschitz_; }
  const LedgerPtr& ledger() const noexcept { return ledger_; }

  std::vector<double> operator()(std::span<const double> z) const;

 private:
  std::string name_;
  int dim_;
  double lipschitz_;
  std::shared_ptr<const Fn> fn_;
  LedgerPtr ledger_;
};

/// Registered test maps: "constant" (F = 1/2), "affine" (F = z/2 + c),
/// "rotation" (0.7 * rotation by 3pi/8 about the centre, pairwise in
/// coordinates). Throws std::invalid_argument for unknown names.
ContinuousMap registered_map(const std::string& name, int dim, LedgerPtr ledger);
std::vector<std::string> registered_map_names();

/// M = ceil(1 + 3/eps).
int sperner_grid_width(double eps);

/// grid coordinate t -> (t - 1)/(M - 1).
double grid_to_unit(int t, int M) noexcept;

/// Labeling of the boundary-normalized map (1 - eps/2) F + (eps/2)(1/2,...,1/2):
/// label i is +1 iff the normalized F_i exceeds the point's i-th coordinate.
/// One label query costs exactly one F query. Requires eps in (0,1).
SpernerInstance brouwer_to_labeling(const ContinuousMap& F, double eps, LedgerPtr ledger);

/// The unit-cube image of the first solution point.
std::vector<double> decode_sperner_to_fixed_point(const SpernerSolution& sol, int M);

/// Exhaustive search: labels every grid point once, then scans unit cells for
/// the smallest set of corners covering all 2d labels. Refused (throws
/// std::length_error) when M^d exceeds the configured grid budget.
std::optional<SpernerSolution> find_sperner_solution(const SpernerInstance& inst);

/// Dense label grid for d <= 2: row-major over (p_1, p_2), one byte per point,
/// bit i set iff label i is +1. Throws std::invalid_argument for d > 2.
std::vector<std::uint8_t> export_labeling_grid(const SpernerInstance& inst);

}  // namespace gdalab
