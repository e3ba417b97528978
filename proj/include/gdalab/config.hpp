#pragma once

#include <cstdint>

namespace gdalab {

/// Numeric constants shared by every module. One record so that tests and
/// tools agree on what "close enough" means.
struct Tolerances {
  /// exp(-1/x) is treated as exactly zero for x at or below this value.
  double eta_underflow = 1.0 / 746.0;
  /// Residual threshold for SmoothBrouwer solutions produced by the circuit map.
  double brouwer_eps = 1.0 / 12.0;
  /// Default step for central finite differences.
  double fd_step = 1e-6;
  /// Exhaustive StrongSperner search is refused above this many grid points.
  std::uint64_t sperner_grid_budget = 1'000'000;
  /// Grid search over stationary points is refused above this many points.
  std::uint64_t stationary_grid_budget = 10'000'000;
  /// Largest arity accepted for explicit truth-table oracles.
  int truth_table_max_arity = 20;
  /// Dense-sum interpolation reference is gated to this arity.
  int dense_interp_max_arity = 10;
};

const Tolerances& tolerances();

}  // namespace gdalab
