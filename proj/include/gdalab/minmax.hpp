#pragma once

#include <span>
#include <string>
#include <vector>

#include "gdalab/ledger.hpp"

namespace gdalab {

struct MinMaxGradient {
  std::vector<double> gx;
  std::vector<double> gy;
};

/// min_x max_y f(x, y) over [0,1]^d x [0,1]^d, seen only through counted
/// value and gradient oracles. Implementations override the do_* hooks; the
/// public entry points bump the "f" / "grad_f" counters.
class MinMaxOracle {
 public:
  virtual ~MinMaxOracle() = default;

  /// Dimension of each player.
  virtual std::size_t dim() const = 0;
  virtual const LedgerPtr& ledger() const = 0;
  /// Stationarity tolerance a solution must meet.
  virtual double tolerance() const { return 0.0; }
  /// "paper", "scaled", or a toy name; copied into reports.
  virtual std::string mode_tag() const { return "toy"; }

  double value(std::span<const double> x, std::span<const double> y) const;
  MinMaxGradient gradient(std::span<const double> x, std::span<const double> y) const;

 protected:
  virtual double do_value(std::span<const double> x, std::span<const double> y) const = 0;
  virtual MinMaxGradient do_gradient(std::span<const double> x, std::span<const double> y) const = 0;
};

/// max over coordinates and over endpoints x'_j, y'_j in {0,1} of
/// -df/dx_j (x'_j - x_j) and df/dy_j (y'_j - y_j). Each expression is affine in
/// the free coordinate, so the endpoints give the exact max over [0,1].
double stationarity_gap(std::span<const double> x, std::span<const double> y, const MinMaxGradient& grad);
double stationarity_gap(const MinMaxOracle& problem, std::span<const double> x, std::span<const double> y);

}  // namespace gdalab
