#include "gdalab/minmax.hpp"

#include <algorithm>
#include <stdexcept>

namespace gdalab {

double MinMaxOracle::value(std::span<const double> x, std::span<const double> y) const {
  ledger()->add(counters::kObjective);
  return do_value(x, y);
}

MinMaxGradient MinMaxOracle::gradient(std::span<const double> x, std::span<const double> y) const {
  ledger()->add(counters::kGradient);
  return do_gradient(x, y);
}

double stationarity_gap(std::span<const double> x, std::span<const double> y, const MinMaxGradient& grad) {
  if (grad.gx.size() != x.size() || grad.gy.size() != y.size()) {
    throw std::invalid_argument("stationarity_gap: gradient and point sizes differ");
  }
  double gap = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    // best endpoint of -g (x' - x) over x' in {0, 1}
    gap = std::max(gap, std::max(grad.gx[j] * x[j], -grad.gx[j] * (1.0 - x[j])));
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    gap = std::max(gap, std::max(-grad.gy[j] * y[j], grad.gy[j] * (1.0 - y[j])));
  }
  return gap;
}

double stationarity_gap(const MinMaxOracle& problem, std::span<const double> x, std::span<const double> y) {
  return stationarity_gap(x, y, problem.gradient(x, y));
}

}  // namespace gdalab
