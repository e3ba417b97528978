#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "gdalab/gda.hpp"

namespace fx {

// Random point whose blocks have squared distances spread across the energy
// transition (3m, 3m+1) where it is reachable.
inline void spread_point(const gdalab::GdaInstance& inst, std::mt19937_64& rng, std::vector<double>& x, std::vector<double>& y) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const std::size_t m = inst.nodes(), n = inst.replicas(), block = n * m;
  x.assign(inst.dim(), 0.0);
  y.assign(inst.dim(), 0.0);
  const double reach = 0.96 * 0.96 * static_cast<double>(block);
  for (std::size_t v = 0; v < m; ++v) {
    const double lo = 3.0 * m - 0.3, hi = 3.0 * m + 1.3;
    double target = lo + (hi - lo) * U(rng);
    if (U(rng) < 0.3 || target > reach) target = U(rng) * std::min(reach, 3.0 * m);
    // equal magnitudes with random signs hit the target distance exactly
    const double mag = std::sqrt(target / static_cast<double>(block));
    for (std::size_t k = 0; k < block; ++k) {
      const double room = 1.0 - mag - 0.02;
      const double base = 0.01 + room * U(rng);
      const std::size_t idx = v * block + k;
      if (U(rng) < 0.5) {
        x[idx] = base;
        y[idx] = base + mag;
      } else {
        y[idx] = base;
        x[idx] = base + mag;
      }
    }
  }
}

}  // namespace fx
