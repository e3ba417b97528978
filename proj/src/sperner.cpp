#include "gdalab/sperner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gdalab/config.hpp"

namespace gdalab {

SpernerInstance::SpernerInstance(int M, int d, Fn fn, LedgerPtr ledger, bool check_boundary)
    : M_(M),
      d_(d),
      fn_(std::make_shared<const Fn>(std::move(fn))),
      ledger_(std::move(ledger)),
      check_boundary_(check_boundary) {
  if (M_ < 2 || d_ < 1) throw std::invalid_argument("StrongSperner requires M >= 2 and d >= 1");
  if (!ledger_) throw std::invalid_argument("labeling requires a ledger");
}

Labels SpernerInstance::label(std::span<const int> p) const {
  if (p.size() != static_cast<std::size_t>(d_)) {
    throw std::out_of_range("grid point has wrong dimension");
  }
  for (int t : p) {
    if (t < 1 || t > M_) throw std::out_of_range("grid point outside [M]^d");
  }
  ledger_->add(counters::kLabeling);
  Labels out = (*fn_)(p);
  if (out.size() != static_cast<std::size_t>(d_)) {
    throw std::logic_error("labeling returned wrong number of labels");
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i] != 1 && out[i] != -1) throw std::logic_error("labels must be +1 or -1");
    if (check_boundary_) {
      if (p[i] == 1 && out[i] != 1) {
        throw std::logic_error("boundary violation: x_i = 1 must carry label +1");
      }
      if (p[i] == M_ && out[i] != -1) {
        throw std::logic_error("boundary violation: x_i = M must carry label -1");
      }
    }
  }
  return out;
}

SpernerInstance SpernerInstance::with_boundary_check() const {
  SpernerInstance copy = *this;
  copy.check_boundary_ = true;
  return copy;
}

SpernerVerdict verify_sperner_solution(const SpernerInstance& inst, const SpernerSolution& sol) {
  if (sol.points.empty()) throw std::invalid_argument("empty StrongSperner solution");
  const int d = inst.d();
  for (const auto& p : sol.points) {
    if (p.size() != static_cast<std::size_t>(d)) throw std::out_of_range("point dimension mismatch");
    for (int t : p) {
      if (t < 1 || t > inst.M()) throw std::out_of_range("solution point outside [M]^d");
    }
  }

  SpernerVerdict verdict;
  for (std::size_t a = 0; a < sol.points.size(); ++a) {
    for (std::size_t b = a + 1; b < sol.points.size(); ++b) {
      for (int i = 0; i < d; ++i) {
        verdict.max_distance =
            std::max(verdict.max_distance, std::abs(sol.points[a][i] - sol.points[b][i]));
      }
    }
  }

  std::vector<std::uint8_t> seen_plus(d, 0), seen_minus(d, 0);
  for (const auto& p : sol.points) {
    const Labels labels = inst.label(p);
    for (int i = 0; i < d; ++i) {
      (labels[i] > 0 ? seen_plus : seen_minus)[i] = 1;
    }
  }
  for (int i = 0; i < d; ++i) {
    if (!seen_minus[i]) verdict.uncovered.push_back({i, -1});
    if (!seen_plus[i]) verdict.uncovered.push_back({i, +1});
  }
  verdict.valid = verdict.max_distance <= 1 && verdict.uncovered.empty();
  return verdict;
}

ContinuousMap::ContinuousMap(std::string name, int dim, double lipschitz, Fn fn, LedgerPtr ledger)
    : name_(std::move(name)),
      dim_(dim),
      lipschitz_(lipschitz),
      fn_(std::make_shared<const Fn>(std::move(fn))),
      ledger_(std::move(ledger)) {
  if (dim_ < 1) throw std::invalid_argument("map dimension must be positive");
  if (!ledger_) throw std::invalid_argument("map requires a ledger");
}

std::vector<double> ContinuousMap::operator()(std::span<const double> z) const {
  if (z.size() != static_cast<std::size_t>(dim_)) throw std::invalid_argument("map dimension mismatch");
  ledger_->add(counters::kTestMap);
  return (*fn_)(z);
}

ContinuousMap registered_map(const std::string& name, int dim, LedgerPtr ledger) {
  if (name == "constant") {
    return ContinuousMap(name, dim, 0.0,
                         [dim](std::span<const double>) { return std::vector<double>(dim, 0.5); },
                         std::move(ledger));
  }
  if (name == "affine") {
    return ContinuousMap(
        name, dim, 0.5,
        [](std::span<const double> z) {
          static constexpr double kOffsets[] = {0.1, 0.35, 0.2, 0.45};
          std::vector<double> out(z.size());
          for (std::size_t i = 0; i < z.size(); ++i) out[i] = 0.5 * z[i] + kOffsets[i % 4];
          return out;
        },
        std::move(ledger));
  }
  if (name == "rotation") {
    constexpr double kScale = 0.7;
    constexpr double kAngle = 3.0 * std::numbers::pi / 8.0;
    const double c = std::cos(kAngle), s = std::sin(kAngle);
    // ||R||_inf = |cos| + |sin| <= sqrt(2), so the map is 0.7 * sqrt(2) < 1 Lipschitz,
    // and ||R(z - 1/2)||_2 <= sqrt(2)/2 keeps the image inside the cube.
    return ContinuousMap(
        name, dim, kScale * (std::abs(c) + std::abs(s)),
        [c, s](std::span<const double> z) {
          std::vector<double> out(z.size());
          std::size_t i = 0;
          for (; i + 1 < z.size(); i += 2) {
            const double a = z[i] - 0.5, b = z[i + 1] - 0.5;
            out[i] = 0.5 + kScale * (c * a - s * b);
            out[i + 1] = 0.5 + kScale * (s * a + c * b);
          }
          if (i < z.size()) out[i] = 0.5 + kScale * (z[i] - 0.5);
          return out;
        },
        std::move(ledger));
  }
  throw std::invalid_argument("unknown test map '" + name + "'");
}

std::vector<std::string> registered_map_names() { return {"constant", "affine", "rotation"}; }

int sperner_grid_width(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  return static_cast<int>(std::ceil(1.0 + 3.0 / eps));
}

double grid_to_unit(int t, int M) noexcept {
  return static_cast<double>(t - 1) / static_cast<double>(M - 1);
}

SpernerInstance brouwer_to_labeling(const ContinuousMap& F, double eps, LedgerPtr ledger) {
  const int M = sperner_grid_width(eps);
  const int d = F.dim();
  auto fn = [F, eps, M, d](std::span<const int> p) {
    std::vector<double> z(d);
    for (int i = 0; i < d; ++i) z[i] = grid_to_unit(p[i], M);
    const std::vector<double> image = F(z);
    Labels labels(d);
    for (int i = 0; i < d; ++i) {
      const double normalized = (1.0 - eps / 2.0) * image[i] + (eps / 2.0) * 0.5;
      labels[i] = normalized > z[i] ? 1 : -1;
    }
    return labels;
  };
  return SpernerInstance(M, d, std::move(fn), std::move(ledger));
}

std::vector<double> decode_sperner_to_fixed_point(const SpernerSolution& sol, int M) {
  if (sol.points.empty()) throw std::invalid_argument("empty StrongSperner solution");
  const auto& q = sol.points.front();
  std::vector<double> z(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) z[i] = grid_to_unit(q[i], M);
  return z;
}

namespace {

std::uint64_t grid_size(int M, int d) {
  std::uint64_t total = 1;
  for (int i = 0; i < d; ++i) {
    if (total > tolerances().sperner_grid_budget) return total;
    total *= static_cast<std::uint64_t>(M);
  }
  return total;
}

GridPoint unflatten(std::uint64_t idx, int M, int d) {
  GridPoint p(d);
  for (int i = 0; i < d; ++i) {
    p[i] = static_cast<int>(idx % M) + 1;
    idx /= M;
  }
  return p;
}

std::uint64_t flatten(std::span<const int> p, int M) {
  std::uint64_t idx = 0;
  for (std::size_t i = p.size(); i-- > 0;) idx = idx * M + static_cast<std::uint64_t>(p[i] - 1);
  return idx;
}

}  // namespace

std::optional<SpernerSolution> find_sperner_solution(const SpernerInstance& inst) {
  const int M = inst.M(), d = inst.d();
  if (d > 16) throw std::length_error("exhaustive StrongSperner search needs d <= 16");
  const std::uint64_t total = grid_size(M, d);
  if (total > tolerances().sperner_grid_budget) {
    throw std::length_error("StrongSperner grid exceeds the exhaustive search budget");
  }

  // Bit 2i: label i is -1; bit 2i+1: label i is +1.
  std::vector<std::uint32_t> cover(total);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const Labels labels = inst.label(unflatten(idx, M, d));
    std::uint32_t mask = 0;
    for (int i = 0; i < d; ++i) mask |= 1u << (2 * i + (labels[i] > 0 ? 1 : 0));
    cover[idx] = mask;
  }
  const std::uint32_t full = (d == 16) ? 0xffffffffu : ((1u << (2 * d)) - 1u);
  const std::uint32_t corners = 1u << d;

  // Corner subsets ordered by size so the first hit is a smallest cover.
  std::vector<std::uint32_t> subsets;
  if (d <= 4) {
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << corners); ++s) {
      subsets.push_back(static_cast<std::uint32_t>(s));
    }
    std::stable_sort(subsets.begin(), subsets.end(), [](std::uint32_t a, std::uint32_t b) {
      return std::popcount(a) < std::popcount(b);
    });
  }

  const std::uint64_t cells = grid_size(M - 1, d);
  for (std::uint64_t c = 0; c < cells; ++c) {
    const GridPoint base = unflatten(c, M - 1, d);
    std::vector<GridPoint> pts(corners);
    std::vector<std::uint32_t> masks(corners);
    std::uint32_t all = 0;
    for (std::uint32_t k = 0; k < corners; ++k) {
      GridPoint p = base;
      for (int i = 0; i < d; ++i) p[i] += (k >> i) & 1u;
      masks[k] = cover[flatten(p, M)];
      all |= masks[k];
      pts[k] = std::move(p);
    }
    if (all != full) continue;
    SpernerSolution sol;
    if (subsets.empty()) {
      // Large d: every corner of the cell.
      sol.points = std::move(pts);
      return sol;
    }
    for (std::uint32_t s : subsets) {
      std::uint32_t m = 0;
      for (std::uint32_t k = 0; k < corners; ++k) {
        if (s >> k & 1u) m |= masks[k];
      }
      if (m != full) continue;
      for (std::uint32_t k = 0; k < corners; ++k) {
        if (s >> k & 1u) sol.points.push_back(pts[k]);
      }
      return sol;
    }
  }
  return std::nullopt;
}

std::vector<std::uint8_t> export_labeling_grid(const SpernerInstance& inst) {
  const int M = inst.M(), d = inst.d();
  if (d > 2) throw std::invalid_argument("dense label export supports d <= 2");
  std::vector<std::uint8_t> out;
  if (d == 1) {
    for (int a = 1; a <= M; ++a) {
      const int p[] = {a};
      out.push_back(inst.label(p)[0] > 0 ? 1 : 0);
    }
    return out;
  }
  for (int a = 1; a <= M; ++a) {
    for (int b = 1; b <= M; ++b) {
      const int p[] = {a, b};
      const Labels labels = inst.label(p);
      std::uint8_t byte = 0;
      if (labels[0] > 0) byte |= 1u;
      if (labels[1] > 0) byte |= 2u;
      out.push_back(byte);
    }
  }
  return out;
}

}  // namespace gdalab
