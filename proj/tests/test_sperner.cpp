#include <cmath>
#include <random>

#include "doctest.h"
#include "gdalab/sperner.hpp"

using namespace gdalab;

namespace {

SpernerInstance table_1d(std::vector<int> labels, const LedgerPtr& ledger) {
  const int M = static_cast<int>(labels.size());
  return SpernerInstance(M, 1, [labels](std::span<const int> p) { return Labels{static_cast<std::int8_t>(labels[p[0] - 1])}; },
                         ledger);
}

double residual(const ContinuousMap& F, const std::vector<double>& z) {
  const auto Fz = F(z);
  double r = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) r = std::max(r, std::abs(Fz[i] - z[i]));
  return r;
}

}  // namespace

TEST_CASE("verifier examples") {
  auto ledger = make_ledger();
  auto inst = table_1d({+1, -1, -1}, ledger);
  auto ok = verify_sperner_solution(inst, {{{1}, {2}}});
  CHECK(ok.valid);
  CHECK(ok.max_distance == 1);
  CHECK(ok.uncovered.empty());
  CHECK(ledger->count("lambda") == 2);

  auto far = verify_sperner_solution(inst, {{{1}, {3}}});
  CHECK_FALSE(far.valid);
  CHECK(far.max_distance == 2);

  auto missing = verify_sperner_solution(inst, {{{2}, {3}}});
  CHECK_FALSE(missing.valid);
  REQUIRE(missing.uncovered.size() == 1);
  CHECK(missing.uncovered[0] == UncoveredLabel{0, +1});

  CHECK_THROWS_AS(verify_sperner_solution(inst, {{{4}}}), std::out_of_range);
  CHECK_THROWS_AS(verify_sperner_solution(inst, {}), std::invalid_argument);
}

TEST_CASE("uncovered certificate equals brute force") {
  std::mt19937_64 rng(17);
  auto ledger = make_ledger();
  const int M = 4, d = 3;
  std::vector<Labels> table(M * M * M);
  for (auto& l : table) {
    l.resize(d);
    for (auto& v : l) v = (rng() & 1u) ? 1 : -1;
  }
  auto idx = [&](std::span<const int> p) { return (p[0] - 1) + M * (p[1] - 1) + M * M * (p[2] - 1); };
  SpernerInstance inst(M, d, [&](std::span<const int> p) { return table[idx(p)]; }, ledger);
  std::uniform_int_distribution<int> base(1, M - 1), bit(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    GridPoint origin{base(rng), base(rng), base(rng)};
    SpernerSolution sol;
    const int count = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < count; ++k) {
      GridPoint p = origin;
      for (auto& c : p) c += bit(rng);
      sol.points.push_back(p);
    }
    auto verdict = verify_sperner_solution(inst, sol);
    std::vector<UncoveredLabel> expected;
    for (int i = 0; i < d; ++i) {
      for (int l : {-1, +1}) {
        bool seen = false;
        for (const auto& p : sol.points) seen = seen || table[idx(p)][i] == l;
        if (!seen) expected.push_back({i, l});
      }
    }
    CHECK(verdict.uncovered == expected);
    CHECK(verdict.valid == expected.empty());
  }
}

TEST_CASE("grid width and coordinates") {
  CHECK(sperner_grid_width(0.1) == 31);
  CHECK(sperner_grid_width(0.2) == 16);
  CHECK(sperner_grid_width(0.5) == 7);
  CHECK_THROWS_AS(sperner_grid_width(0.0), std::invalid_argument);
  CHECK_THROWS_AS(sperner_grid_width(1.0), std::invalid_argument);
  CHECK(grid_to_unit(16, 31) == 0.5);
  CHECK(grid_to_unit(1, 31) == 0.0);
  CHECK(grid_to_unit(31, 31) == 1.0);
  CHECK(decode_sperner_to_fixed_point({{{16, 16}}}, 31) == std::vector<double>{0.5, 0.5});
}

TEST_CASE("constant map labeling by brute force") {
  for (double eps : {0.5, 0.6, 0.9}) {
    auto ledger = make_ledger();
    auto F = registered_map("constant", 2, ledger);
    auto lambda = brouwer_to_labeling(F, eps, ledger);
    const int M = lambda.M();
    REQUIRE(M <= 7);
    for (int a = 1; a <= M; ++a) {
      for (int b = 1; b <= M; ++b) {
        const GridPoint p{a, b};
        const auto l = lambda.label(p);
        for (int i = 0; i < 2; ++i) {
          const double zi = static_cast<double>(p[i] - 1) / (M - 1);
          CHECK(l[i] == (0.5 > zi ? 1 : -1));
        }
      }
    }
    CHECK(ledger->count("lambda") == static_cast<std::uint64_t>(M * M));
    CHECK(ledger->count("map") == static_cast<std::uint64_t>(M * M));
  }
}

TEST_CASE("boundary conditions hold on every face") {
  for (const auto& name : registered_map_names()) {
    for (int d = 1; d <= 3; ++d) {
      auto ledger = make_ledger();
      auto lambda = brouwer_to_labeling(registered_map(name, d, ledger), 0.2, ledger).with_boundary_check();
      const int M = lambda.M();
      GridPoint p(d, 1);
      for (;;) {
        Labels l;
        REQUIRE_NOTHROW(l = lambda.label(p));
        for (int i = 0; i < d; ++i) {
          if (p[i] == 1) CHECK(l[i] == 1);
          if (p[i] == M) CHECK(l[i] == -1);
        }
        int k = 0;
        while (k < d && ++p[k] > M) p[k++] = 1;
        if (k == d) break;
      }
    }
  }
}

TEST_CASE("boundary checking wrapper catches violations") {
  auto ledger = make_ledger();
  auto inst = table_1d({-1, -1, -1}, ledger).with_boundary_check();
  CHECK_THROWS_AS(inst.label(GridPoint{1}), std::logic_error);
  CHECK_NOTHROW(inst.label(GridPoint{2}));
  CHECK_THROWS_AS(inst.label(GridPoint{0}), std::out_of_range);
}

TEST_CASE("end-to-end: search, verify, decode") {
  for (const auto& name : registered_map_names()) {
    for (int d : {1, 2}) {
      auto ledger = make_ledger();
      auto F = registered_map(name, d, ledger);
      CHECK(F.lipschitz() <= 2.0);
      auto lambda = brouwer_to_labeling(F, 0.2, ledger);
      CHECK(lambda.M() == 16);
      auto sol = find_sperner_solution(lambda);
      REQUIRE(sol.has_value());
      CHECK(verify_sperner_solution(lambda, *sol).valid);
      const auto z = decode_sperner_to_fixed_point(*sol, lambda.M());
      CHECK(residual(F, z) <= 0.2);
    }
  }
}

TEST_CASE("search budget and export") {
  auto ledger = make_ledger();
  auto big = brouwer_to_labeling(registered_map("affine", 5, ledger), 0.1, ledger);  // 31^5 points
  CHECK_THROWS_AS(find_sperner_solution(big), std::length_error);

  auto lambda = brouwer_to_labeling(registered_map("rotation", 2, ledger), 0.2, ledger);
  const auto grid = export_labeling_grid(lambda);
  REQUIRE(grid.size() == 16 * 16);
  for (int a = 1; a <= 16; ++a) {
    for (int b = 1; b <= 16; ++b) {
      const auto l = lambda.label(GridPoint{a, b});
      const std::uint8_t byte = grid[(a - 1) * 16 + (b - 1)];
      CHECK(((byte & 1u) != 0) == (l[0] == 1));
      CHECK(((byte & 2u) != 0) == (l[1] == 1));
    }
  }
  auto three = brouwer_to_labeling(registered_map("affine", 3, ledger), 0.5, ledger);
  CHECK_THROWS_AS(export_labeling_grid(three), std::invalid_argument);
  CHECK_THROWS_AS(registered_map("spiral", 2, ledger), std::invalid_argument);
}
