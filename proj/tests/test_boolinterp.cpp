#include <cmath>
#include <random>

#include "doctest.h"
#include "gdalab/boolinterp.hpp"
#include "gdalab/smoothstep.hpp"
#include "oracles.hpp"

using namespace gdalab;

namespace {

std::vector<std::uint8_t> random_table(int N, std::mt19937_64& rng) {
  std::vector<std::uint8_t> t(std::size_t{1} << N);
  for (auto& v : t) v = static_cast<std::uint8_t>(rng() & 1u);
  return t;
}

}  // namespace

TEST_CASE("active vertex rounding") {
  const std::vector<double> a{0.1, 0.9}, b{0.5, 0.0}, c{1.0 / 3.0, 1.0 / 3.0}, d{2.0 / 3.0, 1.0};
  CHECK(active_vertex(a) == Bits{0, 1});
  CHECK_FALSE(active_vertex(b).has_value());
  CHECK(active_vertex(c) == Bits{0, 0});
  CHECK(active_vertex(d) == Bits{1, 1});
  CHECK(vertex_weight(c, Bits{0, 0}) == 0.0);
  const std::vector<double> bad{1.5};
  CHECK_THROWS_AS(active_vertex(bad), std::invalid_argument);
}

TEST_CASE("interpolation examples") {
  auto ledger = make_ledger();
  auto xo = truth_table_oracle(2, {0, 1, 1, 0}, ledger);
  const std::vector<double> p{0.9, 0.1}, mid{0.5, 0.5};
  CHECK(interp_eval(p, xo) == 1.0);
  CHECK(interp_eval(mid, xo) == 0.5);

  auto id = truth_table_oracle(1, {0, 1}, ledger);
  const std::vector<double> q{0.25};
  const double expected = 0.5 + (0.0 - 0.5) * (1.0 - StepSpec(1.0 / 6.0, 1.0 / 3.0).eval(0.25));
  CHECK(interp_eval(q, id) == doctest::Approx(expected).epsilon(1e-15));
  CHECK(interp_eval(q, id) == ref::dense_interp(q, {0, 1}));
  // the tie point: vertex (0,0) is active but carries zero weight, so no query
  const auto before = ledger->count("L");
  const std::vector<double> tie{1.0 / 3.0, 1.0 / 3.0};
  CHECK(interp_eval(tie, xo) == 0.5);
  CHECK(ledger->count("L") == before);
}

TEST_CASE("dimension mismatch is rejected") {
  auto ledger = make_ledger();
  auto xo = truth_table_oracle(2, {0, 1, 1, 0}, ledger);
  const std::vector<double> p{0.1};
  CHECK_THROWS_AS(interp_eval(p, xo), std::invalid_argument);
  CHECK_THROWS_AS(interp_grad(p, xo), std::invalid_argument);
  const std::vector<double> q{0.1, 0.2};
  CHECK_THROWS_AS(interp_hess_entry(q, xo, 0, 2), std::out_of_range);
}

TEST_CASE("oracle accounting and validation") {
  auto ledger = make_ledger();
  auto o = truth_table_oracle(3, {0, 0, 0, 1, 0, 0, 0, 1}, ledger, "h");
  const Bits b{1, 1, 0};
  CHECK(o.query(b));
  CHECK(o.queries() == 1);
  CHECK(ledger->count("h") == 1);
  const Bits wrong{1, 1};
  CHECK_THROWS_AS(o.query(wrong), std::invalid_argument);
  const Bits notbit{1, 2, 0};
  CHECK_THROWS_AS(o.query(notbit), std::invalid_argument);
  CHECK(truth_table_index(Bits{1, 0, 1}) == 5);
  CHECK_THROWS_AS(truth_table_oracle(2, {0, 1}, ledger), std::invalid_argument);
}

TEST_CASE("exactness on vertex boxes and the one-query budget") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> U(0.0, 1.0 / 6.0);
  for (int N = 1; N <= 5; ++N) {
    auto ledger = make_ledger();
    const auto table = random_table(N, rng);
    auto h = truth_table_oracle(N, table, ledger);
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << N); ++v) {
      for (int k = 0; k < 40; ++k) {
        std::vector<double> x(N);
        for (int i = 0; i < N; ++i) x[i] = ((v >> i) & 1u) ? 1.0 - U(rng) : U(rng);
        const auto q0 = h.queries();
        CHECK(interp_eval(x, h) == static_cast<double>(table[v]));
        CHECK(h.queries() - q0 <= 1);
        const auto q1 = h.queries();
        for (double gj : interp_grad(x, h)) CHECK(gj == 0.0);
        CHECK(h.queries() - q1 <= 1);
      }
    }
  }
}

TEST_CASE("dense-sum equivalence") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int N = 1; N <= 8; ++N) {
    auto ledger = make_ledger();
    const auto table = random_table(N, rng);
    auto h = truth_table_oracle(N, table, ledger);
    for (int k = 0; k < 200; ++k) {
      std::vector<double> x(N);
      // bias towards vertices so that some point has an active vertex
      for (auto& xi : x) xi = U(rng) < 0.5 ? U(rng) * 0.4 : 1.0 - U(rng) * 0.4;
      CHECK(interp_eval(x, h) == ref::dense_interp(x, table));
    }
  }
}

TEST_CASE("gradient and Hessian against finite differences") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int N = 1; N <= 4; ++N) {
    auto ledger = make_ledger();
    const auto table = random_table(N, rng);
    auto h = truth_table_oracle(N, table, ledger);
    int checked = 0;
    while (checked < 60) {
      std::vector<double> x(N);
      for (auto& xi : x) xi = U(rng) < 0.5 ? 1.0 / 6.0 + U(rng) / 6.0 : 5.0 / 6.0 - U(rng) / 6.0;
      if (!active_vertex(x)) continue;
      ++checked;
      const auto q0 = h.queries();
      const auto grad = interp_grad(x, h);
      CHECK(h.queries() - q0 <= 1);
      for (int j = 0; j < N; ++j) {
        auto f = [&](double t) {
          auto z = x;
          z[j] = t;
          return interp_eval(z, h);
        };
        CHECK(ref::rel(grad[j], ref::central(f, x[j], 1e-6)) <= 1e-5);
        CHECK(std::abs(grad[j]) <= std::exp(12.0) / 2.0);
        for (int k = 0; k < N; ++k) {
          auto gk = [&](double t) {
            auto z = x;
            z[k] = t;
            return interp_grad(z, h)[j];
          };
          const auto q1 = h.queries();
          const double hjk = interp_hess_entry(x, h, j, k);
          CHECK(h.queries() - q1 <= 1);
          CHECK(ref::rel(hjk, ref::central(gk, x[k], 1e-6)) <= 1e-3);
          CHECK(std::abs(hjk) <= 6.0 * std::exp(24.0));
        }
      }
      const auto jet = interp_jet(x, h);
      CHECK(jet.value == interp_eval(x, h));
      CHECK(jet.grad == grad);
    }
  }
}

TEST_CASE("no active vertex gives flat zero derivatives and no query") {
  auto ledger = make_ledger();
  auto h = truth_table_oracle(2, {1, 0, 0, 1}, ledger);
  const std::vector<double> x{0.5, 0.5};
  CHECK(interp_grad(x, h) == std::vector<double>{0.0, 0.0});
  CHECK(interp_hess_entry(x, h, 0, 1) == 0.0);
  CHECK(interp_eval(x, h) == 0.5);
  CHECK(ledger->count("L") == 0);
}

TEST_CASE("off-diagonal Hessian closed form") {
  auto ledger = make_ledger();
  auto h = truth_table_oracle(3, {0, 1, 1, 1, 0, 0, 1, 0}, ledger);
  const std::vector<double> x{0.2, 0.75, 0.3};
  const Bits y{0, 1, 0};
  const double hy = h.query(y) ? 1.0 : 0.0;
  const NamedStep& a = alpha_step();
  const double expected = (hy - 0.5) * (1.0) * a.d1(x[0]) * (-1.0) * a.d1(1.0 - x[1]) * a(x[2]);
  CHECK(interp_hess_entry(x, h, 0, 1) == doctest::Approx(expected).epsilon(1e-12));
}
