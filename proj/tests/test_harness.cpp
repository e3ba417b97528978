#include <cmath>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "gdalab/errors.hpp"
#include "gdalab/gda.hpp"
#include "gdalab/harness.hpp"
#include "gdalab/report.hpp"

using namespace gdalab;

namespace {

// f = sum_j c_j x_j - sum_j c_j y_j with c_j = 3, and an optional sign flip in one entry.
class Linear : public MinMaxOracle {
 public:
  Linear(std::size_t d, bool corrupt) : d_(d), corrupt_(corrupt), ledger_(make_ledger()) {}
  std::size_t dim() const override { return d_; }
  const LedgerPtr& ledger() const override { return ledger_; }

 protected:
  double do_value(std::span<const double> x, std::span<const double> y) const override {
    double f = 0.0;
    for (std::size_t j = 0; j < d_; ++j) f += 3.0 * x[j] - 3.0 * y[j];
    return f;
  }
  MinMaxGradient do_gradient(std::span<const double>, std::span<const double>) const override {
    MinMaxGradient g{std::vector<double>(d_, 3.0), std::vector<double>(d_, -3.0)};
    if (corrupt_) g.gy[0] = 3.0;
    return g;
  }

 private:
  std::size_t d_;
  bool corrupt_;
  LedgerPtr ledger_;
};

// Returns NaN gradients.
class Broken : public ZeroProblem {
 protected:
  MinMaxGradient do_gradient(std::span<const double>, std::span<const double>) const override {
    return {{std::nan("")}, {0.0}};
  }
};

}  // namespace

TEST_CASE("algorithm names") {
  CHECK(parse_algorithm("pgda") == Algorithm::Pgda);
  CHECK(parse_algorithm("extragradient") == Algorithm::Extragradient);
  CHECK(parse_algorithm("grid") == Algorithm::Grid);
  CHECK(to_string(Algorithm::Extragradient) == "extragradient");
  CHECK_THROWS_AS(parse_algorithm("adam"), std::invalid_argument);
}

TEST_CASE("zero step size keeps the trajectory fixed") {
  BilinearToy toy;
  for (auto algo : {Algorithm::Pgda, Algorithm::Extragradient}) {
    SolverConfig cfg;
    cfg.steps = 50;
    cfg.lr = 0.0;
    cfg.x0 = {0.2};
    cfg.y0 = {0.9};
    cfg.gap_every = 10;
    cfg.record_trajectory = true;
    const auto run = run_solver(toy, algo, cfg);
    CHECK(run.x == cfg.x0);
    CHECK(run.y == cfg.y0);
    for (const auto& row : run.trajectory) CHECK(row == std::vector<double>{0.2, 0.9});
    for (const auto& s : run.gap_curve) CHECK(s.gap == run.gap_curve.front().gap);
  }
}

TEST_CASE("pgda cycles on the bilinear toy") {
  BilinearToy toy;
  SolverConfig cfg;
  cfg.steps = 20000;
  cfg.lr = 0.1;
  cfg.seed = 3;
  cfg.record_trajectory = true;
  const auto run = run_pgda(toy, cfg);
  CHECK(run.best_gap > 1e-3);
  for (const auto& row : run.trajectory)
    for (double v : row) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  // the default step is 0.1 / sqrt(steps)
  SolverConfig dflt;
  dflt.steps = 400;
  CHECK(run_pgda(toy, dflt).lr == doctest::Approx(0.1 / 20.0));
}

TEST_CASE("extragradient converges on the bilinear toy") {
  BilinearToy toy;
  SolverConfig cfg;
  cfg.steps = 10000;
  cfg.lr = 0.1;
  cfg.seed = 3;
  cfg.gap_every = 1;
  const auto run = run_extragradient(toy, cfg);
  CHECK(run.final_gap <= 1e-6);
  // the iterates spiral in, so the gap itself is not monotone
  CHECK(run.gap_curve.back().gap < run.gap_curve.front().gap);
  CHECK(run.ledger.at("grad_f") == 2u * static_cast<std::uint64_t>(run.iterations) + 1u);
}

TEST_CASE("ledger accounting and monotone samples") {
  auto ledger = make_ledger();
  auto inst = GdaInstance(fx::purify_nor(), scaled_parameters(3, 1.0 / 12.0, 0.1, 2, 1e-4), ledger);
  SolverConfig cfg;
  cfg.steps = 30;
  cfg.gap_every = 5;
  const auto eg = run_extragradient(inst, cfg);
  CHECK(eg.ledger.at("grad_f") == 61u);
  const auto pg = run_pgda(inst, cfg);
  CHECK(pg.ledger.at("grad_f") == 31u);
  CHECK(pg.mode_tag == "scaled");
  for (const auto* run : {&eg, &pg}) {
    for (std::size_t k = 1; k < run->gap_curve.size(); ++k) {
      CHECK(run->gap_curve[k].ledger_total >= run->gap_curve[k - 1].ledger_total);
    }
    double best = run->gap_curve.front().gap;
    for (const auto& s : run->gap_curve) best = std::min(best, s.gap);
    CHECK(run->best_gap <= best);
  }
}

TEST_CASE("runs are deterministic") {
  BilinearToy toy(2);
  SolverConfig cfg;
  cfg.steps = 300;
  cfg.seed = 9;
  const auto a = run_pgda(toy, cfg);
  const auto b = run_pgda(toy, cfg);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.best_gap == b.best_gap);
  cfg.seed = 10;
  CHECK(run_pgda(toy, cfg).x != a.x);
}

TEST_CASE("non-finite gradients abort the run") {
  Broken broken;
  SolverConfig cfg;
  cfg.steps = 5;
  CHECK_THROWS_AS(run_pgda(broken, cfg), NumericError);
  CHECK_THROWS_AS(run_extragradient(broken, cfg), NumericError);
}

TEST_CASE("bad solver configuration") {
  BilinearToy toy;
  SolverConfig cfg;
  cfg.lr = -1.0;
  CHECK_THROWS_AS(run_pgda(toy, cfg), std::invalid_argument);
  cfg.lr = 0.1;
  cfg.x0 = {1.5};
  CHECK_THROWS_AS(run_pgda(toy, cfg), std::invalid_argument);
  cfg.x0 = {0.5, 0.5};
  CHECK_THROWS_AS(run_extragradient(toy, cfg), std::invalid_argument);
}

TEST_CASE("grid search") {
  BilinearToy toy;
  const auto r = grid_search_stationary(toy, 101);
  CHECK(r.x == std::vector<double>{0.5});
  CHECK(r.y == std::vector<double>{0.5});
  CHECK(r.gap <= 0.01);
  CHECK(r.points == 101u * 101u);

  ZeroProblem zero(2);
  const auto z = grid_search_stationary(zero, 5);
  CHECK(z.gap == 0.0);
  CHECK(z.points == 625u);

  ZeroProblem wide(4);
  CHECK_NOTHROW(grid_search_stationary(wide, 7));  // 7^8 = 5.7e6
  CHECK_THROWS_AS(grid_search_stationary(wide, 8), std::length_error);  // 8^8 = 1.7e7
  const auto before = wide.ledger()->total();
  CHECK_THROWS_AS(grid_search_stationary(wide, 100), std::length_error);
  CHECK(wide.ledger()->total() == before);
}

TEST_CASE("finite-difference checker") {
  Linear lin(3, false);
  auto pts = random_interior_points(3, 5, 0.01, 1);
  auto r = fd_check(lin, pts, 1e-5);
  CHECK(r.max_error <= 1e-10);
  CHECK(r.checked == 5);

  Linear bad(3, true);
  r = fd_check(bad, pts, 1e-5);
  CHECK(r.max_error == doctest::Approx(2.0).epsilon(1e-6));
  REQUIRE(r.worst_coordinate.has_value());
  CHECK(*r.worst_coordinate == 3);  // y_0

  pts.push_back({{0.0, 0.5, 0.5}, {0.5, 0.5, 0.5}});
  r = fd_check(lin, pts, 1e-5);
  CHECK(r.checked == 5);
  CHECK(r.notes.size() == 1);

  auto ledger = make_ledger();
  GdaInstance nor(fx::nor_ring(), scaled_parameters(3, 1.0 / 12.0, 0.1, 2, 1e-4), ledger);
  CHECK(fd_check(nor, random_interior_points(nor.dim(), 3, 0.01, 2), 1e-5).max_error <= 1e-4);
}

TEST_CASE("reports are byte-stable and carry the mode tag") {
  BilinearToy toy;
  SolverConfig cfg;
  cfg.steps = 200;
  cfg.gap_every = 50;
  const auto run = run_extragradient(toy, cfg);
  std::ostringstream a, b, empty;
  write_gap_curves_csv(a, {run, run});
  write_gap_curves_csv(b, {run, run});
  CHECK(a.str() == b.str());
  write_gap_curves_csv(empty, {});
  CHECK(empty.str() == "run,algorithm,iteration,gap,ledger_total\n");
  CHECK(run_to_json(run).at("mode") == "bilinear");

  auto ledger = make_ledger();
  GdaInstance inst(fx::purify_nor(), scaled_parameters(3, 1.0 / 12.0, 0.1, 2, 1e-4), ledger);
  SolverConfig c2;
  c2.steps = 3;
  CHECK(run_to_json(run_pgda(inst, c2)).at("mode") == "scaled");
}
