// gdalab: build circuit-derived fixed-point and min-max instances, check
// points, and run the baseline solvers.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "gdalab/brouwer.hpp"
#include "gdalab/circuit_io.hpp"
#include "gdalab/errors.hpp"
#include "gdalab/gda.hpp"
#include "gdalab/harness.hpp"
#include "gdalab/instance.hpp"
#include "gdalab/point_io.hpp"
#include "gdalab/report.hpp"

using namespace gdalab;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json violations_json(const std::vector<GateViolation>& v) {
  json out = json::array();
  for (const auto& g : v) out.push_back({{"gate", g.gate}, {"reason", g.reason}});
  return out;
}

int cmd_build_brouwer(const std::string& path, bool solve, std::uint64_t seed, double eps,
                      const std::optional<std::string>& report_dir) {
  LedgerPtr ledger = make_ledger();
  auto circuit = std::make_shared<Circuit>(load_circuit(path, ledger));
  if (auto v = validate_instance(*circuit); !v.empty()) {
    json errs = json::array();
    for (const auto& s : v) errs.push_back(s.message);
    print({{"valid", false}, {"errors", errs}});
    return kFail;
  }
  BrouwerMap map(circuit, ledger);
  json out = {{"valid", true},
              {"dim", map.dim()},
              {"gates", circuit->gates().size()},
              {"oracle_coordinates", map.oracle_coordinates()}};
  if (!solve) {
    print(out);
    return kOk;
  }
  FixedPointOptions opt;
  opt.eps = eps;
  opt.seed = seed;
  const FixedPointResult r = find_fixed_point(map, opt);
  const Assignment b = decode_brouwer(r.z);
  const auto violations = check_assignment(*circuit, b);
  out["found"] = r.found;
  out["method"] = r.method;
  out["residual"] = r.residual;
  out["z"] = r.z;
  out["assignment"] = to_string(b);
  out["violations"] = violations_json(violations);
  out["ledger"] = ledger_to_json(ledger->snapshot());
  const auto dir = resolve_report_dir(report_dir, "gdalab-report");
  std::filesystem::create_directories(dir);
  std::ofstream trace(dir / "residual_trace.csv");
  if (!trace) throw std::runtime_error("cannot write " + (dir / "residual_trace.csv").string());
  write_residual_trace_csv(trace, r.trace);
  out["trace"] = (dir / "residual_trace.csv").string();
  print(out);
  return r.found && violations.empty() ? kOk : kFail;
}

int cmd_build_gda(const std::string& path, const std::optional<std::string>& out_path) {
  LoadedProblem p;
  try {
    p = load_problem(std::filesystem::path(path));
  } catch (const PaperModeRequest& e) {
    print(infeasible_to_json(e.report));
    return kFail;
  }
  json out;
  if (p.gda) {
    out = {{"params", params_to_json(p.gda->params())},
           {"nodes", p.gda->nodes()},
           {"dim", p.gda->dim()}};
  } else {
    out = {{"toy", p.problem().mode_tag()}, {"dim", p.problem().dim()}};
  }
  if (out_path) {
    std::ofstream f(*out_path);
    if (!f) throw ConfigError("cannot write " + *out_path);
    f << p.descriptor.dump(2) << '\n';
    out["written"] = *out_path;
  }
  print(out);
  return kOk;
}

std::pair<std::vector<double>, std::vector<double>> split_point(const std::vector<double>& flat, std::size_t d) {
  if (flat.size() != 2 * d) {
    throw ConfigError("point file holds " + std::to_string(flat.size()) + " values, expected 2*" +
                      std::to_string(d) + " (x then y)");
  }
  for (double v : flat) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("point outside [0,1]");
  }
  return {std::vector<double>(flat.begin(), flat.begin() + d), std::vector<double>(flat.begin() + d, flat.end())};
}

int cmd_verify(const std::string& instance, const std::string& point) {
  LoadedProblem p = load_problem(std::filesystem::path(instance));
  const MinMaxOracle& prob = p.problem();
  auto [x, y] = split_point(read_point_file(point), prob.dim());
  json out;
  bool ok = false;
  if (p.gda) {
    const DichotomyResult r = dichotomy_extract(*p.gda, x, y);
    out = dichotomy_to_json(r, *p.circuit);
    ok = r.gap <= prob.tolerance() && (r.witness || r.violations.empty());
  } else {
    out["gap"] = stationarity_gap(prob, x, y);
    ok = out["gap"].get<double>() <= prob.tolerance();
  }
  out["eps"] = prob.tolerance();
  out["mode"] = prob.mode_tag();
  out["stationary"] = out["gap"].get<double>() <= prob.tolerance();
  out["ledger"] = ledger_to_json(p.ledger->snapshot());
  print(out);
  return ok ? kOk : kFail;
}

int cmd_grad_check(const std::string& instance, double h, int points, std::uint64_t seed, double tol) {
  LoadedProblem p = load_problem(std::filesystem::path(instance));
  const MinMaxOracle& prob = p.problem();
  const FdReport r = fd_check(prob, random_interior_points(prob.dim(), points, 2.0 * h, seed), h);
  json out = {{"max_error", r.max_error}, {"checked", r.checked}, {"tolerance", tol}, {"notes", r.notes}};
  if (r.worst_point) {
    out["worst_point"] = *r.worst_point;
    out["worst_coordinate"] = *r.worst_coordinate;
    out["analytic"] = r.analytic;
    out["numeric"] = r.numeric;
  }
  out["ledger"] = ledger_to_json(p.ledger->snapshot());
  print(out);
  return r.max_error <= tol ? kOk : kFail;
}

int cmd_solve(const std::string& instance, const std::string& algo, SolverConfig cfg,
              const std::optional<std::string>& report_dir) {
  LoadedProblem p = load_problem(std::filesystem::path(instance));
  const MinMaxOracle& prob = p.problem();
  const Algorithm a = parse_algorithm(algo);
  const SolverRun run = run_solver(prob, a, cfg);
  json extra = {{"instance", p.descriptor}, {"tolerance", prob.tolerance()}};
  if (p.gda) extra["dichotomy"] = dichotomy_to_json(dichotomy_extract(*p.gda, run.x, run.y), *p.circuit);
  const auto dir = resolve_report_dir(report_dir, "gdalab-report");
  const ReportFiles files = write_report(dir, {run}, p.ledger->snapshot(), prob.mode_tag(), extra);
  std::vector<double> flat(run.x);
  flat.insert(flat.end(), run.y.begin(), run.y.end());
  write_point_file(dir / "final_point.csv", flat);
  print({{"algorithm", algo},
         {"iterations", run.iterations},
         {"best_gap", run.best_gap},
         {"final_gap", run.final_gap},
         {"tolerance", prob.tolerance()},
         {"summary", files.summary.string()}});
  return run.final_gap <= prob.tolerance() ? kOk : kFail;
}

int cmd_query_report(const std::string& dir) {
  const json s = read_json_file(std::filesystem::path(dir) / "summary.json");
  std::printf("mode: %s\n", s.value("mode", "?").c_str());
  std::printf("ledger totals:\n");
  for (const auto& [k, v] : s.at("ledger").items()) {
    std::printf("  %-8s %llu\n", k.c_str(), static_cast<unsigned long long>(v.get<std::uint64_t>()));
  }
  const auto& runs = s.at("runs");
  for (std::size_t r = 0; r < runs.size(); ++r) {
    const auto& run = runs[r];
    std::printf("run %zu: %s, %d iterations, best gap %.6g, final gap %.6g\n", r,
                run.at("algorithm").get<std::string>().c_str(), run.at("iterations").get<int>(),
                run.at("best_gap").get<double>(), run.at("final_gap").get<double>());
    for (const auto& [k, v] : run.at("ledger").items()) {
      std::printf("    %-8s %llu\n", k.c_str(), static_cast<unsigned long long>(v.get<std::uint64_t>()));
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gdalab: circuit-derived fixed-point and min-max instances"};
  app.require_subcommand(1);
  // help is --help only so grad-check can take --h
  app.set_help_flag("--help", "Print this help message and exit");
  std::optional<std::string> report_dir;
  app.add_option("--report-dir", report_dir, "Report directory (else $GDALAB_REPORT_DIR, else ./gdalab-report)");

  std::string circuit_path, instance_path, point_path, run_dir, out_path_s;

  auto* bb = app.add_subcommand("build-brouwer", "Validate a circuit and build its smooth map");
  bool solve = false;
  std::uint64_t bb_seed = 1;
  double bb_eps = 1.0 / 12.0;
  bb->add_option("circuit", circuit_path, "Circuit JSON")->required();
  bb->add_flag("--solve", solve, "Search for an approximate fixed point and decode it");
  bb->add_option("--seed", bb_seed, "Restart seed");
  bb->add_option("--eps", bb_eps, "Residual tolerance");

  auto* bg = app.add_subcommand("build-gda", "Build a min-max instance from a descriptor");
  std::optional<std::string> bg_out;
  bg->add_option("descriptor", instance_path, "Descriptor JSON")->required();
  bg->add_option("--out", bg_out, "Write the resolved descriptor here");

  auto* ve = app.add_subcommand("verify", "Check stationarity of a point and extract the dichotomy");
  ve->add_option("instance", instance_path, "Descriptor JSON")->required();
  ve->add_option("point", point_path, "Point file, x then y (CSV or .bin)")->required();

  auto* gc = app.add_subcommand("grad-check", "Finite-difference check of the gradient oracle");
  double h = 1e-5, tol = 1e-4;
  int points = 10;
  std::uint64_t gc_seed = 1;
  gc->add_option("instance", instance_path, "Descriptor JSON")->required();
  gc->set_help_flag("--help", "Print this help message and exit");
  gc->add_option("--h,--step", h, "Difference step h")->check(CLI::PositiveNumber);
  gc->add_option("--points", points, "Random interior points")->check(CLI::PositiveNumber);
  gc->add_option("--seed", gc_seed, "Point seed");
  gc->add_option("--tol", tol, "Maximum accepted error");

  auto* so = app.add_subcommand("solve", "Run a solver and write a report");
  std::string algo = "extragradient";
  SolverConfig cfg;
  double lr = -1.0, target = -1.0;
  so->add_option("instance", instance_path, "Descriptor JSON")->required();
  so->add_option("--algo", algo, "pgda, extragradient, or grid")
      ->check(CLI::IsMember({"pgda", "extragradient", "grid"}));
  so->add_option("--steps", cfg.steps, "Iterations (grid: resolution)")->check(CLI::NonNegativeNumber);
  so->add_option("--lr", lr, "Step size (default: 0.1/sqrt(steps) for pgda, 0.1 for extragradient)");
  so->add_option("--seed", cfg.seed, "Start-point seed");
  so->add_option("--gap-every", cfg.gap_every, "Gap sampling cadence")->check(CLI::PositiveNumber);
  so->add_option("--target-gap", target, "Stop once the gap is at or below this");

  auto* qr = app.add_subcommand("query-report", "Summarize the query ledger of a run directory");
  qr->add_option("run-dir", run_dir, "Directory holding summary.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*bb) return cmd_build_brouwer(circuit_path, solve, bb_seed, bb_eps, report_dir);
    if (*bg) return cmd_build_gda(instance_path, bg_out);
    if (*ve) return cmd_verify(instance_path, point_path);
    if (*gc) return cmd_grad_check(instance_path, h, points, gc_seed, tol);
    if (*so) {
      if (lr >= 0.0) cfg.lr = lr;
      if (target >= 0.0) cfg.target_gap = target;
      return cmd_solve(instance_path, algo, cfg, report_dir);
    }
    if (*qr) return cmd_query_report(run_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kFail;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
