#include "gdalab/report.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace gdalab {

using nlohmann::json;

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

json ledger_to_json(const LedgerSnapshot& snapshot) {
  json out = json::object();
  for (const auto& [k, v] : snapshot) out[k] = v;
  return out;
}

json run_to_json(const SolverRun& run) {
  json curve = json::array();
  for (const auto& s : run.gap_curve) curve.push_back({{"iteration", s.iteration}, {"gap", s.gap}, {"ledger_total", s.ledger_total}});
  return {{"algorithm", std::string(to_string(run.algorithm))},
          {"mode", run.mode_tag},
          {"lr", run.lr},
          {"steps", run.steps},
          {"iterations", run.iterations},
          {"seed", run.seed},
          {"best_gap", run.best_gap},
          {"best_iteration", run.best_iteration},
          {"final_gap", run.final_gap},
          {"gap_samples", curve.size()},
          {"x", run.x},
          {"y", run.y},
          {"ledger", ledger_to_json(run.ledger)}};
}

json dichotomy_to_json(const DichotomyResult& r, const Circuit& circuit) {
  json out = {{"gap", r.gap}, {"notes", r.notes}};
  if (r.witness) {
    out["witness"] = {{"node", circuit.nodes().at(r.witness->node)},
                      {"block", r.witness->block},
                      {"point", r.witness->point},
                      {"residual", r.witness->residual}};
  }
  if (r.assignment) {
    out["assignment"] = to_string(*r.assignment);
    json v = json::array();
    for (const auto& g : r.violations) v.push_back({{"gate", g.gate}, {"reason", g.reason}});
    out["violations"] = std::move(v);
  }
  return out;
}

json params_to_json(const GdaParams& p) {
  return {{"mode", std::string(to_string(p.mode))}, {"m", p.m},     {"rho", p.rho},
          {"delta", p.delta},                       {"n", p.n},     {"eps", p.eps}};
}

json infeasible_to_json(const PaperScaleInfeasible& r) {
  return {{"mode", "paper"},
          {"feasible", false},
          {"m", r.m},
          {"rho", r.rho},
          {"delta", r.magnitudes.delta},
          {"n", r.magnitudes.n_real},
          {"log2_n", r.magnitudes.log2_n},
          {"eps", r.magnitudes.eps},
          {"log10_eps", r.magnitudes.log10_eps},
          {"reason", r.reason}};
}

void write_gap_curves_csv(std::ostream& out, const std::vector<SolverRun>& runs) {
  out << "run,algorithm,iteration,gap,ledger_total\n";
  for (std::size_t r = 0; r < runs.size(); ++r) {
    for (const auto& s : runs[r].gap_curve) {
      out << r << ',' << to_string(runs[r].algorithm) << ',' << s.iteration << ',' << num(s.gap) << ','
          << s.ledger_total << '\n';
    }
  }
}

ReportFiles write_report(const std::filesystem::path& dir, const std::vector<SolverRun>& runs,
                         const LedgerSnapshot& totals, const std::string& mode_tag, const json& extra) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create report directory " + dir.string() + ": " + ec.message());
  ReportFiles files{dir / "summary.json", dir / "gap_curves.csv"};

  json summary = {{"mode", mode_tag}, {"ledger", ledger_to_json(totals)}};
  json jr = json::array();
  for (const auto& r : runs) jr.push_back(run_to_json(r));
  summary["runs"] = std::move(jr);
  if (extra.is_object()) {
    for (auto it = extra.begin(); it != extra.end(); ++it) summary[it.key()] = it.value();
  }

  std::ofstream js(files.summary, std::ios::binary);
  if (!js) throw std::runtime_error("cannot write " + files.summary.string());
  js << summary.dump(2) << '\n';
  std::ofstream csv(files.curves, std::ios::binary);
  if (!csv) throw std::runtime_error("cannot write " + files.curves.string());
  write_gap_curves_csv(csv, runs);
  if (!js || !csv) throw std::runtime_error("write to " + dir.string() + " failed");
  return files;
}

std::filesystem::path resolve_report_dir(const std::optional<std::string>& flag, const std::string& fallback) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv(kReportDirEnv); env && *env) return env;
  return fallback;
}

}  // namespace gdalab
