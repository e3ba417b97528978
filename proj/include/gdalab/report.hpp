#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "gdalab/circuit.hpp"
#include "gdalab/gda.hpp"
#include "gdalab/harness.hpp"
#include "gdalab/ledger.hpp"

namespace gdalab {

inline constexpr const char* kReportDirEnv = "GDALAB_REPORT_DIR";

nlohmann::json ledger_to_json(const LedgerSnapshot& snapshot);
nlohmann::json run_to_json(const SolverRun& run);
nlohmann::json dichotomy_to_json(const DichotomyResult& result, const Circuit& circuit);
nlohmann::json params_to_json(const GdaParams& params);
nlohmann::json infeasible_to_json(const PaperScaleInfeasible& report);

/// One row per recorded sample: run,algorithm,iteration,gap,ledger_total.
/// An empty run list gives the header alone.
void write_gap_curves_csv(std::ostream& out, const std::vector<SolverRun>& runs);

struct ReportFiles {
  std::filesystem::path summary;
  std::filesystem::path curves;
};

/// Writes <dir>/summary.json and <dir>/gap_curves.csv. Output depends only on
/// the arguments. `extra` is merged into the summary object. Throws
/// std::runtime_error when the directory or files cannot be written.
ReportFiles write_report(const std::filesystem::path& dir, const std::vector<SolverRun>& runs,
                         const LedgerSnapshot& totals, const std::string& mode_tag,
                         const nlohmann::json& extra = nlohmann::json::object());

/// Flag value if given, else $GDALAB_REPORT_DIR if set and non-empty, else `fallback`.
std::filesystem::path resolve_report_dir(const std::optional<std::string>& flag, const std::string& fallback);

}  // namespace gdalab
