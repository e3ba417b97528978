#pragma once

#include <filesystem>
#include <memory>
#include <string>

#include "json.hpp"

#include "gdalab/circuit.hpp"
#include "gdalab/errors.hpp"
#include "gdalab/gda.hpp"
#include "gdalab/harness.hpp"
#include "gdalab/minmax.hpp"

namespace gdalab {

/// A problem built from a descriptor:
///   {"circuit": "path.json" | {...inline...}, "mode": "scaled" | "paper",
///    "delta": .., "n": .., "eps": .., "rho": ..}
/// or a toy:
///   {"toy": "bilinear" | "zero", "dim": k, "eps": ..}
/// Circuit paths are resolved against `base_dir`.
struct LoadedProblem {
  nlohmann::json descriptor;  // with any circuit path inlined
  LedgerPtr ledger;
  std::shared_ptr<const Circuit> circuit;  // null for toys
  std::unique_ptr<GdaInstance> gda;        // null for toys
  std::unique_ptr<MinMaxOracle> toy;

  const MinMaxOracle& problem() const;
};

/// Throws ConfigError for malformed descriptors, missing files, bad parameters,
/// structurally invalid circuits, and paper-mode requests (which never fit).
LoadedProblem load_problem(const nlohmann::json& descriptor, const std::filesystem::path& base_dir);
LoadedProblem load_problem(const std::filesystem::path& path);

/// Paper-mode descriptors are answered with this instead of an instance.
struct PaperModeRequest : ConfigError {
  PaperScaleInfeasible report;
  explicit PaperModeRequest(PaperScaleInfeasible r) : ConfigError(r.reason), report(std::move(r)) {}
};

}  // namespace gdalab
