#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gdalab/circuit.hpp"
#include "gdalab/ledger.hpp"

namespace gdalab {

/// Row-sparse Jacobian; rows hold only the structurally nonzero columns.
struct SparseJacobian {
  struct Entry {
    std::size_t col;
    double value;
  };
  std::size_t dim = 0;
  std::vector<std::vector<Entry>> rows;

  double at(std::size_t row, std::size_t col) const;
  /// Row-major dim x dim copy.
  std::vector<double> dense() const;
};

struct BrouwerJet {
  std::vector<double> value;
  SparseJacobian jacobian;
};

/// The smooth self-map of [0,1]^|V| built from a circuit, one coordinate per
/// node, each determined by the gate that outputs it:
///   NOR (u,v,w):    F_w = g(z_u + z_v)
///   PURIFY (u,v,w): F_v = ell(z_u + 1/4),  F_w = ell(z_u - 1/4)
///   ORACLE (u..,v): F_v = H((z_u1, ..., z_uN), L)
/// Only ORACLE coordinates query L, at most once each per call.
class BrouwerMap {
 public:
  /// Throws InvalidInstance if the circuit is structurally invalid. F/JF call
  /// counts go to `ledger`, defaulting to the oracle's ledger (or a fresh one).
  explicit BrouwerMap(std::shared_ptr<const Circuit> circuit, LedgerPtr ledger = nullptr);

  std::size_t dim() const noexcept { return rules_.size(); }
  const Circuit& circuit() const noexcept { return *circuit_; }
  const std::shared_ptr<const Circuit>& circuit_ptr() const noexcept { return circuit_; }
  const CircuitTopology& topology() const noexcept { return topo_; }
  const LedgerPtr& ledger() const noexcept { return ledger_; }
  /// Number of coordinates that query L.
  std::size_t oracle_coordinates() const noexcept;

  /// Throws std::invalid_argument when z is not in [0,1]^d.
  std::vector<double> eval_F(std::span<const double> z) const;
  SparseJacobian eval_JF(std::span<const double> z) const;
  /// F and J_F together; counts as one F and one JF call, still <= |V| L queries.
  BrouwerJet eval_jet(std::span<const double> z) const;

  /// G(z) = F(z) - z.
  std::vector<double> displacement(std::span<const double> z) const;

 private:
  struct Rule {
    GateType type;
    std::vector<std::size_t> inputs;
    double shift = 0.0;  // PURIFY only
  };

  double coordinate(const Rule& rule, std::span<const double> z, std::vector<double>& scratch) const;
  void coordinate_jet(const Rule& rule, std::span<const double> z, std::vector<double>& scratch,
                      double& value, std::vector<SparseJacobian::Entry>& row) const;
  void check_domain(std::span<const double> z) const;

  std::shared_ptr<const Circuit> circuit_;
  CircuitTopology topo_;
  std::vector<Rule> rules_;
  LedgerPtr ledger_;
};

/// b(v) = 0 if z_v <= 1/6, 1 if z_v >= 5/6, bottom otherwise.
Assignment decode_brouwer(std::span<const double> z);

/// ||F(z) - z||_inf.
double brouwer_residual(const BrouwerMap& map, std::span<const double> z);

bool verify_brouwer_solution(const BrouwerMap& map, std::span<const double> z, double eps = 1.0 / 12.0);

struct FixedPointOptions {
  double eps = 1.0 / 12.0;
  double gamma = 0.25;
  int damped_iterations = 2000;
  /// Newton fallback on G(z) = 0 with Levenberg-Marquardt damping.
  int newton_restarts = 64;
  int newton_iterations = 200;
  /// Grid restart for d <= 3.
  int grid_resolution = 61;
  std::uint64_t seed = 1;
  /// Start point; defaults to the cube centre.
  std::vector<double> start;
};

struct ResidualTraceRow {
  int iteration;
  std::string phase;
  double residual;
  std::uint64_t ledger_total;
};

struct FixedPointResult {
  bool found = false;
  std::vector<double> z;
  double residual = 0.0;
  std::string method;
  std::vector<ResidualTraceRow> trace;
};

/// Damped iteration z <- (1 - gamma) z + gamma F(z); if that stalls, seeded
/// Newton restarts, then (for d <= 3) a grid scan feeding Newton.
FixedPointResult find_fixed_point(const BrouwerMap& map, const FixedPointOptions& options = {});

/// CSV with header "iteration,phase,residual,ledger_total".
void write_residual_trace_csv(std::ostream& out, const std::vector<ResidualTraceRow>& trace);

}  // namespace gdalab
