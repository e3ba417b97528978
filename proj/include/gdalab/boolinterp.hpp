#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gdalab/ledger.hpp"

namespace gdalab {

using Bits = std::vector<std::uint8_t>;

/// Black-box Boolean function {0,1}^N -> {0,1}. Every query bumps one ledger
/// counter by exactly one. Copies share the function and the ledger.
class BoolOracle {
 public:
  using Fn = std::function<bool(std::span<const std::uint8_t>)>;

  BoolOracle(int arity, Fn fn, LedgerPtr ledger,
             std::string counter_name = counters::kCircuitOracle);

  int arity() const noexcept { return arity_; }
  const LedgerPtr& ledger() const noexcept { return ledger_; }
  const std::string& counter_name() const noexcept { return counter_name_; }
  std::uint64_t queries() const noexcept { return counter_->load(std::memory_order_relaxed); }

  /// Throws std::invalid_argument on arity mismatch or non-bit entries.
  bool query(std::span<const std::uint8_t> bits) const;

 private:
  int arity_;
  std::shared_ptr<const Fn> fn_;
  LedgerPtr ledger_;
  std::string counter_name_;
  std::atomic<std::uint64_t>* counter_;
};

/// Truth table indexed by sum_k bits[k] * 2^k (first input is the low bit).
BoolOracle truth_table_oracle(int arity, std::vector<std::uint8_t> table, LedgerPtr ledger,
                              std::string counter_name = counters::kCircuitOracle);

/// Index of `bits` in the truth-table layout above.
std::uint64_t truth_table_index(std::span<const std::uint8_t> bits);

/// The unique hypercube vertex within l-infinity distance 1/3 of x, if any.
/// Coordinates <= 1/3 round to 0, >= 2/3 round to 1; anything strictly between
/// means no vertex is active. Throws std::invalid_argument if x leaves [0,1]^N.
std::optional<Bits> active_vertex(std::span<const double> x);

/// Bump weight Phi_y(x) = prod_i alpha(y_i + (1 - 2 y_i) x_i).
double vertex_weight(std::span<const double> x, std::span<const std::uint8_t> y);

/// h(x) = 1/2 + sum_y Phi_y(x) (h_hat(y) - 1/2), evaluated through the single
/// active vertex. At most one oracle query, and none when the active weight is 0.
double interp_eval(std::span<const double> x, const BoolOracle& h_hat);

std::vector<double> interp_grad(std::span<const double> x, const BoolOracle& h_hat);

/// Second partial d^2 h / dx_j dx_k. Throws std::out_of_range on bad indices.
double interp_hess_entry(std::span<const double> x, const BoolOracle& h_hat, std::size_t j,
                         std::size_t k);

struct InterpJet {
  double value = 0.5;
  std::vector<double> grad;
};

/// Value and gradient together, still with at most one oracle query.
InterpJet interp_jet(std::span<const double> x, const BoolOracle& h_hat);

}  // namespace gdalab
