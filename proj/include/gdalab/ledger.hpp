#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace gdalab {

using LedgerSnapshot = std::map<std::string, std::uint64_t>;

/// Named query counters. Counters only grow; increments are atomic, so one
/// ledger may be shared by concurrent evaluations.
class QueryLedger {
 public:
  QueryLedger() = default;
  QueryLedger(const QueryLedger&) = delete;
  QueryLedger& operator=(const QueryLedger&) = delete;

  /// Returns a stable reference to the counter, creating it at zero.
  std::atomic<std::uint64_t>& counter(const std::string& name);

  void add(const std::string& name, std::uint64_t amount = 1);
  std::uint64_t count(const std::string& name) const;
  std::uint64_t total() const;
  LedgerSnapshot snapshot() const;

  /// Adds every counter of `other` into this ledger.
  void merge(const QueryLedger& other);
  void merge(const LedgerSnapshot& other);

 private:
  mutable std::mutex mutex_;
  std::map<std::string, std::unique_ptr<std::atomic<std::uint64_t>>> counters_;
};

using LedgerPtr = std::shared_ptr<QueryLedger>;

inline LedgerPtr make_ledger() { return std::make_shared<QueryLedger>(); }

/// Coordinate-wise difference after - before (missing keys count as zero).
LedgerSnapshot ledger_delta(const LedgerSnapshot& before, const LedgerSnapshot& after);

// Counter names used across the library.
namespace counters {
inline constexpr const char* kCircuitOracle = "L";
inline constexpr const char* kLabeling = "lambda";
inline constexpr const char* kBrouwerF = "F";
inline constexpr const char* kBrouwerJF = "JF";
inline constexpr const char* kObjective = "f";
inline constexpr const char* kGradient = "grad_f";
inline constexpr const char* kTestMap = "map";
}  // namespace counters

}  // namespace gdalab
