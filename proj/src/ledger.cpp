#include "gdalab/ledger.hpp"

namespace gdalab {

std::atomic<std::uint64_t>& QueryLedger::counter(const std::string& name) {
  std::lock_guard lock(mutex_);
  auto& slot = counters_[name];
  if (!slot) slot = std::make_unique<std::atomic<std::uint64_t>>(0);
  return *slot;
}

void QueryLedger::add(const std::string& name, std::uint64_t amount) {
  counter(name).fetch_add(amount, std::memory_order_relaxed);
}

std::uint64_t QueryLedger::count(const std::string& name) const {
  std::lock_guard lock(mutex_);
  auto it = counters_.find(name);
  return it == counters_.end() ? 0 : it->second->load(std::memory_order_relaxed);
}

std::uint64_t QueryLedger::total() const {
  std::lock_guard lock(mutex_);
  std::uint64_t sum = 0;
  for (const auto& [name, value] : counters_) sum += value->load(std::memory_order_relaxed);
  return sum;
}

LedgerSnapshot QueryLedger::snapshot() const {
  std::lock_guard lock(mutex_);
  LedgerSnapshot out;
  for (const auto& [name, value] : counters_) out[name] = value->load(std::memory_order_relaxed);
  return out;
}

void QueryLedger::merge(const QueryLedger& other) {
  if (&other == this) {
    merge(snapshot());
    return;
  }
  merge(other.snapshot());
}

void QueryLedger::merge(const LedgerSnapshot& other) {
  for (const auto& [name, value] : other) add(name, value);
}

LedgerSnapshot ledger_delta(const LedgerSnapshot& before, const LedgerSnapshot& after) {
  LedgerSnapshot out;
  for (const auto& [name, value] : after) {
    auto it = before.find(name);
    out[name] = value - (it == before.end() ? 0 : it->second);
  }
  return out;
}

}  // namespace gdalab
