#include "gdalab/boolinterp.hpp"

#include <stdexcept>

#include "gdalab/smoothstep.hpp"

namespace gdalab {

BoolOracle::BoolOracle(int arity, Fn fn, LedgerPtr ledger, std::string counter_name)
    : arity_(arity),
      fn_(std::make_shared<const Fn>(std::move(fn))),
      ledger_(std::move(ledger)),
      counter_name_(std::move(counter_name)) {
  if (arity_ < 0) throw std::invalid_argument("oracle arity must be nonnegative");
  if (!ledger_) throw std::invalid_argument("oracle requires a ledger");
  if (!*fn_) throw std::invalid_argument("oracle requires a function");
  counter_ = &ledger_->counter(counter_name_);
}

bool BoolOracle::query(std::span<const std::uint8_t> bits) const {
  if (bits.size() != static_cast<std::size_t>(arity_)) {
    throw std::invalid_argument("oracle arity mismatch: expected " + std::to_string(arity_) +
                                ", got " + std::to_string(bits.size()));
  }
  for (auto b : bits) {
    if (b > 1) throw std::invalid_argument("oracle input is not a bit");
  }
  counter_->fetch_add(1, std::memory_order_relaxed);
  return (*fn_)(bits);
}

std::uint64_t truth_table_index(std::span<const std::uint8_t> bits) {
  std::uint64_t idx = 0;
  for (std::size_t k = 0; k < bits.size(); ++k) {
    if (bits[k]) idx |= std::uint64_t{1} << k;
  }
  return idx;
}

BoolOracle truth_table_oracle(int arity, std::vector<std::uint8_t> table, LedgerPtr ledger,
                              std::string counter_name) {
  if (arity < 0 || arity > 62) throw std::invalid_argument("truth table arity out of range");
  if (table.size() != (std::size_t{1} << arity)) {
    throw std::invalid_argument("truth table must have 2^arity entries");
  }
  for (auto v : table) {
    if (v > 1) throw std::invalid_argument("truth table entries must be 0 or 1");
  }
  auto shared = std::make_shared<const std::vector<std::uint8_t>>(std::move(table));
  return BoolOracle(
      arity,
      [shared](std::span<const std::uint8_t> bits) { return (*shared)[truth_table_index(bits)] != 0; },
      std::move(ledger), std::move(counter_name));
}

namespace {

constexpr double kThird = 1.0 / 3.0;
constexpr double kTwoThirds = 2.0 / 3.0;

void check_point(std::span<const double> x) {
  for (double v : x) {
    if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("interpolation point outside [0,1]^N");
  }
}

void check_arity(std::span<const double> x, const BoolOracle& h_hat) {
  if (x.size() != static_cast<std::size_t>(h_hat.arity())) {
    throw std::invalid_argument("interpolation dimension " + std::to_string(x.size()) +
                                " does not match oracle arity " + std::to_string(h_hat.arity()));
  }
}

// Per-coordinate alpha factor and its x-derivatives for vertex y.
struct Factor {
  double v;
  double d1;
  double d2;
};

Factor factor(double xi, std::uint8_t yi) {
  const NamedStep& alpha = alpha_step();
  const double t = yi ? 1.0 - xi : xi;
  const double sign = yi ? -1.0 : 1.0;
  return {alpha.value(t), sign * alpha.d1(t), alpha.d2(t)};
}

std::vector<Factor> factors(std::span<const double> x, const Bits& y) {
  std::vector<Factor> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = factor(x[i], y[i]);
  return out;
}

// excl[j] = prod_{i != j} f_i.v, computed without division.
std::vector<double> products_excluding(const std::vector<Factor>& f) {
  const std::size_t n = f.size();
  std::vector<double> prefix(n + 1, 1.0), suffix(n + 1, 1.0), out(n);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * f[i].v;
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * f[i].v;
  for (std::size_t j = 0; j < n; ++j) out[j] = prefix[j] * suffix[j + 1];
  return out;
}

double signed_label(const BoolOracle& h_hat, const Bits& y) {
  return h_hat.query(y) ? 0.5 : -0.5;
}

}  // namespace

std::optional<Bits> active_vertex(std::span<const double> x) {
  check_point(x);
  Bits y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= kThird) {
      y[i] = 0;
    } else if (x[i] >= kTwoThirds) {
      y[i] = 1;
    } else {
      return std::nullopt;
    }
  }
  return y;
}

double vertex_weight(std::span<const double> x, std::span<const std::uint8_t> y) {
  if (x.size() != y.size()) throw std::invalid_argument("vertex dimension mismatch");
  double w = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) w *= factor(x[i], y[i]).v;
  return w;
}

double interp_eval(std::span<const double> x, const BoolOracle& h_hat) {
  check_arity(x, h_hat);
  auto y = active_vertex(x);
  if (!y) return 0.5;
  const double w = vertex_weight(x, *y);
  if (w == 0.0) return 0.5;
  return 0.5 + w * signed_label(h_hat, *y);
}

InterpJet interp_jet(std::span<const double> x, const BoolOracle& h_hat) {
  check_arity(x, h_hat);
  InterpJet jet;
  jet.grad.assign(x.size(), 0.0);
  auto y = active_vertex(x);
  if (!y) return jet;
  const auto f = factors(x, *y);
  const auto excl = products_excluding(f);
  double w = 1.0;
  for (const auto& fi : f) w *= fi.v;
  bool any_grad = false;
  for (std::size_t j = 0; j < f.size(); ++j) {
    jet.grad[j] = f[j].d1 * excl[j];
    any_grad = any_grad || jet.grad[j] != 0.0;
  }
  if (w == 0.0 && !any_grad) return jet;
  const double label = signed_label(h_hat, *y);
  jet.value = 0.5 + w * label;
  for (double& g : jet.grad) g *= label;
  return jet;
}

std::vector<double> interp_grad(std::span<const double> x, const BoolOracle& h_hat) {
  return interp_jet(x, h_hat).grad;
}

double interp_hess_entry(std::span<const double> x, const BoolOracle& h_hat, std::size_t j,
                         std::size_t k) {
  check_arity(x, h_hat);
  if (j >= x.size() || k >= x.size()) throw std::out_of_range("hessian index out of range");
  auto y = active_vertex(x);
  if (!y) return 0.0;
  const auto f = factors(x, *y);
  double entry;
  if (j == k) {
    entry = f[j].d2;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i != j) entry *= f[i].v;
    }
  } else {
    entry = f[j].d1 * f[k].d1;
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (i != j && i != k) entry *= f[i].v;
    }
  }
  if (entry == 0.0) return 0.0;
  return entry * signed_label(h_hat, *y);
}

}  // namespace gdalab
