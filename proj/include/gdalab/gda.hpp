#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "gdalab/brouwer.hpp"
#include "gdalab/circuit.hpp"
#include "gdalab/minmax.hpp"
#include "gdalab/smoothstep.hpp"

namespace gdalab {

enum class ParamMode { Paper, Scaled };

std::string_view to_string(ParamMode mode) noexcept;

struct GdaParams {
  int m = 1;            // inner dimension, equal to |V|
  double rho = 1.0 / 12.0;
  double delta = 0.0;
  std::uint64_t n = 0;  // replication count
  double eps = 0.0;     // stationarity tolerance
  ParamMode mode = ParamMode::Scaled;
};

/// Paper-regime magnitudes, kept in floating point (n as a real) so they can
/// be reported even when n is far beyond any integer type.
struct PaperMagnitudes {
  double delta = 0.0;
  double n_real = 0.0;   // ceil of the defining expression
  double log2_n = 0.0;
  double eps = 0.0;
  double log10_eps = 0.0;
};

struct PaperScaleInfeasible {
  int m = 0;
  double rho = 0.0;
  PaperMagnitudes magnitudes;
  std::string reason;
};

using ParamDerivation = std::variant<GdaParams, PaperScaleInfeasible>;

/// delta = rho^4 / (400 m^2 e^26),
/// n     = ceil(2^13 e^13 m^4 / delta^3),
/// eps   = min(delta / n, delta^2 / (m^4 2^4 e^14)).
/// Throws std::invalid_argument unless m >= 1 and rho in (0,1).
PaperMagnitudes paper_magnitudes(int m, double rho);

/// Paper mode. Returns PaperScaleInfeasible when n does not fit in 64 bits.
ParamDerivation derive_parameters(int m, double rho);

/// Scaled mode: user-chosen delta, n, eps, validated (positive, n even).
GdaParams scaled_parameters(int m, double rho, double delta, std::uint64_t n, double eps);

struct BrouwerWitness {
  std::size_t node;
  std::size_t block;  // 0-based replica index
  std::vector<double> point;
  double residual;
};

/// Exactly one of `witness` / `assignment` is set.
struct DichotomyResult {
  std::optional<BrouwerWitness> witness;
  std::optional<Assignment> assignment;
  std::vector<GateViolation> violations;
  double gap = 0.0;
  std::vector<std::string> notes;
};

/// The min-max objective built from a circuit with m = |V| nodes. Each player
/// holds blocks x^v_i in [0,1]^m for v in V and i in [n]; the flat coordinate
/// of (v, i, j) is (v n + i) m + j with 0-based i, j.
///
///   f(x, y) = sum_w s_w(x, y) H_w(x, y) + sum_w sum_i M_i ||x^w_i - y^w_i||^2
///   H_w     = sum_i < F(xi) - xi, y^w_i - x^w_i >,  xi = (x^w_i + y^w_i) / 2
///   E_v     = phi_{3m,3m+1}(||x^v - y^v||^2)
///   M_i     = delta (i - n/2) for 1-based i
/// with s_w the gate-typed signal of the input energies.
class GdaInstance : public MinMaxOracle {
 public:
  /// Throws std::invalid_argument if params.m != |V| or n == 0, and
  /// InvalidInstance for a structurally invalid circuit.
  GdaInstance(std::shared_ptr<const Circuit> circuit, GdaParams params, LedgerPtr ledger = nullptr);

  std::size_t dim() const override { return dim_; }
  const LedgerPtr& ledger() const override { return ledger_; }
  double tolerance() const override { return params_.eps; }
  std::string mode_tag() const override { return std::string(to_string(params_.mode)); }

  const GdaParams& params() const noexcept { return params_; }
  const Circuit& circuit() const noexcept { return map_.circuit(); }
  const BrouwerMap& brouwer() const noexcept { return map_; }
  std::size_t nodes() const noexcept { return map_.dim(); }
  std::size_t replicas() const noexcept { return static_cast<std::size_t>(params_.n); }

  std::size_t index(std::size_t v, std::size_t i, std::size_t j) const noexcept {
    return (v * replicas() + i) * nodes() + j;
  }
  /// M_i for the 0-based replica index i.
  double weight(std::size_t i) const noexcept;

  double squared_distance(std::size_t v, std::span<const double> x, std::span<const double> y) const;
  double energy(std::size_t v, std::span<const double> x, std::span<const double> y) const;
  double signal(std::size_t w, std::span<const double> x, std::span<const double> y) const;
  double gadget(std::size_t w, std::span<const double> x, std::span<const double> y) const;

  double eval_f(std::span<const double> x, std::span<const double> y) const;
  MinMaxGradient eval_grad_f(std::span<const double> x, std::span<const double> y) const;

  Assignment decode(std::span<const double> x, std::span<const double> y) const;
  DichotomyResult dichotomy(std::span<const double> x, std::span<const double> y) const;

 protected:
  double do_value(std::span<const double> x, std::span<const double> y) const override;
  MinMaxGradient do_gradient(std::span<const double> x, std::span<const double> y) const override;

 private:
  void check_domain(std::span<const double> x, std::span<const double> y) const;
  std::vector<double> all_energies(std::span<const double> x, std::span<const double> y,
                                   std::vector<double>* sq) const;
  double signal_from(std::size_t w, const std::vector<double>& energies) const;

  GdaParams params_;
  BrouwerMap map_;
  NamedStep energy_step_;
  std::size_t dim_;
  LedgerPtr ledger_;
};

double energy(const GdaInstance& inst, std::size_t v, std::span<const double> x, std::span<const double> y);
double signal(const GdaInstance& inst, std::size_t w, std::span<const double> x, std::span<const double> y);
double eval_f(const GdaInstance& inst, std::span<const double> x, std::span<const double> y);
MinMaxGradient eval_grad_f(const GdaInstance& inst, std::span<const double> x, std::span<const double> y);
double stationarity_gap(const GdaInstance& inst, std::span<const double> x, std::span<const double> y);

/// b(v) = E_v when E_v is exactly 0 or 1, bottom otherwise.
Assignment decode_gda(const GdaInstance& inst, std::span<const double> x, std::span<const double> y);

/// Scans (v, i) in ascending order for a block midpoint with
/// ||F(xi) - xi||_inf <= rho and returns the first; otherwise returns the
/// decoded assignment with its gate-violation report. A point that is not
/// eps-stationary is annotated in `notes`, and extraction still runs.
DichotomyResult dichotomy_extract(const GdaInstance& inst, std::span<const double> x, std::span<const double> y);

/// f / scale and grad f / scale, with tolerance eps / scale.
class NormalizedGda : public MinMaxOracle {
 public:
  NormalizedGda(const GdaInstance& inner, double scale);

  std::size_t dim() const override { return inner_.dim(); }
  const LedgerPtr& ledger() const override { return inner_.ledger(); }
  double tolerance() const override { return inner_.tolerance() / scale_; }
  std::string mode_tag() const override { return inner_.mode_tag(); }
  double scale() const noexcept { return scale_; }

 protected:
  double do_value(std::span<const double> x, std::span<const double> y) const override;
  MinMaxGradient do_gradient(std::span<const double> x, std::span<const double> y) const override;

 private:
  const GdaInstance& inner_;
  double scale_;
};

/// max(1, |f|, ||grad f||_inf) over seeded uniform samples.
double sampled_scale(const MinMaxOracle& problem, int samples, std::uint64_t seed);

}  // namespace gdalab
