#include "gdalab/smoothstep.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "gdalab/config.hpp"

namespace gdalab {
namespace {

// eta and its first two derivatives with respect to its own argument.
struct EtaJet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

EtaJet eta_jet(double t) noexcept {
  if (t <= tolerances().eta_underflow) return {};
  const double inv = 1.0 / t;
  const double v = std::exp(-inv);
  const double inv2 = inv * inv;
  return {v, v * inv2, v * (inv2 * inv2 - 2.0 * inv2 * inv)};
}

}  // namespace

double eta(double x) noexcept { return eta_jet(x).v; }

StepSpec::StepSpec(double c1, double c2) : c1_(c1), c2_(c2) {
  if (!(c1 >= 0.0) || !(c2 > c1) || !std::isfinite(c2)) {
    throw std::invalid_argument("StepSpec requires c2 > c1 >= 0, got c1=" + std::to_string(c1) +
                                " c2=" + std::to_string(c2));
  }
}

double StepSpec::eval(double x) const noexcept {
  if (x <= c1_) return 0.0;
  if (x >= c2_) return 1.0;
  const double a = eta(x - c1_);
  const double b = eta(c2_ - x);
  return a / (a + b);
}

// With A = eta(x - c1) and B = eta(c2 - x), all primes below are d/dx, so
// B' carries the sign flip of the inner map.
double StepSpec::d1(double x) const noexcept {
  if (x <= c1_ || x >= c2_) return 0.0;
  const EtaJet a = eta_jet(x - c1_);
  const EtaJet b = eta_jet(c2_ - x);
  const double s = a.v + b.v;
  const double b1 = -b.d1;
  return (a.d1 * b.v - a.v * b1) / (s * s);
}

double StepSpec::d2(double x) const noexcept {
  if (x <= c1_ || x >= c2_) return 0.0;
  const EtaJet a = eta_jet(x - c1_);
  const EtaJet b = eta_jet(c2_ - x);
  const double s = a.v + b.v;
  const double b1 = -b.d1;
  const double b2 = b.d2;
  const double num = a.d1 * b.v - a.v * b1;
  return (a.d2 * b.v - a.v * b2) / (s * s) - 2.0 * (a.d1 + b1) * num / (s * s * s);
}

double StepSpec::d1_bound() const noexcept { return std::exp(2.0 / width()); }
double StepSpec::d2_bound() const noexcept { return 12.0 * std::exp(4.0 / width()); }

double step_eval(const StepSpec& spec, double x) noexcept { return spec.eval(x); }
double step_d1(const StepSpec& spec, double x) noexcept { return spec.d1(x); }
double step_d2(const StepSpec& spec, double x) noexcept { return spec.d2(x); }

NamedStep::NamedStep(StepKind kind, StepSpec base, double inner_scale, double inner_shift,
                     double outer_scale, double outer_shift)
    : kind_(kind),
      base_(base),
      inner_scale_(inner_scale),
      inner_shift_(inner_shift),
      outer_scale_(outer_scale),
      outer_shift_(outer_shift) {}

double NamedStep::value(double x) const noexcept {
  return outer_shift_ + outer_scale_ * base_.eval(inner_scale_ * x + inner_shift_);
}

double NamedStep::d1(double x) const noexcept {
  return outer_scale_ * inner_scale_ * base_.d1(inner_scale_ * x + inner_shift_);
}

double NamedStep::d2(double x) const noexcept {
  return outer_scale_ * inner_scale_ * inner_scale_ * base_.d2(inner_scale_ * x + inner_shift_);
}

NamedStep named_step(StepKind kind, int m) {
  switch (kind) {
    case StepKind::G:
      return NamedStep(kind, StepSpec(1.0 / 3.0, 2.0 / 3.0), 1.0, 0.0, -1.0, 1.0);
    case StepKind::Ell:
      return NamedStep(kind, StepSpec(5.0 / 12.0, 7.0 / 12.0), 1.0, 0.0, 1.0, 0.0);
    case StepKind::Alpha:
      return NamedStep(kind, StepSpec(1.0 / 6.0, 1.0 / 3.0), 1.0, 0.0, -1.0, 1.0);
    case StepKind::Energy:
      if (m < 1) throw std::invalid_argument("energy step requires m >= 1");
      return NamedStep(kind, StepSpec(3.0 * m, 3.0 * m + 1.0), 1.0, 0.0, 1.0, 0.0);
  }
  throw std::invalid_argument("unknown step kind");
}

NamedStep named_step(std::string_view kind, int m) {
  if (kind == "g") return named_step(StepKind::G, m);
  if (kind == "ell") return named_step(StepKind::Ell, m);
  if (kind == "alpha") return named_step(StepKind::Alpha, m);
  if (kind == "energy") return named_step(StepKind::Energy, m);
  throw std::invalid_argument("unknown step kind '" + std::string(kind) + "'");
}

std::string_view to_string(StepKind kind) noexcept {
  switch (kind) {
    case StepKind::G: return "g";
    case StepKind::Ell: return "ell";
    case StepKind::Alpha: return "alpha";
    case StepKind::Energy: return "energy";
  }
  return "?";
}

const NamedStep& g_step() {
  static const NamedStep s = named_step(StepKind::G);
  return s;
}

const NamedStep& ell_step() {
  static const NamedStep s = named_step(StepKind::Ell);
  return s;
}

const NamedStep& alpha_step() {
  static const NamedStep s = named_step(StepKind::Alpha);
  return s;
}

}  // namespace gdalab
