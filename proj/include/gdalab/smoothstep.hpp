#pragma once

#include <string_view>

namespace gdalab {

/// The C-infinity step phi_{c1,c2}: exactly 0 for x <= c1, exactly 1 for
/// x >= c2, strictly between on (c1, c2). Built on eta(x) = exp(-1/x) for x > 0.
class StepSpec {
 public:
  /// Throws std::invalid_argument unless c2 > c1 >= 0.
  StepSpec(double c1, double c2);

  double c1() const noexcept { return c1_; }
  double c2() const noexcept { return c2_; }
  double width() const noexcept { return c2_ - c1_; }

  double eval(double x) const noexcept;
  double d1(double x) const noexcept;
  double d2(double x) const noexcept;

  /// Sup-norm bounds on the first two derivatives as functions of the width.
  double d1_bound() const noexcept;
  double d2_bound() const noexcept;

 private:
  double c1_;
  double c2_;
};

double step_eval(const StepSpec& spec, double x) noexcept;
double step_d1(const StepSpec& spec, double x) noexcept;
double step_d2(const StepSpec& spec, double x) noexcept;

/// eta(x) = exp(-1/x) for x > 0, else 0.
double eta(double x) noexcept;

enum class StepKind { G, Ell, Alpha, Energy };

/// x -> outer_shift + outer_scale * phi(inner_scale * x + inner_shift),
/// with derivatives by the chain rule.
class NamedStep {
 public:
  NamedStep(StepKind kind, StepSpec base, double inner_scale, double inner_shift,
            double outer_scale, double outer_shift);

  StepKind kind() const noexcept { return kind_; }
  const StepSpec& base() const noexcept { return base_; }

  double operator()(double x) const noexcept { return value(x); }
  double value(double x) const noexcept;
  double d1(double x) const noexcept;
  double d2(double x) const noexcept;

 private:
  StepKind kind_;
  StepSpec base_;
  double inner_scale_;
  double inner_shift_;
  double outer_scale_;
  double outer_shift_;
};

/// g(z) = 1 - phi_{1/3,2/3}(z)         (NOR gadget)
/// ell(z) = phi_{5/12,7/12}(z)          (PURIFY gadget)
/// alpha(t) = 1 - phi_{1/6,1/3}(t)      (vertex bump factor)
/// energy(m) = phi_{3m,3m+1}            (thresholded block energy)
/// energy requires m >= 1; throws std::invalid_argument otherwise.
NamedStep named_step(StepKind kind, int m = 0);

/// String form used in instance files: "g", "ell", "alpha", "energy".
/// Unknown kinds throw std::invalid_argument.
NamedStep named_step(std::string_view kind, int m = 0);

std::string_view to_string(StepKind kind) noexcept;

// Shared instances for the fixed-shape gadgets.
const NamedStep& g_step();
const NamedStep& ell_step();
const NamedStep& alpha_step();

}  // namespace gdalab
