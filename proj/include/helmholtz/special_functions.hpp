#pragma once

#include <optional>
#include <vector>

#include "helmholtz/detail/radial_ode.hpp"
#include "helmholtz/scaled_value.hpp"

namespace helmholtz {

/// Order of a Bessel function of the first kind; any real m >= 0.
class BesselOrder {
 public:
  explicit BesselOrder(double m);
  double value() const noexcept { return m_; }

 private:
  double m_;
};

struct BesselValue {
  ScaledValue J;
  ScaledValue dJ;
};

/// Candidate interval (lo, hi] for the first positive zero j_l, and its
/// location once refined.
struct ZeroBracket {
  double lo = 0.0;
  double hi = 0.0;
  std::optional<double> refined;
};

/// Arguments up to this point are summed from the power series; beyond it the
/// Bessel equation is integrated outward from the series value.
double bessel_series_handoff(double m);

/// J_m(x) normalized so that J_m(x) ~ (x/2)^m / Gamma(m+1) at the origin.
ScaledValue bessel_j(double m, double x);
BesselValue bessel_j_with_derivative(double m, double x);

/// Reusable evaluator for J_m on [0, x_end]: integrates once, then answers
/// point queries with one Runge-Kutta step from the nearest stored node.
/// Immutable after construction; concurrent queries are safe.
class BesselTrajectory {
 public:
  BesselTrajectory(double m, double x_end);

  double order() const noexcept { return m_; }
  double x_end() const noexcept { return x_end_; }
  BesselValue at(double x) const;
  /// Sign changes of J (component 0) or J' (component 1) inside (lo, hi],
  /// refined by bisection to `tol`.
  std::vector<double> roots(int component, double lo, double hi, double tol = 1e-12) const;

 private:
  double m_;
  double x_end_;
  double handoff_;
  detail::RadialSystem system_;
  std::vector<detail::Node> nodes_;
};

ZeroBracket first_zero_bracket(double l);
/// First positive zero j_l. Throws IntegrationError when no sign change is found.
double first_zero(double l);
/// All positive zeros of J_m in (0, x_max].
std::vector<double> bessel_zeros(double m, double x_max);
/// Location of the first maximum of J_m (m > 0).
double bessel_first_extremum(double m);
/// max_{0 <= x <= rho} |J_m(x)|.
ScaledValue bessel_max_function(double m, double rho);

}  // namespace helmholtz
