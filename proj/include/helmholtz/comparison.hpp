#pragma once

#include <functional>
#include <string>
#include <vector>

#include "helmholtz/bound_report.hpp"
#include "helmholtz/radial_solver.hpp"
#include "helmholtz/special_functions.hpp"

namespace helmholtz {

struct Interval {
  double a;
  double b;
};

using ScalarFunction = std::function<double(double)>;

// Closed-form solutions of the comparison equations. All are in Sturm-Liouville
// form (p y')' + q y = 0 with p = sin_kappa(rho) (p = x for the Euler case).

/// c1 x^{m beta} + c2 x^{-m beta}; solves (x y')' - (beta m)^2 / x y = 0.
double euler_solution(double m, double beta, double c1, double c2, double x);

/// c1 t^{m beta} + c2 t^{-m beta} with t = tan_kappa(rho / 2);
/// solves (sin y')' - (beta m)^2 / sin y = 0.
double curved_power_solution(double kappa, double m, double beta, double c1, double c2, double rho);

/// C1 cos(gamma log t - d) + C2 sin(gamma log t - d) with gamma = m sqrt(xi^2 - 1)
/// and t = tan_kappa(rho / 2); solves (sin y')' + gamma^2 / sin y = 0.
double oscillatory_solution(double kappa, double m, double xi, double C1, double C2, double d, double rho);

enum class ComparatorKind { euler_power, curved_power, curved_oscillatory, flat_oscillatory };

const char* to_string(ComparatorKind kind);

/// A comparison solution together with its coefficient q.
///
/// Power solutions are stored as A (t/t0)^e + B (t/t0)^-e around a reference
/// point t0 so that matching at large m does not overflow. The flat
/// oscillatory kind is rho^{-1/2} (C1 cos(a rho) + C2 sin(a rho)), which solves
/// (rho y')' + (a^2 rho - 1 / (4 rho)) y = 0.
class ComparatorSpec {
 public:
  static ComparatorSpec euler(double m, double beta, double c1, double c2);
  static ComparatorSpec curved_power(double kappa, double m, double beta, double c1, double c2);
  static ComparatorSpec oscillatory(double kappa, double m, double xi, double C1, double C2, double d);
  static ComparatorSpec flat_oscillatory(double a, double C1, double C2);

  /// Solutions with y(rho1) = y1 and y'(rho1) = dy1, in ratio form.
  /// beta = sqrt(1 - delta^2), 0 < delta < 1.
  static ComparatorSpec matched_euler(double m, double delta, double x1, double y1, double dy1);
  static ComparatorSpec matched_power(double kappa, double m, double delta, double rho1, double y1, double dy1);
  /// xi > 1; phase d = gamma log t(rho1), so the solution is C1 cos + C2 sin around rho1.
  static ComparatorSpec matched_oscillatory(double kappa, double m, double xi, double rho1, double y1, double dy1);

  ComparatorKind kind() const noexcept { return kind_; }
  double kappa() const noexcept { return kappa_; }
  double order() const noexcept { return m_; }
  /// Exponent m beta (power kinds), frequency gamma (curved oscillatory) or a (flat).
  double rate() const noexcept { return rate_; }

  double p(double rho) const;
  double q(double rho) const;
  double value(double rho) const;
  double derivative(double rho) const;

 private:
  ComparatorSpec() = default;
  double log_t(double rho) const;
  double dlog_t(double rho) const;

  ComparatorKind kind_ = ComparatorKind::euler_power;
  double kappa_ = 0.0;
  double m_ = 0.0;
  double rate_ = 0.0;
  double c1_ = 0.0;
  double c2_ = 0.0;
  double log_t0_ = 0.0;  ///< reference point; for the oscillatory kind, the phase d / gamma
};

/// One side of a Sturm comparison: y solves (p y')' + q y = 0.
struct SturmSide {
  std::string name;
  ScalarFunction q;
  ScalarFunction y;
  ScalarFunction dy;
};

SturmSide comparator_side(const ComparatorSpec& spec, std::string name);

/// L / |L(rho_ref)| for a profile, q = (sin^2 - m^2) / sin. The profile must outlive the side.
SturmSide profile_side(const RadialProfile& profile, double rho_ref, std::string name);
/// J_m / |J_m(x_ref)|, q = (x^2 - m^2) / x. The trajectory must outlive the side.
SturmSide bessel_side(const BesselTrajectory& bessel, double x_ref, std::string name);

/// Sturm comparison on [a, b] with a common p > 0: if q_low >= q_high,
/// both sides share nonnegative initial data at a and y_low > 0 inside, then
/// y_low <= y_high on [a, b].
///
/// Hypotheses are checked on a uniform grid of 10^4 points with relative slack
/// 1e-10. Violations throw PreconditionError named p_positive, q_ordering,
/// initial_data, initial_sign or low_positive. The report compares y_low
/// (lhs) to y_high (rhs) at the point of least margin.
BoundReport sturm_dominates(const ScalarFunction& p, const SturmSide& low, const SturmSide& high, Interval interval);

/// Between every two consecutive coarse zeros inside the interval lies a fine
/// zero. Unsorted input throws PreconditionError("sorted_zeros").
/// lhs counts empty gaps, rhs is zero; margin is the smallest relative
/// clearance of a fine zero from its gap's ends (-1 when a gap is empty).
BoundReport picone_interlaces(const std::vector<double>& coarse, const std::vector<double>& fine, Interval interval);

/// Evidence that p q is increasing on an interval: (p q)' sampled on a grid.
struct PqWitness {
  Interval interval;
  ScalarFunction derivative;
};

/// (p q)' > 0 for the radial equation: 2 cos_kappa sin_kappa. Increasing on (0, R_kappa).
PqWitness radial_pq_witness(double kappa, Interval interval);

/// The absolute extrema values inside the witness interval decrease strictly
/// (relative slack 1e-10). Throws PreconditionError("pq_increasing") when the
/// witness derivative is not positive on the interval.
BoundReport sonin_polya_holds(const std::vector<Extremum>& envelope, const PqWitness& witness);

}  // namespace helmholtz
