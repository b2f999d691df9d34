#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "helmholtz/bound_report.hpp"
#include "helmholtz/curvature.hpp"
#include "helmholtz/execution.hpp"
#include "helmholtz/radial_solver.hpp"
#include "helmholtz/scaled_value.hpp"

namespace helmholtz {

enum class MPolicy { paper_rule, free_search };
/// Where the max function comes from. The Bessel pipeline only exists for K = 0.
enum class Pipeline { radial, bessel };

const char* to_string(MPolicy p);
MPolicy parse_policy(const std::string& s);

/// Lower-bound query for C(k, r, alpha) on the surface of curvature space.K()
/// with wave number space.k(). Radii are physical; the profile runs in rho = k r.
struct ThreeBallQuery {
  CurvatureContext space;
  double r;
  double alpha;
  MPolicy policy = MPolicy::paper_rule;
  Pipeline pipeline = Pipeline::radial;

  double kr() const noexcept { return space.k() * r; }
};

/// Throws PreconditionError: alpha_range (alpha outside (0, 1]), radius_positive,
/// or radius_admissible (K > 0 and 4 r sqrt(K) >= pi / 2).
void validate(const ThreeBallQuery& q);

/// Order prescribed for a given kr, or nullopt when the range holds no integer:
///   flat        6 kr / 5 < m < 3 kr / 2
///   hyperbolic  10 m < 18 kr < 11 m
///   spherical   10 m < 12 kr < 11 m
/// The smallest admissible integer is returned.
std::optional<int> paper_rule_order(Space space, double kr);

/// (M(2kr) / M(kr))^alpha (M(2kr) / M(4kr))^(1 - alpha) for one max function.
ScaledValue three_ball_ratio(const MaxFunction& M, double kr, double alpha);

struct ThreeBallResult {
  double kr = 0.0;
  int m_selected = 0;  ///< 0 when the fallback applies
  ScaledValue bound = ScaledValue::from_double(1.0);
};

/// Bound for a single order m >= 0 (m = 0 gives exactly 1).
ScaledValue three_ball_bound_for_order(const ThreeBallQuery& q, int m);

/// paper_rule: the prescribed order, or m = 0 with bound 1 when none exists.
/// free_search: the maximum over integer m in [1, 3 kr] (m = 0 if that range is empty).
ThreeBallResult three_ball_lower_bound(const ThreeBallQuery& q, Exec exec = Exec::serial);

struct GrowthSample {
  double kr;
  int m_selected;
  double log_bound;
};

struct GrowthFit {
  std::vector<GrowthSample> samples;  ///< sorted by kr
  double slope = 0.0;                 ///< d-hat
  double intercept = 0.0;             ///< log c-hat
  double r_squared = 0.0;
  double alpha = 1.0;
  double kappa_sign = 0.0;  ///< sign of K
  MPolicy policy = MPolicy::paper_rule;

  double slope_per_alpha() const { return slope / alpha; }
};

struct LinearFit {
  double slope;
  double intercept;
  double r_squared;
};

/// Ordinary least squares y = slope x + intercept. Throws DataError on fewer
/// than two points or constant x. R^2 is 1 when y is constant.
LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

/// Sweeps k over k_grid at fixed K and r and fits log(bound) against kr.
/// Requires at least 8 grid points with kr spanning a factor of 5 or more
/// (PreconditionError "k_grid"). Sweeps over (k, m) fan out across threads and
/// are reduced in grid order.
GrowthFit growth_fit(double K, double r, double alpha, const std::vector<double>& k_grid, MPolicy policy,
                     Exec exec = Exec::serial, Pipeline pipeline = Pipeline::radial);

/// Analytic flat-space growth rate of the lower bound:
/// (6/5) beta log(delta / gamma), gamma = 5/6, delta = 11/12.
double euclidean_predicted_slope();

/// C_real(m) = J_m(gamma m) (delta / gamma)^(beta m) / J_m(delta m), beta = sqrt(1 - delta^2).
/// Requires 0 < gamma < delta < 1 and m > 0 (PreconditionError "gamma_delta", "order_positive").
ScaledValue lemma_ratio_constant(double m, double gamma, double delta);

/// Report for C_real(m) against a cap.
BoundReport lemma_ratio_check(double m, double gamma, double delta, const ScaledValue& cap);

/// C_real over a family of orders with the cap set to the family maximum.
std::vector<BoundReport> lemma_ratio_family(const std::vector<double>& orders, double gamma, double delta,
                                            Exec exec = Exec::serial);

/// (max_{rho < horizon} |L| / max_{rho <= rho1} |L| - 1) (xi - 1) m.
///
/// The horizon is 2 rho1, clipped to R_|kappa| for kappa != 0; extrema decrease
/// before R_kappa, so the first extremum past rho1 carries the global max.
/// Throws PreconditionError: xi_above_one, order_positive, rho1_above_xi_m
/// (needs sin_kappa(rho1) > xi m), rho1_below_cutoff (needs rho1 < R_|kappa|).
double upper_ratio_product(double kappa, double m, double rho1, double xi);

BoundReport upper_ratio_check(double kappa, double m, double rho1, double xi, double cap);

/// CSV: kr, m_selected, log_bound, policy, kappa, alpha. kappa is K / k^2 for the row.
void write_growth_csv(std::ostream& os, const GrowthFit& fit, double K, double r);

}  // namespace helmholtz
