#pragma once

#include <iosfwd>
#include <vector>

#include "helmholtz/curvature.hpp"
#include "helmholtz/detail/radial_ode.hpp"
#include "helmholtz/scaled_value.hpp"

namespace helmholtz {

struct Tolerances {
  double rtol = 1e-10;
  double atol = 1e-300;
  double h_max = 0.5;
  double event_tol = 1e-10;  ///< bisection width for extrema and zeros
  double merge_tol = 1e-8;   ///< extrema closer than this are one extremum
};

/// Frobenius expansion of L_{kappa,m} about the regular singular point rho = 0,
/// L = (2^-m / Gamma(m+1)) rho^m sum_j b_j rho^{2j}, summed to convergence.
struct FrobeniusStart {
  double rho = 0.0;
  double L = 0.0;   ///< mantissa; true value L * exp(log_scale)
  double dL = 0.0;  ///< mantissa of L'
  double log_scale = 0.0;
  int terms = 0;

  ScaledValue value() const;
  ScaledValue derivative() const;
};

FrobeniusStart frobenius_start(double kappa, double m, double rho0);

/// Radius at which integration takes over from the Frobenius series.
double series_handoff_radius(double kappa, double m, double rho_max);

struct Extremum {
  double rho;
  ScaledValue value;  ///< signed L(rho)
};

struct ProfilePoint {
  ScaledValue L;
  ScaledValue dL;
};

/// Sampled radial solution L_{kappa,m} on [0, rho_max] in the variable rho = k r.
/// Immutable once built; point queries are thread-safe.
class RadialProfile {
 public:
  const CurvatureContext& context() const noexcept { return context_; }
  double kappa() const noexcept { return context_.kappa(); }
  double order() const noexcept { return m_; }
  double rho_max() const noexcept { return rho_max_; }
  double handoff() const noexcept { return handoff_; }

  const std::vector<detail::Node>& nodes() const noexcept { return nodes_; }
  const std::vector<detail::RenormEvent>& renormalizations() const noexcept { return renorm_; }
  std::vector<double> grid() const;
  ProfilePoint node_value(std::size_t i) const;

  /// Interior local extrema of L in (0, rho_max], in increasing rho.
  const std::vector<Extremum>& extrema() const noexcept { return extrema_; }
  const std::vector<double>& zeros() const noexcept { return zeros_; }

  /// L and L' at any rho in [0, rho_max].
  ProfilePoint at(double rho) const;

  /// The same solution multiplied by a positive constant.
  RadialProfile scaled(const ScaledValue& factor) const;

 private:
  friend RadialProfile integrate_radial(const CurvatureContext&, double, double, const Tolerances&);
  RadialProfile(const CurvatureContext& ctx, double m) : context_(ctx), m_(m), system_(ctx.kappa(), m) {}

  CurvatureContext context_;
  double m_;
  double rho_max_ = 0.0;
  double handoff_ = 0.0;
  double h_max_ = 0.5;
  ScaledValue normalization_ = ScaledValue::from_double(1.0);
  detail::RadialSystem system_;
  std::vector<detail::Node> nodes_;
  std::vector<detail::RenormEvent> renorm_;
  std::vector<Extremum> extrema_;
  std::vector<double> zeros_;
};

/// Integrates the radial Helmholtz equation on a constant-curvature surface.
/// Throws DomainError when kappa > 0 and rho_max reaches pi / sqrt(kappa),
/// IntegrationError on step-size collapse.
RadialProfile integrate_radial(const CurvatureContext& ctx, double m, double rho_max, const Tolerances& tol = {});

/// Extrema before R_kappa (all of them for kappa <= 0). For m = 0 the origin
/// is included as the first entry: L'(0) = 0 and it is the global maximum.
std::vector<Extremum> extrema_envelope(const RadialProfile& profile);

/// rho -> max_{x <= rho} |L(x)|. Holds a reference to the profile, which
/// must outlive it.
class MaxFunction {
 public:
  explicit MaxFunction(const RadialProfile& profile) : profile_(&profile) {}
  ScaledValue operator()(double rho) const;
  const RadialProfile& profile() const noexcept { return *profile_; }

 private:
  const RadialProfile* profile_;
};

inline MaxFunction max_function(const RadialProfile& profile) { return MaxFunction(profile); }

/// CSV with columns rho, sign, log_abs_L, log_abs_dL, one row per grid node.
void write_profile_csv(std::ostream& os, const RadialProfile& profile);

}  // namespace helmholtz
