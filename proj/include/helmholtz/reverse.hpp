#pragma once

#include <vector>

#include "json.hpp"

#include "helmholtz/bound_report.hpp"
#include "helmholtz/curvature.hpp"
#include "helmholtz/execution.hpp"
#include "helmholtz/radial_solver.hpp"
#include "helmholtz/scaled_value.hpp"

namespace helmholtz {

/// Radial integrals of the separated mode u = L(k r) Y_m(theta) over r in [a, b]
/// (physical radii), without the angular factor.
///   mass          = int_a^b L(k r)^2 sin_K(r) dr
///   gradient_mass = int_a^b (k^2 L'^2 + m^2 L^2 / sin_K^2) sin_K(r) dr
struct ModeMass {
  double m = 0.0;
  double k = 1.0;
  double a = 0.0;
  double b = 0.0;
  ScaledValue mass;
  ScaledValue gradient_mass;
};

/// Quadrature over an existing profile, which must reach k b. Panels follow
/// the profile's nodes; each is refined adaptively to rel_tol.
ModeMass mode_mass(const RadialProfile& profile, double a, double b, bool with_gradient = true,
                   double rel_tol = 1e-10);
/// Integrates the profile to k b first.
ModeMass mode_mass(const CurvatureContext& ctx, double m, double a, double b, bool with_gradient = true);

struct ReverseOptions {
  int window = 5;              ///< W: trailing ratios that must decrease
  double peak_factor = 1e3;    ///< and sit this far below the peak
  int extra_modes = 60;        ///< hard cap is ceil(4 k R1) + extra_modes
  bool with_h1 = false;        ///< also compute the H^1 version
  Exec exec = Exec::serial;
};

struct ReverseConstantReport {
  double r = 0.0;
  double R1 = 0.0;
  double K = 0.0;
  double k = 1.0;
  std::vector<ScaledValue> ratios;  ///< mass(0, r) / mass(r, R1) per mode m = 0, 1, ...
  int argmax_mode = 0;
  ScaledValue C_hat;
  int m_cutoff = 0;        ///< last mode evaluated
  bool certified = false;  ///< tail certificate met before the hard cap
  std::vector<ScaledValue> h1_ratios;
  ScaledValue C_hat_h1;
};

/// Max over modes of mass(0, r) / mass(r, R1). By angular orthogonality this
/// is the worst case over all separated-series solutions.
///
/// Modes are evaluated in blocks until the last W ratios decrease strictly and
/// all sit below C_hat / peak_factor. Reaching the hard cap leaves
/// certified = false. Throws PreconditionError radii_order (0 < r < R1) or
/// diameter_bound (K > 0 and 2 R1 >= pi / (2 sqrt K)).
ReverseConstantReport reverse_constant(const CurvatureContext& ctx, double r, double R1,
                                       const ReverseOptions& opts = {});

struct KSweep {
  double r = 0.0;
  double R1 = 0.0;
  double K = 0.0;
  std::vector<ReverseConstantReport> reports;  ///< one per k, in input order

  /// max / median of C_hat over the sweep.
  double spread() const;
  bool all_certified() const;
};

/// reverse_constant for each k; the k values fan out across threads.
KSweep k_sweep(double K, double r, double R1, const std::vector<double>& ks, ReverseOptions opts = {});

/// {r, R1, kappa, k_values[], C_hat[], argmax_mode[], certificate}; C_hat as doubles,
/// certificate per k plus an overall flag.
nlohmann::json to_json(const KSweep& sweep);

struct CaccioppoliReport {
  double m = 0.0;
  double k = 1.0;
  double r = 0.0;
  double R = 0.0;
  double epsilon = 0.0;
  double c_upper = 0.0;  ///< smallest C with int_Omega |grad u|^2 <= (k^2 + C / eps^2) int_Omega+ u^2
  double c_lower = 0.0;  ///< smallest C with k^2 int_Omega- u^2 - C / eps^2 int_Omega u^2 <= int_Omega |grad u|^2
  BoundReport upper;     ///< checked at C = c_upper
  BoundReport lower;     ///< checked at C = c_lower, written as k^2 I- <= G + C / eps^2 I
  bool verdict() const { return upper.verdict && lower.verdict; }
};

/// Annuli Omega = (r, R), Omega+ = (r - eps, R + eps), Omega- = (r + eps, R - eps)
/// for u = L(k rho) Y_m. Throws PreconditionError epsilon_geometry (needs
/// eps < r < R - 2 eps) or annulus_in_domain (K > 0 and R + eps >= R_K).
CaccioppoliReport caccioppoli_check(const CurvatureContext& ctx, double m, double r, double R, double epsilon);

struct EquatorRow {
  int n = 0;
  double k = 0.0;  ///< sqrt(n (n + 1))
  ScaledValue ratio;
};

/// Unit sphere, ball of radius r about the north pole and annulus (r, R1) in
/// the southern hemisphere; mode m = n at k^2 = n (n + 1), whose profile is a
/// multiple of sin^n. Throws PreconditionError annulus_meets_equator unless
/// pi / 2 < r < R1 < pi.
std::vector<EquatorRow> equator_counterexample(const std::vector<int>& n_list, double r = 2.0, double R1 = 2.6,
                                               Exec exec = Exec::serial);

}  // namespace helmholtz
