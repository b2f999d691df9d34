#pragma once

#include <optional>

namespace helmholtz {

enum class Space { flat, spherical, hyperbolic };

const char* to_string(Space s);

/// Sectional curvature K, wave number k and the normalized curvature
/// kappa = K / k^2 that governs the radial equation in the variable rho = k r.
class CurvatureContext {
 public:
  /// Throws DomainError unless k > 0 and K is finite.
  CurvatureContext(double K, double k);
  /// Context for a bare normalized curvature (k = 1, K = kappa).
  static CurvatureContext normalized(double kappa) { return {kappa, 1.0}; }

  double K() const noexcept { return K_; }
  double k() const noexcept { return k_; }
  double kappa() const noexcept { return kappa_; }
  Space space() const noexcept;

 private:
  double K_;
  double k_;
  double kappa_;
};

/// Extended positive radius: either finite or explicitly infinite.
class Radius {
 public:
  static Radius infinite() { return Radius{}; }
  static Radius finite(double r) { return Radius{r}; }

  bool is_infinite() const noexcept { return !value_.has_value(); }
  /// Throws DomainError on the infinite variant.
  double value() const;
  /// rho strictly below the radius.
  bool contains(double rho) const noexcept { return is_infinite() || rho < *value_; }

 private:
  Radius() = default;
  explicit Radius(double r) : value_(r) {}
  std::optional<double> value_;
};

struct CutoffRadii {
  Radius monotone;  ///< R_kappa: end of the region where sin_kappa increases
  Radius absolute;  ///< R_|kappa|: pi / (2 sqrt|kappa|)
};

CutoffRadii cutoff_radii(double kappa);

/// First positive zero of sin_kappa (pi / sqrt kappa) for kappa > 0, infinite otherwise.
Radius antipodal_radius(double kappa);

// Generalized trigonometric family. All take rho >= 0 and throw DomainError
// otherwise. For |kappa| rho^2 < 1e-4 a Taylor series in kappa rho^2 is used so
// the functions are continuous through kappa = 0.
double sin_kappa(double kappa, double rho);
double cos_kappa(double kappa, double rho);
double cot_kappa(double kappa, double rho);
/// tan_kappa evaluated at rho / 2, the variable of the comparison solutions.
double tan_kappa_half(double kappa, double rho);
/// Preimage of s under sin_kappa in [0, R_kappa]. For kappa > 0 requires s <= 1/sqrt(kappa).
double inv_sin_kappa(double kappa, double s);
/// True when inv_sin_kappa(kappa, s) is defined.
bool inv_sin_kappa_defined(double kappa, double s) noexcept;

}  // namespace helmholtz
