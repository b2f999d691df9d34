#include "helmholtz/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "helmholtz/errors.hpp"

namespace helmholtz {

namespace {

constexpr double kSeriesThreshold = 1e-4;

void require_radius(double rho, const char* fn) {
  if (!(rho >= 0.0)) throw DomainError(std::string(fn) + ": radius must be non-negative");
}

bool use_series(double kappa, double rho) { return std::fabs(kappa) * rho * rho < kSeriesThreshold; }

}  // namespace

const char* to_string(Space s) {
  switch (s) {
    case Space::flat:
      return "flat";
    case Space::spherical:
      return "spherical";
    case Space::hyperbolic:
      return "hyperbolic";
  }
  return "unknown";
}

CurvatureContext::CurvatureContext(double K, double k) : K_(K), k_(k), kappa_(K / (k * k)) {
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("wave number k must be positive and finite");
  if (!std::isfinite(K)) throw DomainError("curvature K must be finite");
}

Space CurvatureContext::space() const noexcept {
  if (K_ > 0.0) return Space::spherical;
  if (K_ < 0.0) return Space::hyperbolic;
  return Space::flat;
}

double Radius::value() const {
  if (!value_) throw DomainError("infinite radius has no finite value");
  return *value_;
}

CutoffRadii cutoff_radii(double kappa) {
  const double half_pi = std::numbers::pi / 2.0;
  CutoffRadii out{Radius::infinite(), Radius::infinite()};
  if (kappa > 0.0) out.monotone = Radius::finite(half_pi / std::sqrt(kappa));
  if (kappa != 0.0) out.absolute = Radius::finite(half_pi / std::sqrt(std::fabs(kappa)));
  return out;
}

Radius antipodal_radius(double kappa) {
  if (kappa > 0.0) return Radius::finite(std::numbers::pi / std::sqrt(kappa));
  return Radius::infinite();
}

double sin_kappa(double kappa, double rho) {
  require_radius(rho, "sin_kappa");
  if (use_series(kappa, rho)) {
    const double x = kappa * rho * rho;
    return rho * (1.0 - x / 6.0 * (1.0 - x / 20.0 * (1.0 - x / 42.0 * (1.0 - x / 72.0))));
  }
  if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    return std::sin(s * rho) / s;
  }
  const double s = std::sqrt(-kappa);
  return std::sinh(s * rho) / s;
}

double cos_kappa(double kappa, double rho) {
  require_radius(rho, "cos_kappa");
  if (use_series(kappa, rho)) {
    const double x = kappa * rho * rho;
    return 1.0 - x / 2.0 * (1.0 - x / 12.0 * (1.0 - x / 30.0 * (1.0 - x / 56.0)));
  }
  if (kappa > 0.0) return std::cos(std::sqrt(kappa) * rho);
  return std::cosh(std::sqrt(-kappa) * rho);
}

double cot_kappa(double kappa, double rho) {
  require_radius(rho, "cot_kappa");
  if (rho == 0.0) throw DomainError("cot_kappa: pole at rho = 0");
  if (use_series(kappa, rho)) {
    const double x = kappa * rho * rho;
    return (1.0 - x / 3.0 - x * x / 45.0 - 2.0 * x * x * x / 945.0) / rho;
  }
  if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    const double t = std::tan(s * rho);
    if (t == 0.0) throw DomainError("cot_kappa: pole at rho = pi / sqrt(kappa)");
    return s / t;
  }
  const double s = std::sqrt(-kappa);
  return s / std::tanh(s * rho);
}

double tan_kappa_half(double kappa, double rho) {
  require_radius(rho, "tan_kappa_half");
  const double u = 0.5 * rho;
  if (use_series(kappa, u)) {
    const double x = kappa * u * u;
    return u * (1.0 + x / 3.0 + 2.0 * x * x / 15.0 + 17.0 * x * x * x / 315.0 + 62.0 * x * x * x * x / 2835.0);
  }
  if (kappa > 0.0) {
    const double s = std::sqrt(kappa);
    return std::tan(s * u) / s;
  }
  const double s = std::sqrt(-kappa);
  return std::tanh(s * u) / s;
}

bool inv_sin_kappa_defined(double kappa, double s) noexcept {
  if (!(s >= 0.0)) return false;
  if (kappa > 0.0) return s * std::sqrt(kappa) <= 1.0;
  return std::isfinite(s);
}

double inv_sin_kappa(double kappa, double s) {
  if (!(s >= 0.0)) throw DomainError("inv_sin_kappa: value must be non-negative");
  if (!inv_sin_kappa_defined(kappa, s))
    throw DomainError("inv_sin_kappa: value exceeds 1/sqrt(kappa), no preimage before R_kappa");
  if (use_series(kappa, s)) {
    const double x = kappa * s * s;
    return s * (1.0 + x / 6.0 + 3.0 * x * x / 40.0 + 5.0 * x * x * x / 112.0 + 35.0 * x * x * x * x / 1152.0);
  }
  if (kappa > 0.0) {
    const double r = std::sqrt(kappa);
    return std::asin(std::min(1.0, s * r)) / r;
  }
  const double r = std::sqrt(-kappa);
  return std::asinh(s * r) / r;
}

}  // namespace helmholtz
