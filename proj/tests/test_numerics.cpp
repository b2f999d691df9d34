#include <cmath>
#include <limits>

#include "doctest.h"

#include "helmholtz/curvature.hpp"
#include "helmholtz/errors.hpp"
#include "helmholtz/quadrature.hpp"
#include "helmholtz/scaled_value.hpp"

using namespace helmholtz;

TEST_CASE("scaled values survive products far outside double range") {
  const ScaledValue big = ScaledValue::from_log(1, 5000.0);
  const ScaledValue tiny = ScaledValue::from_log(-1, -5000.0);
  CHECK((big * tiny).to_double() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK((big / big).to_double() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(big.log_abs() == doctest::Approx(5000.0));
  CHECK(std::isinf(big.to_double()));
  CHECK(tiny.abs() < big);
  CHECK(big.pow(0.5).log_abs() == doctest::Approx(2500.0));
}

TEST_CASE("scaled value arithmetic matches doubles") {
  const double xs[] = {-3.5, -1e-7, 0.0, 2.0, 7.25e20};
  for (double a : xs)
    for (double b : xs) {
      const ScaledValue A = ScaledValue::from_double(a), B = ScaledValue::from_double(b);
      CHECK((A + B).to_double() == doctest::Approx(a + b).epsilon(1e-14));
      CHECK((A - B).to_double() == doctest::Approx(a - b).epsilon(1e-14));
      CHECK((A * B).to_double() == doctest::Approx(a * b).epsilon(1e-14));
      CHECK((A < B) == (a < b));
    }
  CHECK(ScaledValue::from_double(0.0).is_zero());
  CHECK(ScaledValue::from_scaled(3.0, 2).to_double() == doctest::Approx(3.0 * std::exp(2.0)));
  CHECK(relative_difference(ScaledValue::from_double(1.0), ScaledValue::from_double(1.0 + 1e-9)) ==
        doctest::Approx(1e-9).epsilon(1e-6));
  CHECK_THROWS(ScaledValue::from_double(1.0) / ScaledValue::from_double(0.0));
}

TEST_CASE("generalized sine near the flat limit follows its Taylor series") {
  // sin_kappa(rho) = rho - kappa rho^3 / 6 + kappa^2 rho^5 / 120 - ...
  for (double kappa : {1e-6, -1e-6, 3e-5, -3e-5})
    for (double rho : {0.01, 0.5, 1.0}) {
      const double x = kappa * rho * rho;
      long double series = 0.0L, term = rho;
      for (int n = 0; n < 12; ++n) {
        series += term;
        term *= -static_cast<long double>(x) / ((2 * n + 2) * (2 * n + 3));
      }
      CHECK(sin_kappa(kappa, rho) == doctest::Approx(static_cast<double>(series)).epsilon(1e-15));
    }
  CHECK(sin_kappa(-1.0, 2.0) == doctest::Approx(std::sinh(2.0)).epsilon(1e-15));
  CHECK(sin_kappa(4.0, 0.3) == doctest::Approx(std::sin(0.6) / 2.0).epsilon(1e-15));
  CHECK(sin_kappa(0.0, 1.7) == 1.7);
}

TEST_CASE("generalized trig identities") {
  for (double kappa : {-2.0, -1e-5, 0.0, 1e-5, 0.7})
    for (double rho : {0.1, 0.9, 1.5}) {
      const double s = sin_kappa(kappa, rho), c = cos_kappa(kappa, rho);
      CHECK(c * c + kappa * s * s == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(cot_kappa(kappa, rho) == doctest::Approx(c / s).epsilon(1e-13));
      // tan_kappa(rho / 2) = sin_kappa(rho) / (1 + cos_kappa(rho))
      CHECK(tan_kappa_half(kappa, rho) == doctest::Approx(s / (1.0 + c)).epsilon(1e-13));
      CHECK(inv_sin_kappa(kappa, s) == doctest::Approx(rho).epsilon(1e-12));
    }
}

TEST_CASE("cutoff radii") {
  CHECK(cutoff_radii(0.0).monotone.is_infinite());
  CHECK(cutoff_radii(-1.0).monotone.is_infinite());
  CHECK(cutoff_radii(-4.0).absolute.value() == doctest::Approx(M_PI / 4.0));
  CHECK(cutoff_radii(4.0).monotone.value() == doctest::Approx(M_PI / 4.0));
  CHECK(antipodal_radius(1.0).value() == doctest::Approx(M_PI));
  CHECK(cutoff_radii(1.0).monotone.contains(1.5));
  CHECK_FALSE(cutoff_radii(1.0).monotone.contains(1.6));
  CHECK_FALSE(inv_sin_kappa_defined(1.0, 1.5));
  CHECK_THROWS_AS(inv_sin_kappa(1.0, 1.5), DomainError);
  CHECK_THROWS_AS(Radius::infinite().value(), DomainError);
}

TEST_CASE("curvature context normalizes by k^2") {
  const CurvatureContext ctx(-0.04, 5.0);
  CHECK(ctx.kappa() == doctest::Approx(-0.04 / 25.0));
  CHECK(ctx.space() == Space::hyperbolic);
  CHECK(CurvatureContext::normalized(0.3).k() == 1.0);
  CHECK_THROWS_AS(CurvatureContext(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(CurvatureContext(std::numeric_limits<double>::infinity(), 1.0), DomainError);
}

TEST_CASE("Gauss-Legendre rules") {
  for (int n : {1, 5, 10, 20}) {
    const GaussLegendreRule rule = gauss_legendre(n);
    double w = 0.0;
    for (double x : rule.weights) w += x;
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    // exact for degree 2n - 1
    const int deg = 2 * n - 1;
    const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
    CHECK(gauss_legendre_panel([deg](double x) { return std::pow(x, deg); }, -1.0, 1.0, rule) ==
          doctest::Approx(exact).epsilon(1e-13));
    const double even = gauss_legendre_panel([deg](double x) { return std::pow(x, deg - 1); }, 0.0, 2.0, rule);
    CHECK(even == doctest::Approx(std::pow(2.0, deg) / deg).epsilon(1e-13));
  }
  CHECK(integrate_adaptive([](double x) { return std::exp(-x) * std::sin(20 * x); }, 0.0, 10.0, 1e-12) ==
        doctest::Approx((20.0 - std::exp(-10.0) * (std::sin(200.0) + 20.0 * std::cos(200.0))) / 401.0)
            .epsilon(1e-11));
}
