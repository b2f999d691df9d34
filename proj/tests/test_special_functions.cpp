#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "helmholtz/errors.hpp"
#include "helmholtz/special_functions.hpp"

using namespace helmholtz;

namespace {

// Relative error where J_m is monotone, amplitude-relative past x = m.
double scaled_error(int m, double x, const ScaledValue& value) {
  const double J = oracle::bessel(m, x);
  const double diff = std::fabs(value.to_double() - J);
  if (x <= m) return diff / std::fabs(J);
  return diff / std::hypot(J, oracle::bessel_derivative(m, x));
}

}  // namespace

TEST_CASE("bessel_j against the multiprecision series") {
  for (int m : {0, 1, 2, 7, 20, 45})
    for (double x : {0.3, 1.0, 2.5, 6.0, 11.0, 30.0, 2.0 * m + 20.0}) CHECK(scaled_error(m, x, bessel_j(m, x)) < 1e-10);
}

TEST_CASE("bessel_j tiny values keep their relative accuracy") {
  // J_40(2) ~ 1e-48 sits in the series region
  const double x = 2.0;
  const double J = oracle::bessel(40, x);
  CHECK(bessel_j(40, x).to_double() == doctest::Approx(J).epsilon(1e-12));
  // J_200(50) is far below the double range's comfortable digits but still a double
  const ScaledValue v = bessel_j(200, 50.0);
  CHECK(v.log_abs() == doctest::Approx(std::log(static_cast<double>(oracle::bessel_series_big(200, oracle::big(50)))))
                           .epsilon(1e-12));
}

TEST_CASE("bessel derivative") {
  for (int m : {0, 3, 12})
    for (double x : {0.7, 4.0, 19.0}) {
      const BesselValue v = bessel_j_with_derivative(m, x);
      CHECK(v.dJ.to_double() == doctest::Approx(oracle::bessel_derivative(m, x)).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("half-integer order has a closed form") {
  // J_{1/2}(x) = sqrt(2 / (pi x)) sin x
  for (double x : {0.5, 3.0, 12.0, 40.0})
    CHECK(bessel_j(0.5, x).to_double() == doctest::Approx(std::sqrt(2.0 / (M_PI * x)) * std::sin(x)).epsilon(1e-9).scale(1.0));
}

TEST_CASE("trajectory queries agree with pointwise evaluation") {
  const BesselTrajectory traj(9.0, 60.0);
  for (double x : {0.5, 5.0, 9.0, 33.3, 60.0}) {
    const BesselValue a = traj.at(x);
    CHECK(a.J.to_double() == doctest::Approx(oracle::bessel(9, x)).epsilon(1e-10).scale(1e-3));
  }
  CHECK_THROWS(traj.at(61.0));
}

TEST_CASE("first zero of J_1 against bisection on the series") {
  const double j1 = oracle::bisect([](double x) { return oracle::bessel(1, x); }, 3.0, 4.5, 1e-14);
  CHECK(first_zero(1.0) == doctest::Approx(j1).epsilon(1e-12));
  CHECK(j1 == doctest::Approx(3.8317059702075123).epsilon(1e-13));
}

TEST_CASE("first zero bracket") {
  const ZeroBracket b = first_zero_bracket(8.0);
  CHECK(b.lo == 8.0);
  CHECK(b.hi == doctest::Approx(8.0 + (M_PI + 1.0) * 2.0));
  for (double l : {1.0, 2.0, 8.0, 27.0, 64.0, 100.0}) {
    const double j = first_zero(l);
    CHECK(j > l);
    CHECK(j <= l + (M_PI + 1.0) * std::cbrt(l));
    const int li = static_cast<int>(l);
    CHECK(std::fabs(oracle::bessel(li, j) / oracle::bessel_derivative(li, j)) < 1e-10 * j);
  }
  CHECK(first_zero(0.0) == doctest::Approx(2.404825557695773).epsilon(1e-12));
}

TEST_CASE("zeros and extrema") {
  const std::vector<double> z = bessel_zeros(0.0, 20.0);
  const double known[] = {2.404825557695773, 5.520078110286311, 8.653727912911013, 11.79153443901428,
                          14.93091770848779, 18.07106396791092};
  REQUIRE(z.size() == 6);
  for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == doctest::Approx(known[i]).epsilon(1e-11));

  const double e = bessel_first_extremum(10.0);
  CHECK(std::fabs(oracle::bessel_derivative(10, e)) < 1e-11);
  CHECK(e > 10.0);
  const double peak = std::fabs(oracle::bessel(10, e));
  CHECK(bessel_max_function(10.0, 30.0).to_double() == doctest::Approx(peak).epsilon(1e-10));
  CHECK(bessel_max_function(10.0, 5.0).to_double() == doctest::Approx(oracle::bessel(10, 5.0)).epsilon(1e-10));
}

TEST_CASE("invalid orders") {
  CHECK_THROWS_AS(BesselOrder(-1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(-0.5, 1.0), DomainError);
}
