#include <cmath>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"

#include "helmholtz/errors.hpp"
#include "helmholtz/three_ball.hpp"

using namespace helmholtz;

namespace {

std::string hypothesis_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const PreconditionError& e) {
    return e.hypothesis();
  }
  return "";
}

// max |J_m| on [0, x] by a dense grid plus golden-section polishing.
double brute_max(int m, double x) {
  const int n = 20000;
  double best = 0.0, arg = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double t = x * i / n;
    const double v = std::fabs(oracle::bessel_double(m, t));
    if (v > best) {
      best = v;
      arg = t;
    }
  }
  double lo = std::max(0.0, arg - x / n), hi = std::min(x, arg + x / n);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (std::fabs(oracle::bessel_double(m, a)) > std::fabs(oracle::bessel_double(m, b))) hi = b;
    else lo = a;
  }
  return std::max(best, std::fabs(oracle::bessel_double(m, 0.5 * (lo + hi))));
}

ThreeBallQuery query(double K, double k, double r, double alpha, MPolicy policy = MPolicy::paper_rule,
                     Pipeline pipe = Pipeline::radial) {
  return ThreeBallQuery{CurvatureContext(K, k), r, alpha, policy, pipe};
}

}  // namespace

TEST_CASE("prescribed orders") {
  CHECK(paper_rule_order(Space::flat, 20.0) == 25);
  CHECK(paper_rule_order(Space::spherical, 20.0) == 22);
  CHECK(paper_rule_order(Space::hyperbolic, 20.0) == 33);
  CHECK_FALSE(paper_rule_order(Space::spherical, 1.0).has_value());
  for (double kr = 20.0; kr <= 200.0; kr += 1.0) {
    const auto m = paper_rule_order(Space::flat, kr);
    REQUIRE(m.has_value());
    CHECK(6.0 * kr / 5.0 < *m);
    CHECK(*m < 1.5 * kr);
  }
  CHECK(parse_policy("free_search") == MPolicy::free_search);
  CHECK_THROWS(parse_policy("best"));
}

TEST_CASE("query validation") {
  CHECK(hypothesis_of([] { validate(query(0.0, 10.0, 0.3, 0.0)); }) == "alpha_range");
  CHECK(hypothesis_of([] { validate(query(0.0, 10.0, 0.3, 1.5)); }) == "alpha_range");
  CHECK(hypothesis_of([] { validate(query(0.0, 10.0, -0.3, 1.0)); }) == "radius_positive");
  CHECK(hypothesis_of([] { validate(query(1.0, 10.0, 0.4, 1.0)); }) == "radius_admissible");
  CHECK(hypothesis_of([] { validate(query(-1.0, 10.0, 0.3, 1.0, MPolicy::paper_rule, Pipeline::bessel)); }) ==
        "bessel_pipeline_flat");
  CHECK(hypothesis_of([] { validate(query(1.0, 10.0, 0.3, 1.0)); }).empty());
}

TEST_CASE("three-ball ratio against a dense-grid maximum") {
  const int m = 6;
  const double k = 4.0, r = 1.0, alpha = 0.6;
  const double M1 = brute_max(m, 4.0), M2 = brute_max(m, 8.0), M4 = brute_max(m, 16.0);
  const double expected = std::pow(M2 / M1, alpha) * std::pow(M2 / M4, 1.0 - alpha);
  for (Pipeline pipe : {Pipeline::radial, Pipeline::bessel}) {
    const ScaledValue b = three_ball_bound_for_order(query(0.0, k, r, alpha, MPolicy::paper_rule, pipe), m);
    CHECK(b.to_double() == doctest::Approx(expected).epsilon(1e-9));
  }
  CHECK(three_ball_bound_for_order(query(0.0, k, r, alpha), 0).to_double() == 1.0);
}

TEST_CASE("radial and Bessel pipelines agree in the flat case") {
  for (int m : {5, 20, 60})
    for (double kr : {10.0, 40.0}) {
      const ScaledValue a = three_ball_bound_for_order(query(0.0, kr / 0.3, 0.3, 1.0), m);
      const ScaledValue b =
          three_ball_bound_for_order(query(0.0, kr / 0.3, 0.3, 1.0, MPolicy::paper_rule, Pipeline::bessel), m);
      CHECK(relative_difference(a, b) < 1e-6);
    }
}

TEST_CASE("free search never does worse than the prescribed order") {
  for (double K : {-1.0, 0.0, 1.0})
    for (double kr : {6.0, 13.0, 25.0}) {
      const auto paper = three_ball_lower_bound(query(K, kr / 0.3, 0.3, 1.0, MPolicy::paper_rule));
      const auto free = three_ball_lower_bound(query(K, kr / 0.3, 0.3, 1.0, MPolicy::free_search));
      CHECK(free.bound >= paper.bound);
      CHECK(free.m_selected >= 1);
    }
}

TEST_CASE("serial and parallel sweeps agree exactly") {
  std::vector<double> ks;
  for (double kr = 2.0; kr <= 16.0; kr += 2.0) ks.push_back(kr / 0.3);
  const GrowthFit a = growth_fit(-1.0, 0.3, 0.7, ks, MPolicy::free_search, Exec::serial);
  const GrowthFit b = growth_fit(-1.0, 0.3, 0.7, ks, MPolicy::free_search, Exec::parallel);
  REQUIRE(a.samples.size() == b.samples.size());
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    CHECK(a.samples[i].m_selected == b.samples[i].m_selected);
    CHECK(a.samples[i].log_bound == b.samples[i].log_bound);
  }
  CHECK(a.slope == b.slope);
  CHECK(a.alpha == 0.7);
  CHECK(a.kappa_sign == -1.0);
}

TEST_CASE("growth fit preconditions and CSV") {
  CHECK(hypothesis_of([] { growth_fit(0.0, 0.3, 1.0, {10, 20, 30}, MPolicy::paper_rule); }) == "k_grid");
  CHECK(hypothesis_of([] { growth_fit(0.0, 0.3, 1.0, {10, 11, 12, 13, 14, 15, 16, 17}, MPolicy::paper_rule); }) ==
        "k_grid");
  std::vector<double> ks;
  for (double kr = 20.0; kr <= 100.0; kr += 10.0) ks.push_back(kr / 0.3);
  const GrowthFit fit = growth_fit(0.0, 0.3, 1.0, ks, MPolicy::paper_rule);
  CHECK(fit.slope > 0.0);
  std::ostringstream os;
  write_growth_csv(os, fit, 0.0, 0.3);
  CHECK(os.str().rfind("kr,m_selected,log_bound,policy,kappa,alpha\n", 0) == 0);
}

TEST_CASE("least squares") {
  const LinearFit f = least_squares({1, 2, 3, 4}, {3, 5, 7, 9});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
  CHECK(least_squares({1, 2, 3, 4}, {1, 3, 2, 4}).r_squared == doctest::Approx(0.64));
}

TEST_CASE("Euclidean slope floor") {
  CHECK(euclidean_predicted_slope() == doctest::Approx(1.2 * std::sqrt(23.0) / 12.0 * std::log(1.1)).epsilon(1e-15));
  CHECK(euclidean_predicted_slope() == doctest::Approx(0.0457).epsilon(1e-3));
}

TEST_CASE("lemma ratio against the multiprecision series") {
  const double gamma = 5.0 / 6.0, delta = 11.0 / 12.0, beta = std::sqrt(1.0 - delta * delta);
  for (int m : {5, 12, 30, 60}) {
    using oracle::big;
    const big num = oracle::bessel_series_big(m, big(gamma * m));
    const big den = oracle::bessel_series_big(m, big(delta * m));
    const double expected = static_cast<double>(num / den) * std::pow(delta / gamma, beta * m);
    CHECK(lemma_ratio_constant(m, gamma, delta).to_double() == doctest::Approx(expected).epsilon(1e-10));
  }
  CHECK(hypothesis_of([] { lemma_ratio_constant(5, 0.9, 0.8); }) == "gamma_delta");
  CHECK(hypothesis_of([] { lemma_ratio_constant(0, 0.5, 0.8); }) == "order_positive");
  const auto family = lemma_ratio_family({5, 10, 20}, gamma, delta, Exec::parallel);
  REQUIRE(family.size() == 3);
  for (const auto& r : family) CHECK(r.verdict);
}

TEST_CASE("upper ratio product against a brute-force maximum") {
  const int m = 10;
  const double xi = 10.0 / 9.0;
  const double rho1 = xi * m * (1.0 + 1e-9);
  // below the first extremum |J| increases, so the inner max is J(rho1)
  const double inner = oracle::bessel(m, rho1);
  double lo = rho1, hi = 2.0 * rho1;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  hi = 13.0;  // first extremum of J_10 is 11.77
  for (int it = 0; it < 70; ++it) {
    const double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    if (oracle::bessel(m, a) > oracle::bessel(m, b)) hi = b;
    else lo = a;
  }
  const double outer = oracle::bessel(m, 0.5 * (lo + hi));
  const double expected = (outer / inner - 1.0) * (xi - 1.0) * m;
  CHECK(upper_ratio_product(0.0, m, rho1, xi) == doctest::Approx(expected).epsilon(1e-8));

  CHECK(hypothesis_of([] { upper_ratio_product(0.0, 10, 11.2, 0.9); }) == "xi_above_one");
  CHECK(hypothesis_of([] { upper_ratio_product(0.0, 0, 11.2, 1.1); }) == "order_positive");
  CHECK(hypothesis_of([] { upper_ratio_product(0.0, 10, 5.0, 1.1); }) == "rho1_above_xi_m");
  CHECK(hypothesis_of([] { upper_ratio_product(1.0, 1, 1.6, 1.1); }) == "rho1_below_cutoff");
  CHECK(upper_ratio_check(0.0, m, rho1, xi, 10.0).verdict);
}
