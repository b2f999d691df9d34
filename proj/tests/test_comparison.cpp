#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

#include "helmholtz/comparison.hpp"
#include "helmholtz/errors.hpp"

using namespace helmholtz;

namespace {

// |(p y')' + q y| relative to the size of its terms, with (p y')' by central differences.
double residual(const ComparatorSpec& c, double x) {
  const double h = 1e-5 * x;
  const double flux_r = c.p(x + h) * c.derivative(x + h);
  const double flux_l = c.p(x - h) * c.derivative(x - h);
  const double d_flux = (flux_r - flux_l) / (2 * h);
  const double qy = c.q(x) * c.value(x);
  return std::fabs(d_flux + qy) / (std::fabs(d_flux) + std::fabs(qy));
}

double derivative_mismatch(const ComparatorSpec& c, double x) {
  const double h = 1e-6 * x;
  const double fd = (c.value(x + h) - c.value(x - h)) / (2 * h);
  return std::fabs(fd - c.derivative(x)) / (std::fabs(c.derivative(x)) + std::fabs(c.value(x)) / x);
}

std::string hypothesis_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const PreconditionError& e) {
    return e.hypothesis();
  }
  return "";
}

}  // namespace

TEST_CASE("comparators solve their equations") {
  const ComparatorSpec specs[] = {
      ComparatorSpec::euler(7.0, 0.4, 1.0, 0.3),
      ComparatorSpec::curved_power(0.02, 7.0, 0.4, 1.0, -0.2),
      ComparatorSpec::curved_power(-0.3, 3.0, 0.8, 0.5, 0.5),
      ComparatorSpec::oscillatory(0.05, 9.0, 1.1, 1.0, 0.4, 0.3),
      ComparatorSpec::oscillatory(-0.05, 9.0, 1.3, -1.0, 2.0, 0.0),
      ComparatorSpec::oscillatory(0.0, 9.0, 1.3, 1.0, 1.0, 0.0),
      ComparatorSpec::flat_oscillatory(0.25, 1.0, 0.0),
      ComparatorSpec::matched_euler(12.0, 0.9, 9.0, 1.0, 0.7),
      ComparatorSpec::matched_power(-0.01, 12.0, 0.9, 9.0, 1.0, 0.7),
      ComparatorSpec::matched_oscillatory(0.001, 12.0, 1.05, 13.0, 1.0, 0.1),
  };
  for (const auto& c : specs)
    for (double x : {0.7, 1.3, 2.9, 4.4}) {
      CAPTURE(to_string(c.kind()));
      CAPTURE(x);
      CHECK(residual(c, x) < 1e-9);
      CHECK(derivative_mismatch(c, x) < 1e-8);
    }
}

TEST_CASE("closed forms agree with the comparator objects") {
  const double m = 6.0, beta = 0.5;
  const ComparatorSpec e = ComparatorSpec::euler(m, beta, 2.0, 0.5);
  for (double x : {0.5, 1.0, 3.0}) {
    CHECK(euler_solution(m, beta, 2.0, 0.5, x) == doctest::Approx(2.0 * std::pow(x, m * beta) + 0.5 * std::pow(x, -m * beta)));
    CHECK(e.value(x) == doctest::Approx(euler_solution(m, beta, 2.0, 0.5, x)).epsilon(1e-12));
  }
  // flat t = rho / 2
  CHECK(curved_power_solution(0.0, 2.0, 0.5, 1.0, 0.0, 4.0) == doctest::Approx(2.0));
  const double kappa = 0.04, xi = 1.2;
  const double gamma = m * std::sqrt(xi * xi - 1.0);
  const double t = tan_kappa_half(kappa, 3.0);
  CHECK(oscillatory_solution(kappa, m, xi, 1.0, 2.0, 0.3, 3.0) ==
        doctest::Approx(std::cos(gamma * std::log(t) - 0.3) + 2.0 * std::sin(gamma * std::log(t) - 0.3)));
}

TEST_CASE("matched comparators reproduce their initial data") {
  const auto a = ComparatorSpec::matched_euler(40.0, 0.9, 30.0, 1.0, -0.02);
  CHECK(a.value(30.0) == doctest::Approx(1.0));
  CHECK(a.derivative(30.0) == doctest::Approx(-0.02));
  CHECK(a.rate() == doctest::Approx(40.0 * std::sqrt(1.0 - 0.81)));
  const auto b = ComparatorSpec::matched_power(2e-6, 300.0, 0.8, 200.0, 1.0, 0.9);
  CHECK(b.value(200.0) == doctest::Approx(1.0));
  CHECK(b.derivative(200.0) == doctest::Approx(0.9));
  CHECK(std::isfinite(b.value(240.0)));
  const auto c = ComparatorSpec::matched_oscillatory(-0.001, 20.0, 1.1, 25.0, 2.0, 0.5);
  CHECK(c.value(25.0) == doctest::Approx(2.0));
  CHECK(c.derivative(25.0) == doctest::Approx(0.5));
  CHECK(c.rate() == doctest::Approx(20.0 * std::sqrt(1.21 - 1.0)));
  CHECK_THROWS_AS(ComparatorSpec::matched_euler(4.0, 1.2, 1.0, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ComparatorSpec::matched_oscillatory(0.0, 4.0, 0.9, 1.0, 1.0, 0.0), DomainError);
}

TEST_CASE("Sturm comparison on a hand-built pair") {
  // y'' + y = 0 against y'' = 0 with y(0) = 1, y'(0) = 0: cos x <= 1.
  const ScalarFunction one = [](double) { return 1.0; };
  const SturmSide low{"cos", one, [](double x) { return std::cos(x); }, [](double x) { return -std::sin(x); }};
  const SturmSide high{"const", [](double) { return 0.0; }, one, [](double) { return 0.0; }};
  const BoundReport r = sturm_dominates(one, low, high, {0.0, 1.5});
  CHECK(r.verdict);
  CHECK(r.lhs.to_double() <= r.rhs.to_double());

  CHECK(hypothesis_of([&] { sturm_dominates([](double) { return -1.0; }, low, high, {0.0, 1.5}); }) == "p_positive");
  CHECK(hypothesis_of([&] { sturm_dominates(one, high, low, {0.0, 1.5}); }) == "q_ordering");
  const SturmSide shifted{"const", high.q, [](double) { return 1.1; }, high.dy};
  CHECK(hypothesis_of([&] { sturm_dominates(one, low, shifted, {0.0, 1.5}); }) == "initial_data");
  const SturmSide neg_low{"-cos", one, [](double x) { return -std::cos(x); }, [](double x) { return std::sin(x); }};
  const SturmSide neg_high{"-1", high.q, [](double) { return -1.0; }, high.dy};
  CHECK(hypothesis_of([&] { sturm_dominates(one, neg_low, neg_high, {0.0, 1.5}); }) == "initial_sign");
  CHECK(hypothesis_of([&] { sturm_dominates(one, low, high, {0.0, 2.0}); }) == "low_positive");
}

TEST_CASE("Sturm comparison of J_m against the matched Euler solution") {
  const double m = 30.0, gamma = 0.7, delta = 0.9;
  const BesselTrajectory traj(m, delta * m);
  const BesselValue v = traj.at(gamma * m);
  const auto euler = ComparatorSpec::matched_euler(m, delta, gamma * m, 1.0, (v.dJ / v.J).to_double());
  const BoundReport r = sturm_dominates([](double x) { return x; }, comparator_side(euler, "euler"),
                                        bessel_side(traj, gamma * m, "bessel"), {gamma * m, delta * m});
  CHECK(r.verdict);
  CHECK(r.margin >= 0.0);
}

TEST_CASE("Picone interlacing bookkeeping") {
  const BoundReport ok = picone_interlaces({1.0, 2.0, 3.0}, {1.5, 2.5}, {0.0, 4.0});
  CHECK(ok.verdict);
  CHECK(ok.margin == doctest::Approx(0.5));
  const BoundReport gap = picone_interlaces({1.0, 2.0, 3.0}, {1.5}, {0.0, 4.0});
  CHECK_FALSE(gap.verdict);
  CHECK(gap.lhs.to_double() == 1.0);
  CHECK(gap.margin == -1.0);
  CHECK(hypothesis_of([] { picone_interlaces({2.0, 1.0}, {1.5}, {0.0, 4.0}); }) == "sorted_zeros");
  CHECK(hypothesis_of([] { picone_interlaces({1.0, 2.0}, {1.7, 1.5}, {0.0, 4.0}); }) == "sorted_zeros");
}

TEST_CASE("Picone interlacing against Bessel zeros") {
  for (double l : {8.0, 27.0, 64.0}) {
    const double a = l + std::cbrt(l), b = a + 80.0;
    std::vector<double> coarse;
    for (int j = 0;; ++j) {
      const double z = (M_PI / 2 + j * M_PI) * std::cbrt(l);
      if (z > b) break;
      if (z >= a) coarse.push_back(z);
    }
    CHECK(picone_interlaces(coarse, bessel_zeros(l, b), {a, b}).verdict);
  }
}

TEST_CASE("Sonin-Polya witness and envelope") {
  const PqWitness w = radial_pq_witness(0.5, {0.1, 2.0});
  CHECK(w.derivative(1.0) == doctest::Approx(2.0 * cos_kappa(0.5, 1.0) * sin_kappa(0.5, 1.0)));
  std::vector<Extremum> env{{0.5, ScaledValue::from_double(3.0)}, {1.0, ScaledValue::from_double(-2.0)},
                            {1.5, ScaledValue::from_double(1.0)}};
  CHECK(sonin_polya_holds(env, w).verdict);
  env[2].value = ScaledValue::from_double(2.5);
  CHECK_FALSE(sonin_polya_holds(env, w).verdict);
  CHECK(hypothesis_of([&] { sonin_polya_holds(env, radial_pq_witness(0.5, {0.1, 2.5})); }) == "pq_increasing");
}
