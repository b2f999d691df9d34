#include "helmholtz/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "helmholtz/comparison.hpp"
#include "helmholtz/curvature.hpp"
#include "helmholtz/errors.hpp"
#include "helmholtz/radial_solver.hpp"
#include "helmholtz/special_functions.hpp"

namespace helmholtz {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Each instance owns the solutions its sides point into.
struct SturmInstance {
  std::shared_ptr<BesselTrajectory> bessel;
  std::shared_ptr<RadialProfile> profile;
  ScalarFunction p;
  SturmSide low;
  SturmSide high;
  Interval interval{};
  std::vector<std::pair<std::string, double>> params;
};

SturmSide negated(const SturmSide& s) {
  return {s.name, s.q, [f = s.y](double x) { return -f(x); }, [f = s.dy](double x) { return -f(x); }};
}

// J_m dominates the matched Euler solution on [gamma m, delta m].
SturmInstance bessel_euler(double m, double gamma, double delta, double mismatch = 1.0) {
  SturmInstance in;
  const double a = gamma * m, b = delta * m;
  in.bessel = std::make_shared<BesselTrajectory>(m, b);
  const BesselValue v = in.bessel->at(a);
  const double slope = (v.dJ / v.J.abs()).to_double();
  const ComparatorSpec euler = ComparatorSpec::matched_euler(m, delta, a, mismatch, slope);
  in.p = [](double x) { return x; };
  in.low = comparator_side(euler, "euler");
  in.high = bessel_side(*in.bessel, a, "bessel");
  in.interval = {a, b};
  in.params = {{"regime", 0}, {"m", m}, {"gamma", gamma}, {"delta", delta}};
  return in;
}

// L_{kappa,m} dominates the matched power comparator on [rho1, rho2].
SturmInstance profile_power(Rng& rng) {
  const double m = uniform_int(rng, 5, 60);
  const double s = uniform(rng, -4.0, 4.0);
  const double kappa = s / (m * m);
  const double delta = uniform(rng, 0.5, 0.95);
  const Radius monotone = cutoff_radii(kappa).monotone;
  const double rho2_max = inv_sin_kappa_defined(kappa, delta * m) ? inv_sin_kappa(kappa, delta * m)
                                                                   : monotone.value() * (1.0 - 1e-9);
  const double rho2 = uniform(rng, 0.5, 1.0) * rho2_max;
  const double rho1 = uniform(rng, 0.3, 0.9) * rho2;

  SturmInstance in;
  in.profile = std::make_shared<RadialProfile>(integrate_radial(CurvatureContext::normalized(kappa), m, rho2));
  const ProfilePoint v = in.profile->at(rho1);
  const double slope = (v.dL / v.L.abs()).to_double();
  const ComparatorSpec power = ComparatorSpec::matched_power(kappa, m, delta, rho1, 1.0, slope);
  in.p = [kappa](double rho) { return sin_kappa(kappa, rho); };
  in.low = comparator_side(power, "power");
  in.high = profile_side(*in.profile, rho1, "profile");
  in.interval = {rho1, rho2};
  in.params = {{"regime", 1}, {"m", m}, {"kappa", kappa}, {"delta", delta}, {"rho1", rho1}, {"rho2", rho2}};
  return in;
}

// The matched oscillatory comparator dominates L_{kappa,m} from
// rho1 = sin_kappa^-1(xi m) up to (just before) the next zero of L; with
// overshoot > 0 the interval runs past that zero instead.
SturmInstance profile_oscillatory(double m, double s, double xi, double overshoot = 0.0) {
  const double kappa = s / (m * m);
  const double rho1 = inv_sin_kappa(kappa, xi * m) * (1.0 + 1e-9);
  SturmInstance in;
  in.profile = std::make_shared<RadialProfile>(integrate_radial(CurvatureContext::normalized(kappa), m, rho1 + 10.0));
  const ProfilePoint v = in.profile->at(rho1);
  if (v.L.sign() <= 0 || v.dL.sign() <= 0) throw DomainError("rho1 lies past the first extremum");
  double zero = 0.0;
  for (double z : in.profile->zeros())
    if (z > rho1) {
      zero = z;
      break;
    }
  if (zero == 0.0) throw DomainError("no zero of L within reach");
  const double end = overshoot > 0.0 ? zero + overshoot : zero - 1e-6 * (zero - rho1);
  const ComparatorSpec osc =
      ComparatorSpec::matched_oscillatory(kappa, m, xi, rho1, 1.0, (v.dL / v.L.abs()).to_double());
  in.p = [kappa](double rho) { return sin_kappa(kappa, rho); };
  in.low = profile_side(*in.profile, rho1, "profile");
  in.high = comparator_side(osc, "oscillatory");
  in.interval = {rho1, end};
  in.params = {{"regime", 2}, {"m", m}, {"kappa", kappa}, {"xi", xi}, {"rho1", rho1}, {"rho2", end}};
  return in;
}

SturmInstance draw_sturm(Rng& rng) {
  switch (uniform_int(rng, 0, 2)) {
    case 0: {
      const double m = uniform_int(rng, 5, 60);
      const double gamma = uniform(rng, 0.5, 0.9);
      const double delta = uniform(rng, gamma + 0.02, 0.98);
      return bessel_euler(m, gamma, delta);
    }
    case 1:
      return profile_power(rng);
    default:
      for (;;) {
        const double m = uniform_int(rng, 10, 60);
        const double s = uniform(rng, -0.5, 0.5);
        const double xi = uniform(rng, 1.005, 1.0 + 0.5 * std::pow(m, -2.0 / 3.0));
        try {
          return profile_oscillatory(m, s, xi);
        } catch (const DomainError&) {
          // rho1 past the first extremum: not admissible, draw again
        }
      }
  }
}

BoundReport with_params(BoundReport r, const std::vector<std::pair<std::string, double>>& params) {
  r.params.insert(r.params.begin(), params.begin(), params.end());
  return r;
}

BoundReport run_sturm(Rng& rng) {
  const SturmInstance in = draw_sturm(rng);
  return with_params(sturm_dominates(in.p, in.low, in.high, in.interval), in.params);
}

std::vector<double> comparator_roots(double l, Interval iv) {
  const double scale = std::cbrt(l);
  std::vector<double> roots;
  for (int j = 0;; ++j) {
    const double z = (M_PI / 2.0 + j * M_PI) * scale;
    if (z > iv.b) break;
    if (z >= iv.a) roots.push_back(z);
  }
  return roots;
}

BoundReport run_picone(Rng& rng) {
  if (uniform_int(rng, 0, 1) == 0) {
    const double l = uniform(rng, 2.0, 100.0);
    const double a = l + std::cbrt(l);
    const Interval iv{a, a + uniform(rng, 20.0, 60.0)};
    return with_params(picone_interlaces(comparator_roots(l, iv), bessel_zeros(l, iv.b), iv),
                       {{"regime", 0}, {"l", l}});
  }
  const double m = uniform_int(rng, 1, 40);
  const double kappa = uniform(rng, -2.0, 2.0) / (m * m);
  double rho_max = m + 40.0;
  if (kappa > 0) rho_max = std::min(rho_max, 0.99 * M_PI / std::sqrt(kappa));
  const auto ctx = CurvatureContext::normalized(kappa);
  const RadialProfile lower = integrate_radial(ctx, m, rho_max);
  const RadialProfile upper = integrate_radial(ctx, m + 1, rho_max);
  return with_params(picone_interlaces(upper.zeros(), lower.zeros(), {0.0, rho_max}),
                     {{"regime", 1}, {"m", m}, {"kappa", kappa}});
}

BoundReport run_sonin(Rng& rng) {
  const double m = uniform_int(rng, 1, 50);
  const double kappa = uniform(rng, -2.0, 0.9) / (m * m);
  const double a = inv_sin_kappa(kappa, m);
  double b = a + 60.0;
  const Radius monotone = cutoff_radii(kappa).monotone;
  if (!monotone.is_infinite()) b = std::min(b, monotone.value() * (1.0 - 1e-9));
  const RadialProfile profile = integrate_radial(CurvatureContext::normalized(kappa), m, b);
  return with_params(sonin_polya_holds(extrema_envelope(profile), radial_pq_witness(kappa, {a, b})),
                     {{"m", m}, {"kappa", kappa}});
}

template <class F>
std::string raised_by(F&& f) {
  try {
    f();
  } catch (const PreconditionError& e) {
    return e.hypothesis();
  }
  return "";
}

}  // namespace

const char* to_string(Theorem t) {
  switch (t) {
    case Theorem::sturm: return "sturm";
    case Theorem::picone: return "picone";
    case Theorem::sonin: return "sonin";
  }
  return "unknown";
}

Theorem parse_theorem(const std::string& s) {
  if (s == "sturm") return Theorem::sturm;
  if (s == "picone") return Theorem::picone;
  if (s == "sonin") return Theorem::sonin;
  throw DomainError("unknown theorem '" + s + "'");
}

OracleOutcome run_oracle_instances(Theorem theorem, int count, std::uint64_t seed) {
  Rng rng(seed);
  OracleOutcome out;
  out.theorem = theorem;
  for (int i = 0; i < count; ++i) {
    BoundReport r;
    switch (theorem) {
      case Theorem::sturm: r = run_sturm(rng); break;
      case Theorem::picone: r = run_picone(rng); break;
      case Theorem::sonin: r = run_sonin(rng); break;
    }
    ++out.instances;
    if (r.verdict) ++out.passed;
    out.reports.push_back(std::move(r));
  }
  return out;
}

std::vector<InjectionOutcome> run_injected_violations() {
  std::vector<InjectionOutcome> out;
  auto add = [&](Theorem t, std::string expected, auto&& f) {
    out.push_back({t, std::move(expected), raised_by(f)});
  };

  add(Theorem::sturm, "q_ordering", [] {
    const SturmInstance in = bessel_euler(20, 0.7, 0.9);
    sturm_dominates(in.p, in.high, in.low, in.interval);
  });
  add(Theorem::sturm, "initial_data", [] {
    const SturmInstance in = bessel_euler(20, 0.7, 0.9, 1.01);
    sturm_dominates(in.p, in.low, in.high, in.interval);
  });
  add(Theorem::sturm, "initial_sign", [] {
    const SturmInstance in = bessel_euler(20, 0.7, 0.9);
    sturm_dominates(in.p, negated(in.low), negated(in.high), in.interval);
  });
  add(Theorem::sturm, "low_positive", [] {
    const SturmInstance in = profile_oscillatory(20, 0.0, 1.02, 0.5);
    sturm_dominates(in.p, in.low, in.high, in.interval);
  });
  add(Theorem::picone, "sorted_zeros", [] {
    std::vector<double> coarse = comparator_roots(27.0, {30.0, 80.0});
    std::reverse(coarse.begin(), coarse.end());
    picone_interlaces(coarse, bessel_zeros(27.0, 80.0), {30.0, 80.0});
  });
  add(Theorem::sonin, "pq_increasing", [] {
    const RadialProfile profile = integrate_radial(CurvatureContext::normalized(1.0), 1, 3.0);
    sonin_polya_holds(extrema_envelope(profile), radial_pq_witness(1.0, {1.0, 3.0}));
  });
  return out;
}

}  // namespace helmholtz
