#include "helmholtz/three_ball.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "helmholtz/errors.hpp"
#include "helmholtz/special_functions.hpp"

namespace helmholtz {

namespace {

ScaledValue combine(const ScaledValue& m1, const ScaledValue& m2, const ScaledValue& m4, double alpha) {
  const ScaledValue inner = m2 / m1;
  const ScaledValue outer = m2 / m4;
  if (alpha == 1.0) return inner;
  return inner.pow(alpha) * outer.pow(1.0 - alpha);
}

int free_search_top(double kr) { return static_cast<int>(std::floor(3.0 * kr)); }

}  // namespace

const char* to_string(MPolicy p) { return p == MPolicy::paper_rule ? "paper_rule" : "free_search"; }

MPolicy parse_policy(const std::string& s) {
  if (s == "paper_rule") return MPolicy::paper_rule;
  if (s == "free_search") return MPolicy::free_search;
  throw DomainError("unknown m-selection policy '" + s + "'");
}

void validate(const ThreeBallQuery& q) {
  if (!(q.alpha > 0.0 && q.alpha <= 1.0)) throw PreconditionError("alpha_range", "alpha must lie in (0, 1]");
  if (!(q.r > 0.0)) throw PreconditionError("radius_positive", "r must be positive");
  if (q.space.K() > 0 && !(4.0 * q.r * std::sqrt(q.space.K()) < M_PI / 2.0))
    throw PreconditionError("radius_admissible", "spherical case needs r < pi / (8 sqrt K)");
  if (q.pipeline == Pipeline::bessel && q.space.K() != 0.0)
    throw PreconditionError("bessel_pipeline_flat", "the Bessel pipeline requires K = 0");
}

std::optional<int> paper_rule_order(Space space, double kr) {
  double lo = 0.0, hi = 0.0;
  switch (space) {
    case Space::flat:
      lo = 6.0 * kr / 5.0;
      hi = 1.5 * kr;
      break;
    case Space::hyperbolic:
      lo = 18.0 * kr / 11.0;
      hi = 1.8 * kr;
      break;
    case Space::spherical:
      lo = 12.0 * kr / 11.0;
      hi = 1.2 * kr;
      break;
  }
  const double m = std::floor(lo) + 1.0;
  if (m < hi) return static_cast<int>(m);
  return std::nullopt;
}

ScaledValue three_ball_ratio(const MaxFunction& M, double kr, double alpha) {
  return combine(M(kr), M(2.0 * kr), M(4.0 * kr), alpha);
}

ScaledValue three_ball_bound_for_order(const ThreeBallQuery& q, int m) {
  validate(q);
  if (m < 0) throw DomainError("order must be nonnegative");
  if (m == 0) return ScaledValue::from_double(1.0);
  const double kr = q.kr();
  if (q.pipeline == Pipeline::bessel)
    return combine(bessel_max_function(m, kr), bessel_max_function(m, 2.0 * kr), bessel_max_function(m, 4.0 * kr),
                   q.alpha);
  const RadialProfile profile = integrate_radial(q.space, m, 4.0 * kr);
  return three_ball_ratio(max_function(profile), kr, q.alpha);
}

ThreeBallResult three_ball_lower_bound(const ThreeBallQuery& q, Exec exec) {
  validate(q);
  ThreeBallResult res;
  res.kr = q.kr();
  if (q.policy == MPolicy::paper_rule) {
    if (auto m = paper_rule_order(q.space.space(), res.kr)) {
      res.m_selected = *m;
      res.bound = three_ball_bound_for_order(q, *m);
    }
    return res;
  }
  const int top = free_search_top(res.kr);
  if (top < 1) return res;
  const auto bounds =
      map_indices(static_cast<std::size_t>(top), [&](std::size_t i) { return three_ball_bound_for_order(q, int(i) + 1); },
                  exec);
  // First maximum in m order keeps the result independent of thread timing.
  for (int m = 1; m <= top; ++m) {
    if (res.m_selected == 0 || bounds[m - 1] > res.bound) {
      res.m_selected = m;
      res.bound = bounds[m - 1];
    }
  }
  return res;
}

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DataError("least squares needs at least two (x, y) pairs");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DataError("least squares needs at least two distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

GrowthFit growth_fit(double K, double r, double alpha, const std::vector<double>& k_grid, MPolicy policy, Exec exec,
                     Pipeline pipeline) {
  if (k_grid.size() < 8) throw PreconditionError("k_grid", "growth fit needs at least 8 wave numbers");
  std::vector<double> ks = k_grid;
  std::sort(ks.begin(), ks.end());
  if (!(ks.front() > 0.0) || ks.back() < 5.0 * ks.front())
    throw PreconditionError("k_grid", "kr must span at least a factor of 5");

  std::vector<ThreeBallQuery> queries;
  for (double k : ks) {
    ThreeBallQuery q{CurvatureContext(K, k), r, alpha, policy, pipeline};
    validate(q);
    queries.push_back(q);
  }

  // Flatten (k, m) so one long sweep does not serialize the tail of the pool.
  struct Task {
    std::size_t query;
    int m;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const double kr = queries[i].kr();
    if (policy == MPolicy::paper_rule) {
      tasks.push_back({i, paper_rule_order(queries[i].space.space(), kr).value_or(0)});
    } else {
      const int top = free_search_top(kr);
      if (top < 1) tasks.push_back({i, 0});
      for (int m = 1; m <= top; ++m) tasks.push_back({i, m});
    }
  }
  const auto bounds = map_indices(
      tasks.size(), [&](std::size_t t) { return three_ball_bound_for_order(queries[tasks[t].query], tasks[t].m); },
      exec);

  std::vector<ThreeBallResult> best(queries.size());
  std::vector<bool> seen(queries.size(), false);
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    auto& b = best[tasks[t].query];
    if (!seen[tasks[t].query] || bounds[t] > b.bound) {
      b.m_selected = tasks[t].m;
      b.bound = bounds[t];
      seen[tasks[t].query] = true;
    }
  }

  GrowthFit fit;
  fit.alpha = alpha;
  fit.kappa_sign = (K > 0) - (K < 0);
  fit.policy = policy;
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const ScaledValue& b = best[i].bound;
    if (!(b > ScaledValue()) || !std::isfinite(b.log_abs()))
      throw DataError("non-positive or non-finite three-ball bound at kr = " + std::to_string(queries[i].kr()));
    fit.samples.push_back({queries[i].kr(), best[i].m_selected, b.log_abs()});
    xs.push_back(queries[i].kr());
    ys.push_back(b.log_abs());
  }
  const LinearFit lf = least_squares(xs, ys);
  fit.slope = lf.slope;
  fit.intercept = lf.intercept;
  fit.r_squared = lf.r_squared;
  return fit;
}

double euclidean_predicted_slope() {
  const double gamma = 5.0 / 6.0, delta = 11.0 / 12.0;
  return 1.2 * std::sqrt(1.0 - delta * delta) * std::log(delta / gamma);
}

ScaledValue lemma_ratio_constant(double m, double gamma, double delta) {
  if (!(0.0 < gamma && gamma < delta && delta < 1.0))
    throw PreconditionError("gamma_delta", "need 0 < gamma < delta < 1");
  if (!(m > 0.0)) throw PreconditionError("order_positive", "m must be positive");
  const double beta = std::sqrt(1.0 - delta * delta);
  const ScaledValue factor = ScaledValue::from_log(1, beta * m * std::log(delta / gamma));
  return bessel_j(m, gamma * m) * factor / bessel_j(m, delta * m);
}

BoundReport lemma_ratio_check(double m, double gamma, double delta, const ScaledValue& cap) {
  return make_le_report("lemma_ratio", {{"m", m}, {"gamma", gamma}, {"delta", delta}},
                        lemma_ratio_constant(m, gamma, delta), cap);
}

std::vector<BoundReport> lemma_ratio_family(const std::vector<double>& orders, double gamma, double delta, Exec exec) {
  const auto values =
      map_indices(orders.size(), [&](std::size_t i) { return lemma_ratio_constant(orders[i], gamma, delta); }, exec);
  ScaledValue cap;
  for (const auto& v : values) cap = std::max(cap, v);
  std::vector<BoundReport> out;
  for (std::size_t i = 0; i < orders.size(); ++i)
    out.push_back(make_le_report("lemma_ratio", {{"m", orders[i]}, {"gamma", gamma}, {"delta", delta}}, values[i], cap));
  return out;
}

double upper_ratio_product(double kappa, double m, double rho1, double xi) {
  if (!(xi > 1.0)) throw PreconditionError("xi_above_one", "xi must exceed 1");
  if (!(m > 0.0)) throw PreconditionError("order_positive", "m must be positive");
  const Radius cutoff = cutoff_radii(kappa).absolute;
  if (!(rho1 > 0.0) || !cutoff.contains(rho1))
    throw PreconditionError("rho1_below_cutoff", "rho1 must lie in (0, R_|kappa|)");
  if (!(sin_kappa(kappa, rho1) > xi * m))
    throw PreconditionError("rho1_above_xi_m", "sin_kappa(rho1) must exceed xi m");

  double horizon = 2.0 * rho1;
  if (!cutoff.is_infinite()) horizon = std::min(horizon, cutoff.value());
  const RadialProfile profile = integrate_radial(CurvatureContext::normalized(kappa), m, horizon);
  const MaxFunction M = max_function(profile);
  const ScaledValue ratio = M(horizon) / M(rho1);
  return (ratio.to_double() - 1.0) * (xi - 1.0) * m;
}

BoundReport upper_ratio_check(double kappa, double m, double rho1, double xi, double cap) {
  const double product = upper_ratio_product(kappa, m, rho1, xi);
  return make_le_report("upper_ratio", {{"kappa", kappa}, {"m", m}, {"rho1", rho1}, {"xi", xi}},
                        ScaledValue::from_double(product), ScaledValue::from_double(cap));
}

void write_growth_csv(std::ostream& os, const GrowthFit& fit, double K, double r) {
  os << "kr,m_selected,log_bound,policy,kappa,alpha\n";
  char buf[256];
  for (const auto& s : fit.samples) {
    const double k = s.kr / r;
    std::snprintf(buf, sizeof buf, "%.17g,%d,%.17g,%s,%.17g,%.17g\n", s.kr, s.m_selected, s.log_bound,
                  to_string(fit.policy), K / (k * k), fit.alpha);
    os << buf;
  }
}

}  // namespace helmholtz
