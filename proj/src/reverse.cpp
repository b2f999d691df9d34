#include "helmholtz/reverse.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "helmholtz/errors.hpp"
#include "helmholtz/quadrature.hpp"

namespace helmholtz {

namespace {

using Pair = std::array<double, 2>;

template <class F>
Pair panel(const F& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  Pair sum{0.0, 0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const Pair v = f(mid + half * rule.nodes[i]);
    sum[0] += rule.weights[i] * v[0];
    sum[1] += rule.weights[i] * v[1];
  }
  return {half * sum[0], half * sum[1]};
}

const GaussLegendreRule& gauss_legendre_10() {
  static const GaussLegendreRule rule = gauss_legendre(10);
  return rule;
}

bool close(double fine, double coarse, double rel_tol, double abs_tol) {
  const double d = std::fabs(fine - coarse);
  return d <= rel_tol * std::fabs(fine) || d <= abs_tol;
}

// Mass and gradient share the profile evaluations. Each panel is accepted when
// the 10- and 20-point rules agree, which is conservative for the 20-point value;
// otherwise it is bisected. Profile evaluations cost a Runge-Kutta step each, so
// this halves the work of a whole-versus-halves test. Near the origin the
// integrand behaves like rho^(2m+1), which looks the same at every scale, so
// panels also stop once their error is negligible against the whole integral.
template <class F>
Pair adaptive_pair(const F& f, double a, double b, const Pair& fine, double rel_tol, const Pair& abs_tol, int depth) {
  const Pair coarse = panel(f, a, b, gauss_legendre_10());
  if (close(fine[0], coarse[0], rel_tol, abs_tol[0]) && close(fine[1], coarse[1], rel_tol, abs_tol[1])) return fine;
  if (depth == 0) throw IntegrationError("mode mass quadrature did not converge");
  const double mid = 0.5 * (a + b);
  const Pair l = adaptive_pair(f, a, mid, panel(f, a, mid, gauss_legendre_20()), rel_tol, abs_tol, depth - 1);
  const Pair r = adaptive_pair(f, mid, b, panel(f, mid, b, gauss_legendre_20()), rel_tol, abs_tol, depth - 1);
  return {l[0] + r[0], l[1] + r[1]};
}

void require_physical_domain(double K, double outer, const char* name) {
  if (K > 0 && !(outer < M_PI / (2.0 * std::sqrt(K))))
    throw PreconditionError(name, "outer radius must stay below pi / (2 sqrt K)");
}

}  // namespace

ModeMass mode_mass(const RadialProfile& profile, double a, double b, bool with_gradient, double rel_tol) {
  if (!(a >= 0.0 && a < b)) throw DomainError("mode_mass requires 0 <= a < b");
  const double k = profile.context().k();
  const double ra = k * a, rb = k * b;
  if (rb > profile.rho_max() * (1.0 + 1e-14)) throw DomainError("mode_mass: interval beyond the profile");
  const double kappa = profile.kappa();
  const double m = profile.order();

  ScaledValue scale = max_function(profile)(std::min(rb, profile.rho_max()));
  if (scale.is_zero()) scale = ScaledValue::from_double(1.0);

  auto integrand = [&](double rho) -> Pair {
    const ProfilePoint v = profile.at(rho);
    const double s = sin_kappa(kappa, rho);
    const double L = (v.L / scale).to_double();
    if (!with_gradient) return {L * L * s, 0.0};
    const double dL = (v.dL / scale).to_double();
    return {L * L * s, (dL * dL + m * m * L * L / (s * s)) * s};
  };

  // Panels end at the series handoff and at every solver node so each sees a
  // single smooth evaluation path.
  std::vector<double> cuts{ra};
  if (profile.handoff() > ra && profile.handoff() < rb) cuts.push_back(profile.handoff());
  for (const auto& n : profile.nodes())
    if (n.rho > ra && n.rho < rb && n.rho > cuts.back()) cuts.push_back(n.rho);
  cuts.push_back(rb);

  const std::size_t segments = cuts.size() - 1;
  std::vector<Pair> first(segments);
  Pair estimate{0.0, 0.0};
  for (std::size_t i = 0; i < segments; ++i) {
    first[i] = panel(integrand, cuts[i], cuts[i + 1], gauss_legendre_20());
    estimate[0] += std::fabs(first[i][0]);
    estimate[1] += std::fabs(first[i][1]);
  }
  // Summed over all segments the floor contributes at most rel_tol of the total.
  const double share = rel_tol / static_cast<double>(segments);
  const Pair abs_tol{share * estimate[0], share * estimate[1]};

  Pair total{0.0, 0.0};
  for (std::size_t i = 0; i < segments; ++i) {
    const Pair part = adaptive_pair(integrand, cuts[i], cuts[i + 1], first[i], rel_tol, abs_tol, 40);
    total[0] += part[0];
    total[1] += part[1];
  }

  ModeMass out;
  out.m = m;
  out.k = k;
  out.a = a;
  out.b = b;
  const ScaledValue s2 = scale * scale;
  out.mass = s2 * ScaledValue::from_double(total[0] / (k * k));
  if (with_gradient) out.gradient_mass = s2 * ScaledValue::from_double(total[1]);
  return out;
}

ModeMass mode_mass(const CurvatureContext& ctx, double m, double a, double b, bool with_gradient) {
  const RadialProfile profile = integrate_radial(ctx, m, ctx.k() * b);
  return mode_mass(profile, a, b, with_gradient);
}

namespace {

struct ModeRatio {
  ScaledValue l2;
  ScaledValue h1;
};

ModeRatio mode_ratio(const CurvatureContext& ctx, int m, double r, double R1, bool with_h1) {
  const RadialProfile profile = integrate_radial(ctx, m, ctx.k() * R1);
  const ModeMass inner = mode_mass(profile, 0.0, r, with_h1);
  const ModeMass outer = mode_mass(profile, r, R1, with_h1);
  ModeRatio out;
  out.l2 = inner.mass / outer.mass;
  if (with_h1) out.h1 = (inner.mass + inner.gradient_mass) / (outer.mass + outer.gradient_mass);
  return out;
}

// First index j at which the trailing window certifies the tail, or -1.
int certificate_index(const std::vector<ScaledValue>& ratios, int window, double peak_factor) {
  ScaledValue peak;
  for (std::size_t j = 0; j < ratios.size(); ++j) {
    peak = std::max(peak, ratios[j]);
    if (static_cast<int>(j) + 1 < window + 1) continue;
    const ScaledValue limit = peak / ScaledValue::from_double(peak_factor);
    bool ok = true;
    for (int w = 0; w < window && ok; ++w) {
      const std::size_t i = j - w;
      ok = ratios[i] < ratios[i - 1] && ratios[i] <= limit;
    }
    if (ok) return static_cast<int>(j);
  }
  return -1;
}

}  // namespace

ReverseConstantReport reverse_constant(const CurvatureContext& ctx, double r, double R1, const ReverseOptions& opts) {
  if (!(r > 0.0 && r < R1)) throw PreconditionError("radii_order", "need 0 < r < R1");
  if (ctx.K() > 0 && !(2.0 * R1 < M_PI / (2.0 * std::sqrt(ctx.K()))))
    throw PreconditionError("diameter_bound", "ball diameter 2 R1 must stay below pi / (2 sqrt K)");
  if (opts.window < 1 || !(opts.peak_factor > 1.0)) throw DomainError("invalid tail certificate settings");

  ReverseConstantReport rep;
  rep.r = r;
  rep.R1 = R1;
  rep.K = ctx.K();
  rep.k = ctx.k();
  const int hard_cap = static_cast<int>(std::ceil(4.0 * ctx.k() * R1)) + opts.extra_modes;
  const int block = std::max(8, max_threads());

  std::vector<ModeRatio> all;
  int cert = -1;
  while (cert < 0 && static_cast<int>(all.size()) <= hard_cap) {
    const int start = static_cast<int>(all.size());
    const int count = std::min(block, hard_cap + 1 - start);
    const auto chunk = map_indices(
        static_cast<std::size_t>(count),
        [&](std::size_t i) { return mode_ratio(ctx, start + static_cast<int>(i), r, R1, opts.with_h1); }, opts.exec);
    all.insert(all.end(), chunk.begin(), chunk.end());
    std::vector<ScaledValue> l2;
    for (const auto& x : all) l2.push_back(x.l2);
    cert = certificate_index(l2, opts.window, opts.peak_factor);
  }

  const std::size_t used = cert >= 0 ? static_cast<std::size_t>(cert) + 1 : all.size();
  rep.certified = cert >= 0;
  rep.m_cutoff = static_cast<int>(used) - 1;
  for (std::size_t m = 0; m < used; ++m) {
    rep.ratios.push_back(all[m].l2);
    if (m == 0 || all[m].l2 > rep.C_hat) {
      rep.C_hat = all[m].l2;
      rep.argmax_mode = static_cast<int>(m);
    }
    if (opts.with_h1) {
      rep.h1_ratios.push_back(all[m].h1);
      rep.C_hat_h1 = std::max(rep.C_hat_h1, all[m].h1);
    }
  }
  return rep;
}

double KSweep::spread() const {
  if (reports.empty()) throw DataError("empty k-sweep");
  std::vector<double> c;
  for (const auto& r : reports) c.push_back(r.C_hat.to_double());
  std::vector<double> sorted = c;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return sorted.back() / median;
}

bool KSweep::all_certified() const {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.certified; });
}

KSweep k_sweep(double K, double r, double R1, const std::vector<double>& ks, ReverseOptions opts) {
  KSweep sweep;
  sweep.r = r;
  sweep.R1 = R1;
  sweep.K = K;
  const Exec outer = opts.exec;
  opts.exec = Exec::serial;  // parallel over k only
  sweep.reports = map_indices(
      ks.size(), [&](std::size_t i) { return reverse_constant(CurvatureContext(K, ks[i]), r, R1, opts); }, outer);
  return sweep;
}

nlohmann::json to_json(const KSweep& sweep) {
  nlohmann::json j;
  j["r"] = sweep.r;
  j["R1"] = sweep.R1;
  j["kappa"] = sweep.K;
  auto& kv = j["k_values"] = nlohmann::json::array();
  auto& ch = j["C_hat"] = nlohmann::json::array();
  auto& am = j["argmax_mode"] = nlohmann::json::array();
  auto& mc = j["m_cutoff"] = nlohmann::json::array();
  auto& cert = j["certificate"] = nlohmann::json::object();
  auto& per_k = cert["per_k"] = nlohmann::json::array();
  for (const auto& rep : sweep.reports) {
    kv.push_back(rep.k);
    ch.push_back(rep.C_hat.to_double());
    am.push_back(rep.argmax_mode);
    mc.push_back(rep.m_cutoff);
    per_k.push_back(rep.certified);
  }
  cert["all"] = sweep.all_certified();
  return j;
}

CaccioppoliReport caccioppoli_check(const CurvatureContext& ctx, double m, double r, double R, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < r && r < R - 2.0 * epsilon))
    throw PreconditionError("epsilon_geometry", "need 0 < eps < r < R - 2 eps");
  require_physical_domain(ctx.K(), R + epsilon, "annulus_in_domain");

  const RadialProfile profile = integrate_radial(ctx, m, ctx.k() * (R + epsilon));
  const ModeMass plus = mode_mass(profile, r - epsilon, R + epsilon, false);
  const ModeMass mid = mode_mass(profile, r, R, true);
  const ModeMass minus = mode_mass(profile, r + epsilon, R - epsilon, false);

  const double k2 = ctx.k() * ctx.k();
  const double e2 = epsilon * epsilon;
  const ScaledValue G = mid.gradient_mass;

  CaccioppoliReport rep;
  rep.m = m;
  rep.k = ctx.k();
  rep.r = r;
  rep.R = R;
  rep.epsilon = epsilon;
  rep.c_upper = std::max(0.0, e2 * ((G / plus.mass).to_double() - k2));
  rep.c_lower = std::max(0.0, e2 * ((minus.mass * k2 - G) / mid.mass).to_double());

  const std::vector<std::pair<std::string, double>> params{
      {"m", m}, {"k", ctx.k()}, {"r", r}, {"R", R}, {"epsilon", epsilon}};
  // Equality is expected whenever the realized constant is positive.
  constexpr double slack = 1e-9;
  auto up_params = params;
  up_params.emplace_back("C", rep.c_upper);
  rep.upper = make_le_report("caccioppoli_upper", up_params, G, plus.mass * (k2 + rep.c_upper / e2), slack);
  auto low_params = params;
  low_params.emplace_back("C", rep.c_lower);
  rep.lower = make_le_report("caccioppoli_lower", low_params, minus.mass * k2, G + mid.mass * (rep.c_lower / e2), slack);
  const bool finite = std::isfinite(rep.c_upper) && std::isfinite(rep.c_lower);
  rep.upper.verdict = rep.upper.verdict && finite;
  rep.lower.verdict = rep.lower.verdict && finite;
  return rep;
}

std::vector<EquatorRow> equator_counterexample(const std::vector<int>& n_list, double r, double R1, Exec exec) {
  if (!(M_PI / 2.0 < r && r < R1 && R1 < M_PI))
    throw PreconditionError("annulus_meets_equator", "need pi / 2 < r < R1 < pi on the unit sphere");
  for (int n : n_list)
    if (n < 1) throw DomainError("equator family needs n >= 1");
  return map_indices(
      n_list.size(),
      [&](std::size_t i) {
        const int n = n_list[i];
        const double k = std::sqrt(static_cast<double>(n) * (n + 1));
        const CurvatureContext ctx(1.0, k);
        const RadialProfile profile = integrate_radial(ctx, n, k * R1);
        const ModeMass inner = mode_mass(profile, 0.0, r, false);
        const ModeMass outer = mode_mass(profile, r, R1, false);
        return EquatorRow{n, k, inner.mass / outer.mass};
      },
      exec);
}

}  // namespace helmholtz
