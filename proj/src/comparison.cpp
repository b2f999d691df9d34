#include "helmholtz/comparison.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "helmholtz/curvature.hpp"
#include "helmholtz/errors.hpp"

namespace helmholtz {

namespace {

constexpr int kGridPoints = 10'000;
constexpr double kSlack = 1e-10;

std::vector<double> uniform_grid(Interval iv) {
  std::vector<double> g(kGridPoints);
  for (int i = 0; i < kGridPoints; ++i) g[i] = iv.a + (iv.b - iv.a) * i / (kGridPoints - 1);
  g.back() = iv.b;
  return g;
}

void require_interval(Interval iv) {
  if (!(iv.a < iv.b) || !std::isfinite(iv.a) || !std::isfinite(iv.b))
    throw DomainError("interval must satisfy a < b");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

double euler_solution(double m, double beta, double c1, double c2, double x) {
  if (!(x > 0)) throw DomainError("euler_solution requires x > 0");
  const double e = m * beta;
  return c1 * std::pow(x, e) + c2 * std::pow(x, -e);
}

double curved_power_solution(double kappa, double m, double beta, double c1, double c2, double rho) {
  if (!(rho > 0)) throw DomainError("curved_power_solution requires rho > 0");
  const double t = tan_kappa_half(kappa, rho);
  const double e = m * beta;
  return c1 * std::pow(t, e) + c2 * std::pow(t, -e);
}

double oscillatory_solution(double kappa, double m, double xi, double C1, double C2, double d, double rho) {
  if (!(xi > 1)) throw DomainError("oscillatory_solution requires xi > 1");
  if (!(rho > 0)) throw DomainError("oscillatory_solution requires rho > 0");
  const double gamma = m * std::sqrt(xi * xi - 1.0);
  const double phase = gamma * std::log(tan_kappa_half(kappa, rho)) - d;
  return C1 * std::cos(phase) + C2 * std::sin(phase);
}

const char* to_string(ComparatorKind kind) {
  switch (kind) {
    case ComparatorKind::euler_power: return "euler_power";
    case ComparatorKind::curved_power: return "curved_power";
    case ComparatorKind::curved_oscillatory: return "curved_oscillatory";
    case ComparatorKind::flat_oscillatory: return "flat_oscillatory";
  }
  return "unknown";
}

ComparatorSpec ComparatorSpec::euler(double m, double beta, double c1, double c2) {
  ComparatorSpec s;
  s.kind_ = ComparatorKind::euler_power;
  s.m_ = m;
  s.rate_ = m * beta;
  s.c1_ = c1;
  s.c2_ = c2;
  return s;
}

ComparatorSpec ComparatorSpec::curved_power(double kappa, double m, double beta, double c1, double c2) {
  ComparatorSpec s = euler(m, beta, c1, c2);
  s.kind_ = ComparatorKind::curved_power;
  s.kappa_ = kappa;
  return s;
}

ComparatorSpec ComparatorSpec::oscillatory(double kappa, double m, double xi, double C1, double C2, double d) {
  if (!(xi > 1)) throw DomainError("oscillatory comparator requires xi > 1");
  if (!(m > 0)) throw DomainError("oscillatory comparator requires m > 0");
  ComparatorSpec s;
  s.kind_ = ComparatorKind::curved_oscillatory;
  s.kappa_ = kappa;
  s.m_ = m;
  s.rate_ = m * std::sqrt(xi * xi - 1.0);
  s.c1_ = C1;
  s.c2_ = C2;
  s.log_t0_ = d / s.rate_;
  return s;
}

ComparatorSpec ComparatorSpec::flat_oscillatory(double a, double C1, double C2) {
  if (!(a > 0)) throw DomainError("flat oscillatory comparator requires a > 0");
  ComparatorSpec s;
  s.kind_ = ComparatorKind::flat_oscillatory;
  s.rate_ = a;
  s.c1_ = C1;
  s.c2_ = C2;
  return s;
}

ComparatorSpec ComparatorSpec::matched_euler(double m, double delta, double x1, double y1, double dy1) {
  if (!(delta > 0 && delta < 1)) throw DomainError("matched_euler requires 0 < delta < 1");
  if (!(x1 > 0)) throw DomainError("matched_euler requires x1 > 0");
  ComparatorSpec s = euler(m, std::sqrt(1.0 - delta * delta), 0.0, 0.0);
  const double diff = dy1 * x1 / s.rate_;
  s.c1_ = 0.5 * (y1 + diff);
  s.c2_ = 0.5 * (y1 - diff);
  s.log_t0_ = std::log(x1);
  return s;
}

ComparatorSpec ComparatorSpec::matched_power(double kappa, double m, double delta, double rho1, double y1,
                                             double dy1) {
  if (!(delta > 0 && delta < 1)) throw DomainError("matched_power requires 0 < delta < 1");
  if (!(rho1 > 0)) throw DomainError("matched_power requires rho1 > 0");
  ComparatorSpec s = curved_power(kappa, m, std::sqrt(1.0 - delta * delta), 0.0, 0.0);
  const double diff = dy1 * sin_kappa(kappa, rho1) / s.rate_;
  s.c1_ = 0.5 * (y1 + diff);
  s.c2_ = 0.5 * (y1 - diff);
  s.log_t0_ = std::log(tan_kappa_half(kappa, rho1));
  return s;
}

ComparatorSpec ComparatorSpec::matched_oscillatory(double kappa, double m, double xi, double rho1, double y1,
                                                   double dy1) {
  if (!(rho1 > 0)) throw DomainError("matched_oscillatory requires rho1 > 0");
  ComparatorSpec s = oscillatory(kappa, m, xi, 0.0, 0.0, 0.0);
  s.c1_ = y1;
  s.c2_ = dy1 * sin_kappa(kappa, rho1) / s.rate_;
  s.log_t0_ = std::log(tan_kappa_half(kappa, rho1));
  return s;
}

double ComparatorSpec::log_t(double rho) const {
  if (kind_ == ComparatorKind::euler_power) return std::log(rho);
  return std::log(tan_kappa_half(kappa_, rho));
}

double ComparatorSpec::dlog_t(double rho) const {
  if (kind_ == ComparatorKind::euler_power) return 1.0 / rho;
  return 1.0 / sin_kappa(kappa_, rho);
}

double ComparatorSpec::p(double rho) const {
  switch (kind_) {
    case ComparatorKind::euler_power:
    case ComparatorKind::flat_oscillatory: return rho;
    default: return sin_kappa(kappa_, rho);
  }
}

double ComparatorSpec::q(double rho) const {
  switch (kind_) {
    case ComparatorKind::euler_power: return -rate_ * rate_ / rho;
    case ComparatorKind::curved_power: return -rate_ * rate_ / sin_kappa(kappa_, rho);
    case ComparatorKind::curved_oscillatory: return rate_ * rate_ / sin_kappa(kappa_, rho);
    case ComparatorKind::flat_oscillatory: return rate_ * rate_ * rho - 0.25 / rho;
  }
  return 0.0;
}

double ComparatorSpec::value(double rho) const {
  if (!(rho > 0)) throw DomainError("comparator evaluated at rho <= 0");
  if (kind_ == ComparatorKind::flat_oscillatory)
    return (c1_ * std::cos(rate_ * rho) + c2_ * std::sin(rate_ * rho)) / std::sqrt(rho);
  const double r = log_t(rho) - log_t0_;
  if (kind_ == ComparatorKind::curved_oscillatory) return c1_ * std::cos(rate_ * r) + c2_ * std::sin(rate_ * r);
  return c1_ * std::exp(rate_ * r) + c2_ * std::exp(-rate_ * r);
}

double ComparatorSpec::derivative(double rho) const {
  if (!(rho > 0)) throw DomainError("comparator evaluated at rho <= 0");
  if (kind_ == ComparatorKind::flat_oscillatory) {
    const double c = std::cos(rate_ * rho);
    const double s = std::sin(rate_ * rho);
    const double root = std::sqrt(rho);
    return -0.5 * (c1_ * c + c2_ * s) / (rho * root) + rate_ * (-c1_ * s + c2_ * c) / root;
  }
  const double r = log_t(rho) - log_t0_;
  const double scale = rate_ * dlog_t(rho);
  if (kind_ == ComparatorKind::curved_oscillatory)
    return scale * (-c1_ * std::sin(rate_ * r) + c2_ * std::cos(rate_ * r));
  return scale * (c1_ * std::exp(rate_ * r) - c2_ * std::exp(-rate_ * r));
}

SturmSide comparator_side(const ComparatorSpec& spec, std::string name) {
  return {std::move(name), [spec](double x) { return spec.q(x); }, [spec](double x) { return spec.value(x); },
          [spec](double x) { return spec.derivative(x); }};
}

SturmSide profile_side(const RadialProfile& profile, double rho_ref, std::string name) {
  const ScaledValue ref = profile.at(rho_ref).L.abs();
  if (ref.is_zero()) throw DomainError("profile_side reference point is a zero of L");
  const double kappa = profile.kappa();
  const double m2 = profile.order() * profile.order();
  const RadialProfile* prof = &profile;
  return {std::move(name),
          [kappa, m2](double rho) {
            const double s = sin_kappa(kappa, rho);
            return (s * s - m2) / s;
          },
          [prof, ref](double rho) { return (prof->at(rho).L / ref).to_double(); },
          [prof, ref](double rho) { return (prof->at(rho).dL / ref).to_double(); }};
}

SturmSide bessel_side(const BesselTrajectory& bessel, double x_ref, std::string name) {
  const ScaledValue ref = bessel.at(x_ref).J.abs();
  if (ref.is_zero()) throw DomainError("bessel_side reference point is a zero of J");
  const double m2 = bessel.order() * bessel.order();
  const BesselTrajectory* traj = &bessel;
  return {std::move(name), [m2](double x) { return (x * x - m2) / x; },
          [traj, ref](double x) { return (traj->at(x).J / ref).to_double(); },
          [traj, ref](double x) { return (traj->at(x).dJ / ref).to_double(); }};
}

BoundReport sturm_dominates(const ScalarFunction& p, const SturmSide& low, const SturmSide& high, Interval iv) {
  require_interval(iv);
  const auto grid = uniform_grid(iv);
  for (double x : grid)
    if (!(p(x) > 0)) throw PreconditionError("p_positive", "p(" + fmt(x) + ") <= 0");

  for (double x : grid) {
    const double ql = low.q(x);
    const double qh = high.q(x);
    const double scale = std::max({std::fabs(ql), std::fabs(qh), std::numeric_limits<double>::min()});
    if (ql < qh - kSlack * scale)
      throw PreconditionError("q_ordering", low.name + " has the smaller q at " + fmt(x));
  }

  const double yl = low.y(iv.a), yh = high.y(iv.a);
  const double dl = low.dy(iv.a), dh = high.dy(iv.a);
  const double yscale = std::max({std::fabs(yl), std::fabs(yh), std::numeric_limits<double>::min()});
  const double dscale = std::max({std::fabs(dl), std::fabs(dh), std::numeric_limits<double>::min()});
  if (std::fabs(yl - yh) > kSlack * yscale || std::fabs(dl - dh) > kSlack * dscale)
    throw PreconditionError("initial_data", "values or derivatives differ at " + fmt(iv.a));
  if (yl < -kSlack * yscale || dl < -kSlack * dscale)
    throw PreconditionError("initial_sign", "initial data negative at " + fmt(iv.a));

  std::vector<double> ylow(grid.size()), yhigh(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    ylow[i] = low.y(grid[i]);
    yhigh[i] = high.y(grid[i]);
  }
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(ylow[i] > -kSlack * std::max(std::fabs(ylow[i]), std::fabs(yhigh[i]))))
      throw PreconditionError("low_positive", low.name + " is not positive at " + fmt(grid[i]));

  // Least relative margin (y_high - y_low) / max(|y_low|, |y_high|).
  std::size_t worst = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  bool ok = true;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double scale = std::max({std::fabs(ylow[i]), std::fabs(yhigh[i]), std::numeric_limits<double>::min()});
    const double margin = (yhigh[i] - ylow[i]) / scale;
    if (margin < worst_margin) {
      worst_margin = margin;
      worst = i;
    }
    if (ylow[i] > yhigh[i] + kSlack * scale) ok = false;
  }

  BoundReport r;
  r.kind = "sturm_dominates";
  r.params = {{"a", iv.a}, {"b", iv.b}, {"argmin", grid[worst]}};
  r.lhs = ScaledValue::from_double(ylow[worst]);
  r.rhs = ScaledValue::from_double(yhigh[worst]);
  r.margin = worst_margin;
  r.verdict = ok;
  r.note = low.name + " <= " + high.name;
  return r;
}

BoundReport picone_interlaces(const std::vector<double>& coarse, const std::vector<double>& fine, Interval iv) {
  require_interval(iv);
  if (!std::is_sorted(coarse.begin(), coarse.end()) || !std::is_sorted(fine.begin(), fine.end()))
    throw PreconditionError("sorted_zeros", "zero lists must be sorted ascending");

  std::vector<double> inside;
  for (double z : coarse)
    if (z >= iv.a && z <= iv.b) inside.push_back(z);

  int empty = 0;
  double clearance = 1.0;
  for (std::size_t i = 0; i + 1 < inside.size(); ++i) {
    const double z1 = inside[i], z2 = inside[i + 1];
    if (!(z2 > z1)) continue;  // coincident coarse zeros leave no open gap
    auto it = std::upper_bound(fine.begin(), fine.end(), z1);
    double best = -1.0;
    for (; it != fine.end() && *it < z2; ++it) best = std::max(best, std::min(*it - z1, z2 - *it) / (z2 - z1));
    if (best < 0) {
      ++empty;
      clearance = -1.0;
    } else if (clearance >= 0) {
      clearance = std::min(clearance, best);
    }
  }

  BoundReport r = make_le_report("picone_interlaces",
                                 {{"a", iv.a}, {"b", iv.b}, {"gaps", inside.empty() ? 0.0 : inside.size() - 1.0}},
                                 ScaledValue::from_double(empty), ScaledValue());
  r.margin = clearance;
  return r;
}

PqWitness radial_pq_witness(double kappa, Interval iv) {
  return {iv, [kappa](double rho) { return 2.0 * cos_kappa(kappa, rho) * sin_kappa(kappa, rho); }};
}

BoundReport sonin_polya_holds(const std::vector<Extremum>& envelope, const PqWitness& witness) {
  require_interval(witness.interval);
  const auto grid = uniform_grid(witness.interval);
  // Open interval: the derivative may vanish at the ends (e.g. at R_kappa).
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    if (!(witness.derivative(grid[i]) > 0))
      throw PreconditionError("pq_increasing", "(pq)' <= 0 at " + fmt(grid[i]));

  for (std::size_t i = 1; i < envelope.size(); ++i)
    if (envelope[i].rho < envelope[i - 1].rho)
      throw PreconditionError("sorted_zeros", "extrema envelope must be sorted by rho");

  std::vector<ScaledValue> values;
  for (const auto& e : envelope)
    if (e.rho > witness.interval.a && e.rho < witness.interval.b) values.push_back(e.value.abs());

  bool ok = true;
  ScaledValue worst_ratio;  // zero: vacuous
  for (std::size_t i = 1; i < values.size(); ++i) {
    const ScaledValue ratio = values[i] / values[i - 1];
    if (ratio > worst_ratio) worst_ratio = ratio;
    if (!(values[i] < values[i - 1] * (1.0 + kSlack))) ok = false;
  }

  BoundReport r;
  r.kind = "sonin_polya";
  r.params = {{"a", witness.interval.a}, {"b", witness.interval.b}, {"extrema", double(values.size())}};
  r.lhs = worst_ratio;
  r.rhs = ScaledValue::from_double(1.0);
  r.margin = 1.0 - worst_ratio.to_double();
  r.verdict = ok;
  return r;
}

}  // namespace helmholtz
