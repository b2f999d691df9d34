#include "helmholtz/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "helmholtz/errors.hpp"

namespace helmholtz {

namespace {

constexpr double kTrajectoryRtol = 1e-13;
constexpr double kMaxStep = 0.5;
constexpr double kScanStep = 0.2;

struct SeriesValue {
  double J;  // mantissa, true value J * exp(log_scale)
  double dJ;
  double log_scale;
};

// J_m(x) = (x/2)^m / Gamma(m+1) * sum_k t_k,  t_k = (-x^2/4)^k / (k! (m+1)_k)
SeriesValue bessel_series(double m, double x) {
  const double log_scale = m * std::log(0.5 * x) - std::lgamma(m + 1.0);
  const double q = 0.25 * x * x;
  double t = 1.0;
  double sum = 1.0;
  double dsum = m;
  for (int k = 1; k < 10000; ++k) {
    t *= -q / (k * (m + k));
    sum += t;
    dsum += (m + 2.0 * k) * t;
    if (k > 0.5 * x && std::fabs(t) < 1e-17 * std::fabs(sum)) break;
  }
  return {sum, dsum / x, log_scale};
}

BesselValue at_origin(double m) {
  if (m == 0.0) return {ScaledValue::from_double(1.0), ScaledValue{}};
  if (m == 1.0) return {ScaledValue{}, ScaledValue::from_double(0.5)};
  if (m < 1.0) throw DomainError("J_m'(0) is unbounded for 0 < m < 1");
  return {ScaledValue{}, ScaledValue{}};
}

BesselValue to_value(const SeriesValue& s) {
  return {ScaledValue::from_double(s.J) * ScaledValue::from_log(1, s.log_scale),
          ScaledValue::from_double(s.dJ) * ScaledValue::from_log(1, s.log_scale)};
}

detail::Node series_node(double m, double x) {
  const SeriesValue s = bessel_series(m, x);
  const double e = std::floor(s.log_scale);
  const double f = std::exp(s.log_scale - e);
  detail::Node n;
  n.rho = x;
  n.y = {s.J * f, s.dJ * f};
  n.exponent = static_cast<std::int64_t>(e);
  detail::renormalize(n);
  return n;
}

double bisect(const auto& f, double lo, double hi, double tol) {
  const bool lo_positive = f(lo) > 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double v = f(mid);
    if (v == 0.0) return mid;
    if ((v > 0.0) == lo_positive)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

BesselOrder::BesselOrder(double m) : m_(m) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("Bessel order must be a finite m >= 0");
}

double bessel_series_handoff(double m) { return 2.0 * std::sqrt(m + 1.0); }

BesselTrajectory::BesselTrajectory(double m, double x_end)
    : m_(BesselOrder(m).value()), x_end_(x_end), handoff_(bessel_series_handoff(m)), system_(0.0, m) {
  if (!(x_end >= 0.0)) throw DomainError("Bessel argument must be non-negative");
  if (x_end > handoff_) {
    detail::DriveOptions opts;
    opts.rtol = kTrajectoryRtol;
    opts.h_max = kMaxStep;
    opts.h_init = 0.05;
    nodes_ = detail::drive(system_, series_node(m_, handoff_), x_end, opts).nodes;
  }
}

BesselValue BesselTrajectory::at(double x) const {
  if (!(x >= 0.0)) throw DomainError("Bessel argument must be non-negative");
  if (x > x_end_ * (1.0 + 1e-14)) throw DomainError("Bessel argument beyond the trajectory end");
  if (x == 0.0) return at_origin(m_);
  if (x <= handoff_ || nodes_.empty()) return to_value(bessel_series(m_, x));
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x, [](double v, const detail::Node& n) { return v < n.rho; });
  const detail::Node& from = *std::prev(it);
  const detail::State y = detail::advance(system_, from, x, kMaxStep);
  return {ScaledValue::from_scaled(y[0], from.exponent), ScaledValue::from_scaled(y[1], from.exponent)};
}

std::vector<double> BesselTrajectory::roots(int component, double lo, double hi, double tol) const {
  std::vector<double> out;
  hi = std::min(hi, x_end_);
  if (hi <= lo) return out;

  // series region: sign scan on a grid finer than any zero spacing
  const double series_hi = nodes_.empty() ? hi : std::min(hi, handoff_);
  if (lo < series_hi) {
    auto f = [&](double x) {
      const SeriesValue s = bessel_series(m_, x);
      return component == 0 ? s.J : s.dJ;
    };
    double a = lo;
    double fa = (a == 0.0) ? f(1e-300 + 1e-12) : f(a);
    while (a < series_hi) {
      const double b = std::min(series_hi, a + kScanStep);
      const double fb = f(b);
      if (fb == 0.0) {
        out.push_back(b);
      } else if (fa != 0.0 && (fa > 0.0) != (fb > 0.0)) {
        out.push_back(bisect(f, a, b, tol * std::max(1.0, b)));
      }
      a = b;
      fa = fb;
    }
  }

  for (std::size_t i = 0; i + 1 < nodes_.size(); ++i) {
    const detail::Node& n0 = nodes_[i];
    const detail::Node& n1 = nodes_[i + 1];
    if (n1.rho <= lo || n0.rho >= hi) continue;
    const double v0 = n0.y[component];
    const double v1 = n1.y[component] * std::exp(static_cast<double>(n1.exponent - n0.exponent));
    if (v0 == 0.0 || (v0 > 0.0) == (v1 > 0.0)) continue;
    const double r = detail::refine_sign_change(system_, n0, n1.rho, component, tol * std::max(1.0, n1.rho), kMaxStep);
    if (r > lo && r <= hi) out.push_back(r);
  }
  std::sort(out.begin(), out.end());
  return out;
}

ScaledValue bessel_j(double m, double x) { return bessel_j_with_derivative(m, x).J; }

BesselValue bessel_j_with_derivative(double m, double x) {
  BesselOrder order(m);
  if (!(x >= 0.0)) throw DomainError("Bessel argument must be non-negative");
  if (x == 0.0) {
    if (m > 0.0 && m < 1.0) return {ScaledValue{}, ScaledValue{}};
    return at_origin(m);
  }
  if (x <= bessel_series_handoff(order.value())) return to_value(bessel_series(m, x));
  return BesselTrajectory(m, x).at(x);
}

ZeroBracket first_zero_bracket(double l) {
  if (!(l >= 0.0)) throw DomainError("first_zero_bracket: order must be non-negative");
  if (l == 0.0) return {2.0, 3.0, std::nullopt};
  return {l, l + (std::numbers::pi + 1.0) * std::cbrt(l), std::nullopt};
}

double first_zero(double l) {
  const ZeroBracket b = first_zero_bracket(l);
  // the bracket is only proven for l large enough; below l ~ 0.3 j_l exceeds it
  const double search_hi = std::max(b.hi, 3.2 + l);
  const BesselTrajectory traj(l, search_hi);
  const auto z = traj.roots(0, b.lo, search_hi);
  if (z.empty()) throw IntegrationError("first_zero: no sign change of J_l found; evaluator bug");
  return z.front();
}

std::vector<double> bessel_zeros(double m, double x_max) {
  const BesselTrajectory traj(m, x_max);
  return traj.roots(0, 0.0, x_max);
}

double bessel_first_extremum(double m) {
  if (!(m > 0.0)) throw DomainError("bessel_first_extremum: J_0 peaks at the origin");
  double hi = m + 4.2 * std::cbrt(m) + 4.0;
  for (int attempt = 0; attempt < 8; ++attempt, hi *= 2.0) {
    const BesselTrajectory traj(m, hi);
    const auto r = traj.roots(1, std::min(m, 0.5), hi);
    if (!r.empty()) return r.front();
  }
  throw IntegrationError("bessel_first_extremum: no critical point found");
}

ScaledValue bessel_max_function(double m, double rho) {
  BesselOrder order(m);
  if (!(rho >= 0.0)) throw DomainError("bessel_max_function: radius must be non-negative");
  if (m == 0.0) return ScaledValue::from_double(1.0);
  if (rho <= m) return bessel_j(m, rho);
  const double peak = bessel_first_extremum(m);
  return bessel_j(m, std::min(rho, peak));
}

}  // namespace helmholtz
