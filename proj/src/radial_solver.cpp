#include "helmholtz/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "helmholtz/errors.hpp"

namespace helmholtz {

namespace {

constexpr int kMaxFrobeniusTerms = 4000;

ScaledValue scaled(double mantissa, double log_scale) {
  return ScaledValue::from_double(mantissa) * ScaledValue::from_log(1, log_scale);
}

}  // namespace

ScaledValue FrobeniusStart::value() const { return scaled(L, log_scale); }
ScaledValue FrobeniusStart::derivative() const { return scaled(dL, log_scale); }

FrobeniusStart frobenius_start(double kappa, double m, double rho0) {
  if (!(m >= 0.0)) throw DomainError("frobenius_start: order must be non-negative");
  if (!(rho0 > 0.0)) throw DomainError("frobenius_start: start radius must be positive");
  if (kappa > 0.0 && rho0 >= std::numbers::pi / std::sqrt(kappa))
    throw DomainError("frobenius_start: start radius beyond the series' radius of convergence");

  // sin_k^2 = sum_{n>=1} S_n rho^{2n} and sin_k cos_k = sum_{n>=0} T_n rho^{2n+1}.
  // With L = a0 rho^m sum_j c_j rho^{2j}, b_j = c_j rho0^{2j}, sigma_n = S_n rho0^{2n-2}
  // and tau_n = T_n rho0^{2n}, the coefficient of rho^{m+2j} gives
  //   2j (2m+2j) b_j = -[sum_{n>=2} sigma_n q (q-1) b_{j-n+1} + sum_{n>=1} (tau_n q + rho0^2 sigma_n) b_{j-n}]
  // where q = m + 2 * (index of b).
  const double x = kappa * rho0 * rho0;
  const double r2 = rho0 * rho0;
  std::vector<double> sigma{0.0, 1.0};  // sigma_n = S_n rho0^{2n-2}
  std::vector<double> tau{1.0};         // tau_n = T_n rho0^{2n}
  std::vector<double> b{1.0};
  double sum_l = 1.0;
  double sum_d = m;
  int quiet = 0;
  int j = 1;
  for (; j < kMaxFrobeniusTerms; ++j) {
    while (static_cast<int>(sigma.size()) <= j + 1) {
      const double n = static_cast<double>(sigma.size());
      sigma.push_back(sigma.back() * (-4.0 * x) / ((2.0 * n - 1.0) * (2.0 * n)));
    }
    while (static_cast<int>(tau.size()) <= j) {
      const double n = static_cast<double>(tau.size());
      tau.push_back(tau.back() * (-4.0 * x) / ((2.0 * n) * (2.0 * n + 1.0)));
    }
    double rest = 0.0;
    if (x != 0.0) {
      for (int n = 2; n <= j + 1; ++n) {
        const int idx = j - n + 1;
        const double q = m + 2.0 * idx;
        rest += sigma[n] * b[idx] * q * (q - 1.0);
      }
    }
    for (int n = 1; n <= j; ++n) {
      const int idx = j - n;
      const double q = m + 2.0 * idx;
      rest += (tau[n] * q + r2 * sigma[n]) * b[idx];
      if (x == 0.0) break;
    }
    const double p = 2.0 * j;
    const double bj = -rest / (p * (2.0 * m + p));
    b.push_back(bj);
    sum_l += bj;
    sum_d += (m + p) * bj;
    const double size = std::fabs(bj) * (1.0 + m + p);
    if (size < 1e-17 * (std::fabs(sum_l) + std::fabs(sum_d))) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
    if (!std::isfinite(sum_l)) break;
  }
  if (j >= kMaxFrobeniusTerms || !std::isfinite(sum_l))
    throw IntegrationError("frobenius_start: series did not converge at rho0 = " + std::to_string(rho0));

  FrobeniusStart out;
  out.rho = rho0;
  out.log_scale = -m * std::numbers::ln2 - std::lgamma(m + 1.0) + m * std::log(rho0);
  out.L = sum_l;
  out.dL = sum_d / rho0;
  out.terms = j + 1;
  return out;
}

double series_handoff_radius(double kappa, double m, double rho_max) {
  double r = 2.0 * std::sqrt(m + 1.0);
  if (kappa != 0.0) r = std::min(r, 0.25 * std::numbers::pi / std::sqrt(std::fabs(kappa)));
  return std::min(r, 0.5 * rho_max);
}

std::vector<double> RadialProfile::grid() const {
  std::vector<double> g;
  g.reserve(nodes_.size());
  for (const auto& n : nodes_) g.push_back(n.rho);
  return g;
}

ProfilePoint RadialProfile::node_value(std::size_t i) const {
  const auto& n = nodes_.at(i);
  return {ScaledValue::from_scaled(n.y[0], n.exponent) * normalization_,
          ScaledValue::from_scaled(n.y[1], n.exponent) * normalization_};
}

ProfilePoint RadialProfile::at(double rho) const {
  if (!(rho >= 0.0)) throw DomainError("RadialProfile::at: radius must be non-negative");
  if (rho > rho_max_ * (1.0 + 1e-14)) throw DomainError("RadialProfile::at: radius beyond rho_max");
  if (rho == 0.0) {
    const double lead = std::exp(-m_ * std::numbers::ln2 - std::lgamma(m_ + 1.0));
    if (m_ == 0.0) return {normalization_, ScaledValue{}};
    if (m_ == 1.0) return {ScaledValue{}, ScaledValue::from_double(lead) * normalization_};
    return {ScaledValue{}, ScaledValue{}};
  }
  if (rho <= handoff_) {
    const FrobeniusStart s = frobenius_start(kappa(), m_, rho);
    return {s.value() * normalization_, s.derivative() * normalization_};
  }
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), rho, [](double v, const detail::Node& n) { return v < n.rho; });
  const detail::Node& from = *std::prev(it);
  const detail::State y = detail::advance(system_, from, rho, h_max_);
  return {ScaledValue::from_scaled(y[0], from.exponent) * normalization_,
          ScaledValue::from_scaled(y[1], from.exponent) * normalization_};
}

RadialProfile RadialProfile::scaled(const ScaledValue& factor) const {
  if (factor.sign() <= 0) throw DomainError("RadialProfile::scaled: factor must be positive");
  RadialProfile out = *this;
  out.normalization_ = normalization_ * factor;
  for (auto& e : out.extrema_) e.value = e.value * factor;
  return out;
}

RadialProfile integrate_radial(const CurvatureContext& ctx, double m, double rho_max, const Tolerances& tol) {
  if (!(m >= 0.0) || !std::isfinite(m)) throw DomainError("integrate_radial: order must be a finite m >= 0");
  if (!(rho_max > 0.0) || !std::isfinite(rho_max)) throw DomainError("integrate_radial: rho_max must be positive");
  const double kappa = ctx.kappa();
  if (!antipodal_radius(kappa).contains(rho_max))
    throw DomainError("integrate_radial: rho_max must stay below pi / sqrt(kappa) for kappa > 0");

  RadialProfile p(ctx, m);
  p.rho_max_ = rho_max;
  p.h_max_ = tol.h_max;
  p.handoff_ = series_handoff_radius(kappa, m, rho_max);

  const FrobeniusStart s = frobenius_start(kappa, m, p.handoff_);
  detail::Node start;
  start.rho = p.handoff_;
  const double e = std::floor(s.log_scale);
  const double f = std::exp(s.log_scale - e);
  start.y = {s.L * f, s.dL * f};
  start.exponent = static_cast<std::int64_t>(e);

  detail::DriveOptions opts;
  opts.rtol = tol.rtol;
  opts.atol = tol.atol;
  opts.h_max = tol.h_max;
  opts.h_init = std::min(tol.h_max, 0.05 * p.handoff_ / (1.0 + std::sqrt(m)));
  detail::Trajectory traj = detail::drive(p.system_, start, rho_max, opts);
  p.nodes_ = std::move(traj.nodes);
  p.renorm_ = std::move(traj.renormalizations);

  for (std::size_t i = 0; i + 1 < p.nodes_.size(); ++i) {
    const detail::Node& n0 = p.nodes_[i];
    const detail::Node& n1 = p.nodes_[i + 1];
    const double rel = std::exp(static_cast<double>(n1.exponent - n0.exponent));
    for (int component = 0; component < 2; ++component) {
      const double v0 = n0.y[component];
      const double v1 = n1.y[component] * rel;
      if (v0 == 0.0 || v1 == 0.0 || (v0 > 0.0) == (v1 > 0.0)) continue;
      const double r = detail::refine_sign_change(p.system_, n0, n1.rho, component, tol.event_tol, tol.h_max);
      if (component == 0) {
        p.zeros_.push_back(r);
      } else {
        const detail::State y = detail::advance(p.system_, n0, r, tol.h_max);
        const ScaledValue v = ScaledValue::from_scaled(y[0], n0.exponent);
        if (!p.extrema_.empty() && r - p.extrema_.back().rho < tol.merge_tol) {
          if (v.abs() > p.extrema_.back().value.abs()) p.extrema_.back() = {r, v};
        } else {
          p.extrema_.push_back({r, v});
        }
      }
    }
  }
  return p;
}

std::vector<Extremum> extrema_envelope(const RadialProfile& profile) {
  std::vector<Extremum> out;
  const Radius cutoff = cutoff_radii(profile.kappa()).monotone;
  if (profile.order() == 0.0) out.push_back({0.0, profile.at(0.0).L});
  for (const auto& e : profile.extrema())
    if (cutoff.contains(e.rho)) out.push_back(e);
  return out;
}

ScaledValue MaxFunction::operator()(double rho) const {
  if (!(rho >= 0.0)) throw DomainError("MaxFunction: radius must be non-negative");
  ScaledValue best = profile_->at(rho).L.abs();
  if (profile_->order() == 0.0) best = std::max(best, profile_->at(0.0).L.abs());
  for (const auto& e : profile_->extrema()) {
    if (e.rho > rho) break;
    best = std::max(best, e.value.abs());
  }
  return best;
}

void write_profile_csv(std::ostream& os, const RadialProfile& profile) {
  const auto old_precision = os.precision(17);
  os << "rho,sign,log_abs_L,log_abs_dL\n";
  for (std::size_t i = 0; i < profile.nodes().size(); ++i) {
    const ProfilePoint v = profile.node_value(i);
    os << profile.nodes()[i].rho << ',' << v.L.sign() << ',' << v.L.log_abs() << ',' << v.dL.log_abs() << '\n';
  }
  os.precision(old_precision);
}

}  // namespace helmholtz
