#include "helmholtz/detail/radial_ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/numeric/odeint/stepper/runge_kutta_fehlberg78.hpp>

#include "helmholtz/curvature.hpp"
#include "helmholtz/errors.hpp"

namespace helmholtz::detail {

namespace {

using Stepper = boost::numeric::odeint::runge_kutta_fehlberg78<State>;

constexpr double kRenormBound = 60.0;

struct Coefficients {
  double cot;
  double inv_sin2;
};

Coefficients coefficients(double kappa, double rho) {
  if (kappa < 0.0 && std::sqrt(-kappa) * rho > 350.0) return {std::sqrt(-kappa), 0.0};
  const double s = sin_kappa(kappa, rho);
  return {cot_kappa(kappa, rho), 1.0 / (s * s)};
}

}  // namespace

void RadialSystem::operator()(const State& y, State& dy, double rho) const {
  const Coefficients c = coefficients(kappa_, rho);
  dy[0] = y[1];
  dy[1] = -c.cot * y[1] - (1.0 - m2_ * c.inv_sin2) * y[0];
}

double RadialSystem::length_scale(double rho) const {
  const Coefficients c = coefficients(kappa_, rho);
  return 1.0 / std::sqrt(1.0 + m2_ * c.inv_sin2);
}

std::int64_t renormalize(Node& node) {
  const double mag = std::max(std::fabs(node.y[0]), std::fabs(node.y[1]));
  if (mag == 0.0) return 0;
  const double lg = std::log(mag);
  if (lg <= kRenormBound && lg >= -kRenormBound) return 0;
  const auto shift = static_cast<std::int64_t>(std::llround(lg));
  const double factor = std::exp(-static_cast<double>(shift));
  node.y[0] *= factor;
  node.y[1] *= factor;
  node.exponent += shift;
  return shift;
}

Trajectory drive(const RadialSystem& sys, const Node& start, double rho_end, const DriveOptions& opts) {
  Trajectory traj;
  Node cur = start;
  if (const auto shift = renormalize(cur); shift != 0) traj.renormalizations.push_back({cur.rho, shift});
  traj.nodes.push_back(cur);
  if (rho_end <= cur.rho) return traj;

  Stepper stepper;
  double h = std::min(opts.h_init, opts.h_max);
  long steps = 0;
  while (cur.rho < rho_end) {
    if (++steps > opts.max_steps) throw IntegrationError("radial integration exceeded the step budget");
    const double remaining = rho_end - cur.rho;
    const bool last = h >= remaining;
    const double step = last ? remaining : h;

    State out{}, err{};
    stepper.do_step(sys, cur.y, cur.rho, out, step, err);

    const double ell = sys.length_scale(cur.rho + step);
    const double scale_l = std::fabs(cur.y[0]) + std::fabs(out[0]) + ell * (std::fabs(cur.y[1]) + std::fabs(out[1]));
    const double scale_d = std::fabs(cur.y[1]) + std::fabs(out[1]) + (std::fabs(cur.y[0]) + std::fabs(out[0])) / ell;
    const double e = std::max(std::fabs(err[0]) / (opts.atol + opts.rtol * 0.5 * scale_l),
                              std::fabs(err[1]) / (opts.atol + opts.rtol * 0.5 * scale_d));
    if (!std::isfinite(e)) {
      h = 0.25 * step;
    } else if (e <= 1.0) {
      cur.rho = last ? rho_end : cur.rho + step;
      cur.y = out;
      if (const auto shift = renormalize(cur); shift != 0) traj.renormalizations.push_back({cur.rho, shift});
      traj.nodes.push_back(cur);
      const double grow = (e == 0.0) ? 4.0 : std::min(4.0, 0.9 * std::pow(e, -1.0 / 8.0));
      h = std::min(opts.h_max, step * grow);
      continue;
    } else {
      h = step * std::max(0.2, 0.9 * std::pow(e, -1.0 / 8.0));
    }
    if (h < 1e-14 * std::max(1.0, cur.rho))
      throw IntegrationError("radial integration step size collapsed at rho = " + std::to_string(cur.rho));
  }
  return traj;
}

State advance(const RadialSystem& sys, const Node& from, double rho, double max_step) {
  const double dist = rho - from.rho;
  if (dist == 0.0) return from.y;
  const int pieces = std::max(1, static_cast<int>(std::ceil(std::fabs(dist) / max_step - 1e-12)));
  const double h = dist / pieces;
  Stepper stepper;
  State y = from.y;
  double t = from.rho;
  for (int i = 0; i < pieces; ++i) {
    State out{};
    stepper.do_step(sys, y, t, out, h);
    y = out;
    t = (i + 1 == pieces) ? rho : t + h;
  }
  return y;
}

double refine_sign_change(const RadialSystem& sys, const Node& from, double right, int component, double tol,
                          double max_step) {
  double lo = from.rho;
  double hi = right;
  const double s_lo = from.y[component];
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double v = advance(sys, from, mid, max_step)[component];
    if (v == 0.0) return mid;
    if ((v > 0.0) == (s_lo > 0.0))
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace helmholtz::detail
