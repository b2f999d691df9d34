#pragma once

#include <cmath>
#include <vector>

#include "helmholtz/errors.hpp"

namespace helmholtz {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule by Newton iteration on the Legendre recurrence.
GaussLegendreRule gauss_legendre(int n);

/// Shared 20-point rule; built once, read-only afterwards.
const GaussLegendreRule& gauss_legendre_20();

template <class F>
double gauss_legendre_panel(const F& f, double a, double b, const GaussLegendreRule& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

namespace detail {

template <class F>
double adaptive_panel(const F& f, double a, double b, double whole, double rel_tol, int depth,
                      const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_legendre_panel(f, a, mid, rule);
  const double right = gauss_legendre_panel(f, mid, b, rule);
  const double refined = left + right;
  if (std::fabs(refined - whole) <= rel_tol * std::fabs(refined) || std::fabs(refined - whole) < 1e-300) return refined;
  if (depth == 0) throw IntegrationError("adaptive Gauss-Legendre quadrature did not converge");
  return adaptive_panel(f, a, mid, left, rel_tol, depth - 1, rule) +
         adaptive_panel(f, mid, b, right, rel_tol, depth - 1, rule);
}

}  // namespace detail

/// Adaptive bisection of [a, b] with 20-point panels until each panel agrees
/// with its two halves to rel_tol. Throws IntegrationError past max_depth.
template <class F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol = 1e-10, int max_depth = 30) {
  if (a == b) return 0.0;
  const auto& rule = gauss_legendre_20();
  const double whole = gauss_legendre_panel(f, a, b, rule);
  return detail::adaptive_panel(f, a, b, whole, rel_tol, max_depth, rule);
}

}  // namespace helmholtz
