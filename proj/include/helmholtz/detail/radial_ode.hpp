#pragma once

// Integration core shared by the Bessel evaluator and the curved radial solver.
// The state is the raw pair (L, L') in renormalized units: the true value is
// state * exp(exponent), with the exponent bumped whenever the state leaves
// [e^-60, e^60].

#include <array>
#include <cstdint>
#include <vector>

namespace helmholtz::detail {

using State = std::array<double, 2>;

/// (sin_k L')' + ((sin_k^2 - m^2) / sin_k) L = 0 written as a first-order system
///   L'' = -cot_k L' - (1 - m^2 / sin_k^2) L.
class RadialSystem {
 public:
  RadialSystem(double kappa, double m) : kappa_(kappa), m2_(m * m) {}

  void operator()(const State& y, State& dy, double rho) const;

  /// Local length over which the solution changes by O(1): rho/m near the
  /// origin, 1 in the oscillatory region. Balances L and L' in the error norm.
  double length_scale(double rho) const;

  double kappa() const noexcept { return kappa_; }
  double m_squared() const noexcept { return m2_; }

 private:
  double kappa_;
  double m2_;
};

struct Node {
  double rho = 0.0;
  State y{};
  std::int64_t exponent = 0;
};

struct DriveOptions {
  double rtol = 1e-10;
  double atol = 1e-300;
  double h_max = 0.5;
  double h_init = 1e-3;
  long max_steps = 5'000'000;
};

struct RenormEvent {
  double rho;
  std::int64_t shift;
};

struct Trajectory {
  std::vector<Node> nodes;  ///< accepted step endpoints, including the start
  std::vector<RenormEvent> renormalizations;
};

/// Adaptive Runge-Kutta-Fehlberg 7(8) integration from start to rho_end.
/// Throws IntegrationError when the step size collapses.
Trajectory drive(const RadialSystem& sys, const Node& start, double rho_end, const DriveOptions& opts);

/// State at rho reached from `from` in one step (or a few equal sub-steps when
/// rho - from.rho exceeds max_step). Result is in the units of from.exponent.
State advance(const RadialSystem& sys, const Node& from, double rho, double max_step);

/// Bisection for the sign change of component (0 = L, 1 = L') inside
/// (from.rho, right], using single steps from `from`.
double refine_sign_change(const RadialSystem& sys, const Node& from, double right, int component, double tol,
                          double max_step);

/// Shift the state into [e^-60, e^60]; returns the exponent shift applied (0 if none).
std::int64_t renormalize(Node& node);

}  // namespace helmholtz::detail
