#pragma once

#include <cstdint>
#include <iosfwd>

namespace helmholtz {

/// A real number stored as sign * mantissa * e^exponent with mantissa in [1, e).
///
/// Radial profiles grow like rho^m near the origin and span hundreds of orders
/// of magnitude for the orders used in the three-ball experiments, far outside
/// the range of a double. All arithmetic here is multiplicative or goes
/// through logarithms, so nothing overflows.
class ScaledValue {
 public:
  ScaledValue() = default;  // zero

  static ScaledValue from_double(double v);
  /// sign * exp(log_abs). sign == 0 gives zero regardless of log_abs.
  static ScaledValue from_log(int sign, double log_abs);
  /// v * exp(exponent); convenient for renormalized ODE states.
  static ScaledValue from_scaled(double v, std::int64_t exponent);

  int sign() const noexcept { return sign_; }
  double mantissa() const noexcept { return mantissa_; }
  std::int64_t exponent() const noexcept { return exponent_; }
  bool is_zero() const noexcept { return sign_ == 0; }

  /// log|value|; -infinity for zero.
  double log_abs() const noexcept;
  /// Nearest double; saturates to +-inf / 0 outside the double range.
  double to_double() const noexcept;

  ScaledValue abs() const noexcept;
  ScaledValue operator-() const noexcept;
  ScaledValue operator*(const ScaledValue& o) const noexcept;
  ScaledValue operator/(const ScaledValue& o) const;
  ScaledValue operator+(const ScaledValue& o) const noexcept;
  ScaledValue operator-(const ScaledValue& o) const noexcept;
  ScaledValue operator*(double s) const noexcept;
  /// |value|^p; requires value > 0 unless p == 0.
  ScaledValue pow(double p) const;

  friend bool operator==(const ScaledValue& a, const ScaledValue& b) noexcept;
  friend bool operator<(const ScaledValue& a, const ScaledValue& b) noexcept;
  friend bool operator<=(const ScaledValue& a, const ScaledValue& b) noexcept { return !(b < a); }
  friend bool operator>(const ScaledValue& a, const ScaledValue& b) noexcept { return b < a; }
  friend bool operator>=(const ScaledValue& a, const ScaledValue& b) noexcept { return !(a < b); }

 private:
  int sign_ = 0;
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

/// |a - b| / max(|a|, |b|), computed in log space. Zero when both are zero.
double relative_difference(const ScaledValue& a, const ScaledValue& b);

std::ostream& operator<<(std::ostream& os, const ScaledValue& v);

}  // namespace helmholtz
