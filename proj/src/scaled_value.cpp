#include "helmholtz/scaled_value.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "helmholtz/errors.hpp"

namespace helmholtz {

namespace {
constexpr double kE = 2.718281828459045235360287;
}

ScaledValue ScaledValue::from_log(int sign, double log_abs) {
  ScaledValue v;
  if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return v;
  if (!std::isfinite(log_abs)) throw DomainError("ScaledValue: non-finite logarithm");
  const double e = std::floor(log_abs);
  double mant = std::exp(log_abs - e);
  auto exponent = static_cast<std::int64_t>(e);
  if (mant >= kE) {
    mant /= kE;
    ++exponent;
  }
  if (mant < 1.0) mant = 1.0;
  v.sign_ = sign > 0 ? 1 : -1;
  v.mantissa_ = mant;
  v.exponent_ = exponent;
  return v;
}

ScaledValue ScaledValue::from_double(double v) {
  if (v == 0.0) return {};
  if (!std::isfinite(v)) throw DomainError("ScaledValue: non-finite input");
  return from_log(v > 0 ? 1 : -1, std::log(std::fabs(v)));
}

ScaledValue ScaledValue::from_scaled(double v, std::int64_t exponent) {
  if (v == 0.0) return {};
  ScaledValue s = from_double(v);
  s.exponent_ += exponent;
  return s;
}

double ScaledValue::log_abs() const noexcept {
  if (sign_ == 0) return -std::numeric_limits<double>::infinity();
  return std::log(mantissa_) + static_cast<double>(exponent_);
}

double ScaledValue::to_double() const noexcept {
  if (sign_ == 0) return 0.0;
  return sign_ * std::exp(log_abs());
}

ScaledValue ScaledValue::abs() const noexcept {
  ScaledValue v = *this;
  if (v.sign_ < 0) v.sign_ = 1;
  return v;
}

ScaledValue ScaledValue::operator-() const noexcept {
  ScaledValue v = *this;
  v.sign_ = -v.sign_;
  return v;
}

ScaledValue ScaledValue::operator*(const ScaledValue& o) const noexcept {
  if (sign_ == 0 || o.sign_ == 0) return {};
  ScaledValue v = from_log(sign_ * o.sign_, std::log(mantissa_) + std::log(o.mantissa_));
  v.exponent_ += exponent_ + o.exponent_;
  return v;
}

ScaledValue ScaledValue::operator/(const ScaledValue& o) const {
  if (o.sign_ == 0) throw DomainError("ScaledValue: division by zero");
  if (sign_ == 0) return {};
  ScaledValue v = from_log(sign_ * o.sign_, std::log(mantissa_) - std::log(o.mantissa_));
  v.exponent_ += exponent_ - o.exponent_;
  return v;
}

ScaledValue ScaledValue::operator*(double s) const noexcept {
  if (s == 0.0 || sign_ == 0) return {};
  return *this * from_double(s);
}

ScaledValue ScaledValue::operator+(const ScaledValue& o) const noexcept {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  const ScaledValue& big = (o.abs() > abs()) ? o : *this;
  const ScaledValue& small = (&big == this) ? o : *this;
  const double shift = static_cast<double>(small.exponent_ - big.exponent_) + std::log(small.mantissa_) -
                       std::log(big.mantissa_);  // <= 0
  const double ratio = small.sign_ * big.sign_ * std::exp(shift);
  const double factor = 1.0 + ratio;
  if (factor == 0.0) return {};
  ScaledValue v = from_log(big.sign_ * (factor > 0 ? 1 : -1), std::log(big.mantissa_) + std::log(std::fabs(factor)));
  v.exponent_ += big.exponent_;
  return v;
}

ScaledValue ScaledValue::operator-(const ScaledValue& o) const noexcept { return *this + (-o); }

ScaledValue ScaledValue::pow(double p) const {
  if (p == 0.0) return from_double(1.0);
  if (sign_ <= 0) throw DomainError("ScaledValue::pow requires a positive base");
  return from_log(1, p * log_abs());
}

bool operator==(const ScaledValue& a, const ScaledValue& b) noexcept {
  return a.sign_ == b.sign_ && a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
}

bool operator<(const ScaledValue& a, const ScaledValue& b) noexcept {
  if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
  if (a.sign_ == 0) return false;
  const bool mag_less = (a.exponent_ != b.exponent_) ? a.exponent_ < b.exponent_ : a.mantissa_ < b.mantissa_;
  const bool mag_equal = a.exponent_ == b.exponent_ && a.mantissa_ == b.mantissa_;
  if (mag_equal) return false;
  return a.sign_ > 0 ? mag_less : !mag_less;
}

double relative_difference(const ScaledValue& a, const ScaledValue& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  const ScaledValue scale = std::max(a.abs(), b.abs());
  return ((a - b).abs() / scale).to_double();
}

std::ostream& operator<<(std::ostream& os, const ScaledValue& v) {
  if (v.is_zero()) return os << "0";
  return os << (v.sign() < 0 ? "-" : "") << v.mantissa() << "e^" << v.exponent();
}

}  // namespace helmholtz
