#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace jrmt {

/// Real number stored as mantissa * 2^exponent with |mantissa| in [1, 2) or
/// mantissa == 0. Products and sums never overflow for any representable
/// exponent, which keeps Jacobi recurrences with parameters of order n finite.
class ScaledValue {
 public:
  constexpr ScaledValue() = default;

  ScaledValue(double v) { assign(v, 0); }  // NOLINT(google-explicit-constructor)

  static ScaledValue from_parts(double mantissa, std::int64_t exponent) {
    ScaledValue s;
    s.assign(mantissa, exponent);
    return s;
  }

  /// sign * e^{log_abs}.
  static ScaledValue from_log(double log_abs, int sign = 1) {
    if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return {};
    const double l2 = log_abs / std::numbers::ln2;
    const double k = std::floor(l2);
    ScaledValue s;
    s.assign((sign < 0 ? -1.0 : 1.0) * std::exp2(l2 - k), static_cast<std::int64_t>(k));
    return s;
  }

  double mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }
  int sign() const { return (mant_ > 0) - (mant_ < 0); }
  bool is_zero() const { return mant_ == 0.0; }

  /// log|value|; -inf for zero.
  double log_abs() const {
    if (mant_ == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(std::abs(mant_)) + static_cast<double>(exp_) * std::numbers::ln2;
  }
  /// Natural-log scale paired with the mantissa: value = mantissa * e^{log_scale}.
  double log_scale() const { return static_cast<double>(exp_) * std::numbers::ln2; }

  double to_double() const {
    if (mant_ == 0.0) return 0.0;
    if (exp_ > 2000) return sign() * std::numeric_limits<double>::infinity();
    if (exp_ < -2000) return sign() * 0.0;
    return std::ldexp(mant_, static_cast<int>(exp_));
  }
  explicit operator double() const { return to_double(); }

  ScaledValue operator-() const { return from_parts(-mant_, exp_); }

  friend ScaledValue operator*(const ScaledValue& x, const ScaledValue& y) {
    return from_parts(x.mant_ * y.mant_, x.exp_ + y.exp_);
  }
  friend ScaledValue operator/(const ScaledValue& x, const ScaledValue& y) {
    return from_parts(x.mant_ / y.mant_, x.exp_ - y.exp_);
  }
  friend ScaledValue operator+(const ScaledValue& x, const ScaledValue& y) {
    if (x.mant_ == 0.0) return y;
    if (y.mant_ == 0.0) return x;
    const bool x_big = x.exp_ >= y.exp_;
    const ScaledValue& hi = x_big ? x : y;
    const ScaledValue& lo = x_big ? y : x;
    const std::int64_t gap = hi.exp_ - lo.exp_;
    if (gap > 1100) return hi;
    return from_parts(hi.mant_ + std::ldexp(lo.mant_, -static_cast<int>(gap)), hi.exp_);
  }
  friend ScaledValue operator-(const ScaledValue& x, const ScaledValue& y) { return x + (-y); }

  ScaledValue& operator*=(const ScaledValue& o) { return *this = *this * o; }
  ScaledValue& operator/=(const ScaledValue& o) { return *this = *this / o; }
  ScaledValue& operator+=(const ScaledValue& o) { return *this = *this + o; }
  ScaledValue& operator-=(const ScaledValue& o) { return *this = *this - o; }

  ScaledValue abs() const { return from_parts(std::abs(mant_), exp_); }

  /// sqrt of a nonnegative value.
  ScaledValue sqrt() const {
    if (mant_ <= 0.0) return mant_ == 0.0 ? ScaledValue{} : from_parts(std::nan(""), 0);
    const bool odd = (exp_ % 2) != 0;
    const std::int64_t half = (exp_ - (odd ? 1 : 0)) / 2;
    return from_parts(std::sqrt(odd ? 2.0 * mant_ : mant_), half);
  }

 private:
  void assign(double m, std::int64_t e) {
    if (m == 0.0 || !std::isfinite(m)) {
      mant_ = m == 0.0 ? 0.0 : m;
      exp_ = 0;
      return;
    }
    int k = 0;
    const double f = std::frexp(m, &k);  // |f| in [0.5, 1)
    mant_ = 2.0 * f;
    exp_ = e + k - 1;
  }

  double mant_ = 0.0;
  std::int64_t exp_ = 0;
};

}  // namespace jrmt
