#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "jrmt/error.hpp"
#include "jrmt/scaled_value.hpp"

namespace jrmt {

struct JacobiParams {
  int n = 0;
  double a = 0.0;
  double b = 0.0;
};

namespace detail {

inline void check_jacobi(int n, double a, double b, const char* who) {
  if (n < 0 || !(a >= 0.0) || !(b >= 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw ParameterError(std::string(who) + ": need n >= 0 and finite a, b >= 0");
}

}  // namespace detail

/// (P_n, P_{n-1}) at x by the forward three-term recurrence. The pair shares
/// a binary exponent that is rebalanced whenever the leading value leaves
/// [2^-600, 2^600]. P_{-1} is 0.
struct JacobiPair {
  ScaledValue p_n;
  ScaledValue p_prev;
};

inline JacobiPair jacobi_pair(int n, double a, double b, double x) {
  detail::check_jacobi(n, a, b, "jacobi_eval");
  if (n == 0) return {ScaledValue(1.0), ScaledValue(0.0)};
  double prev = 1.0;
  double cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) * 0.5;
  std::int64_t scale = 0;
  const double big = 0x1p600, small = 0x1p-600;
  for (int k = 2; k <= n; ++k) {
    const double c = 2.0 * k + a + b;
    const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
    const double a2 = (c - 1.0) * (a * a - b * b);
    const double a3 = (c - 2.0) * (c - 1.0) * c;
    const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
    const double next = ((a2 + a3 * x) * cur - a4 * prev) / a1;
    prev = cur;
    cur = next;
    const double m = std::max(std::abs(cur), std::abs(prev));
    if (m > big || (m < small && m > 0.0)) {
      int e = 0;
      std::frexp(m, &e);
      cur = std::ldexp(cur, -e);
      prev = std::ldexp(prev, -e);
      scale += e;
    }
  }
  return {ScaledValue::from_parts(cur, scale), ScaledValue::from_parts(prev, scale)};
}

/// P_n^{a,b}(x), normalized so that P_n(1) = C(n+a, n).
inline ScaledValue jacobi_eval(const JacobiParams& p, double x) {
  return jacobi_pair(p.n, p.a, p.b, x).p_n;
}

/// k-th derivative: 2^{-k} (n+a+b+1)_k P_{n-k}^{a+k,b+k}(x).
inline ScaledValue jacobi_deriv_k(const JacobiParams& p, int k, double x) {
  detail::check_jacobi(p.n, p.a, p.b, "jacobi_deriv");
  if (k < 0) throw ParameterError("jacobi_deriv: derivative order must be >= 0");
  if (k > p.n) return ScaledValue(0.0);
  ScaledValue factor(1.0);
  for (int j = 0; j < k; ++j) factor *= ScaledValue(0.5 * (p.n + p.a + p.b + 1.0 + j));
  return factor * jacobi_eval({p.n - k, p.a + k, p.b + k}, x);
}

inline ScaledValue jacobi_deriv(const JacobiParams& p, double x) {
  return jacobi_deriv_k(p, 1, x);
}

/// (1-x)^a (1+x)^b for x in [-1, 1], with 0^0 = 1.
inline ScaledValue weight(double a, double b, double x) {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError("weight: x must lie in [-1, 1]");
  if (!(a >= 0.0) || !(b >= 0.0)) throw ParameterError("weight: exponents must be >= 0");
  if ((x == 1.0 && a > 0.0) || (x == -1.0 && b > 0.0)) return ScaledValue(0.0);
  double l = 0.0;
  if (a > 0.0) l += a * std::log1p(-x);
  if (b > 0.0) l += b * std::log1p(x);
  return ScaledValue::from_log(l);
}

/// Christoffel–Darboux prefactor
/// 2^{-a-b} / (2n+a+b) * Γ(n+1)Γ(n+a+b+1) / (Γ(n+a)Γ(n+b)).
inline ScaledValue gamma_n(int n, double a, double b) {
  detail::check_jacobi(n, a, b, "gamma_n");
  if (n < 1) throw ParameterError("gamma_n: need n >= 1");
  const double l = -(a + b) * std::numbers::ln2 - std::log(2.0 * n + a + b) +
                   std::lgamma(n + 1.0) + std::lgamma(n + a + b + 1.0) -
                   std::lgamma(n + a) - std::lgamma(n + b);
  return ScaledValue::from_log(l);
}

/// Large-n approximant of gamma_n with alpha = a/n, beta = b/n.
inline ScaledValue gamma_n_stirling(int n, double a, double b) {
  detail::check_jacobi(n, a, b, "gamma_n_stirling");
  if (n < 1) throw ParameterError("gamma_n_stirling: need n >= 1");
  const double al = a / n, be = b / n;
  const double l = std::log(static_cast<double>(n)) - (a + b) * std::numbers::ln2 +
                   (n + a + b + 0.5) * std::log1p(al + be) -
                   (n + a - 0.5) * std::log1p(al) - (n + b - 0.5) * std::log1p(be) -
                   std::log(2.0 + al + be);
  return ScaledValue::from_log(l);
}

namespace detail {

inline void check_open_interval(double x, const char* who) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError(std::string(who) + ": x must lie in (-1, 1)");
}

}  // namespace detail

/// Coefficient of the normal form g'' + chi g = 0 satisfied by
/// g_n = (1-x)^{(a+1)/2} (1+x)^{(b+1)/2} P_n^{a,b}.
inline double chi(int n, double a, double b, double x) {
  detail::check_open_interval(x, "chi");
  const double c = 2.0 * n * (n + a + b + 1.0) + (a + 1.0) * (b + 1.0);
  return (1.0 - a * a) / (4.0 * (1.0 - x) * (1.0 - x)) +
         (1.0 - b * b) / (4.0 * (1.0 + x) * (1.0 + x)) + c / (2.0 * (1.0 - x * x));
}

inline double chi_prime(int n, double a, double b, double x) {
  detail::check_open_interval(x, "chi_prime");
  const double c = 2.0 * n * (n + a + b + 1.0) + (a + 1.0) * (b + 1.0);
  const double om = 1.0 - x, op = 1.0 + x, q = 1.0 - x * x;
  return (1.0 - a * a) / (2.0 * om * om * om) - (1.0 - b * b) / (2.0 * op * op * op) +
         c * x / (q * q);
}

inline ScaledValue g_n(int n, double a, double b, double x) {
  return weight(0.5 * (a + 1.0), 0.5 * (b + 1.0), x) * jacobi_eval({n, a, b}, x);
}

/// Oscillatory-region data at alpha = a/n, beta = b/n. The angles are the
/// arguments of x - t, 1 - t and 1 + t at the lower saddle point t.
struct InteriorAsymptotics {
  double Delta = 0.0;
  double rho = 0.0;
  double theta = 0.0;
  double gamma = 0.0;
};

inline double interior_delta(double alpha, double beta, double x) {
  const double s = alpha * (x + 1.0) + beta * (x - 1.0);
  return s * s - 4.0 * (1.0 + alpha + beta) * (1.0 - x * x);
}

namespace detail {

inline std::complex<double> upper_saddle(double al, double be, double x, double delta) {
  return {((al + be + 2.0) * x + be - al) / (2.0 * (1.0 + al + be)),
          std::sqrt(-delta) / (2.0 * (1.0 + al + be))};
}

}  // namespace detail

inline InteriorAsymptotics interior_angles(int n, double a, double b, double x) {
  detail::check_jacobi(n, a, b, "interior_angles");
  detail::check_open_interval(x, "interior_angles");
  if (n < 1) throw ParameterError("interior_angles: need n >= 1");
  const double al = a / n, be = b / n;
  InteriorAsymptotics r;
  r.Delta = interior_delta(al, be, x);
  if (!(r.Delta < 0.0)) throw DomainError("interior_angles: Delta >= 0 (outside oscillatory region)");
  const std::complex<double> t = std::conj(detail::upper_saddle(al, be, x, r.Delta));
  r.rho = std::arg(x - t);
  r.theta = std::arg(1.0 - t);
  r.gamma = std::arg(1.0 + t);
  return r;
}

/// Leading steepest-descent term of P_n^{a,b}(x) in the oscillatory region.
/// Relative error O(1/n) away from the zeros of the cosine factor.
inline ScaledValue interior_asymptotic(int n, double a, double b, double x) {
  const InteriorAsymptotics ang = interior_angles(n, a, b, x);
  using C = std::complex<double>;
  const double al = a / n, be = b / n;
  const C t = detail::upper_saddle(al, be, x, ang.Delta);
  const C phi2 = -(1.0 + al) / ((1.0 - t) * (1.0 - t)) - (1.0 + be) / ((1.0 + t) * (1.0 + t)) +
                 1.0 / ((t - x) * (t - x));
  const double logmag = n * ((1.0 + al) * std::log(std::abs(1.0 - t)) +
                             (1.0 + be) * std::log(std::abs(1.0 + t)) - std::numbers::ln2 -
                             std::log(std::abs(x - t)));
  const double phase =
      n * ((1.0 + al) * std::arg(1.0 - t) + (1.0 + be) * std::arg(1.0 + t) - std::arg(x - t));
  C dir = std::exp(C(0.0, 0.5 * (std::numbers::pi - std::arg(phi2))));
  if (dir.real() > 0.0) dir = -dir;
  const C c = std::exp(C(0.0, phase)) / (t - x) * dir *
              std::sqrt(2.0 * std::numbers::pi / (n * std::abs(phi2)));
  const double osc = c.imag() / std::numbers::pi;
  if (osc == 0.0) return ScaledValue(0.0);
  const double log_w = a * std::log1p(-x) + b * std::log1p(x);
  return ScaledValue::from_log(logmag - log_w + std::log(std::abs(osc)), osc > 0 ? 1 : -1);
}

}  // namespace jrmt
