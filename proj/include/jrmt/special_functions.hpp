#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <vector>

#include "jrmt/error.hpp"

namespace jrmt {

struct AiryValues {
  double ai = 0.0;
  double ai_prime = 0.0;
  double bi = 0.0;
  double bi_prime = 0.0;
};

namespace detail {

inline AiryValues airy_maclaurin(double xd) {
  using L = long double;
  const L x = xd;
  const L x3 = x * x * x;
  // c1 = Ai(0), c2 = -Ai'(0).
  const L c1 = 0.355028053887817239260063186004183176L;
  const L c2 = 0.258819403792806798405183560189203963L;
  L tf = 1, tg = x, tfp = x * x / 2, tgp = 1;
  L f = tf, g = tg, fp = tfp, gp = tgp;
  for (int k = 0; k < 200; ++k) {
    tf *= x3 / ((3 * k + 2) * (3 * k + 3));
    tg *= x3 / ((3 * k + 3) * (3 * k + 4));
    tfp *= x3 / ((3 * (k + 1)) * (3 * (k + 1) + 2));
    tgp *= x3 / ((3 * k + 1) * (3 * k + 3));
    f += tf;
    g += tg;
    fp += tfp;
    gp += tgp;
    const L tol = 1e-22L;
    if (std::abs(tf) <= tol * std::abs(f) && std::abs(tg) <= tol * std::abs(g) &&
        std::abs(tfp) <= tol * std::max<L>(std::abs(fp), 1) &&
        std::abs(tgp) <= tol * std::abs(gp))
      break;
  }
  const L sqrt3 = 1.73205080756887729352744634150587237L;
  return {static_cast<double>(c1 * f - c2 * g), static_cast<double>(c1 * fp - c2 * gp),
          static_cast<double>(sqrt3 * (c1 * f + c2 * g)),
          static_cast<double>(sqrt3 * (c1 * fp + c2 * gp))};
}

// u_k and v_k of the large-argument expansions, k = 0..count-1.
inline void airy_asymptotic_coeffs(int count, std::vector<double>& u, std::vector<double>& v) {
  u.assign(count, 1.0);
  v.assign(count, 1.0);
  for (int k = 1; k < count; ++k) {
    u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
           ((2.0 * k - 1.0) * 216.0 * k);
    v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
  }
}

// Sum of sign^k c_k / zeta^k over k = start, start+step, ...; stops at the
// smallest term.
inline double asymptotic_sum(const std::vector<double>& c, double zeta, int start, int step,
                             bool alternate) {
  double sum = 0.0, last = INFINITY;
  int idx = 0;
  for (std::size_t k = start; k < c.size(); k += step, ++idx) {
    const double term = c[k] / std::pow(zeta, static_cast<double>(k));
    if (std::abs(term) > last) break;
    sum += (alternate && (idx % 2 == 1)) ? -term : term;
    last = std::abs(term);
    if (last < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

inline AiryValues airy_asymptotic(double x) {
  std::vector<double> u, v;
  airy_asymptotic_coeffs(60, u, v);
  const double sqpi = std::sqrt(std::numbers::pi);
  const double z = std::abs(x);
  const double q = std::pow(z, 0.25);
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  AiryValues r;
  if (x > 0.0) {
    // Alternating signs for Ai, plain for Bi.
    std::vector<double> ua(u), va(v);
    for (std::size_t k = 1; k < u.size(); k += 2) {
      ua[k] = -ua[k];
      va[k] = -va[k];
    }
    const double e = std::exp(-zeta);
    r.ai = e / (2.0 * sqpi * q) * asymptotic_sum(ua, zeta, 0, 1, false);
    r.ai_prime = -q * e / (2.0 * sqpi) * asymptotic_sum(va, zeta, 0, 1, false);
    r.bi = 1.0 / (e * sqpi * q) * asymptotic_sum(u, zeta, 0, 1, false);
    r.bi_prime = q / (e * sqpi) * asymptotic_sum(v, zeta, 0, 1, false);
  } else {
    const double c = std::cos(zeta - std::numbers::pi / 4.0);
    const double s = std::sin(zeta - std::numbers::pi / 4.0);
    const double ue = asymptotic_sum(u, zeta, 0, 2, true);
    const double uo = asymptotic_sum(u, zeta, 1, 2, true);
    const double ve = asymptotic_sum(v, zeta, 0, 2, true);
    const double vo = asymptotic_sum(v, zeta, 1, 2, true);
    r.ai = (c * ue + s * uo) / (sqpi * q);
    r.ai_prime = q / sqpi * (s * ve - c * vo);
    r.bi = (-s * ue + c * uo) / (sqpi * q);
    r.bi_prime = q / sqpi * (c * ve + s * vo);
  }
  return r;
}

}  // namespace detail

/// Ai, Ai', Bi, Bi' at x. Maclaurin series in extended precision for
/// |x| <= 8, large-argument expansions beyond.
inline AiryValues airy_all(double x) {
  if (!std::isfinite(x)) throw DomainError("airy: argument must be finite");
  return std::abs(x) <= 8.0 ? detail::airy_maclaurin(x) : detail::airy_asymptotic(x);
}

inline double airy(double x) { return airy_all(x).ai; }
inline double airy_prime(double x) { return airy_all(x).ai_prime; }
inline double bi(double x) { return airy_all(x).bi; }
inline double bi_prime(double x) { return airy_all(x).bi_prime; }

namespace detail {

inline double bessel_j_series(int b, double zd) {
  using L = long double;
  const L h = static_cast<L>(zd) / 2;
  const L h2 = h * h;
  L term = 1;
  for (int j = 1; j <= b; ++j) term *= h / j;
  // Kahan-compensated alternating sum.
  L sum = term, comp = 0;
  for (int n = 1; n < 500; ++n) {
    term *= -h2 / (static_cast<L>(n) * (n + b));
    const L y = term - comp;
    const L t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < 1e-21L * std::abs(sum)) break;
  }
  return static_cast<double>(sum);
}

// Miller's backward recurrence normalized by J_0 + 2 sum J_{2k} = 1.
inline double bessel_j_miller(int b, double z) {
  const int top = 2 * ((std::max(b, static_cast<int>(z)) + 30 +
                        static_cast<int>(std::sqrt(60.0 * std::max(b, static_cast<int>(z))))) /
                       2);
  double next = 0.0, cur = 1e-300, result = 0.0, norm = 0.0;
  for (int k = top; k >= 0; --k) {
    const double prev = 2.0 * (k + 1) / z * cur - next;  // J_{k}
    // Shift so that cur holds J_k.
    next = cur;
    cur = prev;
    if (k == b) result = cur;
    if (k % 2 == 0) norm += (k == 0 ? 1.0 : 2.0) * cur;
    if (std::abs(cur) > 1e250) {
      next *= 1e-250;
      cur *= 1e-250;
      result *= 1e-250;
      norm *= 1e-250;
    }
  }
  return result / norm;
}

}  // namespace detail

/// Bessel function of the first kind, integer order b >= 0, z >= 0.
inline double bessel_j(int b, double z) {
  if (b < 0) throw ParameterError("bessel_j: order must be >= 0");
  if (!(z >= 0.0) || !std::isfinite(z)) throw DomainError("bessel_j: need finite z >= 0");
  if (z == 0.0) return b == 0 ? 1.0 : 0.0;
  return z <= 20.0 ? detail::bessel_j_series(b, z) : detail::bessel_j_miller(b, z);
}

/// Confluence tolerance shared by all limit kernels.
inline constexpr double kLimitKernelDiagTol = 1e-6;

inline double sine_kernel(double u, double v) {
  const double d = u - v;
  if (std::abs(d) < kLimitKernelDiagTol) {
    const double p = std::numbers::pi * d;
    return 1.0 - p * p / 6.0;
  }
  return std::sin(std::numbers::pi * d) / (std::numbers::pi * d);
}

/// (Ai(u)Ai'(v) - Ai(v)Ai'(u)) / (u - v); diagonal Ai'(u)^2 - u Ai(u)^2.
/// Near the diagonal the value at the midpoint is used (the kernel is even in
/// u - v about it, so the error is second order).
inline double airy_kernel(double u, double v) {
  if (std::abs(u - v) < kLimitKernelDiagTol) {
    const double m = 0.5 * (u + v);
    const AiryValues a = airy_all(m);
    return a.ai_prime * a.ai_prime - m * a.ai * a.ai;
  }
  const AiryValues au = airy_all(u), av = airy_all(v);
  return (au.ai * av.ai_prime - av.ai * au.ai_prime) / (u - v);
}

namespace detail {

inline double bessel_kernel_diag(int b, double u) {
  const double z = std::sqrt(u);
  const double j0 = bessel_j(b, z), j1 = bessel_j(b + 1, z);
  return 0.25 * (j0 * j0 + j1 * j1 - 2.0 * b / z * j0 * j1);
}

}  // namespace detail

/// Hard-edge kernel F_b(u, v) for u, v > 0 with J_b' expanded through
/// J_b'(z) = -J_{b+1}(z) + b J_b(z) / z.
inline double bessel_kernel(int b, double u, double v) {
  if (b < 0) throw ParameterError("bessel_kernel: order must be >= 0");
  if (!(u > 0.0) || !(v > 0.0)) throw DomainError("bessel_kernel: need u, v > 0");
  if (std::abs(u - v) < kLimitKernelDiagTol * std::max(1.0, std::max(u, v)))
    return detail::bessel_kernel_diag(b, 0.5 * (u + v));
  const double su = std::sqrt(u), sv = std::sqrt(v);
  const double num = -sv * bessel_j(b, su) * bessel_j(b + 1, sv) +
                     su * bessel_j(b, sv) * bessel_j(b + 1, su);
  return num / (2.0 * (u - v));
}

/// Exact rational with a positive denominator.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t n, std::int64_t d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
    return g > 1 ? Rational{n / g, d / g} : Rational{n, d};
  }
  friend bool operator==(const Rational&, const Rational&) = default;
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Coefficient of u^{b/2+k} v^{b/2+l} in the power-series expansion of the
/// numerator J_b(√u)√v J_b'(√v) - J_b(√v)√u J_b'(√u) of F_b:
/// (-1)^{k+l-1} 2^{1-2b} 4^{-(k+l)} (k-l) / ((b+k)! k! (b+l)! l!).
inline Rational bessel_numerator_coefficient(int b, int k, int l) {
  if (b < 0 || k < 0 || l < 0) throw ParameterError("bessel_numerator_coefficient: negative index");
  auto fact = [](int m) {
    std::int64_t f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  const int sign = ((k + l - 1) % 2 == 0) ? 1 : -1;
  std::int64_t den = fact(b + k) * fact(k) * fact(b + l) * fact(l);
  std::int64_t num = sign * static_cast<std::int64_t>(k - l);
  // 2^{1-2b} 4^{-(k+l)} = 2^{1 - 2b - 2k - 2l}
  const int p = 1 - 2 * b - 2 * (k + l);
  if (p >= 0)
    num <<= p;
  else
    den <<= -p;
  return Rational::make(num, den);
}

}  // namespace jrmt
