#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "jrmt/error.hpp"
#include "jrmt/limits.hpp"
#include "jrmt/orthopoly.hpp"
#include "jrmt/params.hpp"
#include "jrmt/scaled_value.hpp"

namespace jrmt {

struct KernelSpec {
  EnsembleParams params;
  double diag_switch_tol = 1e-6;
};

/// Largest zero s_n of chi_n in (-1, 1) and h_n = (-chi_n'(s_n))^{1/3}.
struct SoftEdge {
  double s_n = 0.0;
  double h_n = 0.0;
};

inline SoftEdge soft_edge(const EnsembleParams& p) {
  p.validate();
  if (!(p.a > 1.0)) throw RegimeError("soft_edge: needs a > 1 so that chi_n changes sign near 1");
  const LimitProfile prof = finite_profile(p.n, p.a, p.b);
  double lo = 0.5 * (prof.r + prof.s);
  double hi = 1.0 - 1e-12;
  auto f = [&](double x) { return chi(p.n, p.a, p.b, x); };
  if (!(f(lo) > 0.0) || !(f(hi) < 0.0)) throw NumericError("soft_edge: chi_n does not bracket a root");
  while (hi - lo > 1e-13) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  double s = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double step = f(s) / chi_prime(p.n, p.a, p.b, s);
    if (!std::isfinite(step) || std::abs(step) > 1e-10) break;
    s -= step;
  }
  const double d = chi_prime(p.n, p.a, p.b, s);
  if (!(d < 0.0)) throw NumericError("soft_edge: chi_n' is not negative at the root");
  return {s, std::cbrt(-d)};
}

/// Leading-order h_n: n^{2/3} (2 sqrt((1+al)(1+be)(1+al+be)) / (1-s^2)^2)^{1/3}.
inline double soft_edge_scale_closed_form(int n, double alpha, double beta, double s) {
  const double q = 1.0 - s * s;
  return std::pow(static_cast<double>(n), 2.0 / 3.0) *
         std::cbrt(2.0 * std::sqrt((1.0 + alpha) * (1.0 + beta) * (1.0 + alpha + beta)) / (q * q));
}

/// Evaluates K_n^{a,b}. Polynomial values are cached per point so that
/// kernel matrices cost O(m n) recurrence steps instead of O(m^2 n).
class KernelEvaluator {
 public:
  struct Point {
    double x = 0.0;
    ScaledValue p_n;
    ScaledValue p_prev;
    ScaledValue sqrt_w;
  };

  explicit KernelEvaluator(KernelSpec spec) : spec_(spec) {
    spec_.params.validate();
    if (!(spec_.diag_switch_tol > 0.0)) throw ParameterError("KernelSpec: diag_switch_tol must be > 0");
    gamma_ = gamma_n(spec_.params.n, spec_.params.a, spec_.params.b);
  }

  const KernelSpec& spec() const { return spec_; }
  const EnsembleParams& params() const { return spec_.params; }

  Point prepare(double x) const {
    if (!(x > -1.0 && x < 1.0)) throw DomainError("kernel: arguments must lie in (-1, 1)");
    const EnsembleParams& p = spec_.params;
    const JacobiPair jp = jacobi_pair(p.n, p.a, p.b, x);
    return {x, jp.p_n, jp.p_prev, weight(p.a, p.b, x).sqrt()};
  }

  double operator()(const Point& px, const Point& py) const {
    const double x = px.x, y = py.x;
    const double scale = std::max({1.0, std::abs(x), std::abs(y)});
    if (x == y) return diagonal(x);
    if (std::abs(x - y) < spec_.diag_switch_tol * scale) return confluent(x, y);
    return quotient(px, py);
  }

  /// Christoffel–Darboux quotient; x != y.
  double quotient(const Point& px, const Point& py) const {
    const ScaledValue num = px.p_n * py.p_prev - px.p_prev * py.p_n;
    return (gamma_ * px.sqrt_w * py.sqrt_w * num).to_double() / (px.x - py.x);
  }

  double operator()(double x, double y) const { return (*this)(prepare(x), prepare(y)); }

  /// K(x, x) through the derivative-identity form of the confluent kernel.
  double diagonal(double x) const {
    if (!(x > -1.0 && x < 1.0)) throw DomainError("kernel: arguments must lie in (-1, 1)");
    const EnsembleParams& p = spec_.params;
    const int n = p.n;
    const JacobiPair base = jacobi_pair(n, p.a, p.b, x);
    const JacobiPair up = jacobi_pair(n - 1, p.a + 1.0, p.b + 1.0, x);  // Q_{n-1}, Q_{n-2}
    const ScaledValue bracket =
        ScaledValue(0.5 * (n + p.a + p.b)) * (base.p_prev * up.p_n - base.p_n * up.p_prev) +
        ScaledValue(0.5) * base.p_prev * up.p_n;
    return (gamma_ * weight(p.a, p.b, x) * bracket).to_double();
  }

  // Expansion of the Christoffel–Darboux quotient about m = (x+y)/2 with
  // d = (y-x)/2, through total derivative order 5:
  //   N/(x-y) = sum_{j+k odd} (-1)^k P_n^{(j)}(m) P_{n-1}^{(k)}(m) d^{j+k-1} / (j! k!).
  double confluent(double x, double y) const {
    const EnsembleParams& p = spec_.params;
    const double m = 0.5 * (x + y);
    const double d = 0.5 * (y - x);
    constexpr int kOrder = 5;
    ScaledValue dn[kOrder + 1], dp[kOrder + 1];
    for (int j = 0; j <= kOrder; ++j) {
      dn[j] = jacobi_deriv_k({p.n, p.a, p.b}, j, m);
      dp[j] = jacobi_deriv_k({p.n - 1, p.a, p.b}, j, m);
    }
    const double fact[kOrder + 1] = {1, 1, 2, 6, 24, 120};
    ScaledValue sum(0.0);
    for (int j = 0; j <= kOrder; ++j)
      for (int k = 0; k + j <= kOrder; ++k) {
        if ((j + k) % 2 == 0) continue;
        const double c = ((k % 2) ? -1.0 : 1.0) * std::pow(d, j + k - 1) / (fact[j] * fact[k]);
        if (c == 0.0) continue;
        sum += ScaledValue(c) * dn[j] * dp[k];
      }
    return (gamma_ * weight(p.a, p.b, x).sqrt() * weight(p.a, p.b, y).sqrt() * sum).to_double();
  }

 private:
  KernelSpec spec_;
  ScaledValue gamma_;
};

inline double kernel(const KernelSpec& spec, double x, double y) {
  return KernelEvaluator(spec)(x, y);
}

/// sqrt(w(x) w(y)) sum_{j<n} p_j(x) p_j(y) with orthonormal p_j. O(n) per
/// call; an independent check on the Christoffel–Darboux path.
inline double christoffel_sum(const KernelSpec& spec, double x, double y) {
  const EnsembleParams& p = spec.params;
  p.validate();
  if (!(x > -1.0 && x < 1.0 && y > -1.0 && y < 1.0))
    throw DomainError("christoffel_sum: arguments must lie in (-1, 1)");
  const double a = p.a, b = p.b;
  ScaledValue px_prev(0.0), px(1.0), py_prev(0.0), py(1.0);
  ScaledValue sum(0.0);
  for (int j = 0; j < p.n; ++j) {
    const double log_h = (a + b + 1.0) * std::numbers::ln2 - std::log(2.0 * j + a + b + 1.0) +
                         std::lgamma(j + a + 1.0) + std::lgamma(j + b + 1.0) -
                         std::lgamma(j + a + b + 1.0) - std::lgamma(j + 1.0);
    sum += px * py / ScaledValue::from_log(log_h);
    // Advance to degree j + 1.
    const int k = j + 1;
    auto step = [&](ScaledValue& cur, ScaledValue& prev, double t) {
      ScaledValue next;
      if (k == 1) {
        next = ScaledValue((a + 1.0) + (a + b + 2.0) * (t - 1.0) * 0.5);
      } else {
        const double c = 2.0 * k + a + b;
        const double a1 = 2.0 * k * (k + a + b) * (c - 2.0);
        const double a2 = (c - 1.0) * (a * a - b * b);
        const double a3 = (c - 2.0) * (c - 1.0) * c;
        const double a4 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        next = (ScaledValue((a2 + a3 * t) / a1) * cur) - ScaledValue(a4 / a1) * prev;
      }
      prev = cur;
      cur = next;
    };
    step(px, px_prev, x);
    step(py, py_prev, y);
  }
  return (weight(a, b, x).sqrt() * weight(a, b, y).sqrt() * sum).to_double();
}

/// n^{-1} K_n(x, x), the expected normalized eigenvalue density at x.
inline double one_point_density(const KernelSpec& spec, double x) {
  const EnsembleParams& p = spec.params;
  if (p.n == 1) return christoffel_sum(spec, x, x);
  return KernelEvaluator(spec).diagonal(x) / p.n;
}

/// K_n(x + u/(n f_n(x)), x + v/(n f_n(x))) / (n f_n(x)).
inline double rescaled_bulk(const KernelSpec& spec, double x, double u, double v) {
  const EnsembleParams& p = spec.params;
  p.validate();
  const LimitProfile prof = finite_profile(p.n, p.a, p.b);
  if (!(x > prof.r && x < prof.s)) throw DomainError("rescaled_bulk: x must lie inside the bulk");
  const double sc = p.n * limit_density(prof, x);
  if (!(sc > 0.0)) throw DomainError("rescaled_bulk: f_n(x) must be positive");
  return KernelEvaluator(spec)(x + u / sc, x + v / sc) / sc;
}

inline double rescaled_soft(const KernelSpec& spec, const SoftEdge& edge, double u, double v) {
  return KernelEvaluator(spec)(edge.s_n + u / edge.h_n, edge.s_n + v / edge.h_n) / edge.h_n;
}

/// K_n(s_n + u/h_n, s_n + v/h_n) / h_n.
inline double rescaled_soft(const KernelSpec& spec, double u, double v) {
  return rescaled_soft(spec, soft_edge(spec.params), u, v);
}

inline double hard_edge_scale(const EnsembleParams& p) {
  return 2.0 * p.n * static_cast<double>(p.n) * (1.0 + p.a / p.n);
}

/// K_n(-1 + u/c_n, -1 + v/c_n) / c_n with c_n = 2 n^2 (1 + a/n); b must be a
/// nonnegative integer.
inline double rescaled_hard(const KernelSpec& spec, double u, double v) {
  const EnsembleParams& p = spec.params;
  p.validate();
  if (std::abs(p.b - std::round(p.b)) > 1e-12)
    throw ParameterError("rescaled_hard: b must be a nonnegative integer");
  if (!(u > 0.0) || !(v > 0.0)) throw DomainError("rescaled_hard: need u, v > 0");
  const double c = hard_edge_scale(p);
  return KernelEvaluator(spec)(-1.0 + u / c, -1.0 + v / c) / c;
}

}  // namespace jrmt
