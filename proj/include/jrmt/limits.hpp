#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include "jrmt/error.hpp"
#include "jrmt/quadrature.hpp"
#include "jrmt/special_functions.hpp"

namespace jrmt {

/// Edge data of the limiting spectrum on [-1, 1] for a/n -> alpha, b/n -> beta.
struct LimitProfile {
  double alpha = 0.0;
  double beta = 0.0;
  double A = 0.0;
  double B = 0.0;
  double D = 1.0;
  double r = -1.0;
  double s = 1.0;
};

inline LimitProfile edge_profile(double alpha, double beta) {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw ParameterError("edge_profile: alpha and beta must be finite and >= 0");
  LimitProfile p;
  p.alpha = alpha;
  p.beta = beta;
  p.A = alpha / (2.0 + alpha + beta);
  p.B = beta / (2.0 + alpha + beta);
  const double A = p.A, B = p.B;
  p.D = std::sqrt((1.0 + A + B) * (1.0 - A - B) * (1.0 - A + B) * (1.0 + A - B));
  p.r = B * B - A * A - p.D;
  p.s = B * B - A * A + p.D;
  return p;
}

/// Profile at finite n, using alpha_n = a/n and beta_n = b/n.
inline LimitProfile finite_profile(int n, double a, double b) {
  if (n < 1) throw ParameterError("finite_profile: need n >= 1");
  return edge_profile(a / n, b / n);
}

/// sqrt((x-r)(s-x)) / (pi (1-A-B)(1-x^2)) on [r, s], zero elsewhere.
inline double limit_density(const LimitProfile& p, double x) {
  if (!(p.A + p.B < 1.0)) throw RegimeError("limit_density: requires A + B < 1");
  if (!(x > p.r && x < p.s)) return 0.0;
  return std::sqrt((x - p.r) * (p.s - x)) / (std::numbers::pi * (1.0 - p.A - p.B) * (1.0 - x * x));
}

/// f_n: the limit density evaluated with the finite-n parameter ratios.
inline double finite_density(int n, double a, double b, double x) {
  return limit_density(finite_profile(n, a, b), x);
}

/// Continuous part on [lo, hi] plus point masses. `continuous_mass` and
/// `total_mass` are measured by quadrature, never imposed.
struct FreeDensity {
  std::function<double(double)> density;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::pair<double, double>> atoms;  // (location, mass)
  double continuous_mass = 0.0;
  double total_mass = 0.0;

  double atom_mass() const {
    double m = 0.0;
    for (const auto& a : atoms) m += a.second;
    return m;
  }
};

namespace detail {

inline void measure_masses(FreeDensity& d) {
  d.continuous_mass = d.hi > d.lo ? cosine_substitution(512, d.lo, d.hi).integrate(d.density) : 0.0;
  d.total_mass = d.continuous_mass + d.atom_mass();
}

inline double sqrt_bump(double x, double lo, double hi) {
  const double rad = (x - lo) * (hi - x);
  return rad > 0.0 ? std::sqrt(rad) : 0.0;
}

}  // namespace detail

/// Free multiplicative convolution of two projector laws with masses alpha
/// and beta at 1.
inline FreeDensity free_product_density(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0 && beta >= 0.0 && beta <= 1.0))
    throw ParameterError("free_product_density: alpha and beta must lie in [0, 1]");
  const double c = alpha + beta - 2.0 * alpha * beta;
  const double h = std::sqrt(std::max(0.0, 4.0 * alpha * beta * (1.0 - alpha) * (1.0 - beta)));
  FreeDensity d;
  d.lo = c - h;
  d.hi = c + h;
  const double lo = d.lo, hi = d.hi;
  d.density = [lo, hi](double x) {
    if (!(x > lo && x < hi) || x <= 0.0 || x >= 1.0) return 0.0;
    return detail::sqrt_bump(x, lo, hi) / (2.0 * std::numbers::pi * x * (1.0 - x));
  };
  const double at0 = 1.0 - std::min(alpha, beta);
  const double at1 = std::max(alpha + beta - 1.0, 0.0);
  if (at0 > 0.0) d.atoms.emplace_back(0.0, at0);
  if (at1 > 0.0) d.atoms.emplace_back(1.0, at1);
  detail::measure_masses(d);
  return d;
}

/// Limit law of (X+X')^{-1/2} X (X+X')^{-1/2} for Wishart degrees-of-freedom
/// ratios alpha, beta >= 1, returned exactly as the classical formula states
/// it. total_mass reports what that formula integrates to.
inline FreeDensity wishart_ratio_density(double alpha, double beta) {
  if (!(alpha >= 1.0) || !(beta >= 1.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw ParameterError("wishart_ratio_density: alpha and beta must be >= 1");
  const double sum = alpha + beta;
  const double p = std::sqrt(alpha / sum * (1.0 - 1.0 / sum));
  const double m = std::sqrt(1.0 / sum * (1.0 - alpha / sum));
  FreeDensity d;
  d.lo = (p - m) * (p - m);
  d.hi = (p + m) * (p + m);
  const double lo = d.lo, hi = d.hi;
  d.density = [lo, hi](double x) {
    if (!(x > lo && x < hi) || x <= 0.0 || x >= 1.0) return 0.0;
    return detail::sqrt_bump(x, lo, hi) / (2.0 * std::numbers::pi * x * (1.0 - x));
  };
  if (alpha > 1.0) d.atoms.emplace_back(0.0, alpha - 1.0);
  if (beta > 1.0) d.atoms.emplace_back(1.0, beta - 1.0);
  detail::measure_masses(d);
  return d;
}

/// Squared cosine of the critical angle between random subspaces of
/// dimensions alpha*n and beta*n of C^n. Both subspaces are of the
/// projector-product type with canonical ranks q = min, q~ = max, which is the
/// Jacobi ensemble with a/q = (1-alpha-beta)/min and b/q = |beta-alpha|/min;
/// cos^2 is its upper spectral edge mapped back to [0, 1].
inline double banach_cos2(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw ParameterError("banach_angle: rank fractions must be positive");
  if (!(alpha + beta < 1.0)) throw RegimeError("banach_angle: requires alpha + beta < 1");
  const double mn = std::min(alpha, beta);
  const LimitProfile p = edge_profile((1.0 - alpha - beta) / mn, std::abs(beta - alpha) / mn);
  return 0.5 * (1.0 + p.s);
}

inline double banach_angle(double alpha, double beta) {
  return std::acos(std::sqrt(banach_cos2(alpha, beta)));
}

}  // namespace jrmt
