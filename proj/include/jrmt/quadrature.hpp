#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "jrmt/error.hpp"

namespace jrmt {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

/// m-point Gauss–Legendre rule on [lo, hi]. Nodes from Newton iteration on
/// the Legendre recurrence, ascending.
inline QuadratureRule gauss_legendre(int m, double lo = -1.0, double hi = 1.0) {
  detail::require(m >= 1, "gauss_legendre: need at least one node");
  detail::require(lo < hi, "gauss_legendre: need lo < hi");
  QuadratureRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const int pairs = (m + 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= m; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = m * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = 0.0;
    for (int k = 1; k <= m; ++k) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
    }
    dp = m * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    r.nodes[i] = mid - half * z;
    r.nodes[m - 1 - i] = mid + half * z;
    r.weights[i] = r.weights[m - 1 - i] = half * w;
  }
  return r;
}

/// Rule for integrands with square-root behaviour at both ends of [lo, hi]:
/// x = c - h cos t, t in [0, pi], Gauss–Legendre in t. Smooths the endpoint
/// singularities of sqrt((x-lo)(hi-x)) / ... type densities.
inline QuadratureRule cosine_substitution(int m, double lo, double hi) {
  const QuadratureRule t = gauss_legendre(m, 0.0, std::numbers::pi);
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  QuadratureRule r;
  r.nodes.resize(m);
  r.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    r.nodes[i] = c - h * std::cos(t.nodes[i]);
    r.weights[i] = t.weights[i] * h * std::sin(t.nodes[i]);
  }
  return r;
}

}  // namespace jrmt
