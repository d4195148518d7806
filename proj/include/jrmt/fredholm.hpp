#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <vector>

#include "jrmt/cdkernel.hpp"
#include "jrmt/error.hpp"
#include "jrmt/params.hpp"
#include "jrmt/quadrature.hpp"
#include "jrmt/special_functions.hpp"

namespace jrmt {

struct GapQuery {
  std::function<double(double, double)> kernel;
  double lo = 0.0;
  double hi = 1.0;
  int quad_points = 64;
};

namespace detail {

inline void check_gap_domain(double lo, double hi, int m) {
  if (!(lo < hi)) throw ParameterError("gap_probability: need lo < hi");
  if (m < 8) throw ParameterError("gap_probability: need at least 8 quadrature points");
}

}  // namespace detail

/// det(I - W^{1/2} K W^{1/2}) for a kernel matrix K sampled at quadrature
/// nodes with weights W.
inline double nystrom_determinant(const Eigen::MatrixXd& k, const std::vector<double>& weights) {
  const Eigen::Index m = k.rows();
  if (!k.allFinite()) throw NumericError("gap_probability: non-finite kernel values");
  Eigen::VectorXd sw(m);
  for (Eigen::Index i = 0; i < m; ++i) sw(i) = std::sqrt(weights[i]);
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m) - sw.asDiagonal() * k * sw.asDiagonal();
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
  if (!std::isfinite(det)) throw NumericError("gap_probability: determinant is not finite");
  if (det < -1e-8) throw ConsistencyError("gap_probability: negative determinant");
  return det;
}

inline double gap_probability(const GapQuery& q) {
  detail::check_gap_domain(q.lo, q.hi, q.quad_points);
  if (!q.kernel) throw ParameterError("gap_probability: missing kernel");
  const QuadratureRule rule = gauss_legendre(q.quad_points, q.lo, q.hi);
  const int m = q.quad_points;
  Eigen::MatrixXd k(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) k(i, j) = k(j, i) = q.kernel(rule.nodes[i], rule.nodes[j]);
  return nystrom_determinant(k, rule.weights);
}

/// log det(I - K) from the eigenvalues of the symmetrized Nyström matrix.
inline double fredholm_log_det(const GapQuery& q) {
  detail::check_gap_domain(q.lo, q.hi, q.quad_points);
  const QuadratureRule rule = gauss_legendre(q.quad_points, q.lo, q.hi);
  const int m = q.quad_points;
  Eigen::MatrixXd k(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = q.kernel(rule.nodes[i], rule.nodes[j]) *
                       std::sqrt(rule.weights[i] * rule.weights[j]);
      k(i, j) = k(j, i) = v;
    }
  if (!k.allFinite()) throw NumericError("fredholm_log_det: non-finite kernel values");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    const double mu = es.eigenvalues()(i);
    if (!(mu < 1.0)) throw ConsistencyError("fredholm_log_det: operator eigenvalue >= 1");
    s += std::log1p(-mu);
  }
  return s;
}

/// P(lambda_1 <= x) for the Jacobi ensemble: the gap probability of K_n on
/// [x, 1].
inline double largest_eval_cdf(const EnsembleParams& params, double x, int m = 64) {
  params.validate();
  if (!(x > -1.0 && x < 1.0)) throw DomainError("largest_eval_cdf: x must lie in (-1, 1)");
  detail::check_gap_domain(x, 1.0, m);
  const KernelEvaluator ev(KernelSpec{params});
  const QuadratureRule rule = gauss_legendre(m, x, 1.0);
  std::vector<KernelEvaluator::Point> pts;
  pts.reserve(m);
  for (double t : rule.nodes) pts.push_back(ev.prepare(t));
  Eigen::MatrixXd k(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j <= i; ++j) k(i, j) = k(j, i) = ev(pts[i], pts[j]);
  return nystrom_determinant(k, rule.weights);
}

/// P(lambda_1 > x) = 1 - largest_eval_cdf, computed as 1 - det.
inline double largest_eval_tail(const EnsembleParams& params, double x, int m = 64) {
  return 1.0 - largest_eval_cdf(params, x, m);
}

/// det(I - K_Airy) on [t, t + L]: the beta = 2 Tracy–Widom distribution.
inline double tracy_widom_cdf(double t, int m = 64, double L = 12.0) {
  if (!std::isfinite(t)) throw DomainError("tracy_widom_cdf: t must be finite");
  if (!(L > 0.0)) throw ParameterError("tracy_widom_cdf: L must be positive");
  detail::check_gap_domain(t, t + L, m);
  const QuadratureRule rule = gauss_legendre(m, t, t + L);
  std::vector<AiryValues> av;
  av.reserve(m);
  for (double x : rule.nodes) av.push_back(airy_all(x));
  Eigen::MatrixXd k(m, m);
  for (int i = 0; i < m; ++i) {
    const double xi = rule.nodes[i];
    k(i, i) = av[i].ai_prime * av[i].ai_prime - xi * av[i].ai * av[i].ai;
    for (int j = 0; j < i; ++j) {
      const double xj = rule.nodes[j];
      k(i, j) = k(j, i) = (av[i].ai * av[j].ai_prime - av[j].ai * av[i].ai_prime) / (xi - xj);
    }
  }
  return nystrom_determinant(k, rule.weights);
}

}  // namespace jrmt
