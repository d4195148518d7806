#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "jrmt/error.hpp"
#include "jrmt/matalg.hpp"
#include "jrmt/params.hpp"
#include "jrmt/randgen.hpp"

namespace jrmt {

/// Fixed projector of rank q and uniformly rotated projector of rank q_tilde
/// in C^n.
struct ProjectorPair {
  int n = 0;
  int q = 0;
  int q_tilde = 0;

  void validate() const {
    if (n < 1 || q < 1 || q_tilde < 1 || q > n || q_tilde > n)
      throw ParameterError("ProjectorPair: need 1 <= q, q_tilde <= n");
  }
  /// q <= q_tilde and q + q_tilde <= n.
  bool canonical() const { return q <= q_tilde && q + q_tilde <= n; }
};

enum class EigenMap { identity, reflect };

inline const char* to_string(EigenMap m) { return m == EigenMap::identity ? "identity" : "reflect"; }

/// Reduction of an arbitrary pair to the canonical one. Canonical ranks may
/// be zero when every eigenvalue of the original block is deterministic.
struct ReductionPlan {
  ProjectorPair original;
  ProjectorPair canonical;
  EigenMap eigen_map = EigenMap::identity;
  int reduction_case = 0;  // 0 = already canonical, 1..3 as in the swap/reflect/both cases
  int kept_count = 0;

  /// Maps canonical-ensemble eigenvalues to the original block's
  /// non-trivial eigenvalues, sorted descending.
  std::vector<double> apply(std::vector<double> values) const {
    if (eigen_map == EigenMap::reflect)
      for (double& v : values) v = 1.0 - v;
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
  }
};

inline ReductionPlan reduce_ranks(int n, int q, int q_tilde) {
  ProjectorPair orig{n, q, q_tilde};
  orig.validate();
  ReductionPlan plan;
  plan.original = orig;
  const bool swap = q > q_tilde;
  const bool over = q + q_tilde > n;
  if (!swap && !over) {
    plan.canonical = orig;
  } else if (swap && !over) {
    plan.reduction_case = 1;
    plan.canonical = {n, q_tilde, q};
  } else if (!swap && over) {
    // pi pitilde pi = pi - pi (1 - pitilde) pi.
    plan.reduction_case = 2;
    plan.eigen_map = EigenMap::reflect;
    const int r = n - q_tilde;
    plan.canonical = r <= q ? ProjectorPair{n, r, q} : ProjectorPair{n, q, r};
  } else {
    // Complements of both projectors share the generic angles.
    plan.reduction_case = 3;
    plan.canonical = {n, n - q, n - q_tilde};
  }
  plan.kept_count = plan.canonical.q;
  return plan;
}

/// Ranks (n', q, q_tilde) of a projector pair whose canonical block is the
/// Jacobi ensemble (N, a, b) with integer a, b.
inline ProjectorPair ranks_for(const EnsembleParams& p) {
  p.validate();
  const double ar = std::round(p.a), br = std::round(p.b);
  if (std::abs(p.a - ar) > 1e-12 || std::abs(p.b - br) > 1e-12)
    throw ParameterError("ranks_for: matrix models need integer a and b");
  const int a = static_cast<int>(ar), b = static_cast<int>(br);
  return {2 * p.n + a + b, p.n, p.n + b};
}

/// W W* for an n x q Ginibre W with entry variance `scale`.
inline HermitianMatrix wishart(Rng& rng, int n, int q, double scale) {
  detail::require(n >= 1 && q >= 1, "wishart: dimensions must be >= 1");
  detail::require(scale > 0.0 && std::isfinite(scale), "wishart: scale must be positive");
  const ComplexMatrix w = complex_ginibre(rng, n, q, scale);
  ComplexMatrix m(n, n);
  m.setZero();
  m.selfadjointView<Eigen::Lower>().rankUpdate(w);
  m.triangularView<Eigen::StrictlyUpper>() = m.adjoint();
  return HermitianMatrix(std::move(m));
}

inline HermitianMatrix wishart(const SeededStream& s, int n, int q, double scale) {
  Rng rng = s.rng();
  return wishart(rng, n, q, scale);
}

/// (X+X')^{-1/2} X (X+X')^{-1/2} with X ~ W(m, p, 1/m), X' ~ W(m, p', 1/m).
inline HermitianMatrix wishart_ratio(Rng& rng, int m, int p, int p_prime) {
  detail::require(m >= 1 && p >= 1 && p_prime >= 1, "wishart_ratio: dimensions must be >= 1");
  detail::require(p + p_prime >= m, "wishart_ratio: need p + p' >= m for invertibility");
  const HermitianMatrix x = wishart(rng, m, p, 1.0 / m);
  const HermitianMatrix xp = wishart(rng, m, p_prime, 1.0 / m);
  const HermitianMatrix r = inv_sqrt_psd(HermitianMatrix(x.matrix() + xp.matrix()));
  const ComplexMatrix j = r.matrix() * x.matrix() * r.matrix();
  return HermitianMatrix((j + j.adjoint()) * 0.5);
}

/// Eigenvalues of wishart_ratio, descending, without forming the inverse
/// square root: with X + X' = L L* and X = G G*, they are the eigenvalues of
/// (L^{-1} G)(L^{-1} G)*. Same draw sequence as wishart_ratio.
inline std::vector<double> wishart_ratio_eigenvalues(Rng& rng, int m, int p, int p_prime) {
  detail::require(m >= 1 && p >= 1 && p_prime >= 1, "wishart_ratio: dimensions must be >= 1");
  detail::require(p + p_prime >= m, "wishart_ratio: need p + p' >= m for invertibility");
  const ComplexMatrix g = complex_ginibre(rng, m, p, 1.0 / m);
  const ComplexMatrix gp = complex_ginibre(rng, m, p_prime, 1.0 / m);
  ComplexMatrix s(m, m);
  s.setZero();
  s.selfadjointView<Eigen::Lower>().rankUpdate(g);
  s.selfadjointView<Eigen::Lower>().rankUpdate(gp);
  Eigen::LLT<ComplexMatrix, Eigen::Lower> llt(s);
  if (llt.info() != Eigen::Success) throw SingularityError("wishart_ratio: X + X' is singular");
  const ComplexMatrix b = llt.matrixL().solve(g);
  ComplexMatrix bb(m, m);
  bb.setZero();
  bb.selfadjointView<Eigen::Lower>().rankUpdate(b);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(bb, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("wishart_ratio: eigensolver failed");
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + m);
  std::reverse(out.begin(), out.end());
  return out;
}

namespace detail {

inline void require_canonical(int n, int q, int q_tilde, const char* who) {
  const ProjectorPair p{n, q, q_tilde};
  p.validate();
  if (!p.canonical())
    throw ParameterError(std::string(who) + ": need q <= q_tilde and q + q_tilde <= n");
}

}  // namespace detail

/// Wishart-route sample of the q x q Jacobi block: the factor between the
/// inverse square roots carries q_tilde degrees of freedom, the other n -
/// q_tilde.
inline HermitianMatrix jacobi_wishart(Rng& rng, int n, int q, int q_tilde) {
  detail::require_canonical(n, q, q_tilde, "jacobi_wishart");
  return wishart_ratio(rng, q, q_tilde, n - q_tilde);
}

inline HermitianMatrix jacobi_wishart(const SeededStream& s, int n, int q, int q_tilde) {
  Rng rng = s.rng();
  return jacobi_wishart(rng, n, q, q_tilde);
}

/// Top-left q x q block of pi~ = random_projector(n, q_tilde), i.e. the
/// compression of pi pi~ pi to range(pi) for pi = diag(1_q, 0).
inline HermitianMatrix projector_product(Rng& rng, const ProjectorPair& pair) {
  pair.validate();
  const HermitianMatrix pt = random_projector(rng, pair.n, pair.q_tilde);
  return HermitianMatrix(ComplexMatrix(pt.matrix().topLeftCorner(pair.q, pair.q)));
}

inline HermitianMatrix projector_product(const SeededStream& s, const ProjectorPair& pair) {
  Rng rng = s.rng();
  return projector_product(rng, pair);
}

enum class Route { projector, wishart };

inline const char* to_string(Route r) { return r == Route::projector ? "projector" : "wishart"; }

/// Eigenvalues in [0, 1], descending, of a canonical pair's block.
inline std::vector<double> sample_canonical_block(Rng& rng, const ProjectorPair& pair, Route route) {
  detail::require_canonical(pair.n, pair.q, pair.q_tilde, "sample_canonical_block");
  if (route == Route::wishart)
    return wishart_ratio_eigenvalues(rng, pair.q, pair.q_tilde, pair.n - pair.q_tilde);
  return eigenvalues(projector_product(rng, pair)).values;
}

/// Non-trivial eigenvalues of pi pi~ pi for any valid pair, descending.
inline std::vector<double> sample_nontrivial(Rng& rng, const ProjectorPair& pair, Route route) {
  const ReductionPlan plan = reduce_ranks(pair.n, pair.q, pair.q_tilde);
  if (plan.kept_count == 0) return {};
  return plan.apply(sample_canonical_block(rng, plan.canonical, route));
}

/// One draw of the Jacobi ensemble (n, a, b) on [-1, 1] via x = 2 lambda - 1,
/// descending. Needs integer a, b.
inline std::vector<double> sample_jacobi_spectrum(Rng& rng, const EnsembleParams& p, Route route) {
  std::vector<double> v = sample_canonical_block(rng, ranks_for(p), route);
  for (double& x : v) x = 2.0 * x - 1.0;
  return v;
}

}  // namespace jrmt
