#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "jrmt/error.hpp"

namespace jrmt {

using ComplexMatrix = Eigen::MatrixXcd;

/// Dense complex Hermitian matrix. Construction symmetrizes inputs whose
/// asymmetry is below 1e-12 (relative to the largest entry) and rejects the
/// rest.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(ComplexMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0)
      throw ValidationError("HermitianMatrix: matrix must be square and non-empty");
    if (!m.allFinite()) throw ValidationError("HermitianMatrix: non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym >= 1e-12 * scale)
      throw ValidationError("HermitianMatrix: input is not Hermitian");
    ComplexMatrix sym = (m + m.adjoint()) * 0.5;
    m_ = std::move(sym);
  }

  static HermitianMatrix identity(int n) {
    return HermitianMatrix(ComplexMatrix::Identity(n, n));
  }

  const ComplexMatrix& matrix() const { return m_; }
  int size() const { return static_cast<int>(m_.rows()); }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

 private:
  ComplexMatrix m_;
};

/// Eigenvalues sorted descending, lambda_1 >= ... >= lambda_n.
struct Spectrum {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double largest() const { return values.front(); }
  double smallest() const { return values.back(); }
};

struct EigenDecomposition {
  Spectrum spectrum;
  ComplexMatrix vectors;  // column j pairs with spectrum.values[j]
};

inline EigenDecomposition eig_hermitian(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix());
  if (es.info() != Eigen::Success) throw NumericError("eig_hermitian: solver did not converge");
  const int n = m.size();
  EigenDecomposition out;
  out.spectrum.values.resize(n);
  out.vectors.resize(n, n);
  // Eigen returns ascending order.
  for (int j = 0; j < n; ++j) {
    out.spectrum.values[j] = es.eigenvalues()(n - 1 - j);
    out.vectors.col(j) = es.eigenvectors().col(n - 1 - j);
  }
  return out;
}

inline Spectrum eigenvalues(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalues: solver did not converge");
  Spectrum s;
  s.values.assign(es.eigenvalues().data(), es.eigenvalues().data() + m.size());
  std::reverse(s.values.begin(), s.values.end());
  return s;
}

/// M^{-1/2} for Hermitian positive definite M. Eigenvalues at or below eps
/// (default 1e-12 * lambda_max) raise SingularityError.
inline HermitianMatrix inv_sqrt_psd(const HermitianMatrix& m, std::optional<double> eps = {}) {
  const EigenDecomposition ed = eig_hermitian(m);
  const double lmax = ed.spectrum.largest();
  const double cut = eps.value_or(1e-12 * std::abs(lmax));
  if (!(ed.spectrum.smallest() > cut))
    throw SingularityError("inv_sqrt_psd: matrix is singular or not positive definite");
  Eigen::VectorXd d(m.size());
  for (int j = 0; j < m.size(); ++j) d(j) = 1.0 / std::sqrt(ed.spectrum.values[j]);
  ComplexMatrix r = ed.vectors * d.asDiagonal() * ed.vectors.adjoint();
  return HermitianMatrix((r + r.adjoint()) * 0.5);
}

namespace detail {

inline void require_orthonormal_columns(const ComplexMatrix& b, const char* name) {
  const ComplexMatrix gram = b.adjoint() * b;
  const double dev = (gram - ComplexMatrix::Identity(b.cols(), b.cols())).cwiseAbs().maxCoeff();
  if (!(dev < 1e-10))
    throw ValidationError(std::string("principal_cosines: ") + name +
                          " does not have orthonormal columns");
}

}  // namespace detail

/// Cosines of the principal angles between range(B1) and range(B2), i.e. the
/// singular values of B1* B2, descending.
inline std::vector<double> principal_cosines(const ComplexMatrix& b1, const ComplexMatrix& b2) {
  if (b1.rows() != b2.rows() || b1.cols() == 0 || b2.cols() == 0)
    throw ValidationError("principal_cosines: bases must share the ambient dimension");
  detail::require_orthonormal_columns(b1, "B1");
  detail::require_orthonormal_columns(b2, "B2");
  const ComplexMatrix c = b1.adjoint() * b2;
  Eigen::JacobiSVD<ComplexMatrix> svd(c);
  const auto& sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace jrmt
