#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

#include "jrmt/error.hpp"
#include "jrmt/matalg.hpp"

namespace jrmt {

using Complex = std::complex<double>;

namespace detail {

/// splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Stateful generator. Normals come from our own Box–Muller transform so the
/// draw sequence only depends on mt19937_64, whose output is fixed by the
/// standard.
class Rng {
 public:
  explicit Rng(std::uint64_t state) : engine_(state) {}

  /// Uniform on (0, 1], 53 random bits.
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Complex Gaussian with E|z|^2 = variance, independent real and imaginary
  /// parts of variance/2 each.
  Complex complex_normal(double variance = 1.0) {
    const double radius = std::sqrt(-std::log(uniform()) * variance);
    const double angle = 2.0 * std::numbers::pi * uniform();
    return {radius * std::cos(angle), radius * std::sin(angle)};
  }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const Complex z = complex_normal(2.0);
    spare_ = z.imag();
    has_spare_ = true;
    return z.real();
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// (seed, stream_id) pair. Trial i of a Monte Carlo batch uses stream_id = i,
/// so results do not depend on how trials are spread over workers.
struct SeededStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  Rng rng() const {
    return Rng(detail::mix64(seed ^ detail::mix64(stream_id + 0x632be59bd9b4e019ULL)));
  }
};

/// rows x cols matrix of i.i.d. complex Gaussians with E|A_ij|^2 = variance.
inline ComplexMatrix complex_ginibre(Rng& rng, int rows, int cols, double variance) {
  detail::require(rows >= 1 && cols >= 1, "complex_ginibre: dimensions must be >= 1");
  detail::require(variance > 0.0 && std::isfinite(variance),
                  "complex_ginibre: variance must be positive");
  ComplexMatrix out(rows, cols);
  // Column-major fill; the order is part of the determinism contract.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) out(i, j) = rng.complex_normal(variance);
  return out;
}

/// Haar-distributed n x n unitary: QR of a Ginibre matrix, with the phases of
/// R's diagonal moved into Q so that R has a positive diagonal.
inline ComplexMatrix haar_unitary(Rng& rng, int n) {
  detail::require(n >= 1, "haar_unitary: n must be >= 1");
  const ComplexMatrix g = complex_ginibre(rng, n, n, 1.0);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

/// U diag(1_q, 0) U* for Haar U: a uniformly rotated rank-q projector.
inline HermitianMatrix random_projector(Rng& rng, int n, int q) {
  detail::require(n >= 1, "random_projector: n must be >= 1");
  detail::require(q >= 1 && q <= n, "random_projector: need 1 <= q <= n");
  const ComplexMatrix u = haar_unitary(rng, n);
  const auto frame = u.leftCols(q);
  return HermitianMatrix(frame * frame.adjoint());
}

}  // namespace jrmt
