#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "jrmt/ensembles.hpp"
#include "jrmt/limits.hpp"
#include "jrmt/orthopoly.hpp"
#include "jrmt/quadrature.hpp"
#include "jrmt/special_functions.hpp"
#include "oracles.hpp"

using namespace jrmt;

TEST(EdgeProfile, TrivialAndSymmetricCases) {
  const LimitProfile p = edge_profile(0, 0);
  EXPECT_DOUBLE_EQ(p.A, 0.0);
  EXPECT_DOUBLE_EQ(p.B, 0.0);
  EXPECT_DOUBLE_EQ(p.D, 1.0);
  EXPECT_DOUBLE_EQ(p.r, -1.0);
  EXPECT_DOUBLE_EQ(p.s, 1.0);
  const LimitProfile q = edge_profile(0.7, 0.7);
  EXPECT_NEAR(q.r, -q.s, 1e-15);
  EXPECT_THROW(edge_profile(-0.1, 0), ParameterError);
}

TEST(EdgeProfile, EndpointsAreRadicandZeros) {
  const LimitProfile p = edge_profile(1.0, 0.5);
  EXPECT_NEAR(p.A, 2.0 / 7.0, 1e-15);
  EXPECT_NEAR(p.B, 1.0 / 7.0, 1e-15);
  // The density's support boundary is where Delta(x) changes sign.
  for (double e : {p.r, p.s}) {
    double lo = e - 0.05, hi = e + 0.05;
    const bool left = e == p.r;
    for (int it = 0; it < 100; ++it) {
      const double mid = 0.5 * (lo + hi);
      const bool inside = interior_delta(1.0, 0.5, mid) < 0.0;
      ((inside == left) ? hi : lo) = mid;
    }
    EXPECT_NEAR(0.5 * (lo + hi), e, 1e-12);
  }
  EXPECT_LE(-1.0, p.r);
  EXPECT_LE(p.r, p.s);
  EXPECT_LE(p.s, 1.0);
}

TEST(LimitDensity, ArcsineLawAndEndpoints) {
  const LimitProfile p = edge_profile(0, 0);
  EXPECT_NEAR(limit_density(p, 0.0), 1.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(limit_density(p, 0.6), 1.0 / (std::numbers::pi * 0.8), 1e-15);
  const LimitProfile q = edge_profile(0.5, 0.25);
  EXPECT_DOUBLE_EQ(limit_density(q, q.r), 0.0);
  EXPECT_DOUBLE_EQ(limit_density(q, q.s), 0.0);
  EXPECT_DOUBLE_EQ(limit_density(q, 0.99), 0.0);
  EXPECT_THROW(limit_density(LimitProfile{0, 0, 0.6, 0.5}, 0.0), RegimeError);
}

TEST(LimitDensity, Normalized) {
  for (auto [al, be] : {std::pair{0.5, 0.25}, std::pair{1.0, 1.0}}) {
    const LimitProfile p = edge_profile(al, be);
    const double m = cosine_substitution(512, p.r, p.s).integrate([&](double x) { return limit_density(p, x); });
    EXPECT_NEAR(m, 1.0, 1e-8) << al << "," << be;
  }
}

TEST(LimitDensity, MatchesFreeProductUnderAffineMap) {
  // Rank fractions (ra, rb) with ra <= rb; the Jacobi parameters are
  // a/q = (1 - ra - rb)/ra, b/q = (rb - ra)/ra and x = 2 lambda - 1.
  for (auto [ra, rb] : {std::pair{0.2, 0.3}, std::pair{0.25, 0.5}, std::pair{0.1, 0.1}}) {
    const LimitProfile p = edge_profile((1 - ra - rb) / ra, (rb - ra) / ra);
    const FreeDensity fd = free_product_density(ra, rb);
    EXPECT_NEAR(2 * fd.lo - 1, p.r, 1e-12);
    EXPECT_NEAR(2 * fd.hi - 1, p.s, 1e-12);
    for (double t = 0.05; t < 1.0; t += 0.1) {
      const double lam = fd.lo + t * (fd.hi - fd.lo);
      // The continuous part carries mass ra; the Jacobi density is normalized.
      EXPECT_NEAR(fd.density(lam), ra * 2.0 * limit_density(p, 2 * lam - 1), 1e-8) << ra << "," << rb;
    }
  }
}

TEST(FreeProduct, HalfHalfExample) {
  const FreeDensity d = free_product_density(0.5, 0.5);
  EXPECT_NEAR(d.lo, 0.0, 1e-15);
  EXPECT_NEAR(d.hi, 1.0, 1e-15);
  ASSERT_EQ(d.atoms.size(), 1u);
  EXPECT_DOUBLE_EQ(d.atoms[0].first, 0.0);
  EXPECT_DOUBLE_EQ(d.atoms[0].second, 0.5);
}

TEST(FreeProduct, TotalMassIsOne) {
  for (auto [a, b] : {std::pair{0.3, 0.6}, std::pair{0.5, 0.5}}) {
    const FreeDensity d = free_product_density(a, b);
    EXPECT_NEAR(d.total_mass, 1.0, 1e-8) << a << "," << b;
  }
}

TEST(FreeProduct, FullProjectorDegenerates) {
  const FreeDensity d = free_product_density(1.0, 0.3);
  EXPECT_NEAR(d.hi - d.lo, 0.0, 1e-15);
  EXPECT_NEAR(d.continuous_mass, 0.0, 1e-15);
  ASSERT_EQ(d.atoms.size(), 2u);
  EXPECT_NEAR(d.atoms[0].second, 0.7, 1e-15);
  EXPECT_NEAR(d.atoms[1].second, 0.3, 1e-15);
  EXPECT_THROW(free_product_density(1.2, 0.3), ParameterError);
}

TEST(WishartRatio, EdgesAndNonnegativity) {
  const FreeDensity d = wishart_ratio_density(1, 1);
  EXPECT_NEAR(d.hi, 1.0, 1e-15);
  EXPECT_NEAR(d.lo, 0.0, 1e-15);
  const FreeDensity e = wishart_ratio_density(1.5, 2.0);
  for (double x = e.lo; x <= e.hi; x += 0.01) EXPECT_GE(e.density(x), 0.0);
  EXPECT_GT(e.total_mass, 0.0);
  EXPECT_THROW(wishart_ratio_density(0.5, 2.0), ParameterError);
}

TEST(WishartRatio, MonteCarloSupport) {
  const int m = 60;
  const double al = 1.5, be = 2.0;
  const FreeDensity d = wishart_ratio_density(al, be);
  double lo = 1.0, hi = 0.0;
  for (int t = 0; t < 500; ++t) {
    Rng rng = SeededStream{2024, static_cast<std::uint64_t>(t)}.rng();
    for (double v : wishart_ratio_eigenvalues(rng, m, static_cast<int>(al * m), static_cast<int>(be * m))) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  EXPECT_GE(lo, d.lo - 0.05);
  EXPECT_LE(hi, d.hi + 0.05);
}

TEST(Airy, OracleValues) {
  for (const auto& o : oracle::kAiry) {
    EXPECT_NEAR(airy(o.x), o.ai, 1e-10) << o.x;
    EXPECT_NEAR(airy_prime(o.x), o.ai_prime, 1e-10) << o.x;
  }
  for (const auto& o : oracle::kBi) {
    EXPECT_NEAR(bi(o.x), o.bi, 1e-10 * std::max(1.0, std::abs(o.bi))) << o.x;
  }
  EXPECT_NEAR(bi_prime(0.0), oracle::kBiPrime0, 1e-12);
  EXPECT_NEAR(airy(0.0), std::pow(9.0, -1.0 / 3.0) / std::tgamma(2.0 / 3.0), 1e-15);
}

TEST(Airy, DifferentialEquation) {
  const double h = 1e-3;
  for (double x : {-2.0, 0.0, 3.0}) {
    const double d2 = (-airy(x + 2 * h) + 16 * airy(x + h) - 30 * airy(x) + 16 * airy(x - h) - airy(x - 2 * h)) /
                      (12 * h * h);
    EXPECT_NEAR(d2, x * airy(x), 1e-6) << x;
  }
}

TEST(Airy, PositiveAndDecreasingOnRight) {
  double prev = airy(0.0);
  for (double x = 0.25; x <= 5.0; x += 0.25) {
    const double v = airy(x);
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(AiryKernel, SymmetryDiagonalDecay) {
  EXPECT_DOUBLE_EQ(airy_kernel(-1.3, 0.4), airy_kernel(0.4, -1.3));
  EXPECT_NEAR(airy_kernel(0.0, 0.0), std::pow(airy_prime(0.0), 2), 1e-15);
  EXPECT_LT(airy_kernel(8.0, 8.0), 1e-6);
  // Quotient branch just outside the switch against the confluent branch, same midpoint.
  EXPECT_NEAR(airy_kernel(1.0 - 1e-6, 1.0 + 1e-6), airy_kernel(1.0 - 2e-7, 1.0 + 2e-7), 1e-9);
}

TEST(Bessel, OracleValuesAndTrivialCases) {
  for (const auto& o : oracle::kBessel) EXPECT_NEAR(bessel_j(o.b, o.z), o.j, 1e-10) << o.b << "," << o.z;
  EXPECT_DOUBLE_EQ(bessel_j(0, 0.0), 1.0);
  for (int b = 1; b < 5; ++b) EXPECT_DOUBLE_EQ(bessel_j(b, 0.0), 0.0);
}

TEST(Bessel, AgreesWithStandardLibrary) {
  for (int b = 0; b <= 6; ++b)
    for (double z = 0.1; z <= 60.0; z += 1.7) EXPECT_NEAR(bessel_j(b, z), std::cyl_bessel_j(b, z), 1e-10) << b << "," << z;
}

TEST(Bessel, DerivativeIdentity) {
  const double h = 1e-4, z = 3.0;
  const double fd = (bessel_j(2, z + h) - bessel_j(2, z - h)) / (2 * h);
  EXPECT_NEAR(fd, -bessel_j(3, z) + 2.0 * bessel_j(2, z) / z, 1e-7);
}

TEST(BesselKernel, SymmetryDomainAndConfluence) {
  EXPECT_DOUBLE_EQ(bessel_kernel(2, 3.0, 7.5), bessel_kernel(2, 7.5, 3.0));
  EXPECT_THROW(bessel_kernel(0, 0.0, 1.0), DomainError);
  EXPECT_THROW(bessel_kernel(0, 1.0, -1.0), DomainError);
  const double diag = bessel_kernel(0, 1.0, 1.0);
  EXPECT_GT(diag, 0.0);
  const double two_sided = 0.5 * (bessel_kernel(0, 1.0 - 1e-4, 1.0) + bessel_kernel(0, 1.0 + 1e-4, 1.0));
  EXPECT_NEAR(diag, two_sided, 1e-6);
}

TEST(BesselKernel, NumeratorCoefficientsByExtraction) {
  // J_b(sqrt u) = sum_k c_k u^{b/2+k}, c_k = (-1)^k 2^{-b-2k} / ((b+k)! k!).
  // sqrt(u) J_b'(sqrt u) = sum_k 2(b/2+k) c_k u^{b/2+k}.
  // Coefficient of u^{b/2+k} v^{b/2+l} in J(u) sqrt(v) J'(v) - J(v) sqrt(u) J'(u)
  // is c_k c_l (2l - 2k) = 2 (l - k) c_k c_l.
  for (int b = 0; b <= 2; ++b) {
    auto fact = [](int m) {
      std::int64_t f = 1;
      for (int i = 2; i <= m; ++i) f *= i;
      return f;
    };
    for (int k = 0; k <= 3; ++k)
      for (int l = 0; l <= 3; ++l) {
        const int sign = ((k + l) % 2 == 0) ? 1 : -1;
        // 2 (l-k) (-1)^{k+l} 2^{-2b-2k-2l} / ((b+k)! k! (b+l)! l!)
        const std::int64_t den = fact(b + k) * fact(k) * fact(b + l) * fact(l) * (std::int64_t{1} << (2 * b + 2 * k + 2 * l));
        const Rational expected = Rational::make(2 * sign * (l - k), den);
        EXPECT_EQ(bessel_numerator_coefficient(b, k, l), expected) << b << "," << k << "," << l;
      }
  }
  EXPECT_EQ(bessel_numerator_coefficient(0, 2, 1), Rational::make(1, 128));
}

TEST(BesselKernel, SeriesMatchesClosedForm) {
  // Sum the rational numerator coefficients to order 5 and divide by 2(u - v).
  const int b = 0;
  const double u = 0.3, v = 0.7;
  double num = 0.0;
  for (int k = 0; k <= 5; ++k)
    for (int l = 0; l <= 5; ++l)
      num += bessel_numerator_coefficient(b, k, l).to_double() * std::pow(u, b / 2.0 + k) * std::pow(v, b / 2.0 + l);
  EXPECT_NEAR(num / (2 * (u - v)), bessel_kernel(b, u, v), 1e-9);
}

TEST(SineKernel, Values) {
  EXPECT_DOUBLE_EQ(sine_kernel(0, 0), 1.0);
  EXPECT_NEAR(sine_kernel(0.5, 0), 2.0 / std::numbers::pi, 1e-15);
  EXPECT_NEAR(sine_kernel(1, 0), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(sine_kernel(0.3, -1.1), sine_kernel(-1.1, 0.3));
}

TEST(BanachAngle, RegimesAndLimits) {
  const double th = banach_angle(0.2, 0.2);
  EXPECT_GT(th, 0.0);
  EXPECT_LT(th, std::numbers::pi / 2);
  EXPECT_LT(banach_angle(0.499, 0.5), 0.1);
  EXPECT_GT(banach_cos2(0.4999, 0.5), 0.99);
  EXPECT_THROW(banach_angle(0.5, 0.5), RegimeError);
  EXPECT_THROW(banach_angle(0.0, 0.5), ParameterError);
}

TEST(BanachAngle, EqualsFreeProductUpperEdge) {
  for (auto [a, b] : {std::pair{0.25, 0.3}, std::pair{0.1, 0.6}, std::pair{0.4, 0.2}})
    EXPECT_NEAR(banach_cos2(a, b), free_product_density(a, b).hi, 1e-12);
}
