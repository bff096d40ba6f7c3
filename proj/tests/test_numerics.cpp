/*
 * Copyright 2026 The skewrh Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "skewrh/numerics.hpp"

namespace {

using skewrh::CMatrix;
using C = skewrh::Complex<double>;

CMatrix<double> random_matrix(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix<double> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = C(g(rng), g(rng));
  return m;
}

template <class Real>
CMatrix<Real> random_skew(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> g;
  CMatrix<Real> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      m(i, j) = skewrh::Complex<Real>(Real(g(rng)), Real(g(rng)));
      m(j, i) = -m(i, j);
    }
  return m;
}

TEST(Solve, IdentityReturnsRhs) {
  const CMatrix<double> b{{1.5}, {C(0, -2)}, {3}};
  const auto x = skewrh::solve(CMatrix<double>::identity(3), b);
  EXPECT_LT((x - b).max_abs(), 1e-15);
}

TEST(Solve, Diagonal) {
  const CMatrix<double> m{{2, 0}, {0, 4}};
  const auto x = skewrh::solve(m, CMatrix<double>{{2}, {4}});
  EXPECT_NEAR(std::abs(x(0, 0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(x(1, 0) - 1.0), 0, 1e-15);
}

TEST(Solve, OneByOneGaussianMoment) {
  // sqrt(2) Gamma(3/2) = int H_2 e^{-x^2/2}
  const double m11 = std::sqrt(2.0) * std::tgamma(1.5);
  const auto x = skewrh::solve(CMatrix<double>{{m11}}, CMatrix<double>{{1}});
  EXPECT_NEAR(x(0, 0).real(), 1 / m11, 1e-15);
}

TEST(Solve, ResidualAndRoundTrip) {
  std::mt19937_64 rng(7);
  for (std::size_t n : {2u, 5u, 9u}) {
    const auto m = random_matrix(rng, n);
    const auto xref = random_matrix(rng, n);
    const auto rhs = m * xref;
    const auto x = skewrh::solve(m, rhs);
    EXPECT_LE((m * x - rhs).norm_inf(), 1e-10 * rhs.norm_inf()) << n;
    EXPECT_LE((x - xref).max_abs(), 1e-9 * xref.max_abs()) << n;
  }
}

TEST(Solve, SingularRaises) {
  const CMatrix<double> m{{1, 2}, {2, 4}};
  EXPECT_THROW(skewrh::solve(m, CMatrix<double>::identity(2)), skewrh::SingularMatrix);
  const CMatrix<double> tiny{{1, 0}, {0, 1e-14}};
  EXPECT_THROW(skewrh::solve(tiny, CMatrix<double>::identity(2)), skewrh::SingularMatrix);
}

TEST(Solve, ShapeMismatchRaises) {
  EXPECT_THROW(skewrh::solve(CMatrix<double>(2, 3), CMatrix<double>(2, 1)), skewrh::DimensionMismatch);
}

TEST(Solve, NonFiniteRejected) {
  const CMatrix<double> m{{std::numeric_limits<double>::quiet_NaN()}};
  EXPECT_THROW(skewrh::solve(m, CMatrix<double>{{1}}), skewrh::NonFiniteValue);
}

TEST(Determinant, KnownValue) {
  const CMatrix<double> m{{1, 2, 0}, {3, 4, 0}, {0, 0, C(0, 1)}};
  EXPECT_NEAR(std::abs(skewrh::determinant(m) - C(0, -2)), 0, 1e-14);
}

TEST(Pfaffian, TwoByTwo) {
  const C a(0.7, -1.3);
  const CMatrix<double> m{{0, a}, {-a, 0}};
  EXPECT_NEAR(std::abs(skewrh::pfaffian(m) - a), 0, 1e-15);
}

TEST(Pfaffian, ZeroMatrix) { EXPECT_EQ(skewrh::pfaffian(CMatrix<double>(4, 4)), C(0)); }

TEST(Pfaffian, FourByFourFormula) {
  std::mt19937_64 rng(11);
  const auto m = random_skew<double>(rng, 4);
  const C expect = m(0, 1) * m(2, 3) - m(0, 2) * m(1, 3) + m(0, 3) * m(1, 2);
  EXPECT_NEAR(std::abs(skewrh::pfaffian(m) - expect), 0, 1e-13);
}

TEST(Pfaffian, SquareEqualsDeterminant) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 4; ++trial)
    for (std::size_t n = 2; n <= 10; n += 2) {
      const auto m = random_skew<double>(rng, n);
      const C pf = skewrh::pfaffian(m);
      const C det = skewrh::determinant(m);
      EXPECT_LE(std::abs(pf * pf - det), 1e-8 * std::abs(det)) << "n = " << n;
    }
}

TEST(Pfaffian, ExtendedPrecision) {
  std::mt19937_64 rng(5);
  const auto m = random_skew<long double>(rng, 8);
  const auto pf = skewrh::pfaffian(m);
  const auto det = skewrh::determinant(m);
  EXPECT_LE(std::abs(pf * pf - det), 1e-14L * std::abs(det));
}

TEST(Pfaffian, GaussianGramMatchesDoubleIntegral) {
  // g_ij = int (x^i (x^j)' - (x^i)' x^j) e^{-x^2} = (j - i) m_{i+j-1}
  auto mom = [](int k) { return k % 2 ? 0.0 : std::tgamma((k + 1) / 2.0); };
  CMatrix<double> g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i + j >= 1) g(i, j) = double(j - i) * mom(i + j - 1);
  // (1/2) int int (x - y)^4 e^{-x^2 - y^2} = (2 m4 m0 + 6 m2^2) / 2
  const double rhs = (2 * mom(4) * mom(0) + 6 * mom(2) * mom(2)) / 2;
  EXPECT_NEAR(skewrh::pfaffian(g).real(), rhs, 1e-12 * rhs);
  EXPECT_NEAR(rhs, 1.5 * M_PI, 1e-12);
}

TEST(Pfaffian, RejectsBadInput) {
  EXPECT_THROW(skewrh::pfaffian(CMatrix<double>(3, 3)), skewrh::OddDimension);
  const CMatrix<double> sym{{0, 1}, {1, 0}};
  EXPECT_THROW(skewrh::pfaffian(sym), skewrh::NotSkewSymmetric);
  EXPECT_THROW(skewrh::pfaffian(CMatrix<double>(2, 4)), skewrh::DimensionMismatch);
}

TEST(CMatrix, CommutatorAndTranspose) {
  const CMatrix<double> a{{1, 2}, {3, 4}};
  const CMatrix<double> b{{0, 1}, {1, 0}};
  const auto c = skewrh::commutator(a, b);
  const CMatrix<double> expect{{-1, -3}, {3, 1}};
  EXPECT_LT((c - expect).max_abs(), 1e-15);
  EXPECT_EQ(a.transpose()(0, 1), C(3));
  EXPECT_EQ(a.norm_inf(), 7.0);
  EXPECT_EQ(a.norm_one(), 6.0);
}

TEST(CheckFinite, RejectsInfinity) {
  EXPECT_THROW(skewrh::check_finite(std::numeric_limits<double>::infinity(), "x"), skewrh::NonFiniteValue);
  EXPECT_EQ(skewrh::check_finite(2.0, "x"), 2.0);
}

}  // namespace
