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

#include "support.hpp"

namespace {

using skewrh::OrthogonalBasis;
using skewrh::Potential;
using skewrh::Quadrature;
using testing_support::gaussian;
using testing_support::quartic;
using C = skewrh::Complex<double>;

TEST(BuildBasis, GaussianIsHermite) {
  const auto b = skewrh::build_basis(gaussian(), 12);
  const auto h = oracle::hermite(12);
  for (int k = 0; k <= 12; ++k) {
    EXPECT_LT(testing_support::coeff_gap(b[k], h[k]), 1e-12) << k;
    EXPECT_NEAR(b.nu[k], static_cast<double>(oracle::hermite_norm(k)), 1e-11 * b.nu[k]) << k;
  }
}

TEST(BuildBasis, LowDegreeExamples) {
  const auto b = skewrh::build_basis(gaussian(), 3);
  EXPECT_LT(skewrh::max_coeff_diff(b[1], skewrh::Poly<double>{0, 1}), 1e-14);
  EXPECT_LT(skewrh::max_coeff_diff(b[2], skewrh::Poly<double>{-0.5, 0, 1}), 1e-13);
  EXPECT_LT(skewrh::max_coeff_diff(b[3], skewrh::Poly<double>{0, -1.5, 0, 1}), 1e-13);
  for (const auto& v : {quartic(0.3), Potential<double>({0, 0, 0, 1, 1})})
    EXPECT_EQ(skewrh::build_basis(v, 2)[0].coeffs(), (std::vector<C>{1}));
}

TEST(BuildBasis, EvenWeightHasZeroRecurrenceA) {
  const auto b = skewrh::build_basis(quartic(), 16);
  for (double a : b.rec_a) EXPECT_NEAR(a, 0, 1e-12);
  for (int k = 0; k <= 16; ++k)
    for (int j = 0; j <= k; ++j)
      if ((k - j) % 2 == 1) {
        EXPECT_NEAR(std::abs(b[k][static_cast<std::size_t>(j)]), 0, 1e-10) << k << "," << j;
      }
}

template <class Real>
void expect_orthogonal(int d, int n, double tol) {
  for (Real t : {Real(0), Real(0.6)}) {
    const Potential<Real> v = d == 2 ? Potential<Real>({0, 0, 0.5}, t) : Potential<Real>({0, 0, 0, 0, 1}, t);
    const Quadrature<Real> q(v, 2 * n + 2);
    const auto b = skewrh::build_basis(q, n, 24);
    EXPECT_LT(static_cast<double>(skewrh::orthogonality_defect(b, q)), tol) << "D = " << d << " t = " << t;
    for (Real nu : b.nu) EXPECT_GT(nu, 0);
  }
}

// Binary64 keeps the coefficient-form Gram matrix diagonal to 1e-9 up to N = 14;
// beyond that the monomial representation needs extended precision.
TEST(Orthogonality, GaussianDegree14) { expect_orthogonal<double>(2, 14, 1e-9); }
TEST(Orthogonality, QuarticDegree14) { expect_orthogonal<double>(4, 14, 1e-9); }
TEST(Orthogonality, GaussianDegree20Extended) { expect_orthogonal<long double>(2, 20, 1e-9); }
TEST(Orthogonality, QuarticDegree20Extended) { expect_orthogonal<long double>(4, 20, 1e-9); }

TEST(BuildBasis, ThreeTermRecurrence) {
  const auto b = skewrh::build_basis(Potential<double>({0, 0.3, 0.2, -0.1, 0.8}, 0.2), 14);
  const skewrh::Poly<double> x = skewrh::Poly<double>::monomial(1);
  for (int k = 1; k < 14; ++k) {
    const auto rhs = (x - skewrh::Poly<double>{b.rec_a[k]}) * b[k] - C(b.rec_b[k]) * b[k - 1];
    EXPECT_LT(skewrh::max_coeff_diff(b[k + 1], rhs), 1e-9 * b[k + 1].max_abs_coeff()) << k;
    EXPECT_NEAR(b.nu[k], b.rec_b[k] * b.nu[k - 1], 1e-9 * b.nu[k]) << k;
  }
}

TEST(BuildBasis, ParityForEvenPotential) {
  const auto b = skewrh::build_basis(Potential<double>({0.5, 0, -1, 0, 0.4}), 12);
  for (int k = 0; k <= 12; ++k)
    for (double x : {0.3, 1.1, 1.9}) {
      const C plus = b[k](C(x)), minus = b[k](C(-x));
      EXPECT_NEAR(std::abs(minus - (k % 2 ? -plus : plus)), 0, 1e-10 * std::max(1.0, std::abs(plus)));
    }
}

TEST(NextToLeading, ZeroForEvenWeights) {
  for (const auto& v : {gaussian(), quartic()}) {
    const auto b = skewrh::build_basis(v, 12);
    for (int n = 0; n + v.degree() <= 12; ++n) EXPECT_NEAR(skewrh::next_to_leading(b, n), 0, 1e-12);
  }
}

TEST(NextToLeading, MatchesHankelOracle) {
  const std::vector<double> c{0, 0, 0, 1, 1};
  const auto b = skewrh::build_basis(Potential<double>(c), 6);
  const long double expect = oracle::hankel_next_to_leading({0, 0, 0, 1, 1}, 4, -6, 5);
  EXPECT_NEAR(skewrh::next_to_leading(b, 0), static_cast<double>(expect), 1e-9);
  // Shifted Gaussian: H_n(x + t) with the mean at -t, so lambda_0 = D t = 2t
  const auto g = skewrh::build_basis(gaussian(0.4), 4);
  const long double eg = oracle::hankel_next_to_leading({0, 0.4, 0.5}, 2, -14, 14);
  EXPECT_NEAR(skewrh::next_to_leading(g, 0), static_cast<double>(eg), 1e-10);
  EXPECT_NEAR(skewrh::next_to_leading(g, 0), 0.8, 1e-10);
}

TEST(NextToLeading, OutOfRange) {
  const auto b = skewrh::build_basis(quartic(), 6);
  EXPECT_THROW(skewrh::next_to_leading(b, 3), skewrh::OutOfRange);
  EXPECT_THROW(skewrh::next_to_leading(b, -1), skewrh::OutOfRange);
}

TEST(BuildBasis, CapEnforced) {
  EXPECT_THROW(skewrh::build_basis(quartic(), 30), skewrh::OutOfRange);
}

}  // namespace
