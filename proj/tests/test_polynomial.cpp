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

#include <random>

#include "support.hpp"

namespace {

using skewrh::Poly;
using skewrh::Potential;
using testing_support::gaussian;
using testing_support::quartic;
using C = skewrh::Complex<double>;
using P = Poly<double>;

TEST(PolyEval, Examples) {
  EXPECT_EQ(skewrh::eval(P{1}, C(5)), C(1));
  EXPECT_NEAR(std::abs(skewrh::eval(P::monomial(2), C(0, 1)) - C(-1)), 0, 1e-15);
  const P h2{-0.5, 0, 1};
  EXPECT_EQ(skewrh::eval(h2, C(0)), C(-0.5));
}

TEST(PolyEval, MatchesOracleHermite) {
  const auto h = oracle::hermite(6);
  const auto p = testing_support::to_poly<double>(h[6]);
  for (double x : {-1.3, 0.0, 0.4, 2.2})
    EXPECT_NEAR(p(C(x)).real(), static_cast<double>(oracle::horner(h[6], x).real()), 1e-12);
}

TEST(PolyAlgebra, DegreeAndTrim) {
  EXPECT_EQ(P{}.degree(), -1);
  EXPECT_TRUE(P{}.is_zero());
  EXPECT_EQ((P{1, 2, 3} - P{0, 0, 3}).degree(), 1);
  const P noisy{1, 1, 1e-16};
  EXPECT_EQ(noisy.trimmed().degree(), 1);
  EXPECT_EQ((P{1, 1} * P{-1, 1}).coeffs(), (std::vector<C>{-1, 0, 1}));
  EXPECT_EQ(P({0, 0, 3}).derivative().coeffs(), (std::vector<C>{0, 6}));
}

TEST(Potential, Validation) {
  EXPECT_THROW(Potential<double>({0, 0, 0, 1}), skewrh::InvalidPotential);
  EXPECT_THROW(Potential<double>({0, 0, -1}), skewrh::InvalidPotential);
  EXPECT_THROW(Potential<double>({1}), skewrh::InvalidPotential);
  const auto v = quartic(0.5);
  EXPECT_EQ(v.degree(), 4);
  EXPECT_EQ(v.gamma(), 1.0);
  EXPECT_EQ(v.coeff(1), 0.5);
  EXPECT_FALSE(v.is_even());
  EXPECT_TRUE(quartic().is_even());
  EXPECT_NEAR(v(2.0), 16 + 1, 1e-15);
}

TEST(DualMap, Examples) {
  const auto v = gaussian();
  EXPECT_LT(skewrh::max_coeff_diff(skewrh::dual_map(P{1}, v), P{0, 1}), 1e-15);
  // -(p' - V' p) / (gamma D) with p = x: x^2 - 1
  EXPECT_LT(skewrh::max_coeff_diff(skewrh::dual_map(P{0, 1}, v), P{-1, 0, 1}), 1e-15);
}

TEST(DualMap, DegreeBookkeeping) {
  std::mt19937_64 rng(3);
  for (const auto& v : {gaussian(), quartic(), Potential<double>({0.1, -0.4, 0.3, 0.2, 2})})
    for (int deg = 0; deg <= 8; ++deg) {
      const auto q = skewrh::dual_map(testing_support::random_monic<double>(rng, deg), v);
      EXPECT_EQ(q.degree(), deg + v.degree() - 1);
      EXPECT_NEAR(std::abs(q.leading() - C(1)), 0, 1e-14);
    }
}

TEST(DualMap, Linearity) {
  std::mt19937_64 rng(4);
  const auto v = Potential<double>({0.2, 0.1, -0.3, 0, 1.5}, 0.3);
  const auto p = testing_support::random_monic<double>(rng, 5);
  const auto q = testing_support::random_monic<double>(rng, 3);
  const C a(0.7, 0.2), b(-1.1, 0);
  const auto lhs = skewrh::dual_map(a * p + b * q, v);
  const auto rhs = a * skewrh::dual_map(p, v) + b * skewrh::dual_map(q, v);
  EXPECT_LT(skewrh::max_coeff_diff(lhs, rhs), 1e-12);
}

TEST(Undual, InverseOfExample) {
  EXPECT_LT(skewrh::max_coeff_diff(skewrh::undual(P{0, 1}, gaussian()), P{1}), 1e-15);
}

TEST(Undual, RoundTrip) {
  std::mt19937_64 rng(5);
  for (const auto& v : {gaussian(0.4), quartic(), Potential<double>({0, 1, 0.5, -0.2, 1}, -0.7)})
    for (int deg = 0; deg <= 10; ++deg) {
      const auto p = testing_support::random_monic<double>(rng, deg);
      const auto back = skewrh::undual(skewrh::dual_map(p, v), v);
      EXPECT_LT(skewrh::max_coeff_diff(back, p), 1e-10) << "deg " << deg;
    }
}

TEST(Undual, NotInImage) {
  // V'P - P' = x (x + c) - 1 leaves a constant -1
  EXPECT_THROW(skewrh::undual(P::monomial(2), gaussian()), skewrh::NotInImage);
  // below degree D - 1
  EXPECT_THROW(skewrh::undual(P{1, 1}, quartic()), skewrh::NotInImage);
}

}  // namespace
