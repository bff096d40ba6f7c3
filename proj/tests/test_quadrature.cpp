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
#include <numbers>

#include "support.hpp"

namespace {

using skewrh::Contour;
using skewrh::Poly;
using skewrh::Quadrature;
using skewrh::Weight;
using testing_support::gaussian;
using testing_support::quartic;
using C = skewrh::Complex<double>;
using P = Poly<double>;

const double kSqrtPi = std::sqrt(std::numbers::pi);

C to_c(oracle::CL v) { return C(static_cast<double>(v.real()), static_cast<double>(v.imag())); }

TEST(GammaIntegral, GaussianOnRealLine) {
  const C val = skewrh::gamma_integral(P{1}, 1, gaussian(), Weight::exp_minus_v);
  EXPECT_NEAR(std::abs(val - C(std::sqrt(2 * std::numbers::pi))), 0, 1e-12);
}

TEST(GammaIntegral, EvenHermiteMoments) {
  // int H_{2n} e^{-x^2/2} = sqrt(2) Gamma(n + 1/2), H monic for e^{-x^2}
  const auto h = oracle::hermite(8);
  const Quadrature<double> q(gaussian(), 8);
  for (int n = 0; n <= 4; ++n) {
    const C val = q.gamma_integral(testing_support::to_poly<double>(h[2 * n]), 1, Weight::exp_minus_v);
    const double expect = std::sqrt(2.0) * std::tgamma(n + 0.5);
    EXPECT_NEAR(std::abs(val - C(expect)), 0, 1e-11 * expect) << n;
  }
}

TEST(GammaIntegral, QuarticClosedForm) {
  const Quadrature<double> q(quartic(), 8);
  for (int k = 1; k <= 3; ++k)
    for (int m = 0; m <= 8; ++m) {
      const C val = q.gamma_integral(P::monomial(m), k, Weight::exp_minus_v);
      const C expect = to_c(oracle::quartic_gamma_moment(m, k));
      EXPECT_NEAR(std::abs(val - expect), 0, 1e-12) << "k " << k << " m " << m;
    }
}

TEST(GammaIntegral, MiddleGammaIsRealLine) {
  for (const auto& v : {gaussian(0.3), quartic(-0.5), skewrh::Potential<double>({0, 0.2, -0.5, 0.1, 0.7})}) {
    const int d = v.degree();
    const Quadrature<double> q(v, 5);
    const P p{0.5, -1, 0, 2};
    const C g = q.gamma_integral(p, d / 2, Weight::exp_minus_v);
    const C r = q.real_integral(p, Weight::exp_minus_v);
    EXPECT_NEAR(std::abs(g - r), 0, 1e-10 * std::abs(r));
  }
}

TEST(GammaIntegral, Linearity) {
  const Quadrature<double> q(quartic(0.4), 6);
  const P a{1, 0, -2, 1}, b{0, 3, 0, 0, 0, 1};
  const C s(0.3, -0.8);
  for (int k = 1; k <= 3; ++k) {
    const C lhs = q.gamma_integral(a + s * b, k, Weight::exp_minus_v);
    const C rhs = q.gamma_integral(a, k, Weight::exp_minus_v) + s * q.gamma_integral(b, k, Weight::exp_minus_v);
    EXPECT_NEAR(std::abs(lhs - rhs), 0, 1e-13 * std::max(1.0, std::abs(lhs)));
  }
}

TEST(GammaIntegral, BadIndex) {
  const Quadrature<double> q(quartic(), 2);
  EXPECT_THROW(q.gamma_integral(P{1}, 4, Weight::exp_minus_v), skewrh::OutOfRange);
  EXPECT_THROW(q.gamma_integral(P{1}, 0, Weight::exp_minus_v), skewrh::OutOfRange);
  EXPECT_THROW(q.gamma_integral(P::monomial(3), 1, Weight::exp_minus_v), skewrh::OutOfRange);
}

TEST(GammaIntegral, ExtendedPrecision) {
  const skewrh::Potential<long double> v({0, 0, 0.5L});
  const auto val = skewrh::gamma_integral(Poly<long double>{1}, 1, v, Weight::exp_minus_v);
  EXPECT_NEAR(static_cast<double>(std::abs(val - std::sqrt(2 * std::numbers::pi_v<long double>))), 0, 1e-16);
}

TEST(RealMoment, Examples) {
  EXPECT_NEAR(skewrh::real_moment(P{1}, 0, gaussian()), kSqrtPi, 1e-13);
  EXPECT_NEAR(skewrh::real_moment(P{0, 1}, 0, gaussian()), 0, 1e-15);
  for (int j = 0; j <= 8; ++j) {
    EXPECT_NEAR(skewrh::real_moment(P{1}, j, gaussian()), static_cast<double>(oracle::gaussian_moment(j)), 1e-12)
        << j;
    EXPECT_NEAR(skewrh::real_moment(P{1}, j, quartic()), static_cast<double>(oracle::quartic_real_moment(j)),
                1e-13)
        << j;
  }
}

TEST(RealMoment, ShiftedGaussianAgreesWithTrapezoid) {
  // V = x^2/2 + t x: a shifted Gaussian, cross-checked by the trapezoid oracle.
  const double t = 0.7;
  auto f = [&](long double x) { return x * x * std::exp(-x * x - 2 * t * x); };
  const double expect = static_cast<double>(oracle::trapezoid(f, -12, 12, 20000));
  EXPECT_NEAR(skewrh::real_moment(P{1}, 2, gaussian(t)), expect, 1e-11 * expect);
}

TEST(CircleMoment, CoefficientExtraction) {
  for (int m = 1; m <= 6; ++m) {
    EXPECT_EQ(skewrh::circle_moment(P::monomial(m - 1), m), C(-1));
    EXPECT_EQ(skewrh::circle_moment(P::monomial(m - 1) - P::monomial(m - 1) + P{2}, m + 1), C(0));
  }
  EXPECT_THROW(skewrh::circle_moment(P{1}, 0), skewrh::OutOfRange);
}

TEST(CircleCauchy, ResidueAtOrigin) {
  // (1/2 pi i) oint x^{-1} / (x - z) dx = -1/z outside, 0 inside
  for (C z : {C(2, 1), C(-3, 0.5), C(0, 10)}) {
    EXPECT_NEAR(std::abs(skewrh::circle_cauchy(P{1}, 1, z) + C(1) / z), 0, 1e-15);
    for (int m = 1; m <= 4; ++m)
      EXPECT_NEAR(std::abs(skewrh::circle_cauchy(P::monomial(m - 1), m, z) + C(1) / z), 0, 1e-15);
  }
  EXPECT_EQ(skewrh::circle_cauchy(P{1}, 1, C(0.2, 0.1)), C(0));
  // Inside |z| < 1 coefficients at or above x^m survive: p = x^3, m = 1 gives z^2
  EXPECT_NEAR(std::abs(skewrh::circle_cauchy(P::monomial(3), 1, C(0.3, 0.4)) - C(0.3, 0.4) * C(0.3, 0.4)), 0,
              1e-15);
  EXPECT_THROW(skewrh::circle_cauchy(P{1}, 1, C(0, 1)), skewrh::PointOnContour);
}

TEST(CircleCauchy, JumpIsWeight) {
  // C_+ - C_- = p(x) x^{-m} on T, + side inside
  const P p{1, -2, 0.5, 3};
  const int m = 2;
  const C x = std::polar(1.0, 0.9);
  const double eps = 1e-7;
  const C jump = skewrh::circle_cauchy(p, m, x * (1 - eps)) - skewrh::circle_cauchy(p, m, x * (1 + eps));
  EXPECT_NEAR(std::abs(jump - p(x) * std::pow(x, -m)), 0, 1e-5);
}

TEST(Cauchy, LargeZLaw) {
  const auto v = quartic(0.3);
  const Quadrature<double> q(v, 4);
  const P p{1, 0.5, 0, -1};
  const C z(1e6, 2e5);
  for (const auto& [c, w] : {std::pair{Contour::real_line(), Weight::exp_minus_2v},
                             std::pair{Contour::gamma(1), Weight::exp_minus_v},
                             std::pair{Contour::gamma(3), Weight::exp_minus_v}}) {
    const C lead = -q.integrate(p, c, w) / (skewrh::two_pi_i<double>() * z);
    EXPECT_NEAR(std::abs(q.cauchy(p, c, w, z) - lead), 0, 1e-6 * std::abs(lead));
  }
}

TEST(Cauchy, SecondMomentAsymptotics) {
  // z^2 [C(z) + m0 / (2 pi i z)] -> -m1 / (2 pi i)
  const Quadrature<double> q(gaussian(), 2);
  const P p{1, 1};
  const C tpi = skewrh::two_pi_i<double>();
  const double m0 = kSqrtPi, m1 = kSqrtPi / 2;
  const C target = -m1 / tpi;
  double previous = 1e300;
  for (double r : {1e3, 1e4, 1e5, 1e6}) {
    const C z = std::polar(r, 0.7);
    const C val = z * z * (q.cauchy(p, Contour::real_line(), Weight::exp_minus_2v, z) + m0 / (tpi * z));
    const double gap = std::abs(val - target) / std::abs(target);
    EXPECT_LT(gap, previous);
    previous = gap;
  }
  EXPECT_LT(previous, 1e-6);
}

TEST(Cauchy, PlemeljJumpOnRealLine) {
  const auto v = gaussian(0.2);
  const Quadrature<double> q(v, 3);
  const P p{0.3, -1, 0, 1};
  auto diff = [&](double x, double eps) {
    return q.cauchy(p, Contour::real_line(), Weight::exp_minus_2v, C(x, eps)) -
           q.cauchy(p, Contour::real_line(), Weight::exp_minus_2v, C(x, -eps));
  };
  for (double x : {-1.1, 0.4, 1.3}) {
    const C jump = (10.0 * diff(x, 1e-5) - diff(x, 1e-4)) / 9.0;
    const C expect = p(C(x)) * std::exp(-2 * v(x));
    EXPECT_NEAR(std::abs(jump - expect), 0, 1e-7) << x;
  }
}

TEST(Cauchy, PlemeljJumpOnGammaRay) {
  // Ray 1 of Gamma_1 for D = 4 points inward; the + side is on its left.
  const auto v = quartic();
  const Quadrature<double> q(v, 2);
  const P p{1, 0, 1};
  const C dir = std::polar(1.0, std::numbers::pi / 2);
  const C x = 0.8 * dir;
  const C tangent = -dir;
  const C normal = C(0, 1) * tangent;
  auto diff = [&](double eps) {
    return q.cauchy(p, Contour::gamma(1), Weight::exp_minus_v, x + eps * normal) -
           q.cauchy(p, Contour::gamma(1), Weight::exp_minus_v, x - eps * normal);
  };
  const C jump = (10.0 * diff(1e-5) - diff(1e-4)) / 9.0;
  EXPECT_NEAR(std::abs(jump - p(x) * std::exp(-v(x))), 0, 1e-7);
}

TEST(Cauchy, CauchyRiemann) {
  const Quadrature<double> q(quartic(0.5), 3);
  const P p{1, 2, 0, -1};
  const double h = 1e-4;
  for (const auto& [c, w] : {std::pair{Contour::real_line(), Weight::exp_minus_2v},
                             std::pair{Contour::gamma(1), Weight::exp_minus_v}}) {
    for (C z : {C(0.7, 0.5), C(-1.2, -0.3), C(2, 2.5)}) {
      auto f = [&](C u) { return q.cauchy(p, c, w, u); };
      const C dx = (f(z + h) - f(z - h)) / (2 * h);
      const C dy = (f(z + C(0, h)) - f(z - C(0, h))) / C(0, 2 * h);
      EXPECT_LT(std::abs(dx - dy), 1e-6 * std::max(1.0, std::abs(dx))) << c.name();
    }
  }
}

TEST(Cauchy, PointOnContourRejected) {
  const Quadrature<double> q(quartic(), 2);
  EXPECT_THROW(q.cauchy(P{1}, Contour::real_line(), Weight::exp_minus_2v, C(0.5, 0)), skewrh::PointOnContour);
  EXPECT_THROW(q.cauchy(P{1}, Contour::gamma(1), Weight::exp_minus_v, C(0, 0.7)), skewrh::PointOnContour);
  EXPECT_NO_THROW(q.cauchy(P{1}, Contour::gamma(1), Weight::exp_minus_v, C(-0.7, 0)));
}

TEST(QuadConfig, Validation) {
  skewrh::QuadConfig cfg;
  cfg.rel_tol = 0;
  EXPECT_THROW(cfg.validate(), skewrh::ConfigInvalid);
  cfg = {};
  cfg.truncation_drop = 2;
  EXPECT_THROW(cfg.validate(), skewrh::ConfigInvalid);
  cfg = {};
  cfg.nodes_per_panel = 1;
  EXPECT_THROW(Quadrature<double>(gaussian(), 2, cfg), skewrh::ConfigInvalid);
}

TEST(QuadConfig, UnreachableToleranceRaises) {
  skewrh::QuadConfig cfg;
  cfg.rel_tol = 1e-40;
  cfg.max_depth = 2;
  cfg.nodes_per_panel = 4;
  EXPECT_THROW(Quadrature<double>(quartic(), 8, cfg), skewrh::NoConvergence);
}

}  // namespace
