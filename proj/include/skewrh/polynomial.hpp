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

/**
 * @brief Dense complex polynomials in the monomial basis, the polynomial
 * potential V(x, t) = V0(x) + t x, and the dual map
 * P -> -(1/(gamma D)) e^V (P e^{-V})' together with its inverse.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"

namespace skewrh {

/// Coefficients with |c| <= kTrimRelative * max|c| do not count towards the degree.
inline constexpr double kTrimRelative = 1e-13;

template <std::floating_point Real>
class Poly {
 public:
  using C = Complex<Real>;

  Poly() = default;
  explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { drop_exact_zeros(); }
  Poly(std::initializer_list<C> coeffs) : c_(coeffs) { drop_exact_zeros(); }

  static Poly constant(C v) { return Poly(std::vector<C>{v}); }
  /// The monomial x^k.
  static Poly monomial(std::size_t k, C scale = 1) {
    std::vector<C> c(k + 1, C(0));
    c[k] = scale;
    return Poly(std::move(c));
  }
  static Poly from_real(std::span<const Real> coeffs) {
    std::vector<C> c(coeffs.begin(), coeffs.end());
    return Poly(std::move(c));
  }

  const std::vector<C>& coeffs() const { return c_; }
  std::size_t size() const { return c_.size(); }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient of x^k, zero beyond the stored range.
  C operator[](std::size_t k) const { return k < c_.size() ? c_[k] : C(0); }

  Real max_abs_coeff() const {
    Real m = 0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Degree after discarding relatively negligible top coefficients; -1 for zero.
  int degree() const {
    const Real cut = Real(kTrimRelative) * max_abs_coeff();
    for (std::size_t k = c_.size(); k-- > 0;)
      if (std::abs(c_[k]) > cut) return static_cast<int>(k);
    return -1;
  }

  C leading() const {
    const int d = degree();
    return d < 0 ? C(0) : c_[static_cast<std::size_t>(d)];
  }

  bool is_real(Real tol = 0) const {
    const Real cut = tol * max_abs_coeff();
    return std::all_of(c_.begin(), c_.end(), [&](const C& v) { return std::abs(v.imag()) <= cut; });
  }

  Poly trimmed() const {
    const int d = degree();
    return Poly(std::vector<C>(c_.begin(), c_.begin() + (d + 1)));
  }

  /// Horner evaluation.
  C operator()(C z) const {
    C acc = 0;
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * z + c_[k];
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<C> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * Real(k);
    return Poly(std::move(d));
  }

  /// x * p
  Poly shifted_up() const {
    if (c_.empty()) return {};
    std::vector<C> s(c_.size() + 1, C(0));
    std::copy(c_.begin(), c_.end(), s.begin() + 1);
    return Poly(std::move(s));
  }

  Poly conj() const {
    std::vector<C> c = c_;
    for (auto& v : c) v = std::conj(v);
    return Poly(std::move(c));
  }

  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    drop_exact_zeros();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), C(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    drop_exact_zeros();
    return *this;
  }
  Poly& operator*=(C s) {
    for (auto& v : c_) v *= s;
    drop_exact_zeros();
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= C(-1); }
  friend Poly operator*(Poly a, C s) { return a *= s; }
  friend Poly operator*(C s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<C> c(a.c_.size() + b.c_.size() - 1, C(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(c));
  }

 private:
  void drop_exact_zeros() {
    while (!c_.empty() && c_.back() == C(0)) c_.pop_back();
  }

  std::vector<C> c_;
};

template <std::floating_point Real>
Complex<Real> eval(const Poly<Real>& p, Complex<Real> z) {
  return p(z);
}

/// Largest coefficientwise difference.
template <std::floating_point Real>
Real max_coeff_diff(const Poly<Real>& a, const Poly<Real>& b) {
  return (a - b).max_abs_coeff();
}

/**
 * V(x, t) = V0(x) + t x with V0 real of even degree D >= 2 and leading
 * coefficient gamma > 0.
 */
template <std::floating_point Real>
class Potential {
 public:
  Potential() = default;
  explicit Potential(std::vector<Real> v0_coeffs, Real t = 0) : v0_(std::move(v0_coeffs)), t_(t) {
    for (Real c : v0_) check_finite(c, "potential coefficient");
    check_finite(t_, "deformation parameter t");
    while (!v0_.empty() && v0_.back() == Real(0)) v0_.pop_back();
    if (v0_.size() < 3) throw InvalidPotential("degree must be at least 2");
    const std::size_t d = v0_.size() - 1;
    if (d % 2 != 0) throw InvalidPotential("degree " + std::to_string(d) + " is odd");
    if (!(v0_.back() > 0)) throw InvalidPotential("leading coefficient must be positive");
    std::vector<Complex<Real>> full(v0_.begin(), v0_.end());
    full[1] += t_;
    v_ = Poly<Real>(std::move(full));
    dv_ = v_.derivative();
  }

  Potential with_t(Real t) const { return Potential(v0_, t); }

  const std::vector<Real>& v0_coeffs() const { return v0_; }
  Real t() const { return t_; }
  int degree() const { return static_cast<int>(v0_.size()) - 1; }
  Real gamma() const { return v0_.back(); }
  /// gamma * D, the leading coefficient of V'.
  Real gamma_d() const { return gamma() * Real(degree()); }

  /// Coefficient of x^k in V(x, t), including the deformation.
  Real coeff(std::size_t k) const { return v_[k].real(); }

  const Poly<Real>& poly() const { return v_; }
  const Poly<Real>& derivative() const { return dv_; }

  Complex<Real> operator()(Complex<Real> z) const { return v_(z); }
  Real operator()(Real x) const { return v_(Complex<Real>(x)).real(); }

  /// True when V(-x) = V(x).
  bool is_even() const {
    for (std::size_t k = 1; k < v_.size(); k += 2)
      if (v_[k] != Complex<Real>(0)) return false;
    return true;
  }

 private:
  std::vector<Real> v0_;
  Real t_ = 0;
  Poly<Real> v_;
  Poly<Real> dv_;
};

/// Psi = -(1/(gamma D)) (P' - V' P); monic of degree deg P + D - 1 for monic P.
template <std::floating_point Real>
Poly<Real> dual_map(const Poly<Real>& p, const Potential<Real>& v) {
  return (v.derivative() * p - p.derivative()) * Complex<Real>(Real(1) / v.gamma_d());
}

/**
 * Inverse of dual_map by coefficient matching: solves V'P - P' = gamma D q
 * through its top deg(q) - D + 2 coefficients, then requires the remaining
 * D - 1 low coefficients to vanish to 1e-8 |q|.
 */
template <std::floating_point Real>
Poly<Real> undual(const Poly<Real>& q, const Potential<Real>& v, Real residual_tol = Real(1e-8)) {
  using C = Complex<Real>;
  const int dq = q.degree();
  if (dq < 0) return {};
  const int d = v.degree();
  if (dq < d - 1)
    throw NotInImage("degree " + std::to_string(dq) + " is below D - 1 = " + std::to_string(d - 1));
  const int m = dq - d + 1;
  const auto& u = v.derivative();
  const C lead = u[static_cast<std::size_t>(d - 1)];
  const Real gd = v.gamma_d();

  std::vector<C> p(static_cast<std::size_t>(m) + 2, C(0));
  auto pc = [&](int k) -> C { return (k < 0 || k > m) ? C(0) : p[static_cast<std::size_t>(k)]; };
  for (int s = dq; s >= d - 1; --s) {
    C acc = gd * q[static_cast<std::size_t>(s)] + Real(s + 1) * pc(s + 1);
    for (int l = 0; l < d - 1; ++l) acc -= u[static_cast<std::size_t>(l)] * pc(s - l);
    p[static_cast<std::size_t>(s - d + 1)] = acc / lead;
  }
  Real residual = 0;
  for (int s = 0; s < d - 1; ++s) {
    C r = -gd * q[static_cast<std::size_t>(s)] - Real(s + 1) * pc(s + 1);
    for (int l = 0; l <= s; ++l) r += u[static_cast<std::size_t>(l)] * pc(s - l);
    residual = std::max(residual, std::abs(r));
  }
  const Real scale = gd * q.max_abs_coeff();
  if (residual > residual_tol * scale)
    throw NotInImage("residual " + std::to_string(static_cast<double>(residual / scale)) +
                     " relative to |q|");
  p.resize(static_cast<std::size_t>(m) + 1);
  return Poly<Real>(std::move(p));
}

}  // namespace skewrh
