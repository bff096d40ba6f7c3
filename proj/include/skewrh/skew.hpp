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
 * @brief Skew-orthogonal polynomials of symplectic type for e^{-2V}.
 *
 * The dual polynomials Psi_m and the auxiliary polynomials R_n^{(j)} are
 * built in the orthogonal basis H_k by projecting out the Gamma_j moments,
 * then P_m is recovered from Psi_m by inverting the dual map. Also holds the
 * recurrence ladder, the multiple-orthogonality checks and de Bruijn's
 * Pfaffian identity.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"
#include "skewrh/orthopoly.hpp"
#include "skewrh/polynomial.hpp"
#include "skewrh/quadrature.hpp"

namespace skewrh {

/// Largest n_max accepted with the default basis cap.
inline constexpr int kMaxSkewDegree = 8;

template <std::floating_point Real>
class SkewSystem {
 public:
  using C = Complex<Real>;
  using P = Poly<Real>;

  SkewSystem(const Potential<Real>& v, int n_max, const QuadConfig& cfg = {}) : n_max_(n_max) {
    if (n_max < 0) throw OutOfRange("n_max must be >= 0");
    const int d = v.degree();
    const int n_basis = 2 * n_max + d;
    quad_ = std::make_shared<const Quadrature<Real>>(v, 2 * n_basis + 4, cfg);
    basis_ = build_basis(*quad_, n_basis);

    for (int n = 0; n <= n_max; ++n) {
      // M_{jk} = int_{Gamma_j} H_{2n+k-1} e^{-V}
      CMatrix<Real> m(d - 1, d - 1);
      for (int j = 1; j < d; ++j)
        for (int k = 1; k < d; ++k)
          m(j - 1, k - 1) = quad_->gamma_integral(basis_[2 * n + k - 1], j, Weight::exp_minus_v);
      const CMatrix<Real> x = inverse(m);
      auto project = [&](const P& f) {
        CMatrix<Real> g(d - 1, 1);
        for (int j = 1; j < d; ++j) g(j - 1, 0) = quad_->gamma_integral(f, j, Weight::exp_minus_v);
        const CMatrix<Real> c = x * g;
        P out = f;
        for (int k = 1; k < d; ++k) out -= c(k - 1, 0) * basis_[2 * n + k - 1];
        return out;
      };
      const Real lam = next_to_leading(basis_, 2 * n);
      psi_.push_back(project(basis_[2 * n + d - 1]));
      psi_.push_back(project(basis_[2 * n + d] - C(lam) * basis_[2 * n + d - 1]));
      std::vector<P> rn;
      for (int j = 1; j < d; ++j) {
        P r;
        for (int k = 1; k < d; ++k) r += (-two_pi_i<Real>() * x(k - 1, j - 1)) * basis_[2 * n + k - 1];
        rn.push_back(std::move(r));
      }
      r_.push_back(std::move(rn));
      m_.push_back(m);
      p_.push_back(undual(psi_[2 * n], v));
      p_.push_back(undual(psi_[2 * n + 1], v));
      h_.push_back(skew_product(p_[2 * n], p_[2 * n + 1]));
      if (!(h_.back() > 0))
        throw ConditioningFailure("skew norm h_" + std::to_string(n) + " is not positive");
    }
  }

  const Potential<Real>& potential() const { return quad_->potential(); }
  const Quadrature<Real>& quadrature() const { return *quad_; }
  std::shared_ptr<const Quadrature<Real>> quadrature_ptr() const { return quad_; }
  const OrthogonalBasis<Real>& basis() const { return basis_; }
  int n_max() const { return n_max_; }
  int degree() const { return potential().degree(); }
  Real gamma_d() const { return potential().gamma_d(); }

  const P& psi(int m) const { return psi_.at(static_cast<std::size_t>(m)); }
  const P& p(int m) const { return p_.at(static_cast<std::size_t>(m)); }
  /// R_n^{(j)} for j = 1..D-1; j = D gives -Psi_{2n}.
  P r(int n, int j) const {
    if (j == degree()) return -psi(2 * n);
    return r_.at(static_cast<std::size_t>(n)).at(static_cast<std::size_t>(j - 1));
  }
  Real h(int k) const { return h_.at(static_cast<std::size_t>(k)); }
  const CMatrix<Real>& m_matrix(int n) const { return m_.at(static_cast<std::size_t>(n)); }
  int psi_count() const { return static_cast<int>(psi_.size()); }

  /// <P, Q>_4 = 1/2 int (P Q' - P' Q) e^{-2V}; antisymmetric bit for bit.
  Real skew_product(const P& a, const P& b) const {
    const int order = canonical_order(a, b);
    if (order == 0) return 0;
    const P& f = order < 0 ? a : b;
    const P& g = order < 0 ? b : a;
    const P w = f * g.derivative() - f.derivative() * g;
    const Real val = Real(0.5) * quad_->real_integral(w).real();
    return order < 0 ? val : -val;
  }

  /// beta_j(p) = -(1/2 pi i) int_{Gamma_j} e^{-V} p for j < D; circle moment for j = D.
  C beta(const P& poly, int j, int n_context = 0) const {
    if (j < 1 || j > degree()) throw OutOfRange("beta index " + std::to_string(j));
    if (j == degree()) return circle_moment(poly, 2 * n_context + degree());
    return -quad_->gamma_integral(poly, j, Weight::exp_minus_v) / two_pi_i<Real>();
  }

  /// int_R p e^{-2V}
  C real_integral(const P& poly) const { return quad_->real_integral(poly); }

 private:
  /// Total order on polynomials: -1 if a < b, 0 if equal, 1 otherwise.
  static int canonical_order(const P& a, const P& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (std::size_t k = a.size(); k-- > 0;) {
      const auto x = a.coeffs()[k], y = b.coeffs()[k];
      if (x.real() != y.real()) return x.real() < y.real() ? -1 : 1;
      if (x.imag() != y.imag()) return x.imag() < y.imag() ? -1 : 1;
    }
    return 0;
  }

  int n_max_;
  std::shared_ptr<const Quadrature<Real>> quad_;
  OrthogonalBasis<Real> basis_;
  std::vector<P> psi_, p_;
  std::vector<std::vector<P>> r_;
  std::vector<CMatrix<Real>> m_;
  std::vector<Real> h_;
};

template <std::floating_point Real>
SkewSystem<Real> build_skew_system(const Potential<Real>& v, int n_max, const QuadConfig& cfg = {}) {
  return SkewSystem<Real>(v, n_max, cfg);
}

template <std::floating_point Real>
Real skew_product(const SkewSystem<Real>& sys, const Poly<Real>& a, const Poly<Real>& b) {
  return sys.skew_product(a, b);
}

/// Relative coefficient size of a polynomial residual.
template <std::floating_point Real>
Real relative_residual(const Poly<Real>& residual, const Poly<Real>& reference) {
  const Real scale = std::max(reference.max_abs_coeff(), std::numeric_limits<Real>::min());
  return residual.max_abs_coeff() / scale;
}

// ---------------------------------------------------------------------------
// Recurrence ladder

template <std::floating_point Real>
struct RecurrenceLadder {
  using C = Complex<Real>;
  int n = 0;
  /// eta[j-1](i, k), xi[j-1](i, k) for i, k = 0..n: R_k - R_n expansion coefficients.
  std::vector<CMatrix<Real>> eta, xi;
  /// beta_j(x Psi_{2k+1}) and beta_j(x Psi_{2k}), indexed [k](j-1).
  std::vector<std::vector<C>> beta_odd, beta_even;
  std::vector<C> a, b, c, a_tilde;  // k = 0..n
  CMatrix<Real> mu, lambda, mu_tilde, lambda_tilde;  // (m, k) from the integral formulas
  CMatrix<Real> mu_beta, lambda_beta, mu_tilde_beta, lambda_tilde_beta;  // same from beta sums

  // Residuals, all relative.
  Real reconstruction_even = 0;   // x Psi_{2k} identity
  Real reconstruction_odd = 0;    // x Psi_{2k+1} identity
  Real intriguing = 0;            // |2 + sum_j beta_j(x Psi_{2k}) xi_kk^{(j)}|
  Real eta_xi_expansion = 0;      // R_k - R_n - sum eta Psi_{2i} - sum xi Psi_{2i+1}
  Real eta_xi_lower = 0;          // |eta_ik|, |xi_ik| for i < k
  Real mu_lambda_forms = 0;       // integral versus beta forms
  Real dual_even = 0;             // x P_{2k} - P_{2k+1} expansion
  Real dual_odd = 0;              // x P_{2k+1} - P_{2k+2} expansion
};

template <std::floating_point Real>
RecurrenceLadder<Real> build_ladder(const SkewSystem<Real>& sys, int n) {
  using C = Complex<Real>;
  using P = Poly<Real>;
  if (n < 0 || n > sys.n_max() - 1)
    throw OutOfRange("build_ladder needs 0 <= n <= n_max - 1 (n = " + std::to_string(n) + ")");
  const int d = sys.degree();
  const Real gd = sys.gamma_d();
  const P x = P::monomial(1);
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  auto integ = [&](const P& f) { return sys.real_integral(f); };
  auto h = [&](int k) { return sys.h(k); };

  RecurrenceLadder<Real> L;
  L.n = n;
  for (int j = 1; j < d; ++j) {
    CMatrix<Real> eta(dim, dim), xi(dim, dim);
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k <= n; ++k) {
        eta(i, k) = gd / h(i) * integ(sys.r(k, j) * sys.p(2 * i + 1));
        xi(i, k) = -gd / h(i) * integ(sys.r(k, j) * sys.p(2 * i));
      }
    L.eta.push_back(eta);
    L.xi.push_back(xi);
  }

  for (int k = 0; k <= n; ++k) {
    std::vector<C> bo, be;
    for (int j = 1; j < d; ++j) {
      bo.push_back(sys.beta(x * sys.psi(2 * k + 1), j));
      be.push_back(sys.beta(x * sys.psi(2 * k), j));
    }
    L.beta_odd.push_back(bo);
    L.beta_even.push_back(be);
  }
  auto sum_beta = [&](const std::vector<C>& beta, const std::vector<CMatrix<Real>>& tab, int i, int k) {
    C s = 0;
    for (int j = 1; j < d; ++j) s += beta[j - 1] * tab[j - 1](i, k);
    return s;
  };

  for (int k = 0; k <= n; ++k) {
    const auto& bo = L.beta_odd[k];
    const auto& be = L.beta_even[k];
    L.a.push_back(-gd / h(k) * integ(x * sys.p(2 * k) * sys.psi(2 * k + 1)) - sum_beta(bo, L.xi, k, k));
    L.b.push_back(gd / h(k) * integ(x * sys.psi(2 * k + 1) * sys.p(2 * k + 1)) - sum_beta(bo, L.eta, k, k));
    L.c.push_back(k == 0 ? C(0) : C(-h(k) / h(k - 1)));
    L.a_tilde.push_back(gd / h(k) * integ(x * sys.psi(2 * k) * sys.p(2 * k + 1)) - sum_beta(be, L.eta, k, k));
    L.intriguing = std::max(L.intriguing, std::abs(Real(2) + sum_beta(be, L.xi, k, k)) / Real(2));

    // x Psi_{2k} = Psi_{2k+1} + sum_j beta_j(x Psi_{2k}) R_k^{(j)} + a~_k Psi_{2k}
    const P lhs_e = x * sys.psi(2 * k);
    P rhs_e = sys.psi(2 * k + 1) + L.a_tilde[k] * sys.psi(2 * k);
    for (int j = 1; j < d; ++j) rhs_e += be[j - 1] * sys.r(k, j);
    L.reconstruction_even = std::max(L.reconstruction_even, relative_residual(lhs_e - rhs_e, lhs_e));

    // x Psi_{2k+1} = Psi_{2k+2} + sum_j beta_j R_k^{(j)} + a_k Psi_{2k+1} + b_k Psi_{2k} + c_k Psi_{2k-2}
    const P lhs_o = x * sys.psi(2 * k + 1);
    P rhs_o = sys.psi(2 * k + 2) + L.a[k] * sys.psi(2 * k + 1) + L.b[k] * sys.psi(2 * k);
    if (k > 0) rhs_o += L.c[k] * sys.psi(2 * k - 2);
    for (int j = 1; j < d; ++j) rhs_o += bo[j - 1] * sys.r(k, j);
    L.reconstruction_odd = std::max(L.reconstruction_odd, relative_residual(lhs_o - rhs_o, lhs_o));
  }

  // R_k - R_n in span{Psi_0..Psi_{2n-1}} with coefficients eta, xi.
  for (int j = 1; j < d; ++j)
    for (int k = 0; k < n; ++k) {
      P res = sys.r(k, j) - sys.r(n, j);
      for (int i = 0; i < n; ++i)
        res -= L.eta[j - 1](i, k) * sys.psi(2 * i) + L.xi[j - 1](i, k) * sys.psi(2 * i + 1);
      L.eta_xi_expansion = std::max(L.eta_xi_expansion, relative_residual(res, sys.r(k, j)));
      Real scale = 0;
      for (int i = 0; i <= n; ++i)
        scale = std::max({scale, std::abs(L.eta[j - 1](i, k)), std::abs(L.xi[j - 1](i, k))});
      for (int i = 0; i < k; ++i)
        L.eta_xi_lower = std::max(
            {L.eta_xi_lower, std::abs(L.eta[j - 1](i, k)) / scale, std::abs(L.xi[j - 1](i, k)) / scale});
    }

  L.mu = CMatrix<Real>(dim, dim);
  L.lambda = CMatrix<Real>(dim, dim);
  L.mu_tilde = CMatrix<Real>(dim, dim);
  L.lambda_tilde = CMatrix<Real>(dim, dim);
  L.mu_beta = L.mu;
  L.lambda_beta = L.mu;
  L.mu_tilde_beta = L.mu;
  L.lambda_tilde_beta = L.mu;
  for (int k = 0; k <= n; ++k) {
    const P xe = x * sys.p(2 * k);
    const P xo = x * sys.p(2 * k + 1);
    for (int m = 0; m <= k; ++m) {
      const Real ratio = h(k) / h(m);
      L.mu(m, k) = -gd / h(m) * integ(xe * sys.psi(2 * m + 1));
      L.mu_beta(m, k) = ratio * sum_beta(L.beta_odd[m], L.xi, k, m) + (k == m ? L.a[k] : C(0));
      if (m < k) {
        L.lambda(m, k) = gd / h(m) * integ(xe * sys.psi(2 * m));
        L.lambda_beta(m, k) = -ratio * sum_beta(L.beta_even[m], L.xi, k, m);
      }
      L.mu_tilde(m, k) = -gd / h(m) * integ(xo * sys.psi(2 * m + 1));
      L.mu_tilde_beta(m, k) = (k == m + 1 ? L.c[k] : C(0)) - ratio * sum_beta(L.beta_odd[m], L.eta, k, m) -
                              (k == m ? L.b[k] : C(0));
      L.lambda_tilde(m, k) = gd / h(m) * integ(xo * sys.psi(2 * m));
      L.lambda_tilde_beta(m, k) = ratio * sum_beta(L.beta_even[m], L.eta, k, m) + (k == m ? L.a_tilde[k] : C(0));
    }
    P re = xe - sys.p(2 * k + 1);
    P ro = xo - sys.p(2 * k + 2);
    for (int m = 0; m <= k; ++m) {
      re -= L.mu(m, k) * sys.p(2 * m);
      if (m < k) re -= L.lambda(m, k) * sys.p(2 * m + 1);
      ro -= L.mu_tilde(m, k) * sys.p(2 * m) + L.lambda_tilde(m, k) * sys.p(2 * m + 1);
    }
    L.dual_even = std::max(L.dual_even, relative_residual(re, xe));
    L.dual_odd = std::max(L.dual_odd, relative_residual(ro, xo));
  }
  const Real ref = std::max({L.mu.max_abs(), L.lambda.max_abs(), L.mu_tilde.max_abs(),
                             L.lambda_tilde.max_abs(), Real(1)});
  L.mu_lambda_forms = std::max({(L.mu - L.mu_beta).max_abs(), (L.lambda - L.lambda_beta).max_abs(),
                                (L.mu_tilde - L.mu_tilde_beta).max_abs(),
                                (L.lambda_tilde - L.lambda_tilde_beta).max_abs()}) /
                      ref;
  return L;
}

// ---------------------------------------------------------------------------
// Structural checks

/// An integral with its absolute counterpart.
template <std::floating_point Real>
struct IntegralPair {
  Complex<Real> value;
  Real absolute;
  Real relative() const { return absolute > 0 ? std::abs(value) / absolute : Real(0); }
};

/// Worst Type II residual of Psi_{2n} and Psi_{2n+1}: real moments below 2n,
/// the Gamma_j integrals and the circle coefficient, each relative to the
/// absolute integral.
template <std::floating_point Real>
Real type_ii_residual(const SkewSystem<Real>& sys, int n) {
  using P = Poly<Real>;
  const auto& q = sys.quadrature();
  Real worst = 0;
  for (int m : {2 * n, 2 * n + 1}) {
    const auto& f = sys.psi(m);
    for (int j = 0; j < 2 * n; ++j) {
      const P g = P::monomial(static_cast<std::size_t>(j)) * f;
      const IntegralPair<Real> r{q.real_integral(g), q.absolute_integral(g, Contour::real_line(), Weight::exp_minus_2v)};
      worst = std::max(worst, r.relative());
    }
    for (int j = 1; j < sys.degree(); ++j) {
      const IntegralPair<Real> r{q.gamma_integral(f, j, Weight::exp_minus_v),
                               q.absolute_integral(f, Contour::gamma(j), Weight::exp_minus_v)};
      worst = std::max(worst, r.relative());
    }
  }
  // Circle condition: the coefficient of x^{2n+D-1} of Psi_{2n+1} vanishes.
  const auto& odd = sys.psi(2 * n + 1);
  worst = std::max(worst, std::abs(odd[static_cast<std::size_t>(2 * n + sys.degree() - 1)]) / odd.max_abs_coeff());
  return worst;
}

/// Type I data of P_{2n}: constants c_j fitted to the conditions and the
/// worst residual over k = 0..2n+D-2, relative to the magnitudes involved.
template <std::floating_point Real>
struct TypeIResult {
  std::vector<Complex<Real>> c;
  Real residual = 0;
};

template <std::floating_point Real>
TypeIResult<Real> type_i_check(const SkewSystem<Real>& sys, int n) {
  using C = Complex<Real>;
  const int d = sys.degree();
  const auto& q = sys.quadrature();
  const int kmax = 2 * n + d - 2;
  const std::size_t rows = static_cast<std::size_t>(kmax) + 1, cols = static_cast<std::size_t>(d - 1);
  std::vector<C> alpha(rows);
  std::vector<Real> alpha_abs(rows);
  CMatrix<Real> g(rows, cols);
  std::vector<std::vector<Real>> g_abs(rows, std::vector<Real>(cols));
  for (std::size_t k = 0; k < rows; ++k) {
    const auto xk = Poly<Real>::monomial(k);
    const auto f = xk * sys.p(2 * n);
    alpha[k] = q.real_integral(f);
    alpha_abs[k] = q.absolute_integral(f, Contour::real_line(), Weight::exp_minus_2v);
    for (std::size_t j = 0; j < cols; ++j) {
      const auto gam = Contour::gamma(static_cast<int>(j) + 1);
      g(k, j) = q.integrate(xk, gam, Weight::exp_minus_v);
      g_abs[k][j] = q.absolute_integral(xk, gam, Weight::exp_minus_v);
    }
  }
  // Least squares over all rows, each scaled by its absolute integrals. Some
  // rows vanish identically for symmetric potentials, so no square subsystem
  // is safe.
  CMatrix<Real> gs(rows, cols), as(rows, 1);
  for (std::size_t k = 0; k < rows; ++k) {
    Real scale = alpha_abs[k];
    for (std::size_t j = 0; j < cols; ++j) scale = std::max(scale, g_abs[k][j]);
    for (std::size_t j = 0; j < cols; ++j) gs(k, j) = g(k, j) / scale;
    as(k, 0) = -alpha[k] / scale;
  }
  const auto gh = gs.conj().transpose();
  const auto c = solve(gh * gs, gh * as);
  TypeIResult<Real> out;
  for (std::size_t j = 0; j < cols; ++j) out.c.push_back(c(j, 0));
  for (std::size_t k = 0; k < rows; ++k) {
    C s = alpha[k];
    Real scale = alpha_abs[k];
    for (std::size_t j = 0; j < cols; ++j) {
      s += c(j, 0) * g(k, j);
      scale += std::abs(c(j, 0)) * g_abs[k][j];
    }
    out.residual = std::max(out.residual, std::abs(s) / scale);
  }
  return out;
}

/// max |<P_i, P_j>_4 - J_ij| / max h over i, j < 2n, J the canonical skew form.
template <std::floating_point Real>
Real gram_residual(const SkewSystem<Real>& sys, int n) {
  Real worst = 0, scale = 0;
  for (int k = 0; k < n; ++k) scale = std::max(scale, sys.h(k));
  for (int i = 0; i < 2 * n; ++i)
    for (int j = 0; j < 2 * n; ++j) {
      Real expect = 0;
      if (i / 2 == j / 2 && i != j) expect = (i % 2 == 0) ? sys.h(i / 2) : -sys.h(i / 2);
      worst = std::max(worst, std::abs(sys.skew_product(sys.p(i), sys.p(j)) - expect));
    }
  return worst / scale;
}

/// max_m |dual_map(P_m) - Psi_m| / |Psi_m| coefficientwise.
template <std::floating_point Real>
Real dual_map_residual(const SkewSystem<Real>& sys) {
  Real worst = 0;
  for (int m = 0; m < sys.psi_count(); ++m)
    worst = std::max(worst, relative_residual(dual_map(sys.p(m), sys.potential()) - sys.psi(m), sys.psi(m)));
  return worst;
}

/**
 * Sign changes of the real part of p on [lo, hi], sampled at 1e-3 of the
 * window and refined 64-fold wherever |p| dips without changing sign.
 */
template <std::floating_point Real>
int count_sign_changes(const Poly<Real>& p, Real lo, Real hi) {
  const int steps = 1000;
  const Real dx = (hi - lo) / Real(steps);
  auto f = [&](Real t) { return p(Complex<Real>(t)).real(); };
  int count = 0;
  Real last = 0;
  bool have = false;
  auto feed = [&](Real val) {
    if (val == Real(0)) return;
    if (have && ((val > 0) != (last > 0))) ++count;
    last = val;
    have = true;
  };
  Real prev = f(lo), cur = f(lo + dx);
  feed(prev);
  for (int i = 1; i <= steps; ++i) {
    const Real next = i < steps ? f(lo + Real(i + 1) * dx) : cur;
    const bool dip = std::abs(cur) < std::abs(prev) && std::abs(cur) <= std::abs(next);
    if (dip) {
      for (int s = 1; s <= 64; ++s) feed(f(lo + (Real(i - 1) + Real(s) / Real(64)) * dx));
    } else {
      feed(cur);
    }
    prev = cur;
    cur = next;
  }
  return count;
}

// ---------------------------------------------------------------------------
// de Bruijn identity

template <std::floating_point Real>
struct DeBruijnResult {
  Real lhs = 0;
  Real rhs = 0;
  Real rel_error = 0;
};

/// Pfaffian of the 2n x 2n Gram matrix int (x^i (x^j)' - (x^i)' x^j) e^{-2V}.
template <std::floating_point Real>
CMatrix<Real> monomial_skew_gram(const Quadrature<Real>& q, int size) {
  using P = Poly<Real>;
  CMatrix<Real> g(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j) {
      const P a = P::monomial(i), b = P::monomial(j);
      const Real val = q.real_integral(a * b.derivative() - a.derivative() * b).real();
      g(i, j) = val;
      g(j, i) = -val;
    }
  return g;
}

/**
 * Compares pf(gram) with (1/n!) int prod_{i<j} |x_i - x_j|^4 prod e^{-2V(x_i)}
 * for n = 1, 2, the latter on a 200-point Gauss-Legendre tensor grid.
 */
template <std::floating_point Real>
DeBruijnResult<Real> debruijn_check(const Potential<Real>& v, int n, const QuadConfig& cfg = {}) {
  if (n < 1 || n > 2) throw OutOfRange("de Bruijn check supports n = 1, 2");
  Quadrature<Real> q(v, 4 * n + 2, cfg);
  DeBruijnResult<Real> r;
  r.lhs = pfaffian(monomial_skew_gram(q, 2 * n)).real();

  const Real len = truncation_length<Real>(v, 2, 4 * (n - 1), Real(cfg.truncation_drop));
  const auto& gl = gauss_legendre<Real>(200);
  std::vector<Real> xs, ws;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const Real xi = len * gl.nodes[i];
    xs.push_back(xi);
    ws.push_back(len * gl.weights[i] * std::exp(-2 * v(xi)));
  }
  Real total = 0;
  if (n == 1) {
    for (std::size_t a = 0; a < xs.size(); ++a) total += ws[a];
  } else {
    for (std::size_t a = 0; a < xs.size(); ++a) {
      Real row = 0;
      for (std::size_t b = 0; b < xs.size(); ++b) {
        const Real dxab = xs[a] - xs[b];
        const Real d2 = dxab * dxab;
        row += ws[b] * d2 * d2;
      }
      total += ws[a] * row;
    }
    total /= 2;
  }
  r.rhs = total;
  r.rel_error = std::abs(r.lhs - r.rhs) / std::abs(r.rhs);
  return r;
}

}  // namespace skewrh
