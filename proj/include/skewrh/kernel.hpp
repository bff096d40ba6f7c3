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
 * @brief The symplectic pre-kernel S_n(x, y): direct sum over skew pairs,
 * Christoffel-Darboux form from the even Riemann-Hilbert solution, and the
 * one-point density S_n(x, x).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"
#include "skewrh/polynomial.hpp"
#include "skewrh/rhp.hpp"
#include "skewrh/skew.hpp"

namespace skewrh {

/// Below this |x - y| the quotient N(x, y) / (x - y) is formed by synthetic division.
inline constexpr double kDiagonalBand = 1e-4;

template <std::floating_point Real>
struct KernelEval {
  int n = 0;
  Real x = 0, y = 0;
  Real direct = 0, cd = 0, rel_gap = 0;
};

/**
 * Evaluates S_n for one (system, n). The numerator
 * N(x, y) = sum_k (A_n^{-T})_{k2}(x) (A_n)_{k1}(y) is built from polynomials only.
 */
template <std::floating_point Real>
class KernelEvaluator {
 public:
  using C = Complex<Real>;
  using P = Poly<Real>;

  KernelEvaluator(const SkewSystem<Real>& sys, int n) : sys_(&sys), n_(n) {
    if (n < 0 || n > sys.n_max()) throw OutOfRange("kernel needs 0 <= n <= n_max");
    if (n >= 1) {
      dual_ = dual_column_even(sys, n);
      rows_ = detail::first_column(sys, n, false);
      // Rank form weights: sum_k h_k^{-1} [beta_j(x Psi_{2k+1}) P_{2k} - beta_j(x Psi_{2k}) P_{2k+1}]
      const P x = P::monomial(1);
      for (int j = 1; j < sys.degree(); ++j) {
        P s;
        for (int k = 0; k < n; ++k) {
          const C bo = sys.beta(x * sys.psi(2 * k + 1), j);
          const C be = sys.beta(x * sys.psi(2 * k), j);
          s += C(Real(1) / sys.h(k)) * (bo * sys.p(2 * k) - be * sys.p(2 * k + 1));
        }
        rank_x_.push_back(std::move(s));
      }
      P diag;
      for (std::size_t k = 0; k < rows_.size(); ++k) diag += dual_[k] * rows_[k].derivative();
      diagonal_ = std::move(diag);
    }
  }

  int n() const { return n_; }

  /// -(gamma D / 2) e^{-V(x)-V(y)} sum_k [P_{2k}(x) Psi_{2k+1}(y) - P_{2k+1}(x) Psi_{2k}(y)] / h_k
  Real direct(Real x, Real y) const {
    if (n_ == 0) return 0;
    const C cx(x), cy(y);
    C s = 0;
    for (int k = 0; k < n_; ++k)
      s += (sys_->p(2 * k)(cx) * sys_->psi(2 * k + 1)(cy) - sys_->p(2 * k + 1)(cx) * sys_->psi(2 * k)(cy)) /
           sys_->h(k);
    return (-sys_->gamma_d() / 2 * weight(x, y) * s).real();
  }

  /// -(1/4 pi i) e^{-V(x)-V(y)} N(x, y) / (x - y)
  Real cd(Real x, Real y) const {
    if (n_ == 0) return 0;
    const C q = quotient(x, y);
    return (-q / (Real(2) * two_pi_i<Real>()) * weight(x, y)).real();
  }

  /// (gamma D / 2) e^{-V-V} [P_{2n-2}(x) Psi_{2n}(y) / h_{n-1} + P_{2n}(x) Psi_{2n-2}(y) / h_{n-1}
  ///   + sum_j W_j(x) R_n^{(j)}(y)] / (x - y), valid off the diagonal.
  Real rank_form(Real x, Real y) const {
    if (n_ == 0) return 0;
    return (sys_->gamma_d() / 2 * weight(x, y) * rank_numerator(x, y) / (x - y)).real();
  }

  /// The bracket of rank_form, a sum of D + 1 separable terms.
  C rank_numerator(Real x, Real y) const {
    const C cx(x), cy(y);
    const Real hn = sys_->h(n_ - 1);
    C s = (sys_->p(2 * n_ - 2)(cx) * sys_->psi(2 * n_)(cy) + sys_->p(2 * n_)(cx) * sys_->psi(2 * n_ - 2)(cy)) / hn;
    for (int j = 1; j < sys_->degree(); ++j) s += rank_x_[j - 1](cx) * sys_->r(n_, j)(cy);
    return s;
  }

  /// N(x, y), the Christoffel-Darboux numerator.
  C numerator(Real x, Real y) const {
    if (n_ == 0) return 0;
    return numerator_in_y(x)(C(y));
  }

  /// S_n(x, x) = (1/4 pi i) e^{-2V(x)} sum_k (A^{-T})_{k2}(x) (A)'_{k1}(x)
  Real density(Real x) const {
    if (n_ == 0) return 0;
    return (diagonal_(C(x)) / (Real(2) * two_pi_i<Real>()) * weight(x, x)).real();
  }

  /// Polynomial part of the density, integrated against e^{-2V}.
  Real density_mass() const {
    if (n_ == 0) return 0;
    return (sys_->real_integral(diagonal_) / (Real(2) * two_pi_i<Real>())).real();
  }

 private:
  Real weight(Real x, Real y) const {
    const auto& v = sys_->potential();
    return std::exp(-v(x) - v(y));
  }

  P numerator_in_y(Real x) const {
    const C cx(x);
    P s;
    for (std::size_t k = 0; k < rows_.size(); ++k) s += dual_[k](cx) * rows_[k];
    return s;
  }

  /// N(x, y) / (x - y), by synthetic division near the diagonal.
  C quotient(Real x, Real y) const {
    const P ny = numerator_in_y(x);
    if (std::abs(x - y) >= Real(kDiagonalBand)) return ny(C(y)) / C(x - y);
    // N(x, y) = (y - x) q(y) + r with r = N(x, x) ~ 0
    const auto& c = ny.coeffs();
    if (c.size() < 2) return 0;
    std::vector<C> qc(c.size() - 1);
    C acc = 0;
    for (std::size_t k = c.size(); k-- > 1;) {
      acc = acc * C(x) + c[k];
      qc[k - 1] = acc;
    }
    return -P(std::move(qc))(C(y));
  }

  const SkewSystem<Real>* sys_;
  int n_;
  std::vector<P> dual_, rows_, rank_x_;
  P diagonal_;
};

template <std::floating_point Real>
Real prekernel_direct(const SkewSystem<Real>& sys, int n, Real x, Real y) {
  return KernelEvaluator<Real>(sys, n).direct(x, y);
}

template <std::floating_point Real>
Real prekernel_cd(const SkewSystem<Real>& sys, int n, Real x, Real y) {
  return KernelEvaluator<Real>(sys, n).cd(x, y);
}

template <std::floating_point Real>
KernelEval<Real> kernel_eval(const KernelEvaluator<Real>& k, Real x, Real y) {
  KernelEval<Real> e;
  e.n = k.n();
  e.x = x;
  e.y = y;
  e.direct = k.direct(x, y);
  e.cd = k.cd(x, y);
  e.rel_gap = std::abs(e.direct - e.cd) / std::max(std::abs(e.direct), Real(1e-300));
  return e;
}

/// Rows (x, S_n(x, x)).
template <std::floating_point Real>
std::vector<std::pair<Real, Real>> density_table(const SkewSystem<Real>& sys, int n, const std::vector<Real>& grid) {
  const KernelEvaluator<Real> k(sys, n);
  std::vector<std::pair<Real, Real>> rows;
  rows.reserve(grid.size());
  for (Real x : grid) rows.emplace_back(x, k.density(x));
  return rows;
}

/// lo, lo + step, ..., hi with the given number of points (>= 2).
template <std::floating_point Real>
std::vector<Real> uniform_grid(Real lo, Real hi, int points) {
  if (points < 2) throw OutOfRange("grid needs at least 2 points");
  std::vector<Real> g(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) g[i] = lo + (hi - lo) * Real(i) / Real(points - 1);
  return g;
}

}  // namespace skewrh
