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
 * @brief Monic orthogonal polynomials H_n for e^{-2V} on the real line by
 * the discretized Stieltjes procedure.
 */

#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"
#include "skewrh/polynomial.hpp"
#include "skewrh/quadrature.hpp"

namespace skewrh {

/// Largest N accepted by default: 2 * 8 + D.
inline int default_basis_cap(int d) { return 2 * 8 + d; }

/// Relative mismatch between the node-based and coefficient-based norms that
/// is tolerated before the monomial representation is declared unusable.
inline constexpr double kNormMismatchLimit = 1e-6;

template <std::floating_point Real>
struct OrthogonalBasis {
  Potential<Real> v;
  std::vector<Poly<Real>> h;   // H_0..H_N
  std::vector<Real> nu;        // int H_k^2 e^{-2V}
  std::vector<Real> rec_a;     // H_{k+1} = (x - a_k) H_k - b_k H_{k-1}
  std::vector<Real> rec_b;     // b_0 = nu_0 by convention

  int size() const { return static_cast<int>(h.size()) - 1; }
  const Poly<Real>& operator[](int k) const { return h.at(static_cast<std::size_t>(k)); }
};

/// Real nodes and positive weights of the e^{-2V} rule on R.
template <std::floating_point Real>
void real_line_nodes(const Quadrature<Real>& q, std::vector<Real>& x, std::vector<Real>& w) {
  x.clear();
  w.clear();
  const int d = q.potential().degree();
  for (auto [ray, sign] : ray_decomposition(Contour::real_line(), d)) {
    const auto& r = q.rule(ray, Weight::exp_minus_2v);
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      x.push_back(r.x[i].real());
      w.push_back(Real(sign) * r.w[i].real());
    }
  }
}

template <std::floating_point Real>
OrthogonalBasis<Real> build_basis(const Quadrature<Real>& q, int n, int cap = -1) {
  const auto& v = q.potential();
  if (cap < 0) cap = default_basis_cap(v.degree());
  if (n < 1) throw OutOfRange("basis size must be >= 1");
  if (n > cap)
    throw OutOfRange("basis size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  if (2 * n + 1 > q.max_degree())
    throw OutOfRange("quadrature degree too low for a basis of size " + std::to_string(n));

  std::vector<Real> x, w;
  real_line_nodes(q, x, w);
  const std::size_t m = x.size();

  OrthogonalBasis<Real> b;
  b.v = v;
  std::vector<Real> prev(m, Real(0)), cur(m, Real(1)), next(m);
  b.h.push_back(Poly<Real>::constant(1));
  for (int k = 0; k <= n; ++k) {
    Real norm = 0, first = 0;
    for (std::size_t i = 0; i < m; ++i) {
      norm += w[i] * cur[i] * cur[i];
      first += w[i] * x[i] * cur[i] * cur[i];
    }
    if (!(norm > 0) || !std::isfinite(norm))
      throw ConditioningFailure("nonpositive norm at degree " + std::to_string(k));
    b.nu.push_back(norm);
    b.rec_a.push_back(first / norm);
    b.rec_b.push_back(k == 0 ? norm : norm / b.nu[static_cast<std::size_t>(k - 1)]);
    if (k == n) break;
    const Real a = b.rec_a.back();
    const Real bk = k == 0 ? Real(0) : b.rec_b.back();
    for (std::size_t i = 0; i < m; ++i) next[i] = (x[i] - a) * cur[i] - bk * prev[i];
    prev.swap(cur);
    cur.swap(next);
    Poly<Real> hn = b.h.back().shifted_up() - Complex<Real>(a) * b.h.back();
    if (k > 0) hn -= Complex<Real>(bk) * b.h[static_cast<std::size_t>(k - 1)];
    b.h.push_back(std::move(hn));
  }

  // The monomial coefficients must reproduce the stable node-based norms.
  for (int k = 0; k <= n; ++k) {
    const auto& hk = b.h[static_cast<std::size_t>(k)];
    Real s = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const Real val = hk(Complex<Real>(x[i])).real();
      s += w[i] * val * val;
    }
    const Real nk = b.nu[static_cast<std::size_t>(k)];
    if (!(std::abs(s - nk) <= Real(kNormMismatchLimit) * nk))
      throw ConditioningFailure("coefficient form of H_" + std::to_string(k) + " loses " +
                                std::to_string(static_cast<double>(-std::log10(std::abs(s - nk) / nk))) +
                                " digits of its norm");
  }
  return b;
}

template <std::floating_point Real>
OrthogonalBasis<Real> build_basis(const Potential<Real>& v, int n, const QuadConfig& cfg = {},
                                  int cap = -1) {
  Quadrature<Real> q(v, 2 * n + 2, cfg);
  return build_basis(q, n, cap);
}

/// Coefficient of x^{n+D-1} in H_{n+D}.
template <std::floating_point Real>
Real next_to_leading(const OrthogonalBasis<Real>& b, int n) {
  const int d = b.v.degree();
  if (n < 0 || n + d > b.size())
    throw OutOfRange("next_to_leading needs n + D <= N (n = " + std::to_string(n) + ")");
  return b[n + d][static_cast<std::size_t>(n + d - 1)].real();
}

/// Largest |int H_i H_j e^{-2V}| / sqrt(nu_i nu_j) over i != j, in coefficient form.
template <std::floating_point Real>
Real orthogonality_defect(const OrthogonalBasis<Real>& b, const Quadrature<Real>& q) {
  Real worst = 0;
  for (int i = 0; i <= b.size(); ++i)
    for (int j = 0; j < i; ++j) {
      const Real g = q.real_integral(b[i] * b[j]).real();
      worst = std::max(worst, std::abs(g) / std::sqrt(b.nu[i] * b.nu[j]));
    }
  return worst;
}

}  // namespace skewrh
