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
 * @brief Explicit solutions of the even and odd Riemann-Hilbert problems and
 * their duals, with residual checks (jump, determinant, symmetry) and the
 * large-z expansion data feeding the Lax pair.
 *
 * Row layout of A_n: Psi_{2n}, -(2 pi i gamma D / h_{n-1}) Psi_{2n-2},
 * R_n^{(1..D-1)}. Column layout: the polynomial, C_R(e^{-2V} p), then
 * C_{Gamma_j}(e^{-V} p) for j = 1..D-1. B_n appends the row R_n^{(D)} and
 * the column C_T(x^{-2n-D} p).
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"
#include "skewrh/polynomial.hpp"
#include "skewrh/quadrature.hpp"
#include "skewrh/skew.hpp"

namespace skewrh {

enum class RhpKind { even_a, even_ahat, odd_b, odd_bhat };

inline std::string to_string(RhpKind k) {
  switch (k) {
    case RhpKind::even_a: return "A";
    case RhpKind::even_ahat: return "Ahat";
    case RhpKind::odd_b: return "B";
    case RhpKind::odd_bhat: return "Bhat";
  }
  return "?";
}

inline bool is_odd(RhpKind k) { return k == RhpKind::odd_b || k == RhpKind::odd_bhat; }

template <std::floating_point Real>
struct RhpMatrix {
  RhpKind which = RhpKind::even_a;
  int n = 0;
  Complex<Real> z;
  CMatrix<Real> value;
  Real t = 0;
};

/// Normal offsets for boundary values, combined by one Richardson step.
inline constexpr double kBoundaryOffsetCoarse = 1e-4;
inline constexpr double kBoundaryOffsetFine = 1e-5;
/// Minimum distance from the self-intersection points for jump checks.
inline constexpr double kIntersectionGuard = 1e-3;

namespace detail {

template <std::floating_point Real>
void require_rhp_n(const SkewSystem<Real>& sys, int n, int lowest, const char* what) {
  if (n < lowest || n > sys.n_max())
    throw OutOfRange(std::string(what) + ": n = " + std::to_string(n) + " outside [" + std::to_string(lowest) +
                     ", " + std::to_string(sys.n_max()) + "]");
}

/// First-column polynomials of A_n (odd: of B_n). Row 2 at n = 0 is absent.
template <std::floating_point Real>
std::vector<Poly<Real>> first_column(const SkewSystem<Real>& sys, int n, bool odd) {
  using C = Complex<Real>;
  const int d = sys.degree();
  std::vector<Poly<Real>> rows;
  rows.push_back(odd ? sys.psi(2 * n + 1) : sys.psi(2 * n));
  if (n >= 1) {
    const C f = -two_pi_i<Real>() * sys.gamma_d() / sys.h(n - 1);
    rows.push_back(f * sys.psi(2 * n - 2));
  } else {
    rows.push_back({});
  }
  for (int j = 1; j < d; ++j) rows.push_back(sys.r(n, j));
  if (odd) rows.push_back(sys.r(n, d));
  return rows;
}

/// Entry (row polynomial p, column col) at z; col 0 is p itself.
template <std::floating_point Real>
Complex<Real> entry(const SkewSystem<Real>& sys, const Poly<Real>& p, int col, int n, Complex<Real> z) {
  const int d = sys.degree();
  const auto& q = sys.quadrature();
  if (col == 0) return p(z);
  if (p.is_zero()) return 0;
  if (col == 1) return q.cauchy(p, Contour::real_line(), Weight::exp_minus_2v, z);
  if (col <= d) return q.cauchy(p, Contour::gamma(col - 1), Weight::exp_minus_v, z);
  return circle_cauchy(p, 2 * n + d, z);
}

template <std::floating_point Real>
CMatrix<Real> assemble(const SkewSystem<Real>& sys, int n, Complex<Real> z, bool odd) {
  const auto rows = first_column(sys, n, odd);
  const std::size_t dim = rows.size();
  CMatrix<Real> m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t c = 0; c < dim; ++c) m(i, c) = entry(sys, rows[i], static_cast<int>(c), n, z);
  if (n == 0) m(1, 1) = 1;  // row 2 of A_0 is e_2^T
  return m;
}

}  // namespace detail

/// Q with P e_k = e_{D-k}; the odd version appends -1.
template <std::floating_point Real>
CMatrix<Real> symmetry_matrix(int d, bool odd) {
  const std::size_t dim = static_cast<std::size_t>(d + (odd ? 2 : 1));
  CMatrix<Real> q(dim, dim);
  q(0, 0) = -1;
  q(1, 1) = 1;
  for (int k = 1; k < d; ++k) q(static_cast<std::size_t>(k + 1), static_cast<std::size_t>(d - k + 1)) = 1;
  if (odd) q(dim - 1, dim - 1) = -1;
  return q;
}

template <std::floating_point Real>
RhpMatrix<Real> assemble_even(const SkewSystem<Real>& sys, int n, Complex<Real> z) {
  detail::require_rhp_n(sys, n, 1, "assemble_even");
  return {RhpKind::even_a, n, z, detail::assemble(sys, n, z, false), sys.potential().t()};
}

template <std::floating_point Real>
RhpMatrix<Real> assemble_odd(const SkewSystem<Real>& sys, int n, Complex<Real> z) {
  detail::require_rhp_n(sys, n, 1, "assemble_odd");
  return {RhpKind::odd_b, n, z, detail::assemble(sys, n, z, true), sys.potential().t()};
}

/// Second column of A_n^{-T} in closed form (rows 1..D+1).
template <std::floating_point Real>
std::vector<Poly<Real>> dual_column_even(const SkewSystem<Real>& sys, int n) {
  using C = Complex<Real>;
  using P = Poly<Real>;
  detail::require_rhp_n(sys, n, 0, "dual_column_even");
  const int d = sys.degree();
  const Real gd = sys.gamma_d();
  const P x = P::monomial(1);
  std::vector<P> col;
  col.push_back(n >= 1 ? (-two_pi_i<Real>() * gd / sys.h(n - 1)) * sys.p(2 * n - 2) : P{});
  col.push_back(sys.p(2 * n));
  const auto& q = sys.quadrature();
  for (int j = 1; j < d; ++j) {
    P s;
    for (int k = 0; k < n; ++k) {
      const C odd = q.gamma_integral(x * sys.psi(2 * k + 1), j, Weight::exp_minus_v);
      const C even = q.gamma_integral(x * sys.psi(2 * k), j, Weight::exp_minus_v);
      s += (C(gd / sys.h(k)) * odd) * sys.p(2 * k) - (C(gd / sys.h(k)) * even) * sys.p(2 * k + 1);
    }
    col.push_back(std::move(s));
  }
  return col;
}

/// Second column of B_n^{-T} in closed form (rows 1..D+2).
template <std::floating_point Real>
std::vector<Poly<Real>> dual_column_odd(const SkewSystem<Real>& sys, int n) {
  detail::require_rhp_n(sys, n, 1, "dual_column_odd");
  auto col = dual_column_even(sys, n);
  col.push_back((two_pi_i<Real>() * sys.gamma_d() / sys.h(n - 1)) * sys.p(2 * n - 2));
  col[0] = {};
  return col;
}

namespace detail {

/// m^{-T} after equilibrating the columns, which differ by powers of z.
template <std::floating_point Real>
CMatrix<Real> inverse_transpose(const CMatrix<Real>& m) {
  const std::size_t dim = m.rows();
  std::vector<Real> s(dim, Real(1));
  CMatrix<Real> scaled = m;
  for (std::size_t c = 0; c < dim; ++c) {
    Real big = 0;
    for (std::size_t r = 0; r < dim; ++r) big = std::max(big, std::abs(m(r, c)));
    if (big > 0) s[c] = Real(1) / big;
    for (std::size_t r = 0; r < dim; ++r) scaled(r, c) *= s[c];
  }
  CMatrix<Real> inv = inverse(scaled);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) inv(r, c) *= s[r];
  return inv.transpose();
}

template <std::floating_point Real>
Real column_gap(const CMatrix<Real>& m, const std::vector<Poly<Real>>& col, Complex<Real> z) {
  Real gap = 0, scale = 0;
  for (std::size_t i = 0; i < col.size(); ++i) {
    const auto direct = col[i](z);
    gap = std::max(gap, std::abs(m(i, 1) - direct));
    scale = std::max(scale, std::abs(direct));
  }
  return gap / std::max(scale, std::numeric_limits<Real>::min());
}

}  // namespace detail

/// A_n^{-T} by inversion, with its second column replaced by the closed form.
template <std::floating_point Real>
RhpMatrix<Real> assemble_even_dual(const SkewSystem<Real>& sys, int n, Complex<Real> z) {
  auto a = assemble_even(sys, n, z);
  CMatrix<Real> ahat = detail::inverse_transpose(a.value);
  const auto col = dual_column_even(sys, n);
  for (std::size_t i = 0; i < col.size(); ++i) ahat(i, 1) = col[i](z);
  return {RhpKind::even_ahat, n, z, ahat, a.t};
}

template <std::floating_point Real>
RhpMatrix<Real> assemble_odd_dual(const SkewSystem<Real>& sys, int n, Complex<Real> z) {
  auto b = assemble_odd(sys, n, z);
  CMatrix<Real> bhat = detail::inverse_transpose(b.value);
  const auto col = dual_column_odd(sys, n);
  for (std::size_t i = 0; i < col.size(); ++i) bhat(i, 1) = col[i](z);
  return {RhpKind::odd_bhat, n, z, bhat, b.t};
}

/// Relative gap between the closed-form second column and inverse-transpose.
template <std::floating_point Real>
Real dual_column_gap(const SkewSystem<Real>& sys, RhpKind which, int n, Complex<Real> z) {
  if (!is_odd(which)) {
    const auto a = assemble_even(sys, n, z);
    return detail::column_gap(detail::inverse_transpose(a.value), dual_column_even(sys, n), z);
  }
  const auto b = assemble_odd(sys, n, z);
  return detail::column_gap(detail::inverse_transpose(b.value), dual_column_odd(sys, n), z);
}

template <std::floating_point Real>
RhpMatrix<Real> assemble(const SkewSystem<Real>& sys, RhpKind which, int n, Complex<Real> z) {
  switch (which) {
    case RhpKind::even_a: return assemble_even(sys, n, z);
    case RhpKind::even_ahat: return assemble_even_dual(sys, n, z);
    case RhpKind::odd_b: return assemble_odd(sys, n, z);
    case RhpKind::odd_bhat: return assemble_odd_dual(sys, n, z);
  }
  throw OutOfRange("unknown RHP kind");
}

// ---------------------------------------------------------------------------
// Jumps

/// Where a boundary point sits: on ray k (k >= 0) or on the unit circle (k = -1).
struct ContourPoint {
  int ray = -1;
  bool circle = false;
};

template <std::floating_point Real>
ContourPoint locate_on_contour(Complex<Real> x, int d, bool odd) {
  const Real r = std::abs(x);
  ContourPoint cp;
  for (int k = 0; k < d; ++k)
    if (std::abs(x - r * root_of_unity<Real>(k, d)) <= Real(1e-9) * r) cp.ray = k;
  if (odd && std::abs(r - Real(1)) <= Real(1e-12)) cp.circle = true;
  if (r < Real(kIntersectionGuard)) throw PointNearIntersection("x is within 1e-3 of the origin");
  if (odd)
    for (int k = 0; k < d; ++k)
      if (std::abs(x - root_of_unity<Real>(k, d)) < Real(kIntersectionGuard))
        throw PointNearIntersection("x is within 1e-3 of a root of unity");
  if (cp.ray < 0 && !cp.circle) throw OutOfRange("x is not on the jump contour");
  return cp;
}

/// Jump matrix at a contour point; dual problems use the inverse transpose.
template <std::floating_point Real>
CMatrix<Real> jump_matrix(const SkewSystem<Real>& sys, RhpKind which, int n, Complex<Real> x, const ContourPoint& cp) {
  const int d = sys.degree();
  const auto& v = sys.potential();
  const std::size_t dim = static_cast<std::size_t>(d + (is_odd(which) ? 2 : 1));
  CMatrix<Real> j = CMatrix<Real>::identity(dim);
  if (cp.circle) {
    j(0, dim - 1) = std::pow(x, -(2 * n + d));
  } else {
    const int k = cp.ray;
    if (k == 0 || 2 * k == d) j(0, 1) = std::exp(-Real(2) * v(x));
    for (int g = 1; g < d; ++g)
      if (k == 0 || k == g) j(0, static_cast<std::size_t>(g + 1)) = std::exp(-v(x));
  }
  if (which == RhpKind::even_ahat || which == RhpKind::odd_bhat) return inverse(j).transpose();
  return j;
}

/**
 * ||M+ - M- J||_inf / ||M-||_inf at a contour point. Boundary values from the
 * left (+) and right (-) normals at offsets 1e-4 and 1e-5, combined as
 * (10 f(1e-5) - f(1e-4)) / 9 to cancel the linear offset error.
 */
template <std::floating_point Real>
Real jump_residual(const SkewSystem<Real>& sys, RhpKind which, int n, Complex<Real> x) {
  using C = Complex<Real>;
  const int d = sys.degree();
  const auto cp = locate_on_contour(x, d, is_odd(which));
  C tangent;
  if (cp.circle) {
    tangent = C(0, 1) * x / std::abs(x);  // positive orientation; + side is the interior
  } else {
    const C dir = root_of_unity<Real>(cp.ray, d);
    tangent = cp.ray == 0 ? dir : -dir;  // ray 0 outgoing, the others inward
  }
  const C normal = C(0, 1) * tangent;
  auto side = [&](Real sign) {
    const auto f1 = assemble(sys, which, n, x + sign * Real(kBoundaryOffsetCoarse) * normal).value;
    const auto f2 = assemble(sys, which, n, x + sign * Real(kBoundaryOffsetFine) * normal).value;
    return (Real(10) * f2 - f1) * C(Real(1) / Real(9));
  };
  const auto plus = side(1);
  const auto minus = side(-1);
  const auto j = jump_matrix(sys, which, n, x, cp);
  return (plus - minus * j).norm_inf() / minus.norm_inf();
}

/// |det - 1| for the assembled matrix.
template <std::floating_point Real>
Real det_residual(const RhpMatrix<Real>& m) {
  return std::abs(determinant(m.value) - Complex<Real>(1));
}

/// ||M(z) - Q conj(M(conj z)) Q||_inf / ||M(z)||_inf.
template <std::floating_point Real>
Real symmetry_residual(const SkewSystem<Real>& sys, RhpKind which, int n, Complex<Real> z) {
  const auto m = assemble(sys, which, n, z).value;
  const auto mc = assemble(sys, which, n, std::conj(z)).value.conj();
  const auto q = symmetry_matrix<Real>(sys.degree(), is_odd(which));
  return (m - q * mc * q).norm_inf() / m.norm_inf();
}

/// sum_k (dual column 2)_k(x) (column 1)_k(y), i.e. (M^{-1}(x) M(y))_{21}.
template <std::floating_point Real>
Complex<Real> cd_numerator(const SkewSystem<Real>& sys, RhpKind which, int n, Complex<Real> x, Complex<Real> y) {
  const bool odd = is_odd(which);
  const auto col = odd ? dual_column_odd(sys, n) : dual_column_even(sys, n);
  const auto rows = detail::first_column(sys, n, odd);
  Complex<Real> s = 0;
  for (std::size_t k = 0; k < rows.size(); ++k) s += col[k](x) * rows[k](y);
  return s;
}

/// Largest |A(z) diag(z^{-2n-D+1}, z^{2n}, z, ..., z) - I|.
template <std::floating_point Real>
Real normalization_residual(const SkewSystem<Real>& sys, RhpKind which, int n, Complex<Real> z) {
  const auto m = assemble(sys, which, n, z).value;
  const int d = sys.degree();
  const bool odd = is_odd(which);
  const bool dual = which == RhpKind::even_ahat || which == RhpKind::odd_bhat;
  const std::size_t dim = m.rows();
  Real worst = 0;
  for (std::size_t c = 0; c < dim; ++c) {
    int power;
    if (c == 0) power = 2 * n + d - (odd ? 0 : 1);
    else if (c == 1) power = -2 * n;
    else power = -1;
    if (dual) power = -power;
    const auto scale = std::pow(z, -power);
    for (std::size_t r = 0; r < dim; ++r)
      worst = std::max(worst, std::abs(m(r, c) * scale - Complex<Real>(r == c ? 1 : 0)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Expansion at infinity

template <std::floating_point Real>
struct ExpansionData {
  int n = 0;
  Real t = 0;
  CMatrix<Real> g1, g2;  // A_n(z) = (I + G1/z + G2/z^2 + ...) Lambda(z)
  CMatrix<Real> a1, a2;  // A_n^{-T}(z) = (I + A1/z + A2/z^2 + ...) Lambda(z)^{-1}
  std::vector<Complex<Real>> b;  // b_i, i = 3..D+1 stored from index 0
  Real normalization = 0;   // largest deviation of the z^0 coefficients from I
  Real column2_gap = 0;     // A1, A2 column 2 against the closed-form dual column
};

/**
 * G1, G2 from polynomial coefficients (column 1) and weighted moments
 * (Cauchy columns, through their expansion in powers of 1/z). Accepts
 * n = 0, where row 2 of A_0 is e_2^T.
 */
template <std::floating_point Real>
ExpansionData<Real> expansion(const SkewSystem<Real>& sys, int n) {
  using C = Complex<Real>;
  using P = Poly<Real>;
  detail::require_rhp_n(sys, n, 0, "expansion");
  const int d = sys.degree();
  const auto& q = sys.quadrature();
  const auto rows = detail::first_column(sys, n, false);
  const std::size_t dim = rows.size();
  const C mtwo_pi_i = -Real(1) / two_pi_i<Real>();

  ExpansionData<Real> e;
  e.n = n;
  e.t = sys.potential().t();
  e.g1 = CMatrix<Real>(dim, dim);
  e.g2 = CMatrix<Real>(dim, dim);
  CMatrix<Real> g0(dim, dim);
  const int top = 2 * n + d - 1;
  for (std::size_t i = 0; i < dim; ++i) {
    const P& p = rows[i];
    if (n == 0 && i == 1) {
      g0(1, 1) = 1;
      continue;
    }
    g0(i, 0) = p[static_cast<std::size_t>(top)];
    e.g1(i, 0) = p[static_cast<std::size_t>(top - 1)];
    e.g2(i, 0) = p[static_cast<std::size_t>(top - 2)];
    // C(f)(z) z^s = -(1/2 pi i) sum_k m_k z^{s-k-1}
    auto moment = [&](int k, const Contour& c, Weight w) {
      if (k < 0) return C(0);
      return q.integrate(P::monomial(static_cast<std::size_t>(k)) * p, c, w);
    };
    const int s = 2 * n;
    g0(i, 1) = mtwo_pi_i * moment(s - 1, Contour::real_line(), Weight::exp_minus_2v);
    e.g1(i, 1) = mtwo_pi_i * moment(s, Contour::real_line(), Weight::exp_minus_2v);
    e.g2(i, 1) = mtwo_pi_i * moment(s + 1, Contour::real_line(), Weight::exp_minus_2v);
    for (int j = 1; j < d; ++j) {
      const auto c = Contour::gamma(j);
      const std::size_t col = static_cast<std::size_t>(j + 1);
      g0(i, col) = mtwo_pi_i * moment(0, c, Weight::exp_minus_v);
      e.g1(i, col) = mtwo_pi_i * moment(1, c, Weight::exp_minus_v);
      e.g2(i, col) = mtwo_pi_i * moment(2, c, Weight::exp_minus_v);
    }
  }
  e.normalization = (g0 - CMatrix<Real>::identity(dim)).max_abs();
  e.a1 = -e.g1.transpose();
  e.a2 = (e.g1 * e.g1 - e.g2).transpose();
  for (std::size_t i = 2; i < dim; ++i) {
    C s = 0;
    for (std::size_t k = 2; k < dim; ++k) s += e.a1(1, k) * e.a1(k, i);
    e.b.push_back(s);
  }

  // Column 2 of A^{-T} is polynomial: z^{2n} (delta + A1/z + A2/z^2 + ...).
  const auto col = dual_column_even(sys, n);
  Real gap = 0, scale = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    const C c1 = n >= 1 ? col[i][static_cast<std::size_t>(2 * n - 1)] : C(0);
    const C c2 = n >= 1 ? col[i][static_cast<std::size_t>(2 * n - 2)] : C(0);
    gap = std::max({gap, std::abs(c1 - e.a1(i, 1)), std::abs(c2 - e.a2(i, 1))});
    scale = std::max({scale, std::abs(c1), std::abs(c2)});
  }
  e.column2_gap = gap / scale;
  return e;
}

// ---------------------------------------------------------------------------
// Lax pair in n

template <std::floating_point Real>
struct RecurrenceFactor {
  CMatrix<Real> rho1, rho2, kappa;
};

template <std::floating_point Real>
CMatrix<Real> e1_matrix(std::size_t dim) {
  return CMatrix<Real>::unit_diagonal(dim, 0);
}
template <std::floating_point Real>
CMatrix<Real> e2_matrix(std::size_t dim) {
  return CMatrix<Real>::unit_diagonal(dim, 1);
}
template <std::floating_point Real>
CMatrix<Real> sigma_matrix(std::size_t dim) {
  return e1_matrix<Real>(dim) - e2_matrix<Real>(dim);
}

template <std::floating_point Real>
RecurrenceFactor<Real> recurrence_factor(const ExpansionData<Real>& en, const ExpansionData<Real>& en1) {
  const std::size_t dim = en.a1.rows();
  const auto i = CMatrix<Real>::identity(dim);
  const auto e1 = e1_matrix<Real>(dim), e2 = e2_matrix<Real>(dim), sg = sigma_matrix<Real>(dim);
  RecurrenceFactor<Real> f;
  f.rho1 = en1.a1 * e2 - e2 * en.a1;
  f.rho2 = i - e1 - e2 + en1.a2 * e2 + e2 * (en.a1 * en.a1 - en.a2) - en1.a1 * e2 * en.a1;
  f.kappa = commutator(en.a1, sg);
  return f;
}

template <std::floating_point Real>
RecurrenceFactor<Real> recurrence_factor(const SkewSystem<Real>& sys, int n) {
  return recurrence_factor(expansion(sys, n), expansion(sys, n + 1));
}

/// ||Ahat_{n+1}(z) - (z^2 E2 + z rho1 + rho2) Ahat_n(z)||_inf / ||Ahat_{n+1}(z)||_inf.
template <std::floating_point Real>
Real lax_residual(const SkewSystem<Real>& sys, int n, Complex<Real> z) {
  const auto f = recurrence_factor(sys, n);
  const auto an = assemble_even_dual(sys, n, z).value;
  const auto an1 = assemble_even_dual(sys, n + 1, z).value;
  const auto e2 = e2_matrix<Real>(an.rows());
  const auto rho = e2 * (z * z) + f.rho1 * z + f.rho2;
  return (an1 - rho * an).norm_inf() / an1.norm_inf();
}

/// max |E2 kappa_n - kappa_{n+1} E2 + [rho1, sigma]| and |[E2, sigma]|.
template <std::floating_point Real>
Real compatibility_z2_residual(const SkewSystem<Real>& sys, int n) {
  const auto en = expansion(sys, n), en1 = expansion(sys, n + 1);
  const auto f = recurrence_factor(en, en1);
  const std::size_t dim = en.a1.rows();
  const auto e2 = e2_matrix<Real>(dim), sg = sigma_matrix<Real>(dim);
  const auto kappa1 = commutator(en1.a1, sg);
  const auto lhs = e2 * f.kappa - kappa1 * e2 + commutator(f.rho1, sg);
  const Real scale = std::max({Real(1), f.kappa.max_abs(), kappa1.max_abs(), f.rho1.max_abs()});
  return std::max(lhs.max_abs() / scale, commutator(e2, sg).max_abs());
}

/// Points on every jump component: three radii per ray, and for odd problems
/// two points on the unit circle between each pair of rays.
template <std::floating_point Real>
std::vector<Complex<Real>> contour_samples(int d, bool odd) {
  std::vector<Complex<Real>> pts;
  for (int k = 0; k < d; ++k)
    for (Real r : {Real(0.35), Real(0.8), Real(1.7)}) pts.push_back(r * root_of_unity<Real>(k, d));
  if (odd) {
    const Real step = 2 * std::numbers::pi_v<Real> / Real(d);
    for (int k = 0; k < d; ++k)
      for (Real f : {Real(0.25), Real(0.5)}) pts.push_back(std::polar(Real(1), (Real(k) + f) * step));
  }
  return pts;
}

/**
 * Pseudo-random points off the contour with 0.3 <= |z| <= 1.2, at least
 * 0.2 rad from every ray and 0.08 from the unit circle. Farther out the
 * entries grow like |e^{-V(z)}| in some sectors and det(A) = 1 is reached
 * through cancellation of large terms.
 */
template <std::floating_point Real>
std::vector<Complex<Real>> off_contour_samples(int d, int count, std::uint64_t seed = 20261014) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> radius(0.3, 1.2), angle(0.0, 2 * std::numbers::pi);
  const double step = 2 * std::numbers::pi / d;
  std::vector<Complex<Real>> pts;
  while (static_cast<int>(pts.size()) < count) {
    const double r = radius(rng), a = angle(rng);
    const double off = std::remainder(a, step);
    if (std::abs(off) < 0.2 || std::abs(r - 1) < 0.08) continue;
    pts.push_back(std::polar(Real(r), Real(a)));
  }
  return pts;
}

}  // namespace skewrh
