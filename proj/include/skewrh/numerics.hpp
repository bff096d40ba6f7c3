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
 * @brief Scalar helpers, small dense complex matrices, LU solves and the
 * Pfaffian of skew-symmetric matrices.
 *
 * Everything is templated on the real type so that `long double` can be
 * used as the extended-precision scalar. Matrices here are at most ~20x20.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "skewrh/errors.hpp"

namespace skewrh {

enum class Precision { binary64, extended };

inline std::string to_string(Precision p) {
  return p == Precision::binary64 ? "binary64" : "extended";
}

template <std::floating_point Real>
using Complex = std::complex<Real>;

template <std::floating_point Real>
constexpr Real kPi = std::numbers::pi_v<Real>;

/// 2*pi*i
template <std::floating_point Real>
constexpr Complex<Real> two_pi_i() {
  return Complex<Real>(0, 2 * kPi<Real>);
}

template <std::floating_point Real>
inline Real check_finite(Real x, const char* what) {
  if (!std::isfinite(x)) throw NonFiniteValue(what);
  return x;
}

template <std::floating_point Real>
inline Complex<Real> check_finite(Complex<Real> z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw NonFiniteValue(what);
  return z;
}

/// Dense complex matrix stored row-major.
template <std::floating_point Real>
class CMatrix {
 public:
  using value_type = Complex<Real>;

  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  CMatrix(std::size_t rows, std::size_t cols, std::vector<value_type> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw DimensionMismatch("entry count != rows*cols");
  }
  CMatrix(std::initializer_list<std::initializer_list<value_type>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Diagonal matrix with a single one at (k, k).
  static CMatrix unit_diagonal(std::size_t n, std::size_t k) {
    CMatrix m(n, n);
    m(k, k) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  const std::vector<value_type>& data() const { return data_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  CMatrix transpose() const {
    CMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  CMatrix conj() const {
    CMatrix c = *this;
    for (auto& v : c.data_) v = std::conj(v);
    return c;
  }

  CMatrix& operator+=(const CMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  CMatrix& operator-=(const CMatrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  CMatrix& operator*=(value_type s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator-(CMatrix a) { return a *= value_type(-1); }
  friend CMatrix operator*(CMatrix a, value_type s) { return a *= s; }
  friend CMatrix operator*(value_type s, CMatrix a) { return a *= s; }

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matmul inner dimensions differ");
    CMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const value_type aik = a(i, k);
        if (aik == value_type(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  /// Largest entry modulus.
  Real max_abs() const {
    Real m = 0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  /// Induced infinity norm (maximum absolute row sum).
  Real norm_inf() const {
    Real m = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      Real s = 0;
      for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
      m = std::max(m, s);
    }
    return m;
  }

  /// Induced one norm (maximum absolute column sum).
  Real norm_one() const { return transpose().norm_inf(); }

  void require_finite(const char* what) const {
    for (const auto& v : data_) check_finite(v, what);
  }

 private:
  void require_same_shape(const CMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> data_;
};

/// Commutator [a, b] = ab - ba.
template <std::floating_point Real>
CMatrix<Real> commutator(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  return a * b - b * a;
}

/// LU factorization with partial pivoting, P*A = L*U packed in one matrix.
template <std::floating_point Real>
class LuDecomposition {
 public:
  explicit LuDecomposition(const CMatrix<Real>& m) : lu_(m), perm_(m.rows()) {
    if (!m.square()) throw DimensionMismatch("LU of a non-square matrix");
    m.require_finite("matrix entry");
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      Real best = std::abs(lu_(k, k));
      for (std::size_t i = k + 1; i < n; ++i) {
        if (std::abs(lu_(i, k)) > best) {
          best = std::abs(lu_(i, k));
          p = i;
        }
      }
      if (best == Real(0)) {
        singular_ = true;
        continue;
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        std::swap(perm_[k], perm_[p]);
        sign_ = -sign_;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        lu_(i, k) /= lu_(k, k);
        const auto lik = lu_(i, k);
        for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= lik * lu_(k, j);
      }
    }
  }

  bool singular() const { return singular_; }

  Complex<Real> determinant() const {
    Complex<Real> d = sign_;
    for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
    return d;
  }

  CMatrix<Real> solve(const CMatrix<Real>& rhs) const {
    if (singular_) throw SingularMatrix("exactly singular pivot");
    const std::size_t n = lu_.rows();
    if (rhs.rows() != n) throw DimensionMismatch("rhs rows != matrix size");
    CMatrix<Real> x(n, rhs.cols());
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        Complex<Real> s = rhs(perm_[i], c);
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x(j, c);
        x(i, c) = s;
      }
      for (std::size_t i = n; i-- > 0;) {
        Complex<Real> s = x(i, c);
        for (std::size_t j = i + 1; j < n; ++j) s -= lu_(i, j) * x(j, c);
        x(i, c) = s / lu_(i, i);
      }
    }
    return x;
  }

 private:
  CMatrix<Real> lu_;
  std::vector<std::size_t> perm_;
  Real sign_ = 1;
  bool singular_ = false;
};

/// Condition threshold above which solves are refused.
template <std::floating_point Real>
constexpr Real kConditionLimit = Real(1e12);

/// One-norm condition number, computed from the explicit inverse.
template <std::floating_point Real>
Real condition_number(const CMatrix<Real>& m) {
  LuDecomposition<Real> lu(m);
  if (lu.singular()) return std::numeric_limits<Real>::infinity();
  const auto inv = lu.solve(CMatrix<Real>::identity(m.rows()));
  return m.norm_one() * inv.norm_one();
}

/// Solves m * x = rhs. Throws SingularMatrix when cond_1(m) exceeds 1e12.
template <std::floating_point Real>
CMatrix<Real> solve(const CMatrix<Real>& m, const CMatrix<Real>& rhs) {
  LuDecomposition<Real> lu(m);
  if (lu.singular()) throw SingularMatrix("exactly singular pivot");
  const auto inv = lu.solve(CMatrix<Real>::identity(m.rows()));
  const Real cond = m.norm_one() * inv.norm_one();
  if (!(cond <= kConditionLimit<Real>))
    throw SingularMatrix("condition number " + std::to_string(static_cast<double>(cond)) +
                         " exceeds limit");
  rhs.require_finite("rhs entry");
  return lu.solve(rhs);
}

template <std::floating_point Real>
CMatrix<Real> inverse(const CMatrix<Real>& m) {
  return solve(m, CMatrix<Real>::identity(m.rows()));
}

template <std::floating_point Real>
Complex<Real> determinant(const CMatrix<Real>& m) {
  return LuDecomposition<Real>(m).determinant();
}

/**
 * Pfaffian of a skew-symmetric matrix via Parlett-Reid skew
 * tridiagonalization with partial pivoting.
 */
template <std::floating_point Real>
Complex<Real> pfaffian(const CMatrix<Real>& m) {
  if (!m.square()) throw DimensionMismatch("Pfaffian of a non-square matrix");
  const std::size_t n = m.rows();
  if (n % 2 == 1) throw OddDimension("dimension " + std::to_string(n));
  m.require_finite("matrix entry");
  if ((m + m.transpose()).max_abs() > Real(1e-12) * m.max_abs())
    throw NotSkewSymmetric("|m + m^T| exceeds 1e-12 |m|");
  if (n == 0) return 1;

  CMatrix<Real> a = m;
  Complex<Real> result = 1;
  for (std::size_t k = 0; k + 1 < n; k += 2) {
    std::size_t kp = k + 1;
    for (std::size_t i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(kp, k))) kp = i;
    if (kp != k + 1) {
      // Symmetric swap of row/column k+1 and kp.
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k + 1, j), a(kp, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k + 1), a(i, kp));
      result = -result;
    }
    const Complex<Real> pivot = a(k + 1, k);
    if (pivot == Complex<Real>(0)) return 0;
    result *= a(k, k + 1);
    if (k + 2 < n) {
      // tau = a(k, k+2:) / a(k, k+1); rank-2 update of the trailing block.
      std::vector<Complex<Real>> tau(n, 0);
      for (std::size_t j = k + 2; j < n; ++j) tau[j] = a(k, j) / a(k, k + 1);
      for (std::size_t i = k + 2; i < n; ++i)
        for (std::size_t j = k + 2; j < n; ++j)
          a(i, j) += tau[i] * a(j, k + 1) - a(i, k + 1) * tau[j];
    }
  }
  return result;
}

}  // namespace skewrh
