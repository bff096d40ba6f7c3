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
 * @brief Dynamical variables of the deformation V(z, t) = V_0(z) + t z, the
 * residuals of their first order system in t, its constraints, and the closed
 * form for V_0 = z^2 / 2.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"
#include "skewrh/polynomial.hpp"
#include "skewrh/rhp.hpp"
#include "skewrh/skew.hpp"

namespace skewrh {

/// |a2_12| below this is treated as a vanishing denominator.
inline constexpr double kDenominatorFloor = 1e-12;
/// Floor of the residual scale.
inline constexpr double kResidualScaleFloor = 1e-10;

/**
 * Entries of A1 = A_n^{(1)}, A2 = A_n^{(2)} in 1-based matrix labels. The
 * lists run over i = 3..D+1 and are stored from index 0.
 */
template <std::floating_point Real>
struct TodaState {
  using C = Complex<Real>;
  int n = 0;
  Real t = 0;
  Real a1_22 = 0, a2_22 = 0;
  std::vector<C> a1_2i, a1_i2, a2_i2, b;
  C a2_12 = 0, a2_21 = 0;
  // Used only by the auxiliary identities.
  std::vector<C> a1_i1, a1_1i;

  int degree() const { return static_cast<int>(a1_2i.size()) + 1; }
};

template <std::floating_point Real>
struct NamedResidual {
  std::string name;
  int n = 0;
  Real t = 0;
  Real value = 0;
};

template <std::floating_point Real>
TodaState<Real> toda_state(const SkewSystem<Real>& sys, int n) {
  const auto e = expansion(sys, n);
  const int d = sys.degree();
  TodaState<Real> s;
  s.n = n;
  s.t = sys.potential().t();
  s.a1_22 = e.a1(1, 1).real();
  s.a2_22 = e.a2(1, 1).real();
  s.a2_12 = e.a2(0, 1);
  s.a2_21 = e.a2(1, 0);
  for (int i = 2; i <= d; ++i) {
    s.a1_2i.push_back(e.a1(1, i));
    s.a1_i2.push_back(e.a1(i, 1));
    s.a2_i2.push_back(e.a2(i, 1));
    s.a1_i1.push_back(e.a1(i, 0));
    s.a1_1i.push_back(e.a1(0, i));
  }
  s.b = e.b;
  return s;
}

namespace detail {

/// 1 / Gamma(x), zero at the poles.
template <std::floating_point Real>
Real reciprocal_gamma(Real x) {
  if (x <= 0 && x == std::floor(x)) return 0;
  return Real(1) / std::tgamma(x);
}

/// |lhs - sum(terms)| / max(|lhs|, sum |terms|, size, floor). `size` is the
/// magnitude of the differentiated variable, the level of its rounding noise.
template <std::floating_point Real>
Real balance(Complex<Real> lhs, const std::vector<Complex<Real>>& terms, Real size = 0) {
  Complex<Real> sum = 0;
  Real mag = 0;
  for (const auto& x : terms) {
    sum += x;
    mag += std::abs(x);
  }
  return std::abs(lhs - sum) / std::max({std::abs(lhs), mag, size, Real(kResidualScaleFloor)});
}

template <std::floating_point Real>
Complex<Real> checked_denominator(Complex<Real> a, int n) {
  if (std::abs(a) < Real(kDenominatorFloor))
    throw DenominatorVanishing("a2_12(" + std::to_string(n) + ") vanishes");
  return a;
}

/// States at (n, t + k h) for k in {-2, -1, 0, 1, 2}, fetched on demand.
template <std::floating_point Real>
class StateSamples {
 public:
  using Provider = std::function<TodaState<Real>(int, Real)>;
  StateSamples(Provider p, Real t, Real h) : p_(std::move(p)), t_(t), h_(h) {}

  const TodaState<Real>& at(int n, int k = 0) {
    const auto key = std::make_pair(n, k);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, p_(n, t_ + Real(k) * h_)).first;
    return it->second;
  }

  /// Central difference with one Richardson level.
  template <class F>
  Complex<Real> derivative(int n, F&& f) {
    const Complex<Real> d1 = (f(at(n, 1)) - f(at(n, -1))) / (Real(2) * h_);
    const Complex<Real> d2 = (f(at(n, 2)) - f(at(n, -2))) / (Real(4) * h_);
    return (Real(4) * d1 - d2) / Real(3);
  }

 private:
  Provider p_;
  Real t_, h_;
  std::map<std::pair<int, int>, TodaState<Real>> cache_;
};

template <std::floating_point Real>
Complex<Real> sum_a1_2k_a1_k2(const TodaState<Real>& s) {
  Complex<Real> acc = 0;
  for (std::size_t k = 0; k < s.a1_2i.size(); ++k) acc += s.a1_2i[k] * s.a1_i2[k];
  return acc;
}

}  // namespace detail

/**
 * Residuals of every equation of the system at (n, t), with states supplied
 * by provider(n, t). The b_i equation is included for n >= 1 only.
 */
template <std::floating_point Real, class Provider>
  requires std::invocable<Provider&, int, Real>
std::vector<NamedResidual<Real>> ode_residuals(Provider&& provider, int n, Real t, Real h) {
  using C = Complex<Real>;
  using S = TodaState<Real>;
  if (n < 0) throw OutOfRange("ode_residuals needs n >= 0");
  if (!(h > 0)) throw OutOfRange("ode_residuals needs h > 0");
  detail::StateSamples<Real> st(std::function<S(int, Real)>(std::forward<Provider>(provider)), t, h);
  std::vector<NamedResidual<Real>> out;
  auto push = [&](std::string name, Real v) { out.push_back({std::move(name), n, t, v}); };

  const S& s0 = st.at(n);
  const S& s1 = st.at(n + 1);
  const S& s2 = st.at(n + 2);
  const std::size_t m = s0.a1_2i.size();
  const C sum0 = detail::sum_a1_2k_a1_k2(s0);
  const C a1_22 = s0.a1_22;
  const C a2_12_1 = detail::checked_denominator(s1.a2_12, n + 1);
  const C a2_12_2 = detail::checked_denominator(s2.a2_12, n + 2);

  {
    const C lhs = st.derivative(n, [](const S& s) { return C(s.a1_22); });
    std::vector<C> rhs;
    for (std::size_t k = 0; k < m; ++k) rhs.push_back(s0.a1_2i[k] * s0.a1_i2[k]);
    push("da1_22", detail::balance(lhs, rhs, std::abs(s0.a1_22)));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const std::string tag = "[" + std::to_string(i + 3) + "]";
    const C l2 = st.derivative(n, [i](const S& s) { return s.a1_2i[i]; });
    push("da1_2i" + tag, detail::balance(l2, {s0.b[i]}, std::abs(s0.a1_2i[i])));
    const C l3 = st.derivative(n, [i](const S& s) { return s.a1_i2[i]; });
    push("da1_i2" + tag, detail::balance(l3, {s0.a2_i2[i], -s0.a1_i2[i] * a1_22}, std::abs(s0.a1_i2[i])));
  }
  {
    const C lhs = st.derivative(n, [](const S& s) { return C(s.a2_22); });
    std::vector<C> rhs;
    for (std::size_t k = 0; k < m; ++k) rhs.push_back(s0.a1_2i[k] * s0.a2_i2[k]);
    push("da2_22", detail::balance(lhs, rhs, std::abs(s0.a2_22)));
  }
  {
    const C lhs = st.derivative(n + 1, [](const S& s) { return s.a2_12; }) / a2_12_1;
    std::vector<C> rhs{Real(2) * a1_22};
    for (std::size_t k = 0; k < m; ++k) rhs.push_back(-s0.a1_2i[k] * s1.a2_i2[k]);
    push("dln_a2_12", detail::balance(lhs, rhs, Real(1)));
  }
  for (std::size_t i = 0; i < m; ++i) {
    const C lhs = st.derivative(n + 1, [i](const S& s) { return s.a2_i2[i]; });
    const C x1 = s1.a1_i2[i];
    const std::vector<C> rhs{s1.a2_i2[i] * a1_22,
                             x1 * s0.a2_22,
                             s0.a1_i2[i],
                             -x1 * s1.a2_22,
                             s2.a1_i2[i] * a2_12_1 / a2_12_2,
                             -x1 * a1_22 * a1_22,
                             -x1 * sum0};
    push("da2_i2[" + std::to_string(i + 3) + "]", detail::balance(lhs, rhs, std::abs(s1.a2_i2[i])));
  }
  if (n >= 1) {
    const S& sm = st.at(n - 1);
    const C a2_12_0 = s0.a2_12;
    const C a1_22_1 = s1.a1_22;
    for (std::size_t i = 0; i < m; ++i) {
      const C lhs = st.derivative(n, [i](const S& s) { return s.b[i]; });
      const C x = s0.a1_2i[i];
      const std::vector<C> rhs{a2_12_0 / a2_12_1 * sm.a1_2i[i],
                               a1_22_1 * a1_22 * x,
                               s1.a1_2i[i],
                               -C(s1.a2_22) * x,
                               C(s0.a2_22) * x,
                               -x * a1_22 * a1_22,
                               -a1_22 * s0.b[i],
                               -Real(2) * x * sum0,
                               a1_22_1 * s0.b[i]};
      push("db_i[" + std::to_string(i + 3) + "]", detail::balance(lhs, rhs, std::abs(s0.b[i])));
    }
  }
  return out;
}

/// States from a fresh skew system at each requested t.
template <std::floating_point Real>
auto system_provider(const Potential<Real>& v0, int n_max, const QuadConfig& cfg = {}) {
  auto systems = std::make_shared<std::map<Real, SkewSystem<Real>>>();
  return [v0, n_max, cfg, systems](int n, Real t) {
    auto it = systems->find(t);
    if (it == systems->end()) it = systems->emplace(t, SkewSystem<Real>(v0.with_t(t), n_max, cfg)).first;
    return toda_state(it->second, n);
  };
}

template <std::floating_point Real>
std::vector<NamedResidual<Real>> ode_residuals(const Potential<Real>& v0, int n, Real t, Real h,
                                               const QuadConfig& cfg = {}) {
  return ode_residuals(system_provider(v0, n + 2, cfg), n, t, h);
}

template <std::floating_point Real>
std::vector<NamedResidual<Real>> constraint_checks(const SkewSystem<Real>& sys, int n) {
  using C = Complex<Real>;
  const auto s0 = toda_state(sys, n);
  const auto s1 = toda_state(sys, n + 1);
  const Real t = sys.potential().t();
  std::vector<NamedResidual<Real>> out;
  auto push = [&](std::string name, Real v) { out.push_back({std::move(name), n, t, v}); };

  std::vector<C> terms;
  for (std::size_t j = 0; j < s0.a1_2i.size(); ++j) terms.push_back(s0.a1_2i[j] * s1.a1_i2[j]);
  push("sum_constraint", detail::balance(C(2), terms));
  for (std::size_t i = 0; i < s0.a1_2i.size(); ++i) {
    const std::string tag = "[" + std::to_string(i + 3) + "]";
    push("deduce1" + tag, detail::balance(s0.a1_i1[i], {s0.a2_21 * s1.a1_i2[i]}));
    push("deduce2" + tag, detail::balance(s1.a1_1i[i], {s1.a2_12 * s0.a1_2i[i]}));
  }
  push("product", detail::balance(C(1), {s0.a2_21 * s1.a2_12}));
  return out;
}

template <std::floating_point Real>
std::vector<NamedResidual<Real>> constraint_checks(const Potential<Real>& v0, int n, Real t,
                                                   const QuadConfig& cfg = {}) {
  const SkewSystem<Real> sys(v0.with_t(t), n + 1, cfg);
  return constraint_checks(sys, n);
}

/// t-derivative of sum_j a1_2j(n) a1_j2(n+1), relative to the size of its terms.
template <std::floating_point Real, class Provider>
  requires std::invocable<Provider&, int, Real>
NamedResidual<Real> constraint_derivative(Provider&& provider, int n, Real t, Real h) {
  using C = Complex<Real>;
  using S = TodaState<Real>;
  detail::StateSamples<Real> st(std::function<S(int, Real)>(std::forward<Provider>(provider)), t, h);
  auto sum = [&](int k) {
    const S& a = st.at(n, k);
    const S& b = st.at(n + 1, k);
    C acc = 0;
    for (std::size_t j = 0; j < a.a1_2i.size(); ++j) acc += a.a1_2i[j] * b.a1_i2[j];
    return acc;
  };
  const C d1 = (sum(1) - sum(-1)) / (Real(2) * h);
  const C d2 = (sum(2) - sum(-2)) / (Real(4) * h);
  const C d = (Real(4) * d1 - d2) / Real(3);
  // Scale: the derivative of the largest single term.
  Real scale = Real(kResidualScaleFloor);
  const S& a = st.at(n);
  const S& b = st.at(n + 1);
  for (std::size_t j = 0; j < a.a1_2i.size(); ++j) scale = std::max(scale, std::abs(a.a1_2i[j] * b.a1_i2[j]));
  return {"dsum_constraint", n, t, std::abs(d) / scale};
}

template <std::floating_point Real>
NamedResidual<Real> constraint_derivative(const Potential<Real>& v0, int n, Real t, Real h,
                                          const QuadConfig& cfg = {}) {
  return constraint_derivative(system_provider(v0, n + 1, cfg), n, t, h);
}

/// Closed form for V_0 = z^2 / 2.
template <std::floating_point Real>
TodaState<Real> exact_d2_state(int n, Real t) {
  using C = Complex<Real>;
  using detail::reciprocal_gamma;
  if (n < 0) throw OutOfRange("exact_d2_state needs n >= 0");
  const Real pi = std::numbers::pi_v<Real>;
  const Real sqrt2 = std::numbers::sqrt2_v<Real>;
  const Real sqrtpi = std::sqrt(pi);
  const Real eh = std::exp(t * t / 2);
  const Real rn = Real(n);
  const C tpi = two_pi_i<Real>();
  TodaState<Real> s;
  s.n = n;
  s.t = t;
  s.a1_22 = 2 * rn * t;
  s.a2_22 = rn * (2 * rn - 1) * (t * t - Real(0.5)) + rn;
  const Real fact_n = std::tgamma(rn + 1);
  s.a1_2i = {C(-eh * fact_n / sqrt2)};
  s.a1_i2 = {C(-2 * sqrt2 / eh * reciprocal_gamma(rn))};
  s.a2_i2 = {C(-2 * sqrt2 * (2 * rn - 1) * t / eh * reciprocal_gamma(rn))};
  s.b = {C(-t * eh * fact_n / sqrt2)};
  s.a2_12 = C(0, -sqrtpi * std::pow(Real(4), rn) / (eh * eh) * reciprocal_gamma(2 * rn));
  s.a2_21 = -C(std::tgamma(2 * rn + 2) * sqrtpi * eh * eh / std::pow(Real(2), 2 * rn + 1)) / tpi;
  s.a1_i1 = {C(eh * 2 * sqrt2 * std::tgamma(rn + Real(1.5))) / tpi};
  s.a1_1i = {tpi / (eh * sqrt2) * reciprocal_gamma(rn + Real(0.5))};
  return s;
}

}  // namespace skewrh
