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
 * @brief Weighted integrals and Cauchy transforms on the contours
 * C_k = w^k [0, inf), Gamma_k = C_0 - C_k, the real line and the unit circle.
 *
 * Every unbounded contour is a signed sum of outgoing rays from the origin:
 * R = C_0 - C_{D/2} and Gamma_k = C_0 - C_k, so one truncated Gauss-Legendre
 * rule per ray and weight covers all of them. Rules are refined by panel
 * doubling until the monomial moments up to a requested degree settle.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"
#include "skewrh/polynomial.hpp"

namespace skewrh {

struct QuadConfig {
  int nodes_per_panel = 32;
  double rel_tol = 1e-12;
  double truncation_drop = 1e-18;
  /// Maximum number of panel doublings per ray.
  int max_depth = 10;

  void validate() const {
    if (nodes_per_panel < 2) throw ConfigInvalid("nodes_per_panel must be >= 2");
    if (!(rel_tol > 0)) throw ConfigInvalid("rel_tol must be positive");
    if (!(truncation_drop > 0 && truncation_drop < 1))
      throw ConfigInvalid("truncation_drop must lie in (0, 1)");
    if (max_depth < 1) throw ConfigInvalid("max_depth must be >= 1");
  }
};

/// Exponential weight attached to an integrand: e^{-V} or e^{-2V}.
enum class Weight { exp_minus_v = 1, exp_minus_2v = 2 };

inline int weight_factor(Weight w) { return static_cast<int>(w); }

struct Contour {
  enum class Kind { real_line, gamma, ray, circle };
  Kind kind = Kind::real_line;
  int index = 0;

  static Contour real_line() { return {Kind::real_line, 0}; }
  static Contour gamma(int k) { return {Kind::gamma, k}; }
  static Contour ray(int k) { return {Kind::ray, k}; }
  static Contour circle() { return {Kind::circle, 0}; }

  std::string name() const {
    switch (kind) {
      case Kind::real_line: return "R";
      case Kind::gamma: return "Gamma_" + std::to_string(index);
      case Kind::ray: return "C_" + std::to_string(index);
      case Kind::circle: return "T";
    }
    return "?";
  }
};

/// Signed ray decomposition of a contour; ray k is e^{2 pi i k/D}[0, inf) outgoing.
inline std::vector<std::pair<int, int>> ray_decomposition(const Contour& c, int d) {
  switch (c.kind) {
    case Contour::Kind::real_line: return {{0, 1}, {d / 2, -1}};
    case Contour::Kind::gamma:
      if (c.index < 1 || c.index > d - 1)
        throw OutOfRange("Gamma index " + std::to_string(c.index) + " outside 1..D-1");
      return {{0, 1}, {c.index, -1}};
    case Contour::Kind::ray:
      if (c.index < 0 || c.index > d - 1)
        throw OutOfRange("ray index " + std::to_string(c.index) + " outside 0..D-1");
      return {{c.index, 1}};
    case Contour::Kind::circle: break;
  }
  throw OutOfRange("the circle is not a union of rays");
}

/// D-th root of unity to the power k.
template <std::floating_point Real>
Complex<Real> root_of_unity(int k, int d) {
  const Real a = 2 * kPi<Real> * Real(k) / Real(d);
  // Exact values on the axes keep R and the imaginary axis bit-clean.
  const int m = ((4 * k) % (4 * d) + 4 * d) % (4 * d);
  if (m % d == 0) {
    switch (m / d) {
      case 0: return {1, 0};
      case 1: return {0, 1};
      case 2: return {-1, 0};
      case 3: return {0, -1};
    }
  }
  return {std::cos(a), std::sin(a)};
}

template <std::floating_point Real>
struct GaussLegendre {
  std::vector<Real> nodes;    // on [-1, 1], ascending
  std::vector<Real> weights;
};

/// n-point Gauss-Legendre rule by Newton iteration on P_n; cached per (type, n).
template <std::floating_point Real>
const GaussLegendre<Real>& gauss_legendre(int n) {
  static std::mutex mu;
  static std::map<int, GaussLegendre<Real>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendre<Real> rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int i = 0; i < (n + 1) / 2; ++i) {
    Real x = std::cos(kPi<Real> * (Real(i) + Real(0.75)) / (Real(n) + Real(0.5)));
    Real dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      Real p0 = 1, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = Real(n) * (x * p1 - p0) / (x * x - 1);
      const Real dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 4 * eps) break;
    }
    // Re-evaluate the derivative at the converged node for the weight.
    Real p0 = 1, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = Real(n) * (x * p1 - p0) / (x * x - 1);
    const Real w = 2 / ((1 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0;
  return cache.emplace(n, std::move(rule)).first->second;
}

/**
 * Length L such that s^degree e^{-f Re V(w^k s)} has dropped below
 * drop * (its running peak) for all s >= L. Uses the lower bound
 * Re V(w^k s) >= gamma s^D - sum_{l<D} |v_l| s^l.
 */
template <std::floating_point Real>
Real truncation_length(const Potential<Real>& v, int factor, int degree, Real drop) {
  const int d = v.degree();
  auto bound = [&](Real s) {
    Real lower = 0;
    for (int l = 0; l < d; ++l) lower += std::abs(v.coeff(static_cast<std::size_t>(l))) * std::pow(s, l);
    const Real exponent = -Real(factor) * (v.gamma() * std::pow(s, d) - lower);
    return Real(degree) * std::log(s) + exponent;
  };
  const Real log_drop = std::log(drop);
  const Real step = Real(1) / 64;
  Real peak = bound(step);
  Real prev = peak;
  for (Real s = 2 * step; s < Real(1e4); s += step) {
    const Real u = bound(s);
    peak = std::max(peak, u);
    if (u < prev && u <= peak + log_drop && s >= 1) return s;
    prev = u;
  }
  throw NoConvergence("no truncation length found below 1e4");
}

/// Quadrature rule on one outgoing ray with an exponential weight baked in.
template <std::floating_point Real>
struct RayRule {
  int ray = 0;
  int factor = 1;
  Real length = 0;
  int panels = 0;
  Complex<Real> direction;
  std::vector<Complex<Real>> x;    // nodes
  std::vector<Complex<Real>> dx;   // GL weight times direction
  std::vector<Complex<Real>> w;    // dx * e^{-f V(x)}

  Real panel_length() const { return length / Real(panels); }

  /// Distance from z to the truncated segment.
  Real distance(Complex<Real> z) const {
    const Complex<Real> local = z * std::conj(direction);
    if (local.real() < 0) return std::abs(z);
    if (local.real() > length) return std::abs(z - length * direction);
    return std::abs(local.imag());
  }
};

template <std::floating_point Real>
RayRule<Real> make_ray_rule(const Potential<Real>& v, int ray, int factor, Real length, int panels,
                            int nodes_per_panel) {
  const auto& gl = gauss_legendre<Real>(nodes_per_panel);
  RayRule<Real> r;
  r.ray = ray;
  r.factor = factor;
  r.length = length;
  r.panels = panels;
  r.direction = root_of_unity<Real>(ray, v.degree());
  const Real h = length / Real(panels);
  const std::size_t total = static_cast<std::size_t>(panels) * gl.nodes.size();
  r.x.reserve(total);
  r.dx.reserve(total);
  r.w.reserve(total);
  for (int p = 0; p < panels; ++p) {
    const Real mid = (Real(p) + Real(0.5)) * h;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const Real s = mid + Real(0.5) * h * gl.nodes[i];
      const Complex<Real> xi = s * r.direction;
      const Complex<Real> dxi = Real(0.5) * h * gl.weights[i] * r.direction;
      r.x.push_back(xi);
      r.dx.push_back(dxi);
      r.w.push_back(dxi * std::exp(-Real(factor) * v(xi)));
    }
  }
  return r;
}

/**
 * Builds a ray rule whose moments of x^k, k <= degree, are stable under one
 * more panel doubling to rel_tol times the absolute moment.
 */
template <std::floating_point Real>
RayRule<Real> adaptive_ray_rule(const Potential<Real>& v, int ray, Weight weight, int degree,
                                const QuadConfig& cfg) {
  cfg.validate();
  const int factor = weight_factor(weight);
  const Real length = truncation_length<Real>(v, factor, degree, Real(cfg.truncation_drop));
  auto moments = [&](const RayRule<Real>& r, std::vector<Complex<Real>>& m, std::vector<Real>& a) {
    m.assign(static_cast<std::size_t>(degree) + 1, Complex<Real>(0));
    a.assign(static_cast<std::size_t>(degree) + 1, Real(0));
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      Complex<Real> xp = r.w[i];
      Real ap = std::abs(r.w[i]);
      const Real ax = std::abs(r.x[i]);
      for (int k = 0; k <= degree; ++k) {
        m[static_cast<std::size_t>(k)] += xp;
        a[static_cast<std::size_t>(k)] += ap;
        xp *= r.x[i];
        ap *= ax;
      }
    }
  };
  int panels = 2;
  RayRule<Real> coarse = make_ray_rule<Real>(v, ray, factor, length, panels, cfg.nodes_per_panel);
  std::vector<Complex<Real>> mc, mf;
  std::vector<Real> ac, af;
  moments(coarse, mc, ac);
  for (int depth = 0; depth < cfg.max_depth; ++depth) {
    panels *= 2;
    RayRule<Real> fine = make_ray_rule<Real>(v, ray, factor, length, panels, cfg.nodes_per_panel);
    moments(fine, mf, af);
    bool ok = true;
    for (int k = 0; k <= degree && ok; ++k) {
      const auto kk = static_cast<std::size_t>(k);
      if (!(std::abs(mf[kk] - mc[kk]) <= Real(cfg.rel_tol) * af[kk])) ok = false;
    }
    if (ok) return coarse;
    coarse = std::move(fine);
    mc.swap(mf);
  }
  throw NoConvergence("ray " + std::to_string(ray) + " rule did not settle after " +
                      std::to_string(cfg.max_depth) + " doublings");
}

/// Distance below which a point counts as lying on a contour.
inline constexpr double kOnContour = 1e-8;

/**
 * Immutable set of ray rules for one potential, valid for polynomial
 * integrands up to the given degree. Safe to share between threads.
 */
template <std::floating_point Real>
class Quadrature {
 public:
  using C = Complex<Real>;

  Quadrature(Potential<Real> v, int max_degree, QuadConfig cfg = {})
      : v_(std::move(v)), degree_(max_degree), cfg_(cfg) {
    cfg_.validate();
    if (max_degree < 0) throw OutOfRange("negative quadrature degree");
    const int d = v_.degree();
    for (int k = 0; k < d; ++k) {
      single_.push_back(adaptive_ray_rule<Real>(v_, k, Weight::exp_minus_v, degree_, cfg_));
      doubled_.push_back(adaptive_ray_rule<Real>(v_, k, Weight::exp_minus_2v, degree_, cfg_));
    }
  }

  const Potential<Real>& potential() const { return v_; }
  const QuadConfig& config() const { return cfg_; }
  int max_degree() const { return degree_; }

  const RayRule<Real>& rule(int ray, Weight w) const {
    const auto idx = static_cast<std::size_t>(ray);
    return w == Weight::exp_minus_v ? single_.at(idx) : doubled_.at(idx);
  }

  /// Integral of p(x) w(x) dx over a ray-based contour.
  C integrate(const Poly<Real>& p, const Contour& c, Weight w) const {
    require_degree(p.degree());
    C total = 0;
    for (auto [ray, sign] : ray_decomposition(c, v_.degree())) {
      const auto& r = rule(ray, w);
      C s = 0;
      for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * p(r.x[i]);
      total += Real(sign) * s;
    }
    return total;
  }

  /// Integral of |p(x) w(x)| |dx|, the scale for cancellation checks.
  Real absolute_integral(const Poly<Real>& p, const Contour& c, Weight w) const {
    require_degree(p.degree());
    Real total = 0;
    for (auto [ray, sign] : ray_decomposition(c, v_.degree())) {
      (void)sign;
      const auto& r = rule(ray, w);
      for (std::size_t i = 0; i < r.x.size(); ++i) total += std::abs(r.w[i] * p(r.x[i]));
    }
    return total;
  }

  /// int_{Gamma_k} p w
  C gamma_integral(const Poly<Real>& p, int k, Weight w) const {
    return integrate(p, Contour::gamma(k), w);
  }

  /// int_R x^j p(x) e^{-2V(x)} dx
  Real real_moment(const Poly<Real>& p, int j) const {
    return integrate(Poly<Real>::monomial(static_cast<std::size_t>(j)) * p, Contour::real_line(),
                     Weight::exp_minus_2v)
        .real();
  }

  /// Complex version of real_moment for complex-coefficient integrands.
  C real_integral(const Poly<Real>& p, Weight w = Weight::exp_minus_2v) const {
    return integrate(p, Contour::real_line(), w);
  }

  /// Distance from z to the (truncated) contour.
  Real distance(const Contour& c, C z) const {
    if (c.kind == Contour::Kind::circle) return std::abs(std::abs(z) - Real(1));
    Real dist = std::numeric_limits<Real>::infinity();
    for (auto [ray, sign] : ray_decomposition(c, v_.degree())) {
      (void)sign;
      dist = std::min(dist, single_.at(static_cast<std::size_t>(ray)).distance(z));
    }
    return dist;
  }

  /**
   * (1/2 pi i) int_c p(x) w(x) / (x - z) dx. Near a ray the entire part
   * (g(x) - g(z)) / (x - z) is integrated and g(z) log((b - z)/(a - z)) added.
   */
  C cauchy(const Poly<Real>& p, const Contour& c, Weight w, C z) const {
    require_degree(p.degree());
    if (distance(c, z) < Real(kOnContour))
      throw PointOnContour("z is within 1e-8 of " + c.name());
    C total = 0;
    for (auto [ray, sign] : ray_decomposition(c, v_.degree())) {
      total += Real(sign) * ray_cauchy(p, rule(ray, w), z);
    }
    return total / two_pi_i<Real>();
  }

 private:
  void require_degree(int deg) const {
    if (deg > degree_)
      throw OutOfRange("integrand degree " + std::to_string(deg) + " exceeds rule degree " +
                       std::to_string(degree_));
  }

  C ray_cauchy(const Poly<Real>& p, const RayRule<Real>& r, C z) const {
    if (r.distance(z) >= r.panel_length()) {
      C s = 0;
      for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * p(r.x[i]) / (r.x[i] - z);
      return s;
    }
    const C gz = p(z) * std::exp(-Real(r.factor) * v_(z));
    C s = 0;
    for (std::size_t i = 0; i < r.x.size(); ++i) {
      const C g = r.w[i] / r.dx[i] * p(r.x[i]);
      s += r.dx[i] * ((g - gz) / (r.x[i] - z));
    }
    const C a = C(0);
    const C b = r.length * r.direction;
    return s + gz * std::log((b - z) / (a - z));
  }

  Potential<Real> v_;
  int degree_;
  QuadConfig cfg_;
  std::vector<RayRule<Real>> single_;
  std::vector<RayRule<Real>> doubled_;
};

/// -(1/2 pi i) oint_T p(z) z^{-m} dz, i.e. minus the coefficient of z^{m-1}.
template <std::floating_point Real>
Complex<Real> circle_moment(const Poly<Real>& p, int m) {
  if (m < 1) throw OutOfRange("circle moment needs m >= 1");
  return -p[static_cast<std::size_t>(m - 1)];
}

/// (1/2 pi i) oint_T p(x) x^{-m} / (x - z) dx by coefficient extraction.
template <std::floating_point Real>
Complex<Real> circle_cauchy(const Poly<Real>& p, int m, Complex<Real> z) {
  const Real r = std::abs(z);
  if (std::abs(r - Real(1)) < Real(kOnContour)) throw PointOnContour("z is within 1e-8 of T");
  Complex<Real> s = 0;
  const auto& c = p.coeffs();
  if (r > 1) {
    // -sum_{k<m} p_k z^{k-m}, Horner in 1/z
    const Complex<Real> iz = Real(1) / z;
    for (int k = 0; k < m; ++k) s = s * iz - p[static_cast<std::size_t>(k)];
    return s * iz;
  }
  for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(std::max(m, 0));) s = s * z + c[k];
  return s;
}

/// Degree needed to integrate p with an extra monomial factor x^j.
template <std::floating_point Real>
int integrand_degree(const Poly<Real>& p, int j = 0) {
  return std::max(p.degree(), 0) + j;
}

template <std::floating_point Real>
Complex<Real> gamma_integral(const Poly<Real>& p, int k, const Potential<Real>& v, Weight w,
                             const QuadConfig& cfg = {}) {
  return Quadrature<Real>(v, integrand_degree(p), cfg).gamma_integral(p, k, w);
}

template <std::floating_point Real>
Real real_moment(const Poly<Real>& p, int j, const Potential<Real>& v, const QuadConfig& cfg = {}) {
  return Quadrature<Real>(v, integrand_degree(p, j), cfg).real_moment(p, j);
}

/// Cauchy transform on a ray contour, or on T with the weight x^{-m} (m = circle_power).
template <std::floating_point Real>
Complex<Real> cauchy_transform(const Poly<Real>& p, const Contour& c, Weight w, Complex<Real> z,
                               const Potential<Real>& v, const QuadConfig& cfg = {}) {
  return Quadrature<Real>(v, integrand_degree(p), cfg).cauchy(p, c, w, z);
}

}  // namespace skewrh
