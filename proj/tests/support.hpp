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


#pragma once

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "skewrh/skewrh.hpp"

namespace testing_support {

using skewrh::Complex;
using skewrh::Poly;

/// max_k |p_k - q_k| / max_k |q_k|
template <class Real>
double coeff_gap(const Poly<Real>& p, const oracle::Coeffs& q) {
  const std::size_t n = std::max(p.size(), q.size());
  long double worst = 0, scale = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const oracle::CL a(static_cast<long double>(p[k].real()), static_cast<long double>(p[k].imag()));
    const oracle::CL b = k < q.size() ? q[k] : oracle::CL(0);
    worst = std::max(worst, std::abs(a - b));
    scale = std::max(scale, std::abs(b));
  }
  return static_cast<double>(worst / scale);
}

template <class Real>
Poly<Real> to_poly(const oracle::Coeffs& q) {
  std::vector<Complex<Real>> c;
  for (const auto& v : q) c.emplace_back(static_cast<Real>(v.real()), static_cast<Real>(v.imag()));
  return Poly<Real>(std::move(c));
}

/// Random monic real polynomial of the given degree, coefficients in [-1, 1].
template <class Real>
Poly<Real> random_monic(std::mt19937_64& rng, int degree) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Complex<Real>> c;
  for (int k = 0; k < degree; ++k) c.emplace_back(static_cast<Real>(u(rng)));
  c.emplace_back(1);
  return Poly<Real>(std::move(c));
}

inline skewrh::Potential<double> gaussian(double t = 0) { return skewrh::Potential<double>({0, 0, 0.5}, t); }
inline skewrh::Potential<double> quartic(double t = 0) { return skewrh::Potential<double>({0, 0, 0, 0, 1}, t); }

}  // namespace testing_support
