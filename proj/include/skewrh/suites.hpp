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
 * @brief Verification suites behind `skewrh run`. Each suite turns a
 * RunConfig into result tables with a tolerance and pass flag per row.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "skewrh/errors.hpp"
#include "skewrh/io.hpp"
#include "skewrh/kernel.hpp"
#include "skewrh/rhp.hpp"
#include "skewrh/skew.hpp"
#include "skewrh/toda.hpp"

namespace skewrh {

/// Worker count: SKEWRH_THREADS if set, else the hardware concurrency.
inline int resolve_threads(const char* env = std::getenv("SKEWRH_THREADS")) {
  const int hw = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) throw ConfigInvalid("SKEWRH_THREADS must be a positive integer");
  return static_cast<int>(v);
}

/// out[i] = f(i) for i < count on at most `threads` workers; order is kept.
template <class F>
auto parallel_map(int threads, int count, F&& f) -> std::vector<decltype(f(0))> {
  using R = decltype(f(0));
  std::vector<std::optional<R>> slot(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> err(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i; (i = next.fetch_add(1)) < count;) {
      try {
        slot[i].emplace(f(i));
      } catch (...) {
        err[i] = std::current_exception();
      }
    }
  };
  const int n = std::min(threads, count);
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < n; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : err)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(slot.size());
  for (auto& s : slot) out.push_back(std::move(*s));
  return out;
}

struct SuiteReport {
  Suite suite = Suite::polys;
  std::vector<Table> tables;
  std::vector<std::string> failures;
  bool passed() const { return failures.empty(); }
};

namespace detail {

template <std::floating_point Real>
std::complex<double> to_cd(Complex<Real> z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

/// Adds a failure line for every table whose pass column has false entries.
inline void collect_failures(SuiteReport& r) {
  for (const auto& t : r.tables) {
    auto it = std::find(t.columns.begin(), t.columns.end(), "pass");
    if (it == t.columns.end()) continue;
    const std::size_t c = static_cast<std::size_t>(it - t.columns.begin());
    int bad = 0;
    for (const auto& row : t.rows)
      if (!std::get<bool>(row[c])) ++bad;
    if (bad) r.failures.push_back(t.name + ": " + std::to_string(bad) + " of " + std::to_string(t.rows.size()) +
                                  " rows above tolerance");
  }
}

inline bool le(double value, double tol) { return value <= tol; }

template <std::floating_point Real>
Potential<Real> potential_at(const RunConfig& cfg, double t) {
  std::vector<Real> c(cfg.coeffs.begin(), cfg.coeffs.end());
  return Potential<Real>(std::move(c), Real(t));
}

inline bool is_half_gaussian(const RunConfig& cfg) {
  return cfg.coeffs.size() == 3 && cfg.coeffs[0] == 0 && cfg.coeffs[1] == 0 && cfg.coeffs[2] == 0.5;
}

template <std::floating_point Real>
std::vector<SkewSystem<Real>> systems_per_t(const RunConfig& cfg, int n_max, int threads) {
  return parallel_map(threads, static_cast<int>(cfg.t.size()), [&](int i) {
    return SkewSystem<Real>(potential_at<Real>(cfg, cfg.t[i]), n_max, cfg.quad);
  });
}

// ---------------------------------------------------------------------------
// polys

template <std::floating_point Real>
void run_polys(const RunConfig& cfg, int threads, SuiteReport& r) {
  const auto systems = systems_per_t<Real>(cfg, cfg.n_max, threads);
  const auto& tol = cfg.tol;
  Table coeffs{"polys_coefficients", {"t", "family", "index", "j", "power", "coeff"}, {}};
  Table norms{"polys_norms", {"t", "k", "h", "positive", "pass"}, {}};
  Table checks{"polys_checks", {"t", "check", "residual", "tol", "pass"}, {}};
  Table match{"polys_odd_match", {"t", "n", "gap", "tol", "pass"}, {}};
  for (std::size_t ti = 0; ti < systems.size(); ++ti) {
    const auto& sys = systems[ti];
    const double t = cfg.t[ti];
    const int d = sys.degree();
    auto put = [&](const std::string& fam, int index, int j, const Poly<Real>& p) {
      for (std::size_t k = 0; k < p.coeffs().size(); ++k)
        coeffs.add({t, fam, std::int64_t(index), std::int64_t(j), std::int64_t(k), to_cd(p.coeffs()[k])});
    };
    for (int m = 0; m <= sys.basis().size(); ++m) put("H", m, 0, sys.basis()[m]);
    for (int m = 0; m < sys.psi_count(); ++m) put("Psi", m, 0, sys.psi(m));
    for (int m = 0; m < sys.psi_count(); ++m) put("P", m, 0, sys.p(m));
    for (int n = 0; n <= sys.n_max(); ++n)
      for (int j = 1; j <= d; ++j) put("R", n, j, sys.r(n, j));
    for (int k = 0; k <= sys.n_max(); ++k) {
      const bool pos = sys.h(k) > 0;
      norms.add({t, std::int64_t(k), double(sys.h(k)), pos, pos});
    }
    auto check = [&](const std::string& name, Real v, double tolerance) {
      checks.add({t, name, double(v), tolerance, le(double(v), tolerance)});
    };
    check("gram", gram_residual(sys, sys.n_max() + 1), tol.gram);
    check("dual_map", dual_map_residual(sys), tol.dual_map);
    Real t2 = 0;
    for (int n = 0; n <= sys.n_max(); ++n) t2 = std::max(t2, type_ii_residual(sys, n));
    check("type_ii", t2, tol.structure);
    check("intriguing", build_ladder(sys, sys.n_max() - 1).intriguing, tol.structure);
    // Holds for an even quadratic; a linear term shifts H but not the normalization of P_{2n+1}.
    if (d == 2 && sys.potential().coeff(1) == 0)
      for (int n = 0; n <= sys.n_max(); ++n) {
        const auto& h = sys.basis()[2 * n + 1];
        const double gap = double(relative_residual(sys.p(2 * n + 1) - h, h));
        match.add({t, std::int64_t(n), gap, tol.structure, le(gap, tol.structure)});
      }
  }
  r.tables.push_back(std::move(coeffs));
  r.tables.push_back(std::move(norms));
  r.tables.push_back(std::move(checks));
  if (!match.empty()) r.tables.push_back(std::move(match));
}

// ---------------------------------------------------------------------------
// kernel

template <std::floating_point Real>
void run_kernel(const RunConfig& cfg, int threads, SuiteReport& r) {
  const auto systems = systems_per_t<Real>(cfg, cfg.n_max, threads);
  const auto& tol = cfg.tol;
  const auto grid = uniform_grid<Real>(Real(cfg.grid.lo), Real(cfg.grid.hi), cfg.grid.points);
  struct Job {
    std::size_t ti;
    int n;
  };
  std::vector<Job> jobs;
  for (std::size_t ti = 0; ti < systems.size(); ++ti)
    for (int n = 1; n <= cfg.n_max; ++n) jobs.push_back({ti, n});
  struct Out {
    Table density, gap, mass;
  };
  auto results = parallel_map(threads, static_cast<int>(jobs.size()), [&](int i) {
    const auto [ti, n] = jobs[i];
    const double t = cfg.t[ti];
    const KernelEvaluator<Real> k(systems[ti], n);
    Out o{{"", {"t", "n", "x", "density", "floor", "pass"}, {}},
          {"", {"t", "n", "x", "y", "direct", "cd", "rel_gap", "tol", "pass"}, {}},
          {"", {"t", "n", "mass", "gap", "tol", "pass"}, {}}};
    for (Real x : grid) {
      const double dens = double(k.density(x));
      o.density.add({t, std::int64_t(n), double(x), dens, tol.density_floor, dens >= tol.density_floor});
    }
    for (Real x : grid)
      for (Real y : grid) {
        const auto e = kernel_eval(k, x, y);
        const double tl = x == y ? tol.cd_diag : tol.cd_offdiag;
        o.gap.add({t, std::int64_t(n), double(x), double(y), double(e.direct), double(e.cd), double(e.rel_gap), tl,
                   le(double(e.rel_gap), tl)});
      }
    const double mass = double(k.density_mass());
    const double g = std::abs(mass - n);
    o.mass.add({t, std::int64_t(n), mass, g, tol.density_mass, le(g, tol.density_mass)});
    return o;
  });
  Table density{"kernel_density", {"t", "n", "x", "density", "floor", "pass"}, {}};
  Table gap{"kernel_cd_gap", {"t", "n", "x", "y", "direct", "cd", "rel_gap", "tol", "pass"}, {}};
  Table mass{"kernel_mass", {"t", "n", "mass", "gap", "tol", "pass"}, {}};
  for (auto& o : results) {
    for (auto& row : o.density.rows) density.add(std::move(row));
    for (auto& row : o.gap.rows) gap.add(std::move(row));
    for (auto& row : o.mass.rows) mass.add(std::move(row));
  }
  r.tables.push_back(std::move(density));
  r.tables.push_back(std::move(gap));
  r.tables.push_back(std::move(mass));
}

// ---------------------------------------------------------------------------
// rhp

template <std::floating_point Real>
void run_rhp(const RunConfig& cfg, int threads, SuiteReport& r) {
  const auto systems = systems_per_t<Real>(cfg, cfg.n_max, threads);
  const auto& tol = cfg.tol;
  const int d = cfg.degree();
  const RhpKind kinds[] = {RhpKind::even_a, RhpKind::even_ahat, RhpKind::odd_b, RhpKind::odd_bhat};
  struct Job {
    std::size_t ti;
    int n;
  };
  std::vector<Job> jobs;
  for (std::size_t ti = 0; ti < systems.size(); ++ti)
    for (int n = 1; n <= cfg.n_max; ++n) jobs.push_back({ti, n});
  const auto off = off_contour_samples<Real>(d, 5);
  using Rows = std::vector<std::vector<Cell>>;
  struct Out {
    Rows jump, det, sym, lax;
  };
  auto results = parallel_map(threads, static_cast<int>(jobs.size()), [&](int i) {
    const auto [ti, n] = jobs[i];
    const auto& sys = systems[ti];
    const double t = cfg.t[ti];
    Out o;
    for (RhpKind k : kinds) {
      const std::string name = to_string(k);
      for (auto x : contour_samples<Real>(d, is_odd(k))) {
        const double v = double(jump_residual(sys, k, n, x));
        o.jump.push_back({t, name, std::int64_t(n), to_cd(x), v, tol.jump, le(v, tol.jump)});
      }
      for (auto z : off) {
        const double dv = double(det_residual(assemble(sys, k, n, z)));
        o.det.push_back({t, name, std::int64_t(n), to_cd(z), dv, tol.det, le(dv, tol.det)});
        const double sv = double(symmetry_residual(sys, k, n, z));
        o.sym.push_back({t, name, std::int64_t(n), to_cd(z), sv, tol.symmetry, le(sv, tol.symmetry)});
      }
    }
    if (n < sys.n_max())
      for (std::size_t s = 0; s < 3; ++s) {
        const double v = double(lax_residual(sys, n, off[s]));
        o.lax.push_back({t, std::int64_t(n), to_cd(off[s]), v, tol.lax, le(v, tol.lax)});
      }
    return o;
  });
  Table jump{"rhp_jump", {"t", "kind", "n", "x", "residual", "tol", "pass"}, {}};
  Table det{"rhp_det", {"t", "kind", "n", "z", "residual", "tol", "pass"}, {}};
  Table sym{"rhp_symmetry", {"t", "kind", "n", "z", "residual", "tol", "pass"}, {}};
  Table lax{"rhp_lax", {"t", "n", "z", "residual", "tol", "pass"}, {}};
  for (auto& o : results) {
    for (auto& row : o.jump) jump.add(std::move(row));
    for (auto& row : o.det) det.add(std::move(row));
    for (auto& row : o.sym) sym.add(std::move(row));
    for (auto& row : o.lax) lax.add(std::move(row));
  }
  r.tables.push_back(std::move(jump));
  r.tables.push_back(std::move(det));
  r.tables.push_back(std::move(sym));
  if (!lax.empty()) r.tables.push_back(std::move(lax));
}

// ---------------------------------------------------------------------------
// toda

template <std::floating_point Real>
void run_toda(const RunConfig& cfg, int threads, SuiteReport& r) {
  const auto& tol = cfg.tol;
  const int d = cfg.degree();
  const double ode_tol = d == 2 ? tol.toda_ode_d2 : tol.toda_ode;
  const Real h = Real(tol.toda_step);
  const bool exact = is_half_gaussian(cfg);
  std::vector<std::pair<std::size_t, int>> jobs;
  for (std::size_t ti = 0; ti < cfg.t.size(); ++ti)
    for (int n = 0; n <= cfg.n_max; ++n) jobs.push_back({ti, n});
  using Rows = std::vector<std::vector<Cell>>;
  struct Out {
    Rows ode, constraint, exact_state, exact_ode;
  };
  auto results = parallel_map(threads, static_cast<int>(jobs.size()), [&](int i) {
    const auto [ti, n] = jobs[i];
    const double t = cfg.t[ti];
    const Real rt = Real(t);
    const auto v0 = potential_at<Real>(cfg, 0.0);
    Out o;
    auto provider = system_provider(v0, n + 2, cfg.quad);
    for (const auto& e : ode_residuals(provider, n, rt, h))
      o.ode.push_back({t, std::int64_t(n), e.name, double(e.value), ode_tol, le(double(e.value), ode_tol)});
    const SkewSystem<Real> sys(v0.with_t(rt), n + 1, cfg.quad);
    for (const auto& e : constraint_checks(sys, n))
      o.constraint.push_back(
          {t, std::int64_t(n), e.name, double(e.value), tol.toda_constraint, le(double(e.value), tol.toda_constraint)});
    const auto dc = constraint_derivative(provider, n, rt, h);
    o.constraint.push_back({t, std::int64_t(n), dc.name, double(dc.value), ode_tol, le(double(dc.value), ode_tol)});
    if (exact) {
      const auto a = toda_state(sys, n);
      const auto b = exact_d2_state<Real>(n, rt);
      auto cmp = [&](const std::string& field, Complex<Real> got, Complex<Real> want) {
        const double g = double(std::abs(got - want) / std::max(Real(1), std::abs(want)));
        o.exact_state.push_back(
            {t, std::int64_t(n), field, to_cd(got), to_cd(want), g, tol.toda_exact, le(g, tol.toda_exact)});
      };
      cmp("a1_22", a.a1_22, b.a1_22);
      cmp("a2_22", a.a2_22, b.a2_22);
      cmp("a1_23", a.a1_2i[0], b.a1_2i[0]);
      cmp("a1_32", a.a1_i2[0], b.a1_i2[0]);
      cmp("a2_32", a.a2_i2[0], b.a2_i2[0]);
      cmp("b_3", a.b[0], b.b[0]);
      cmp("a2_12", a.a2_12, b.a2_12);
      cmp("a2_21", a.a2_21, b.a2_21);
      cmp("a1_31", a.a1_i1[0], b.a1_i1[0]);
      cmp("a1_13", a.a1_1i[0], b.a1_1i[0]);
      auto closed = [](int m, Real s) { return exact_d2_state<Real>(m, s); };
      const Real he = Real(1e-5);
      for (const auto& e : ode_residuals(closed, n, rt, he))
        o.exact_ode.push_back({t, std::int64_t(n), e.name, double(e.value), tol.toda_exact_ode,
                               le(double(e.value), tol.toda_exact_ode)});
    }
    return o;
  });
  Table ode{"toda_ode", {"t", "n", "equation", "residual", "tol", "pass"}, {}};
  Table con{"toda_constraints", {"t", "n", "identity", "residual", "tol", "pass"}, {}};
  Table ex{"toda_exact_state", {"t", "n", "field", "computed", "closed_form", "gap", "tol", "pass"}, {}};
  Table exo{"toda_exact_ode", {"t", "n", "equation", "residual", "tol", "pass"}, {}};
  for (auto& o : results) {
    for (auto& row : o.ode) ode.add(std::move(row));
    for (auto& row : o.constraint) con.add(std::move(row));
    for (auto& row : o.exact_state) ex.add(std::move(row));
    for (auto& row : o.exact_ode) exo.add(std::move(row));
  }
  r.tables.push_back(std::move(ode));
  r.tables.push_back(std::move(con));
  if (!ex.empty()) r.tables.push_back(std::move(ex));
  if (!exo.empty()) r.tables.push_back(std::move(exo));
}

// ---------------------------------------------------------------------------
// debruijn

template <std::floating_point Real>
void run_debruijn(const RunConfig& cfg, int threads, SuiteReport& r) {
  std::vector<std::pair<std::size_t, int>> jobs;
  for (std::size_t ti = 0; ti < cfg.t.size(); ++ti)
    for (int n = 1; n <= 2; ++n) jobs.push_back({ti, n});
  auto res = parallel_map(threads, static_cast<int>(jobs.size()), [&](int i) {
    const auto [ti, n] = jobs[i];
    return debruijn_check(potential_at<Real>(cfg, cfg.t[ti]), n, cfg.quad);
  });
  Table t{"debruijn", {"t", "n", "pfaffian", "integral", "rel_gap", "tol", "pass"}, {}};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const double g = double(res[i].rel_error);
    t.add({cfg.t[jobs[i].first], std::int64_t(jobs[i].second), double(res[i].lhs), double(res[i].rhs), g,
           cfg.tol.debruijn, le(g, cfg.tol.debruijn)});
  }
  r.tables.push_back(std::move(t));
}

template <std::floating_point Real>
SuiteReport run_suite_as(const RunConfig& cfg, Suite s, int threads) {
  SuiteReport r;
  r.suite = s;
  try {
    switch (s) {
      case Suite::polys: run_polys<Real>(cfg, threads, r); break;
      case Suite::kernel: run_kernel<Real>(cfg, threads, r); break;
      case Suite::rhp: run_rhp<Real>(cfg, threads, r); break;
      case Suite::toda: run_toda<Real>(cfg, threads, r); break;
      case Suite::debruijn: run_debruijn<Real>(cfg, threads, r); break;
    }
  } catch (const Error& e) {
    r.failures.push_back(to_string(s) + ": " + e.what());
  }
  collect_failures(r);
  return r;
}

}  // namespace detail

/// Runs one suite at the configured precision. Library errors become failures.
inline SuiteReport run_suite(const RunConfig& cfg, Suite s, int threads) {
  return cfg.precision == Precision::extended ? detail::run_suite_as<long double>(cfg, s, threads)
                                              : detail::run_suite_as<double>(cfg, s, threads);
}

}  // namespace skewrh
