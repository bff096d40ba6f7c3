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
 * @brief Run configuration, result tables, and their CSV / JSON emission.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "skewrh/errors.hpp"
#include "skewrh/numerics.hpp"
#include "skewrh/polynomial.hpp"
#include "skewrh/quadrature.hpp"
#include "skewrh/skew.hpp"

namespace skewrh {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::int64_t, double, std::complex<double>, std::string, bool>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size())
      throw IoFailure("table " + name + ": row has " + std::to_string(row.size()) + " cells, expected " +
                      std::to_string(columns.size()));
    if (!rows.empty())
      for (std::size_t c = 0; c < row.size(); ++c)
        if (row[c].index() != rows.front()[c].index())
          throw IoFailure("table " + name + ": column " + columns[c] + " changes type");
    rows.push_back(std::move(row));
  }
  bool empty() const { return rows.empty(); }
};

enum class Format { csv, json };

inline std::string to_string(Format f) { return f == Format::csv ? "csv" : "json"; }

namespace detail {

inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline Json json_double(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

inline Json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>)
          return json_double(v);
        else if constexpr (std::is_same_v<T, std::complex<double>>)
          return Json::array({json_double(v.real()), json_double(v.imag())});
        else
          return v;
      },
      c);
}

}  // namespace detail

/// CSV text: one header row, complex columns split into <name>_re, <name>_im.
inline std::string to_csv(const Table& t) {
  std::ostringstream os;
  const bool have = !t.rows.empty();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) os << ',';
    if (have && std::holds_alternative<std::complex<double>>(t.rows.front()[c]))
      os << detail::csv_quote(t.columns[c] + "_re") << ',' << detail::csv_quote(t.columns[c] + "_im");
    else
      os << detail::csv_quote(t.columns[c]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) os << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
              os << detail::format_double(v);
            else if constexpr (std::is_same_v<T, std::complex<double>>)
              os << detail::format_double(v.real()) << ',' << detail::format_double(v.imag());
            else if constexpr (std::is_same_v<T, bool>)
              os << (v ? "true" : "false");
            else if constexpr (std::is_same_v<T, std::string>)
              os << detail::csv_quote(v);
            else
              os << v;
          },
          row[c]);
    }
    os << '\n';
  }
  return os.str();
}

/// {"meta": meta, "table": name, "columns": [...], "rows": [{column: value}]}
inline Json to_json(const Table& t, const Json& meta) {
  Json rows = Json::array();
  for (const auto& row : t.rows) {
    Json r = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) r[t.columns[c]] = detail::cell_json(row[c]);
    rows.push_back(std::move(r));
  }
  return Json{{"meta", meta}, {"table", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}};
}

inline void emit(const Table& t, Format f, const std::string& path, const Json& meta = Json::object()) {
  if (t.empty()) throw IoFailure("table " + t.name + " is empty");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open " + path + " for writing");
  if (f == Format::csv)
    out << to_csv(t);
  else
    out << to_json(t, meta).dump(2) << '\n';
  if (!out) throw IoFailure("write to " + path + " failed");
}

/// Splits CSV text into fields, honoring double-quoted fields.
inline std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      out.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (any) {
    row.push_back(std::move(field));
    out.push_back(std::move(row));
  }
  return out;
}

inline std::vector<std::vector<std::string>> read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_csv(ss.str());
}

// ---------------------------------------------------------------------------
// Configuration

enum class Suite { polys, kernel, rhp, toda, debruijn };

inline std::string to_string(Suite s) {
  switch (s) {
    case Suite::polys: return "polys";
    case Suite::kernel: return "kernel";
    case Suite::rhp: return "rhp";
    case Suite::toda: return "toda";
    case Suite::debruijn: return "debruijn";
  }
  return "?";
}

inline Suite parse_suite(const std::string& s) {
  for (Suite x : {Suite::polys, Suite::kernel, Suite::rhp, Suite::toda, Suite::debruijn})
    if (to_string(x) == s) return x;
  throw ConfigInvalid("unknown suite '" + s + "'");
}

/// "double" is accepted as a synonym of "binary64".
inline Precision parse_precision(const std::string& s) {
  if (s == "binary64" || s == "double") return Precision::binary64;
  if (s == "extended") return Precision::extended;
  throw ConfigInvalid("precision must be 'binary64' (or 'double') or 'extended'");
}

inline Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw ConfigInvalid("unknown format '" + s + "' (csv or json)");
}

struct GridConfig {
  double lo = -3, hi = 3;
  int points = 20;
};

/// Pass thresholds of each suite.
struct Tolerances {
  double gram = 1e-8;
  double dual_map = 1e-8;
  double structure = 1e-7;
  double cd_offdiag = 1e-8;
  double cd_diag = 1e-6;
  double density_mass = 1e-6;
  double density_floor = -1e-9;
  double jump = 1e-6;
  double det = 1e-8;
  double symmetry = 1e-7;
  double lax = 1e-6;
  double toda_ode_d2 = 1e-5;
  double toda_ode = 1e-4;
  double toda_constraint = 1e-7;
  double toda_exact = 1e-6;
  double toda_exact_ode = 1e-8;
  double toda_step = 1e-4;
  double debruijn = 1e-6;

  double& at(const std::string& key) {
    auto& m = table();
    auto it = m.find(key);
    if (it == m.end()) throw ConfigInvalid("unknown tolerance '" + key + "'");
    return this->*(it->second);
  }
  double get(const std::string& key) const { return const_cast<Tolerances*>(this)->at(key); }

  Json to_json() const {
    Json j = Json::object();
    for (const auto& [k, p] : table()) j[k] = this->*p;
    return j;
  }

 private:
  using Member = double Tolerances::*;
  static const std::map<std::string, Member>& table() {
    static const std::map<std::string, Member> m{
        {"gram", &Tolerances::gram},
        {"dual_map", &Tolerances::dual_map},
        {"structure", &Tolerances::structure},
        {"cd_offdiag", &Tolerances::cd_offdiag},
        {"cd_diag", &Tolerances::cd_diag},
        {"density_mass", &Tolerances::density_mass},
        {"density_floor", &Tolerances::density_floor},
        {"jump", &Tolerances::jump},
        {"det", &Tolerances::det},
        {"symmetry", &Tolerances::symmetry},
        {"lax", &Tolerances::lax},
        {"toda_ode_d2", &Tolerances::toda_ode_d2},
        {"toda_ode", &Tolerances::toda_ode},
        {"toda_constraint", &Tolerances::toda_constraint},
        {"toda_exact", &Tolerances::toda_exact},
        {"toda_exact_ode", &Tolerances::toda_exact_ode},
        {"toda_step", &Tolerances::toda_step},
        {"debruijn", &Tolerances::debruijn},
    };
    return m;
  }
};

struct RunConfig {
  std::vector<double> coeffs;
  std::vector<double> t{0.0};
  int n_max = 3;
  QuadConfig quad;
  Precision precision = Precision::binary64;
  std::vector<Suite> suites{Suite::polys, Suite::kernel, Suite::rhp, Suite::toda, Suite::debruijn};
  GridConfig grid;
  std::string out_path = "skewrh-out";
  Format out_format = Format::csv;
  Tolerances tol;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  /// Rejects anything the suites cannot run on.
  void validate() const {
    try {
      Potential<double> v(coeffs);
    } catch (const InvalidPotential& e) {
      throw ConfigInvalid(std::string("potential: ") + e.what());
    } catch (const NonFiniteValue& e) {
      throw ConfigInvalid(std::string("potential: ") + e.what());
    }
    if (t.empty()) throw ConfigInvalid("t list is empty");
    for (double x : t)
      if (!std::isfinite(x)) throw ConfigInvalid("t values must be finite");
    if (n_max < 1 || n_max > kMaxSkewDegree)
      throw ConfigInvalid("n_max must lie in [1, " + std::to_string(kMaxSkewDegree) + "]");
    quad.validate();
    if (grid.points < 2) throw ConfigInvalid("grid.points must be >= 2");
    if (!(grid.lo < grid.hi)) throw ConfigInvalid("grid.lo must be below grid.hi");
    if (suites.empty()) throw ConfigInvalid("no suites selected");
    if (out_path.empty()) throw ConfigInvalid("out_path is empty");
    if (!(tol.toda_step > 0)) throw ConfigInvalid("tolerances.toda_step must be positive");
  }

  /// Normalized echo written into JSON output.
  Json to_json() const {
    Json s = Json::array();
    for (Suite x : suites) s.push_back(to_string(x));
    return Json{{"potential", {{"coeffs", coeffs}}},
                {"t", t},
                {"n_max", n_max},
                {"quad",
                 {{"nodes_per_panel", quad.nodes_per_panel},
                  {"rel_tol", quad.rel_tol},
                  {"truncation_drop", quad.truncation_drop},
                  {"max_depth", quad.max_depth}}},
                {"precision", to_string(precision)},
                {"suites", s},
                {"grid", {{"lo", grid.lo}, {"hi", grid.hi}, {"points", grid.points}}},
                {"out_path", out_path},
                {"out_format", to_string(out_format)},
                {"tolerances", tol.to_json()}};
  }
};

namespace detail {

inline void check_keys(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigInvalid(where + " must be an object");
  for (const auto& [k, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigInvalid("unknown key '" + k + "' in " + where);
  }
}

template <class T>
T get_as(const Json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigInvalid(what + " has the wrong type");
  }
}

}  // namespace detail

inline RunConfig parse_config(const Json& j) {
  using detail::get_as;
  detail::check_keys(j,
                     {"potential", "t", "n_max", "quad", "precision", "suites", "grid", "out_path", "out_format",
                      "tolerances"},
                     "config");
  RunConfig c;
  if (!j.contains("potential")) throw ConfigInvalid("potential is required");
  detail::check_keys(j["potential"], {"coeffs"}, "potential");
  if (!j["potential"].contains("coeffs")) throw ConfigInvalid("potential.coeffs is required");
  c.coeffs = get_as<std::vector<double>>(j["potential"]["coeffs"], "potential.coeffs");
  if (j.contains("t")) {
    const auto& t = j["t"];
    c.t = t.is_array() ? get_as<std::vector<double>>(t, "t") : std::vector<double>{get_as<double>(t, "t")};
  }
  if (j.contains("n_max")) c.n_max = get_as<int>(j["n_max"], "n_max");
  if (j.contains("quad")) {
    const auto& q = j["quad"];
    detail::check_keys(q, {"nodes_per_panel", "rel_tol", "truncation_drop", "max_depth"}, "quad");
    if (q.contains("nodes_per_panel")) c.quad.nodes_per_panel = get_as<int>(q["nodes_per_panel"], "quad.nodes_per_panel");
    if (q.contains("rel_tol")) c.quad.rel_tol = get_as<double>(q["rel_tol"], "quad.rel_tol");
    if (q.contains("truncation_drop"))
      c.quad.truncation_drop = get_as<double>(q["truncation_drop"], "quad.truncation_drop");
    if (q.contains("max_depth")) c.quad.max_depth = get_as<int>(q["max_depth"], "quad.max_depth");
  }
  if (j.contains("precision")) {
    const auto p = get_as<std::string>(j["precision"], "precision");
    c.precision = parse_precision(p);
  }
  if (j.contains("suites")) {
    c.suites.clear();
    for (const auto& s : get_as<std::vector<std::string>>(j["suites"], "suites")) c.suites.push_back(parse_suite(s));
  }
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    detail::check_keys(g, {"lo", "hi", "points"}, "grid");
    if (g.contains("lo")) c.grid.lo = get_as<double>(g["lo"], "grid.lo");
    if (g.contains("hi")) c.grid.hi = get_as<double>(g["hi"], "grid.hi");
    if (g.contains("points")) c.grid.points = get_as<int>(g["points"], "grid.points");
  }
  if (j.contains("out_path")) c.out_path = get_as<std::string>(j["out_path"], "out_path");
  if (j.contains("out_format")) c.out_format = parse_format(get_as<std::string>(j["out_format"], "out_format"));
  if (j.contains("tolerances")) {
    const auto& t = j["tolerances"];
    if (!t.is_object()) throw ConfigInvalid("tolerances must be an object");
    for (const auto& [k, v] : t.items()) c.tol.at(k) = get_as<double>(v, "tolerances." + k);
  }
  c.validate();
  return c;
}

inline RunConfig parse_config_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(j);
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigInvalid("cannot read config " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace skewrh
