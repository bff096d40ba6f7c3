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

// skewrh run --config cfg.json [--out dir] [--format csv|json] [--suite NAME]...
//
// Exit status: 0 every suite passed, 1 some residual above tolerance (tables
// are still written), 2 invalid configuration or unwritable output.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "skewrh/skewrh.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitConfig = 2;

struct Overrides {
  std::string config;
  std::string out;
  std::string format;
  std::vector<std::string> suites;
  std::string precision;
  int n_max = -1;
  std::vector<double> t;
};

skewrh::RunConfig resolve(const Overrides& o) {
  auto cfg = skewrh::load_config(o.config);
  if (!o.out.empty()) cfg.out_path = o.out;
  if (!o.format.empty()) cfg.out_format = skewrh::parse_format(o.format);
  if (!o.suites.empty()) {
    cfg.suites.clear();
    for (const auto& s : o.suites) cfg.suites.push_back(skewrh::parse_suite(s));
  }
  if (!o.precision.empty()) cfg.precision = skewrh::parse_precision(o.precision);
  if (o.n_max >= 0) cfg.n_max = o.n_max;
  if (!o.t.empty()) cfg.t = o.t;
  cfg.validate();
  return cfg;
}

int run(const Overrides& o) {
  skewrh::RunConfig cfg;
  int threads = 1;
  try {
    cfg = resolve(o);
    threads = skewrh::resolve_threads();
  } catch (const skewrh::Error& e) {
    std::fprintf(stderr, "skewrh: %s\n", e.what());
    return kExitConfig;
  }

  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_path, ec);
  if (ec) {
    std::fprintf(stderr, "skewrh: cannot create %s: %s\n", cfg.out_path.c_str(), ec.message().c_str());
    return kExitConfig;
  }

  const auto meta = cfg.to_json();
  const std::string ext = cfg.out_format == skewrh::Format::csv ? ".csv" : ".json";
  skewrh::Table summary{"summary", {"suite", "status", "detail"}, {}};
  bool all_pass = true;
  try {
    for (auto s : cfg.suites) {
      const auto report = skewrh::run_suite(cfg, s, threads);
      for (const auto& t : report.tables)
        skewrh::emit(t, cfg.out_format, (fs::path(cfg.out_path) / (t.name + ext)).string(), meta);
      const std::string status = report.passed() ? "PASS" : "FAIL";
      std::string detail;
      for (const auto& f : report.failures) detail += (detail.empty() ? "" : "; ") + f;
      summary.add({skewrh::to_string(s), status, detail});
      std::printf("%-8s %s%s%s\n", skewrh::to_string(s).c_str(), status.c_str(), detail.empty() ? "" : "  ",
                  detail.c_str());
      all_pass = all_pass && report.passed();
    }
    skewrh::emit(summary, cfg.out_format, (fs::path(cfg.out_path) / ("summary" + ext)).string(), meta);
  } catch (const skewrh::IoFailure& e) {
    std::fprintf(stderr, "skewrh: %s\n", e.what());
    return kExitConfig;
  }
  return all_pass ? kExitPass : kExitTolerance;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skew-orthogonal polynomials and their Riemann-Hilbert problems: verification runs"};
  app.require_subcommand(1);
  Overrides o;
  auto* cmd = app.add_subcommand("run", "Run verification suites and write result tables");
  cmd->add_option("--config", o.config, "JSON run configuration")->required();
  cmd->add_option("--out", o.out, "Output directory (overrides out_path)");
  cmd->add_option("--format", o.format, "csv or json (overrides out_format)");
  cmd->add_option("--suite", o.suites, "Suite to run: polys, kernel, rhp, toda, debruijn (repeatable)");
  cmd->add_option("--precision", o.precision, "binary64 (or double) or extended");
  cmd->add_option("--n-max", o.n_max, "Largest n");
  cmd->add_option("--t", o.t, "Deformation parameter values (repeatable)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }
  return run(o);
}
