// Copyright 2026 The cmcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "cmcheck/catalog.hpp"
#include "cmcheck/cli.hpp"
#include "cmcheck/errors.hpp"

namespace cmcheck::cli {

namespace {

// Options write into scratch storage; only options that were actually given
// are copied over the base config (defaults, or the --config file).
class Binder {
 public:
  template <class T, class Set>
  CLI::Option* option(CLI::App* app, const std::string& name, Set set, const std::string& desc) {
    auto storage = std::make_shared<T>();
    auto* o = app->add_option(name, *storage, desc);
    appliers_.push_back({o, [storage, set](RunConfig& c) { set(c, *storage); }});
    return o;
  }

  template <class Set>
  CLI::Option* flag(CLI::App* app, const std::string& name, Set set, const std::string& desc) {
    auto* o = app->add_flag(name, desc);
    appliers_.push_back({o, [set](RunConfig& c) { set(c); }});
    return o;
  }

  void apply(RunConfig& c) const {
    for (const auto& [opt, fn] : appliers_) {
      if (opt->count() > 0) fn(c);
    }
  }

 private:
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>> appliers_;
};

Bindings parse_bindings(const std::vector<std::string>& items) {
  Bindings b;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw PreconditionError("parameter '" + item + "' is not name=value");
    try {
      std::size_t used = 0;
      const std::string value = item.substr(eq + 1);
      b[item.substr(0, eq)] = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw PreconditionError("parameter '" + item + "' has no numeric value");
    }
  }
  return b;
}

Interval to_interval(const std::vector<double>& v) { return Interval{v.at(0), v.at(1)}; }

void add_expression_options(Binder& b, CLI::App* sub) {
  b.option<std::string>(sub, "-e,--expr", [](RunConfig& c, const std::string& v) { c.expression = v; },
                        "expression in x");
  b.option<std::string>(sub, "--catalog", [](RunConfig& c, const std::string& v) { c.catalog = v; },
                        "named catalog entry (supplies expression, parameters, interval and class)");
  b.option<std::vector<double>>(sub, "--interval", [](RunConfig& c, const std::vector<double>& v) {
     c.interval = to_interval(v);
   }, "interval lo hi")->expected(2);
  b.option<std::string>(sub, "--class", [](RunConfig& c, const std::string& v) { c.query_class = v; },
                        "cm, bernstein, am, positive, cmd");
}

void add_family_params(Binder& b, CLI::App* sub) {
  b.option<double>(sub, "--a", [](RunConfig& c, double v) { c.family.a = v; }, "family parameter a > 0");
  b.option<double>(sub, "--b", [](RunConfig& c, double v) { c.family.b = v; }, "family parameter b");
  b.option<double>(sub, "--d", [](RunConfig& c, double v) { c.family.d = v; }, "family parameter d");
  b.option<double>(sub, "--c0", [](RunConfig& c, double v) { c.family.c0 = v; }, "shift c0");
}

void add_bracket(Binder& b, CLI::App* sub) {
  b.option<double>(sub, "--lo", [](RunConfig& c, double v) { c.lo = v; }, "lower end of the c0 bracket");
  b.option<double>(sub, "--hi", [](RunConfig& c, double v) { c.hi = v; }, "upper end of the c0 bracket");
  b.option<double>(sub, "--tol", [](RunConfig& c, double v) { c.tol = v; }, "bisection tolerance");
  b.option<double>(sub, "--grid-lo", [](RunConfig& c, double v) { c.grid_lo = v; }, "certification grid start");
  b.option<double>(sub, "--grid-hi", [](RunConfig& c, double v) { c.grid_hi = v; }, "certification grid end");
}

void add_order(Binder& b, CLI::App* sub) {
  b.option<int>(sub, "-N,--order", [](RunConfig& c, int v) { c.max_order = v; }, "highest derivative order");
  b.option<int>(sub, "--points", [](RunConfig& c, int v) { c.points = v; }, "grid size");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"cmcheck: complete monotonicity classifier and numeric certifier"};
  app.require_subcommand(1);
  app.fallthrough();
  Binder b;

  std::string config_path;
  int threads = 0;
  app.add_option("--config", config_path, "JSON run config; explicit flags override it");
  app.add_option("--threads", threads, "OpenMP threads (results do not depend on it)");
  b.option<std::string>(&app, "--format", [](RunConfig& c, const std::string& v) { c.format = parse_format(v); },
                        "json, csv or text");
  b.option<unsigned>(&app, "--precision", [](RunConfig& c, unsigned v) { c.precision = v; },
                     "evaluation precision in bits (53 = binary64)");
  b.option<std::uint64_t>(&app, "--seed", [](RunConfig& c, std::uint64_t v) { c.seed = v; },
                          "seed for randomized runs");
  b.option<std::vector<std::string>>(&app, "-p,--param", [](RunConfig& c, const std::vector<std::string>& v) {
     for (const auto& [k, x] : parse_bindings(v)) c.params[k] = x;
   }, "parameter binding name=value (repeatable)");
  b.flag(&app, "--allow-contested", [](RunConfig& c) { c.allow_contested = true; }, "enable contested rules");

  auto* classify = app.add_subcommand("classify", "infer a class from the closure rules");
  add_expression_options(b, classify);

  auto* certify = app.add_subcommand("certify", "check derivative signs on a grid");
  add_expression_options(b, certify);
  add_order(b, certify);
  b.option<std::string>(certify, "--spacing", [](RunConfig& c, const std::string& v) { c.spacing = v; },
                        "log or linear");
  b.option<std::vector<double>>(certify, "--at", [](RunConfig& c, const std::vector<double>& v) { c.at = v; },
                                "explicit grid points");
  b.option<double>(certify, "--abs-tol", [](RunConfig& c, double v) { c.abs_tol = v; }, "absolute tolerance");
  b.option<double>(certify, "--rel-tol", [](RunConfig& c, double v) { c.rel_tol = v; }, "relative tolerance");
  b.flag(certify, "--samples", [](RunConfig& c) { c.samples = true; }, "include the sample matrix in JSON");

  auto* family = app.add_subcommand("family", "verify the family identities");
  family->alias("family-verify");
  add_family_params(b, family);
  add_bracket(b, family);
  for (const char* check : {"representation", "integrals", "threshold", "kernels", "min-c0", "all"}) {
    const std::string name = check;
    b.flag(family, "--" + name, [name](RunConfig& c) { c.checks.insert(name); }, "run the " + name + " check");
  }

  auto* scan = app.add_subcommand("family-scan", "sweep family parameters");
  b.option<std::vector<double>>(scan, "--a", [](RunConfig& c, const std::vector<double>& v) { c.a_list = v; },
                                "values of a")->delimiter(',');
  b.option<std::vector<double>>(scan, "--b", [](RunConfig& c, const std::vector<double>& v) { c.b_list = v; },
                                "values of b")->delimiter(',');
  b.option<std::vector<double>>(scan, "--d", [](RunConfig& c, const std::vector<double>& v) { c.d_list = v; },
                                "values of d")->delimiter(',');
  b.option<double>(scan, "--c0", [](RunConfig& c, double v) { c.family.c0 = v; }, "shift c0");
  b.option<int>(scan, "--random", [](RunConfig& c, int v) { c.random = v; }, "sample this many random triples");
  b.option<std::string>(scan, "--plot", [](RunConfig& c, const std::string& v) { c.plot = v; },
                        "emit plot data: density, h, u, w or gn");

  auto* minc0 = app.add_subcommand("min-c0", "bisect for the smallest certified c0");
  add_family_params(b, minc0);
  add_bracket(b, minc0);
  add_order(b, minc0);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw PreconditionError("cannot read config '" + config_path + "'");
      cfg = config_from_json(Json::parse(in));
    }
    const std::string command = app.get_subcommands().front()->get_name();
    if (!cfg.command.empty() && cfg.command != command &&
        !(command == "family" && cfg.command == "family-verify")) {
      throw PreconditionError("config is for '" + cfg.command + "', not '" + command + "'");
    }
    cfg.command = command == "family" ? "family-verify" : command;
    b.apply(cfg);
    if (!cfg.catalog.empty()) {
      const auto& entry = catalog_lookup(cfg.catalog);
      if (cfg.expression.empty()) cfg.expression = entry.text;
      for (const auto& [k, v] : entry.bindings) cfg.params.emplace(k, v);
      auto* sub = app.get_subcommands().front();
      if (sub->count("--interval") == 0 && config_path.empty()) cfg.interval = entry.interval;
      if (sub->count("--class") == 0 && config_path.empty()) {
        cfg.query_class = std::string(to_string(entry.claimed));
      }
    }
  } catch (const Json::exception& e) {
    err << "error: malformed config: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (threads > 0) set_threads(threads);

  RunResult r;
  try {
    r = run_config(cfg);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  if (r.exit_code == kUsage && r.report.contains("error")) {
    err << "error: " << r.report["error"]["message"].get<std::string>() << "\n";
  }
  out << emit_report({r}, cfg.format);
  if (cfg.format == Format::Json) out << "\n";
  return r.exit_code;
}

}  // namespace cmcheck::cli
