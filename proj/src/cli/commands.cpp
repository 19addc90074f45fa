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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

#include "cmcheck/catalog.hpp"
#include "cmcheck/cli.hpp"
#include "cmcheck/errors.hpp"

namespace cmcheck::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kE = std::exp(1.0);

std::string num(double v) {
  if (std::isnan(v)) return "";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Json jnum(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

RunResult usage_error(const RunConfig& c, const std::string& message, std::optional<std::size_t> offset = {}) {
  RunResult r;
  r.exit_code = kUsage;
  r.report["command"] = c.command;
  r.report["config"] = to_json(c);
  r.report["error"] = {{"message", message}};
  if (offset) r.report["error"]["offset"] = *offset;
  r.report["exit_code"] = r.exit_code;
  r.csv = "error\n\"" + message + "\"\n";
  r.text = "error: " + message + "\n";
  return r;
}

void finish(RunResult& r, const RunConfig& c) {
  r.report["command"] = c.command;
  r.report["config"] = to_json(c);
  r.report["exit_code"] = r.exit_code;
}

RunConfig with_catalog(RunConfig c) {
  if (c.catalog.empty() || !c.expression.empty()) return c;
  const auto& e = catalog_lookup(c.catalog);
  c.expression = e.text;
  for (const auto& [k, v] : e.bindings) c.params.emplace(k, v);
  return c;
}

// ---------------------------------------------------------------- classify

Json derivation_json(const Derivation& d) {
  Json j;
  j["rule"] = d.rule;
  j["kind"] = std::string(to_string(d.kind));
  j["subject"] = d.subject;
  j["note"] = d.note;
  j["contested"] = d.contested;
  j["premises"] = Json::array();
  for (const auto& p : d.premises) j["premises"].push_back(derivation_json(p));
  return j;
}

void trace_rows(const Derivation& d, int depth, std::string& csv, std::string& text) {
  csv += std::to_string(depth) + "," + d.rule + "," + std::string(to_string(d.kind)) + ",\"" + d.subject + "\"," +
         (d.contested ? "true" : "false") + ",\"" + d.note + "\"\n";
  text += std::string(2 * static_cast<std::size_t>(depth) + 2, ' ') + d.rule + ": " + d.subject + " is " +
          std::string(to_string(d.kind)) + (d.note.empty() ? "" : " (" + d.note + ")") +
          (d.contested ? " [contested]" : "") + "\n";
  for (const auto& p : d.premises) trace_rows(p, depth + 1, csv, text);
}

}  // namespace

RunResult run_classify(const RunConfig& config) {
  const RunConfig c = with_catalog(config);
  std::optional<Expr> parsed;
  try {
    parsed = parse(c.expression);
  } catch (const ParseError& err) {
    return usage_error(c, err.what(), err.offset());
  }
  const Expr& e = *parsed;
  ClassKind query;
  try {
    query = parse_class_kind(c.query_class);
  } catch (const Error& err) {
    return usage_error(c, err.what());
  }
  ClassifyOptions opt;
  opt.bindings = c.params;
  opt.allow_contested = c.allow_contested;
  const auto j = classify(e, c.interval, opt);

  RunResult r;
  r.exit_code = j.establishes_uncontested(query) ? kOk : j.establishes(query) ? kContestedOnly : kNotEstablished;
  Json jj;
  jj["kind"] = std::string(to_string(j.kind));
  jj["interval"] = Json::array({jnum(j.interval.lo), jnum(j.interval.hi)});
  jj["contested"] = j.contested;
  jj["rule_ids"] = j.rule_ids();
  jj["trace"] = j.trace ? derivation_json(*j.trace) : Json(nullptr);
  jj["facts"] = Json::object();
  for (const auto& [k, d] : j.facts) {
    jj["facts"][std::string(to_string(k))] = {{"rule", d.rule}, {"contested", d.contested}};
  }
  r.report["expression"] = to_string(e);
  r.report["judgment"] = jj;
  r.report["query"] = {{"class", std::string(to_string(query))},
                       {"established", j.establishes(query)},
                       {"contested", j.establishes(query) && !j.establishes_uncontested(query)}};
  r.csv = "depth,rule,kind,subject,contested,note\n";
  r.text = "expression: " + to_string(e) + "\njudgment: " + std::string(to_string(j.kind)) +
           (j.contested ? " (contested)" : "") + " on " + to_string(j.interval) + "\n";
  if (j.trace) {
    r.text += "trace:\n";
    trace_rows(*j.trace, 0, r.csv, r.text);
  }
  r.text += "query " + std::string(to_string(query)) + ": " +
            (r.exit_code == kOk ? "established" : r.exit_code == kContestedOnly ? "contested only" : "not established") +
            "\n";
  finish(r, c);
  return r;
}

// ----------------------------------------------------------------- certify

namespace {

CertGrid grid_for(const RunConfig& c, int order) {
  CertGrid g;
  if (!c.at.empty()) {
    g.points = c.at;
    std::sort(g.points.begin(), g.points.end());
    g.points.erase(std::unique(g.points.begin(), g.points.end()), g.points.end());
    g.max_order = order;
  } else if (c.spacing == "linear") {
    Interval iv = c.interval;
    if (!std::isfinite(iv.hi)) throw PreconditionError("linear spacing needs a finite interval");
    g.max_order = order;
    const int n = c.points.value_or(16);
    for (int i = 0; i < n; ++i) g.points.push_back(iv.lo + (iv.hi - iv.lo) * (i + 0.5) / n);
  } else if (c.spacing == "log") {
    g = CertGrid::inside(c.interval, c.points.value_or(16), order);
  } else {
    throw PreconditionError("unknown spacing '" + c.spacing + "'");
  }
  g.abs_tol = c.abs_tol;
  g.rel_tol = c.rel_tol;
  g.validate();
  return g;
}

Json cert_json(const CertReport& rep, bool samples) {
  Json j;
  j["verdict"] = std::string(to_string(rep.verdict));
  j["class"] = std::string(to_string(rep.kind));
  j["margin"] = jnum(rep.margin);
  j["statement"] = rep.statement;
  j["label"] = rep.label;
  j["violations"] = Json::array();
  for (const auto& v : rep.violations) j["violations"].push_back({{"x", v.x}, {"n", v.n}, {"value", v.value}});
  j["first_violation"] = rep.violations.empty()
                             ? Json(nullptr)
                             : Json{{"x", rep.violations[0].x}, {"n", rep.violations[0].n},
                                    {"value", rep.violations[0].value}, {"tol", rep.violations[0].tol}};
  j["grid"] = {{"points", rep.grid.points},
               {"N", rep.grid.max_order},
               {"tols", {{"abs", rep.grid.abs_tol}, {"rel", rep.grid.rel_tol}}}};
  j["diagnostics"] = rep.diagnostics;
  if (samples) {
    Json rows = Json::array();
    for (const auto& row : rep.samples) {
      Json jr = Json::array();
      for (double v : row) jr.push_back(jnum(v));
      rows.push_back(jr);
    }
    j["samples"] = rows;
  }
  return j;
}

std::string samples_csv(const CertReport& rep) {
  std::string out = "x,n,signed_value\n";
  for (std::size_t i = 0; i < rep.samples.size(); ++i) {
    for (std::size_t n = 0; n < rep.samples[i].size(); ++n) {
      out += num(rep.grid.points[i]) + "," + std::to_string(n) + "," + num(rep.samples[i][n]) + "\n";
    }
  }
  return out;
}

}  // namespace

RunResult run_certify(const RunConfig& config) {
  const RunConfig c = with_catalog(config);
  std::optional<Expr> parsed;
  try {
    parsed = parse(c.expression);
  } catch (const ParseError& err) {
    return usage_error(c, err.what(), err.offset());
  }
  const Expr& e = *parsed;
  ClassKind kind;
  CertGrid grid;
  Evaluator ev;
  try {
    kind = parse_class_kind(c.query_class);
    (void)required_sign(kind, 0);
    grid = grid_for(c, c.order_or(kDefaultOrder));
    ev = expr_evaluator(e, c.params, c.precision);
  } catch (const Error& err) {
    return usage_error(c, err.what());
  }
  const auto rep = certify(kind, ev, grid);
  RunResult r;
  r.exit_code = rep.verdict == Verdict::Pass ? kOk : rep.verdict == Verdict::Fail ? kFail : kInconclusive;
  r.report["expression"] = to_string(e);
  r.report["report"] = cert_json(rep, c.samples);
  r.csv = samples_csv(rep);
  r.text = "expression: " + to_string(e) + "\nverdict: " + std::string(to_string(rep.verdict)) + "\n" +
           rep.statement + "\nmargin: " + short_num(rep.margin) + "\n";
  for (const auto& d : rep.diagnostics) r.text += "diagnostic: " + d + "\n";
  finish(r, c);
  return r;
}

// ------------------------------------------------------------------ family

namespace {

enum class Status { Pass, Flag, Fail };

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Flag: return "flag";
    case Status::Fail: return "fail";
  }
  return "flag";
}

struct Row {
  std::string check;
  std::string quantity;
  double value = kNaN;
  double reference = kNaN;
  double discrepancy = kNaN;
  Status status = Status::Pass;
  std::string note;
};

class RowSink {
 public:
  RowSink(const FamilyParams& p, std::string check) : p_(p), check_(std::move(check)) {}

  // Graded against `tol`: a miss fails the classical case and flags otherwise.
  void graded(std::string quantity, double value, double reference, double tol, std::string note = {}) {
    Row r{check_, std::move(quantity), value, reference, std::abs(value - reference), Status::Pass, std::move(note)};
    if (!(r.discrepancy <= tol)) r.status = p_.classical() ? Status::Fail : Status::Flag;
    rows.push_back(std::move(r));
  }
  // A mathematical invariant: a miss always fails.
  void invariant(std::string quantity, double value, double reference, bool ok, std::string note = {}) {
    rows.push_back({check_, std::move(quantity), value, reference, std::abs(value - reference),
                    ok ? Status::Pass : Status::Fail, std::move(note)});
  }
  void condition(std::string quantity, double value, bool ok, std::string note = {}) {
    rows.push_back({check_, std::move(quantity), value, kNaN, kNaN,
                    ok ? Status::Pass : (p_.classical() ? Status::Fail : Status::Flag), std::move(note)});
  }
  void info(std::string quantity, double value, double reference, std::string note = {}) {
    const double disc = std::isnan(reference) ? kNaN : std::abs(value - reference);
    rows.push_back({check_, std::move(quantity), value, reference, disc, Status::Pass, std::move(note)});
  }
  void flag(std::string quantity, std::string note) {
    rows.push_back({check_, std::move(quantity), kNaN, kNaN, kNaN, p_.classical() ? Status::Fail : Status::Flag,
                    std::move(note)});
  }

  std::vector<Row> rows;

 private:
  FamilyParams p_;
  std::string check_;
};

std::vector<double> log_points(double lo, double hi, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1)));
  return v;
}

void check_representation(const FamilyParams& p, RowSink& s) {
  FamilyParams one = p;
  one.c0 = 1.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0}) {
    const double f = f_family(x, one);
    s.graded("stieltjes(x=" + short_num(x) + ")", stieltjes_eval(x, p), f, 1e-8 * (1.0 + std::abs(f)));
  }
  const double x0 = limit_const_x0(p);
  s.graded("f(x=1e6)", f_family(1e6, one), x0, 1e-5 * (1.0 + std::abs(x0)), "limit constant x0");
  const double I0 = quad_integrals(p).I0;
  for (double x : {1e3, 1e4, 1e5}) {
    s.graded("x*(f-x0)(x=" + short_num(x) + ")", x * (f_family(x, one) - x0), I0, x == 1e5 ? 1e-3 : 1.0,
             "tends to the integral of g");
  }
}

void check_integrals(const FamilyParams& p, RowSink& s) {
  double min_g = std::numeric_limits<double>::infinity();
  double asym = 0.0;
  for (int i = 0; i < 64; ++i) {
    const double t = (i + 0.5) / 64.0;
    const double g = density_g(t, 1.0 - t, p);
    min_g = std::min(min_g, g);
    asym = std::max(asym, std::abs(g - density_g(1.0 - t, t, p)) / g);
  }
  s.invariant("min density_g", min_g, 0.0, min_g >= 0.0, "g >= 0 on a 64-point grid");
  if (p.symmetric()) {
    s.graded("density asymmetry", asym, 0.0, 1e-12, "b = 2d + 1");
  } else {
    s.info("density asymmetry", asym, kNaN, "b != 2d + 1: g(s) = g(1 - s) is not expected");
  }
  const auto closed = closed_integrals(p);
  if (!density_integrability(p).ok) {
    s.flag("I0", "density not integrable; closed form " + short_num(closed.I0));
    return;
  }
  const auto q = quad_integrals(p);
  s.graded("I0", q.I0, closed.I0, 1e-9, "quadrature vs closed form");
  s.graded("I1", q.I1, closed.I1, 1e-9, "quadrature vs closed form");
  s.graded("I1 - I0/2", q.I1 - q.I0 / 2.0, 0.0, 1e-9, "halving under symmetry");
  if (closed.I0 < 0.0 && q.I0 > 0.0) {
    s.flag("closed I0 sign", "closed form " + short_num(closed.I0) + " is negative while g >= 0 integrates to " +
                                 short_num(q.I0));
  }
}

void check_threshold(const FamilyParams& p, RowSink& s) {
  const double c = threshold_c(p);
  const double alpha = alpha_const(p);
  if (p.classical()) {
    s.graded("c", c, 11.0 / 12.0, 1e-15);
  } else {
    s.info("c", c, kNaN);
  }
  s.info("alpha", alpha, 1.0 - c);
  s.invariant("alpha + c", alpha + c, 1.0, std::abs(alpha + c - 1.0) <= 1e-12);
  if (alpha < 0.0 || alpha > 1.0) {
    s.flag("alpha range", "alpha = " + short_num(alpha) + " lies outside [0, 1]");
  }
  for (const auto& g : gn_limit_probe(p, {10.0, 100.0, 1e4})) {
    const std::string q = "gn(x=" + short_num(g.x) + ")";
    if (!g.ok) {
      s.flag(q, g.diagnostic);
    } else if (g.x == 1e4) {
      s.graded(q, g.value, c, 1e-3, "tail of gn against c");
    } else {
      s.info(q, g.value, c);
    }
  }
}

void check_kernels(const FamilyParams& p, RowSink& s) {
  if (!density_integrability(p).ok) {
    s.flag("h", "density not integrable");
    return;
  }
  const auto closed = closed_integrals(p);
  s.graded("h(0)", h_kernel(0.0, p), closed.I0, 1e-9, "h(0) is the integral of g");
  double min_h = std::numeric_limits<double>::infinity();
  for (double t : log_points(0.01, 50.0, 32)) min_h = std::min(min_h, h_kernel(t, p));
  s.condition("min h on (0, 50]", min_h, min_h > 0.0);
  const auto rep = certify(ClassKind::CompletelyMonotonic, h_evaluator(p), CertGrid::log_spaced(0.1, 50.0, 8, 6));
  s.condition("h certify CM (N=6)", rep.margin, rep.verdict == Verdict::Pass, rep.statement);

  const double alpha = alpha_const(p);
  const double c = threshold_c(p);
  if (alpha < 0.0 || alpha > 1.0) {
    s.flag("u, w", "alpha outside [0, 1]; positivity scan skipped");
  } else {
    const auto scan = positivity_scan(p, log_points(0.01, 10.0, 20));
    s.graded("u(0)", scan.u0, 0.0, 1e-10);
    double min_u = std::numeric_limits<double>::infinity(), min_w = min_u;
    for (const auto& q : scan.points) {
      min_u = std::min(min_u, q.u);
      min_w = std::min(min_w, q.w);
    }
    s.condition("min u on (0, 10]", min_u, scan.u_positive);
    s.condition("min w on (0, 10]", min_w, scan.w_positive);
    s.condition("w' chain bound", scan.c_minus_s_integral, scan.chain_holds, "c h + h' >= e^(-ct) (c I0 - I1)");
    const double ref = p.classical() ? 5.0 * kE / 288.0 : (c - 0.5) * closed.I0;
    s.graded("integral of (c - s) g", scan.c_minus_s_integral, ref, 1e-8);
  }
  FamilyParams one = p;
  one.c0 = 1.0;
  for (double x : {1.0, 2.0, 5.0}) {
    const auto rec = laplace_recon_auto(x, p);
    s.graded("laplace_recon(x=" + short_num(x) + ")", rec.value, f_family(x, one), 1e-4,
             "T = " + short_num(rec.T));
  }
}

void check_min_c0(const FamilyParams& p, const RunConfig& c, RowSink& s) {
  MinC0Options o;
  o.lo = c.lo;
  o.hi = c.hi;
  o.tol = c.tol;
  o.order = c.order_or(10);
  o.points = c.points.value_or(24);
  o.grid_lo = c.grid_lo;
  o.grid_hi = c.grid_hi;
  const auto m = empirical_min_c0(p, o);
  s.graded("empirical min c0", m.value, threshold_c(p), 0.02,
           std::to_string(m.certifications) + " certifications");
}

std::string row_csv(const FamilyParams& p, const Row& r) {
  return num(p.a) + "," + num(p.b) + "," + num(p.d) + "," + num(p.c0) + ",\"" + r.quantity + "\"," + num(r.value) +
         "," + num(r.reference) + "," + num(r.discrepancy) + "," + std::string(status_name(r.status)) + "\n";
}

Json row_json(const Row& r) {
  return {{"check", r.check},         {"quantity", r.quantity},
          {"value", jnum(r.value)},   {"reference", jnum(r.reference)},
          {"discrepancy", jnum(r.discrepancy)}, {"flag", std::string(status_name(r.status))},
          {"note", r.note}};
}

constexpr const char* kCsvHeader = "a,b,d,c0,quantity,value,reference,discrepancy,flag\n";

}  // namespace

RunResult run_family(const RunConfig& c) {
  const FamilyParams& p = c.family;
  try {
    p.validate();
  } catch (const Error& err) {
    return usage_error(c, err.what());
  }
  static const std::vector<std::string> kAll = {"representation", "integrals", "threshold", "kernels", "min-c0"};
  std::vector<std::string> selected;
  for (const auto& name : kAll) {
    if (c.checks.empty() || c.checks.count("all") || c.checks.count(name)) selected.push_back(name);
  }
  for (const auto& name : c.checks) {
    if (name != "all" && std::find(kAll.begin(), kAll.end(), name) == kAll.end()) {
      return usage_error(c, "unknown family check '" + name + "'");
    }
  }
  std::vector<Row> rows;
  for (const auto& name : selected) {
    RowSink sink(p, name);
    try {
      if (name == "representation") check_representation(p, sink);
      if (name == "integrals") check_integrals(p, sink);
      if (name == "threshold") check_threshold(p, sink);
      if (name == "kernels") check_kernels(p, sink);
      if (name == "min-c0") check_min_c0(p, c, sink);
    } catch (const Error& err) {
      sink.flag(name, err.what());
    }
    rows.insert(rows.end(), sink.rows.begin(), sink.rows.end());
  }
  RunResult r;
  r.exit_code = std::any_of(rows.begin(), rows.end(), [](const Row& x) { return x.status == Status::Fail; })
                    ? kFail
                    : kOk;
  r.report["params"] = {{"a", p.a}, {"b", p.b}, {"d", p.d}, {"c0", p.c0},
                        {"classical", p.classical()}, {"symmetric", p.symmetric()}};
  r.report["rows"] = Json::array();
  r.csv = kCsvHeader;
  r.text = "family " + to_string(p) + (p.classical() ? " [classical]" : "") + "\n";
  for (const auto& row : rows) {
    r.report["rows"].push_back(row_json(row));
    r.csv += row_csv(p, row);
    r.text += "  [" + std::string(status_name(row.status)) + "] " + row.check + ": " + row.quantity +
              (std::isnan(row.value) ? "" : " = " + short_num(row.value)) +
              (std::isnan(row.reference) ? "" : " (reference " + short_num(row.reference) + ")") +
              (row.note.empty() ? "" : "  " + row.note) + "\n";
  }
  r.report["flagged"] = std::count_if(rows.begin(), rows.end(), [](const Row& x) { return x.status != Status::Pass; });
  finish(r, c);
  return r;
}

// -------------------------------------------------------------- family-scan

namespace {

std::vector<FamilyParams> scan_params(const RunConfig& c) {
  std::vector<FamilyParams> out;
  if (c.random > 0) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> ua(0.2, 3.0), ub(0.0, 3.0), ud(-0.5, 0.9);
    for (int i = 0; i < c.random; ++i) {
      FamilyParams p = c.family;
      p.a = ua(rng);
      p.b = ub(rng);
      p.d = ud(rng);
      out.push_back(p);
    }
    return out;
  }
  const auto as = c.a_list.empty() ? std::vector<double>{c.family.a} : c.a_list;
  const auto bs = c.b_list.empty() ? std::vector<double>{c.family.b} : c.b_list;
  const auto ds = c.d_list.empty() ? std::vector<double>{c.family.d} : c.d_list;
  for (double a : as) {
    for (double b : bs) {
      for (double d : ds) {
        FamilyParams p = c.family;
        p.a = a;
        p.b = b;
        p.d = d;
        out.push_back(p);
      }
    }
  }
  return out;
}

std::vector<Row> scan_rows(const FamilyParams& p) {
  RowSink s(p, "scan");
  try {
    p.validate();
  } catch (const Error& err) {
    s.flag("params", err.what());
    return s.rows;
  }
  s.info("x0", limit_const_x0(p), kNaN);
  const double c = threshold_c(p);
  s.info("c", c, kNaN);
  s.info("alpha", alpha_const(p), 1.0 - c);
  const auto closed = closed_integrals(p);
  try {
    const auto q = quad_integrals(p);
    s.graded("I0", q.I0, closed.I0, 1e-9, "quadrature vs closed form");
    s.graded("I1", q.I1, closed.I1, 1e-9, "quadrature vs closed form");
  } catch (const Error& err) {
    s.flag("I0", err.what());
  }
  const auto g = gn_limit_probe(p, {1e4});
  if (g[0].ok) {
    s.graded("gn(x=1e4)", g[0].value, c, 1e-3);
  } else {
    s.flag("gn(x=1e4)", g[0].diagnostic);
  }
  return s.rows;
}

Json plot_data(const FamilyParams& p, const std::string& what, std::vector<double>& xs, std::vector<double>& ys) {
  if (what == "density") {
    for (int i = 0; i < 199; ++i) {
      const double s = (i + 1) / 200.0;
      xs.push_back(s);
      ys.push_back(density_g(s, 1.0 - s, p));
    }
  } else if (what == "h") {
    for (double t : log_points(0.01, 50.0, 100)) {
      xs.push_back(t);
      ys.push_back(h_kernel(t, p));
    }
  } else if (what == "u" || what == "w") {
    const auto scan = positivity_scan(p, log_points(0.01, 10.0, 50));
    for (const auto& q : scan.points) {
      xs.push_back(q.t);
      ys.push_back(what == "u" ? q.u : q.w);
    }
  } else if (what == "gn") {
    for (const auto& g : gn_limit_probe(p, log_points(1.0, 1e5, 50))) {
      if (!g.ok) continue;
      xs.push_back(g.x);
      ys.push_back(g.value);
    }
  } else {
    throw PreconditionError("unknown plot quantity '" + what + "' (density, h, u, w, gn)");
  }
  Json jx = Json::array(), jy = Json::array();
  for (double v : xs) jx.push_back(jnum(v));
  for (double v : ys) jy.push_back(jnum(v));
  return {{"quantity", what}, {"x", jx}, {"y", jy}};
}

}  // namespace

RunResult run_family_scan(const RunConfig& c) {
  const auto params = scan_params(c);
  RunResult r;
  if (!c.plot.empty()) {
    if (params.empty()) return usage_error(c, "no parameters to plot");
    std::vector<double> xs, ys;
    try {
      params.front().validate();
      r.report["plot"] = plot_data(params.front(), c.plot, xs, ys);
    } catch (const Error& err) {
      return usage_error(c, err.what());
    }
    r.csv = "x,y\n";
    for (std::size_t i = 0; i < xs.size(); ++i) r.csv += num(xs[i]) + "," + num(ys[i]) + "\n";
    r.text = r.csv;
    finish(r, c);
    return r;
  }
  const auto per = tabulate<std::vector<Row>>(params.size(), [&](std::size_t i) { return scan_rows(params[i]); });
  r.report["rows"] = Json::array();
  r.csv = kCsvHeader;
  for (std::size_t i = 0; i < params.size(); ++i) {
    for (const auto& row : per[i]) {
      Json j = row_json(row);
      j["a"] = params[i].a;
      j["b"] = params[i].b;
      j["d"] = params[i].d;
      j["c0"] = params[i].c0;
      r.report["rows"].push_back(j);
      r.csv += row_csv(params[i], row);
    }
  }
  r.text = r.csv;
  finish(r, c);
  return r;
}

// ------------------------------------------------------------------ min-c0

RunResult run_min_c0(const RunConfig& c) {
  const FamilyParams& p = c.family;
  try {
    p.validate();
  } catch (const Error& err) {
    return usage_error(c, err.what());
  }
  MinC0Options o;
  o.lo = c.lo;
  o.hi = c.hi;
  o.tol = c.tol;
  o.order = c.order_or(10);
  o.points = c.points.value_or(24);
  o.grid_lo = c.grid_lo;
  o.grid_hi = c.grid_hi;
  RunResult r;
  const double ref = threshold_c(p);
  try {
    const auto m = empirical_min_c0(p, o);
    r.report["value"] = m.value;
    r.report["certifications"] = m.certifications;
    r.report["threshold_c"] = ref;
    r.report["discrepancy"] = std::abs(m.value - ref);
    Row row{"min-c0", "empirical min c0", m.value, ref, std::abs(m.value - ref), Status::Pass, {}};
    r.csv = std::string(kCsvHeader) + row_csv(p, row);
    r.text = "empirical min c0 = " + short_num(m.value) + " (threshold c = " + short_num(ref) + ")\n";
  } catch (const PreconditionError& err) {
    r.exit_code = kInconclusive;
    r.report["error"] = {{"message", err.what()}};
    r.csv = std::string(kCsvHeader);
    r.text = std::string("min-c0: ") + err.what() + "\n";
  }
  r.report["grid"] = {{"points", o.points}, {"N", o.order}, {"lo", o.grid_lo}, {"hi", o.grid_hi}};
  finish(r, c);
  return r;
}

RunResult run_config(const RunConfig& c) {
  if (c.command == "classify") return run_classify(c);
  if (c.command == "certify") return run_certify(c);
  if (c.command == "family-verify" || c.command == "family") return run_family(c);
  if (c.command == "family-scan") return run_family_scan(c);
  if (c.command == "min-c0") return run_min_c0(c);
  return usage_error(c, "unknown command '" + c.command + "'");
}

}  // namespace cmcheck::cli
