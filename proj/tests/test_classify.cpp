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

#include <doctest.h>

#include <algorithm>
#include <random>

#include "cmcheck/catalog.hpp"
#include "cmcheck/certify.hpp"
#include "cmcheck/classify.hpp"
#include "cmcheck/expr.hpp"
#include "corpus.hpp"
#include "test_support.hpp"

using namespace cmcheck;
using K = ClassKind;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const Interval kProbe{0.25, 16.0};
const Bindings kBind{{"a", 1.5}};

}  // namespace

TEST_CASE("examples") {
  const auto j1 = classify(parse("exp(-x)"), {0, kInf});
  CHECK(j1.kind == K::CompletelyMonotonic);
  CHECK(j1.rule_ids() == std::vector<std::string>{"R3"});

  ClassifyOptions o;
  o.bindings = {{"a", 1.0}};
  const auto j2 = classify(parse("exp(a/x)"), {0, kInf}, o);
  CHECK(j2.kind == K::CompletelyMonotonic);
  CHECK(j2.rule_ids() == std::vector<std::string>{"R13", "R6"});

  const auto j3 = classify(parse("x*x"), {0, kInf});
  CHECK(j3.kind == K::AbsolutelyMonotonic);
  CHECK_FALSE(j3.establishes(K::CompletelyMonotonic));
}

TEST_CASE("interval gating") {
  CHECK(classify(parse("x^x"), {0.0, 0.35}).kind == K::CompletelyMonotonic);
  CHECK(classify(parse("x^x"), {0.0, 0.35}).rule_ids() == std::vector<std::string>{"R11"});
  CHECK(classify(parse("x^x"), {0.0, 0.5}).kind != K::CompletelyMonotonic);
  CHECK(classify(parse("exp(-x)"), {-1.0, 1.0}).kind == K::Unknown);
  CHECK(classify(parse("exp(-x)"), {2.0, 1.0}).kind == K::Unknown);
}

TEST_CASE("sign constraints on bound parameters") {
  ClassifyOptions o;
  o.bindings = {{"a", -1.0}};
  CHECK_FALSE(classify(parse("exp(a/x)"), {0, kInf}, o).establishes(K::CompletelyMonotonic));
  // an unbound parameter has no known sign
  CHECK_FALSE(classify(parse("exp(b/x)"), {0, kInf}, o).establishes(K::CompletelyMonotonic));
}

TEST_CASE("contested rules stay off unless allowed") {
  const auto e = parse("x*x");
  ClassifyOptions o;
  o.allow_contested = true;
  const auto j = classify(e, {0, kInf}, o);
  CHECK(j.kind == K::CompletelyMonotonic);
  CHECK(j.contested);
  const auto ids = j.rule_ids();
  CHECK(std::find(ids.begin(), ids.end(), "R20") != ids.end());

  // the numeric certifier refutes it at n = 1
  const auto r = certify(K::CompletelyMonotonic, expr_evaluator(e, {}), CertGrid::inside({0, kInf}, 16, 4));
  REQUIRE(r.verdict == Verdict::Fail);
  CHECK(r.violations.front().n == 1);
  for (const auto& v : r.violations) CHECK(v.n % 2 == 1);
}

TEST_CASE("rule table") {
  for (const auto* id : {"R18", "R19", "R20", "R21"}) {
    REQUIRE(find_rule(id) != nullptr);
    CHECK(find_rule(id)->contested);
  }
  for (const auto* id : {"R1", "R3", "R6", "R13", "R14"}) CHECK_FALSE(find_rule(id)->contested);
  CHECK(find_rule("R99") == nullptr);
}

TEST_CASE("soundness on the random corpus") {
  const auto exprs = cmcheck::testing::corpus();
  REQUIRE(exprs.size() == 200);
  int cm = 0;
  for (const auto& text : exprs) {
    INFO(text);
    const auto e = parse(text);
    const auto j = classify(e, kProbe, {kBind});
    if (!j.establishes_uncontested(K::CompletelyMonotonic)) continue;
    ++cm;
    const auto r = certify(K::CompletelyMonotonic, expr_evaluator(e, kBind),
                           CertGrid::log_spaced(kProbe.lo, kProbe.hi, 16, 10));
    CHECK(r.verdict == Verdict::Pass);
  }
  MESSAGE(cm << " CM judgments certified");
  CHECK(cm >= 100);
}

TEST_CASE("traces replay to their judgment") {
  for (const auto& text : cmcheck::testing::corpus()) {
    for (bool contested : {false, true}) {
      ClassifyOptions o;
      o.bindings = kBind;
      o.allow_contested = contested;
      const auto j = classify(parse(text), kProbe, o);
      for (const auto& [kind, d] : j.facts) {
        INFO(text << " " << to_string(kind));
        REQUIRE(replay(d) == kind);
      }
      if (j.trace) CHECK(replay(*j.trace) == j.kind);
      CHECK(j.contested == (j.trace && j.trace->contested));
    }
  }
}

TEST_CASE("lattice monotonicity under rule subsets") {
  std::vector<std::string> ids;
  for (const auto& r : rule_table()) ids.emplace_back(r.id);
  std::mt19937_64 rng(cmcheck::testing::kSeed + 7);
  std::bernoulli_distribution drop(0.25);
  const auto exprs = cmcheck::testing::corpus();
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    const auto e = parse(exprs[i]);
    ClassifyOptions full;
    full.bindings = kBind;
    ClassifyOptions sub = full;
    for (const auto& id : ids) {
      if (drop(rng)) sub.disabled_rules.insert(id);
    }
    const auto big = classify(e, kProbe, full);
    const auto small = classify(e, kProbe, sub);
    INFO(exprs[i]);
    CHECK(leq(small.kind, big.kind));
    for (const auto& [kind, d] : small.facts) CHECK(big.establishes(kind));
  }
}

TEST_CASE("catalog judgments") {
  struct Want {
    const char* name;
    K kind;
    std::vector<std::string> rules;
  };
  const std::vector<Want> wants = {
      {"exp_neg_x", K::CompletelyMonotonic, {"R3"}},
      {"exp_a_over_x", K::CompletelyMonotonic, {"R13", "R6"}},
      {"x_pow_x", K::CompletelyMonotonic, {"R11"}},
      {"log1p", K::Bernstein, {}},
      {"log1p_over_x", K::CompletelyMonotonic, {}},
      {"recip_log1p", K::CompletelyMonotonic, {}},
      {"one_plus_x_pow_recip", K::CompletelyMonotonic, {}},
      {"sum_x_pow_ix", K::CompletelyMonotonic, {}},
      {"sum_recip_powers", K::CompletelyMonotonic, {}},
  };
  for (const auto& w : wants) {
    const auto& entry = catalog_lookup(w.name);
    INFO(w.name);
    const auto j = classify(entry.expr, entry.interval, {entry.bindings});
    CHECK(j.kind == w.kind);
    CHECK(j.kind == entry.claimed);
    CHECK_FALSE(j.contested);
    if (!w.rules.empty()) CHECK(j.rule_ids() == w.rules);
  }
  // contested entries never come out uncontested CM
  for (const auto& entry : catalog()) {
    if (!entry.contested) continue;
    INFO(entry.name);
    const auto j = classify(entry.expr, entry.interval, {entry.bindings});
    CHECK_FALSE(j.establishes_uncontested(K::CompletelyMonotonic));
  }
  CHECK(catalog_lookup("x_pow_x").interval.hi == doctest::Approx(std::exp(-1.0)));
  CHECK(catalog_lookup("recip_self_pow").contested);
  CHECK(catalog_lookup("log1p_over_x_inverse").claimed == K::Bernstein);
  CHECK_THROWS_AS(catalog_lookup("nope"), PreconditionError);
}

TEST_CASE("catalog entries against the certifier") {
  // extended precision: binary64 loses too many digits near the left end
  struct Probe {
    const char* name;
    Interval where;
    Verdict want;
  };
  const std::vector<Probe> probes = {
      {"exp_neg_x", {0.01, 100}, Verdict::Pass},
      {"exp_a_over_x", {0.1, 100}, Verdict::Pass},
      {"log1p_over_x", {0.01, 100}, Verdict::Pass},
      {"recip_log1p", {0.01, 100}, Verdict::Pass},
      {"one_plus_x_pow_recip", {0.01, 100}, Verdict::Pass},
      {"log1p", {0.01, 100}, Verdict::Pass},
      {"log1p_over_x_inverse", {0.01, 100}, Verdict::Pass},
      {"x_pow_x", {0.01, 0.35}, Verdict::Pass},
      {"sum_x_pow_ix", {0.01, 0.35}, Verdict::Pass},
      {"remark_f", {0.01, 100}, Verdict::Pass},
      {"sum_recip_powers", {0.1, 100}, Verdict::Pass},
      {"neg_recip_am", {-1, -0.01}, Verdict::Pass},
      {"recip_self_pow", {0.1, 50}, Verdict::Fail},
      {"sum_x_pow_neg_i_over_x", {0.1, 50}, Verdict::Fail},
      {"remark_g", {0.1, 50}, Verdict::Fail},
      {"neg_log_power", {0.1, 100}, Verdict::Fail},
      {"two_bernstein_product", {0.1, 100}, Verdict::Fail},
      {"power_sum_pow_sum_signed", {0.1, 100}, Verdict::Fail},
  };
  for (const auto& p : probes) {
    const auto& entry = catalog_lookup(p.name);
    INFO(p.name);
    const auto grid = p.where.lo < 0 ? CertGrid::linear(p.where.lo, p.where.hi, 16, 8)
                                     : CertGrid::log_spaced(p.where.lo, p.where.hi, 16, 8);
    const auto r = certify(entry.claimed, expr_evaluator(entry.expr, entry.bindings, 256), grid);
    CHECK(r.verdict == p.want);
  }
}
