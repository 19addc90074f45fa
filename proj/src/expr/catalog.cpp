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

#include "cmcheck/catalog.hpp"

#include <cmath>

#include "cmcheck/errors.hpp"

namespace cmcheck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const double kInvE = std::exp(-1.0);

CatalogEntry entry(std::string name, std::string text, ClassKind claimed, Interval iv, Bindings b = {},
                   bool contested = false, std::string note = {}) {
  CatalogEntry e{std::move(name), text, parse(text), claimed, iv, std::move(b), contested, std::move(note)};
  return e;
}

std::vector<CatalogEntry> build() {
  using K = ClassKind;
  const Interval pos{0.0, kInf};
  std::vector<CatalogEntry> c;
  c.push_back(entry("exp_neg_x", "exp(-x)", K::CompletelyMonotonic, pos));
  c.push_back(entry("exp_a_over_x", "exp(a/x)", K::CompletelyMonotonic, pos, {{"a", 1.0}}));
  c.push_back(entry("log_pow_log", "log(x)^log(x)", K::CompletelyMonotonic, {0.0, kInvE}, {}, true,
                    "the base log x is negative on (0, 1/e); no real power is defined"));
  c.push_back(entry("log1p_over_x", "log(1 + x)/x", K::CompletelyMonotonic, pos));
  c.push_back(entry("recip_log1p", "1/log(1 + x)", K::CompletelyMonotonic, pos));
  c.push_back(entry("one_plus_x_pow_recip", "(1 + x)^(1/x)", K::CompletelyMonotonic, pos));
  c.push_back(entry("cm_of_log", "1/(1 + log(x))", K::CompletelyMonotonic, pos, {}, true,
                    "log x is negative on (0, 1); the instance has a pole at 1/e"));
  c.push_back(entry("iterated_log_ratio", "log(1 + log(x))/log(x)", K::CompletelyMonotonic, pos, {}, true,
                    "log x is undefined as an argument of log(1 + .) below 1/e"));
  c.push_back(entry("neg_log_power", "-log(a + b*x^0.5)", K::CompletelyMonotonic, pos, {{"a", 1.0}, {"b", 1.0}},
                    true, "negative for large x, so it cannot be completely monotonic"));
  c.push_back(entry("neg_recip_am", "-1/x", K::AbsolutelyMonotonic, {-1.0, 0.0}, {}, false,
                    "interval lies outside (0, inf); certify only"));
  c.push_back(entry("log1p", "log(1 + x)", K::Bernstein, pos));
  c.push_back(entry("log1p_over_x_inverse", "x/log(1 + x)", K::Bernstein, pos));
  c.push_back(entry("x_pow_x", "x^x", K::CompletelyMonotonic, {0.0, kInvE}));
  c.push_back(entry("recip_self_pow", "(1/x)^(1/x)", K::CompletelyMonotonic, pos, {}, true,
                    "increasing for x > e: the derivative has the sign of log x - 1"));
  c.push_back(entry("sum_x_pow_ix", "a0 + a1*x^x + a2*(x^x)^2", K::CompletelyMonotonic, {0.0, kInvE},
                    {{"a0", 1.0}, {"a1", 2.0}, {"a2", 1.0}}));
  c.push_back(entry("sum_x_pow_neg_i_over_x", "a0 + a1*(1/x)^(1/x) + a2*((1/x)^(1/x))^2", K::CompletelyMonotonic,
                    pos, {{"a0", 1.0}, {"a1", 2.0}, {"a2", 1.0}}, true, "built on (1/x)^(1/x), which is not monotone"));
  c.push_back(entry("remark_f", "2*log(x + 1)/x^3 - 2/(x^2*(x + 1)) - 1/(x*(x + 1)^2)", K::CompletelyMonotonic,
                    pos));
  c.push_back(entry("remark_g", "x^(-1/x - 4)*(log(x)^2 + (-2*x - 2)*log(x) + 3*x + 1)", K::CompletelyMonotonic,
                    pos, {}, true, "second derivative of (1/x)^(1/x); inherits its failure"));
  c.push_back(entry("sum_recip_powers", "a1/x + a2/x^2 + a3/x^3", K::CompletelyMonotonic, pos,
                    {{"a1", 1.0}, {"a2", 2.0}, {"a3", 0.5}}));
  c.push_back(entry("power_sum_pow_sum", "(a0 + a1/x + a2/x^2)^(a0 + a1/x + a2/x^2)", K::CompletelyMonotonic, pos,
                    {{"a0", 1.0}, {"a1", 1.0}, {"a2", 1.0}}, true, "relies on the f^g rule for two CM functions"));
  c.push_back(entry("power_sum_pow_sum_signed", "(a0 + a1/x + a2/x^2)^(a0 + a1/x + a2/x^2)",
                    K::CompletelyMonotonic, pos, {{"a0", 1.0}, {"a1", -0.5}, {"a2", 1.0}}, true,
                    "negative coefficient; outside the positive-coefficient lemma"));
  c.push_back(entry("two_bernstein_product", "x*x", K::CompletelyMonotonic, pos, {}, true,
                    "x^2 is increasing; refuted at n = 1"));
  return c;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> table = build();
  return table;
}

const CatalogEntry& catalog_lookup(std::string_view name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return e;
  }
  throw PreconditionError("unknown catalog entry '" + std::string(name) + "'");
}

}  // namespace cmcheck
