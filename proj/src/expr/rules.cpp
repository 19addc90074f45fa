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
#include <sstream>

#include "cmcheck/classify.hpp"

namespace cmcheck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
const Interval kPositiveAxis{0.0, kInf};

using K = ClassKind;

std::vector<Rule> build_table() {
  const Interval x_pow_x_range{0.0, std::exp(-1.0)};
  std::vector<Rule> t = {
      {"A1", "a nonnegative constant is completely monotonic", "", K::CompletelyMonotonic, {}, false, false, kPositiveAxis, true},
      {"A2", "a nonnegative constant is absolutely monotonic", "", K::AbsolutelyMonotonic, {}, false, false, kPositiveAxis, true},
      {"A3", "a nonnegative constant is a Bernstein function", "", K::Bernstein, {}, false, false, kPositiveAxis, true},
      {"A4", "the identity x is a Bernstein function on (0, inf)", "", K::Bernstein, {}, false, false, kPositiveAxis, true},
      {"A5", "the identity x is absolutely monotonic on (0, inf)", "", K::AbsolutelyMonotonic, {}, false, false, kPositiveAxis, true},
      {"A6", "a Bernstein function is nonnegative with completely monotonic derivative", "", K::CMDerivative, {K::Bernstein}, false, false, kPositiveAxis, true},
      {"P1", "strict positivity is preserved by the node", "", K::Positive, {K::Unknown}, true, false, kPositiveAxis, true},

      {"R1", "sums and products of completely monotonic functions are completely monotonic", "products via the Leibniz rule",
       K::CompletelyMonotonic, {K::CompletelyMonotonic, K::CompletelyMonotonic}},
      {"R2", "g(f) is completely monotonic for f Bernstein and g completely monotonic", "engine uses g(y) = y^alpha, alpha < 0",
       K::CompletelyMonotonic, {K::Bernstein, K::Positive}},
      {"R3", "exp(-u f) is completely monotonic for f Bernstein and u > 0", "",
       K::CompletelyMonotonic, {K::Bernstein}},
      {"R4", "F(g) is completely monotonic for F absolutely monotonic on the range of g and g completely monotonic",
       "engine uses F(y) = y^k (k a positive integer) and F(y) = a^y (a > 1)",
       K::CompletelyMonotonic, {K::CompletelyMonotonic}},
      {"R5", "F(g) is absolutely monotonic for F, g absolutely monotonic with g inside the domain of F",
       "engine uses F = exp, a^y (a > 1) and y^k",
       K::AbsolutelyMonotonic, {K::AbsolutelyMonotonic}},
      {"R6", "exp(f) is completely monotonic for f completely monotonic", "",
       K::CompletelyMonotonic, {K::CompletelyMonotonic}},
      {"R7", "a^(-t f) is completely monotonic for a > 1, t > 0",
       "stated for positive f; the reduction to exp(-(t ln a) f) needs f Bernstein, so the engine requires that",
       K::CompletelyMonotonic, {K::Bernstein}},
      {"R8", "f(g) is completely monotonic for f completely monotonic and g >= 0 with completely monotonic derivative",
       "engine applies it by substitution when g is strictly positive",
       K::CompletelyMonotonic, {K::CompletelyMonotonic, K::CMDerivative, K::Positive}},
      {"R9", "f(x^alpha) is completely monotonic for f completely monotonic and 0 < alpha < 1", "",
       K::CompletelyMonotonic, {K::CompletelyMonotonic}},
      {"R10", "F(g) is a Bernstein function for F absolutely monotonic and g Bernstein",
       "refuted by F = exp, g = x: exp(x) is convex",
       K::Bernstein, {K::Bernstein}, false, true},
      {"R11", "f is completely monotonic when f > 0 and (-log f)' is completely monotonic",
       "engine applies it to x^x, where (-log f)' = -log x - 1 is completely monotonic on (0, 1/e]",
       K::CompletelyMonotonic, {}, false, false, x_pow_x_range},
      {"R12", "f(g) is completely monotonic for f completely monotonic and g > 0 with completely monotonic derivative",
       "same conclusion as R8; the engine reports R8",
       K::CompletelyMonotonic, {K::CompletelyMonotonic, K::CMDerivative}},
      {"R13", "sum of a_i / x^i with all a_i > 0 is completely monotonic", "",
       K::CompletelyMonotonic, {}},
      {"R14", "1/f is completely monotonic for f a positive Bernstein function", "",
       K::CompletelyMonotonic, {K::Bernstein, K::Positive}},
      {"R15", "-log f is completely monotonic for f Bernstein",
       "-log f is negative where f > 1; the engine also requires f <= 1 on the interval",
       K::CompletelyMonotonic, {K::Bernstein, K::Positive}},
      {"R16", "f^g is completely monotonic for f Bernstein and g completely monotonic",
       "refuted by f = x, g = 1",
       K::CompletelyMonotonic, {K::Bernstein, K::CompletelyMonotonic}, false, true},
      {"R17", "f^g is completely monotonic for f completely monotonic and g Bernstein",
       "refuted by f = 2, g = x",
       K::CompletelyMonotonic, {K::CompletelyMonotonic, K::Bernstein}, false, true},
      {"R18", "f^g is completely monotonic for f and g completely monotonic",
       "the argument needs -g log h completely monotonic while log h may change sign",
       K::CompletelyMonotonic, {K::CompletelyMonotonic, K::CompletelyMonotonic}, false, true},
      {"R19", "(-f)^(-g) is completely monotonic for f and g Bernstein",
       "raises a negative base to a real power",
       K::CompletelyMonotonic, {K::Bernstein, K::Bernstein}, false, true},
      {"R20", "a product of an even number of Bernstein functions is completely monotonic",
       "refuted by x * x, which is increasing",
       K::CompletelyMonotonic, {K::Bernstein}, true, true},
      {"R21", "power towers of completely monotonic or Bernstein functions are completely monotonic",
       "depends on R18 and R19",
       K::CompletelyMonotonic, {K::Unknown, K::CompletelyMonotonic}, false, true},
      {"R22", "f^(2n) and -f^(2n+1) are completely monotonic for f completely monotonic",
       "checked numerically on certification reports; not a syntactic rule",
       K::CompletelyMonotonic, {K::CompletelyMonotonic}},
      {"R23", "polynomials and power series with positive coefficients are absolutely monotonic",
       "engine closes absolutely monotonic terms under sums and products",
       K::AbsolutelyMonotonic, {K::AbsolutelyMonotonic}, true},

      {"S1", "sums and nonnegative multiples of Bernstein functions are Bernstein functions", "",
       K::Bernstein, {K::Bernstein}, true},
      {"S2", "x^alpha is a Bernstein function for 0 < alpha <= 1", "",
       K::Bernstein, {}},
      {"S3", "log(c + f) is a Bernstein function for c >= 1 and f Bernstein", "",
       K::Bernstein, {K::Bernstein}},
      {"S4", "f(x)/x is completely monotonic for f Bernstein", "",
       K::CompletelyMonotonic, {K::Bernstein}},
  };
  return t;
}

}  // namespace

const std::vector<Rule>& rule_table() {
  static const std::vector<Rule> table = build_table();
  return table;
}

const Rule* find_rule(std::string_view id) {
  const auto& t = rule_table();
  auto it = std::find_if(t.begin(), t.end(), [&](const Rule& r) { return r.id == id; });
  return it == t.end() ? nullptr : &*it;
}

std::string_view to_string(ClassKind kind) {
  switch (kind) {
    case K::Unknown: return "Unknown";
    case K::Positive: return "Positive";
    case K::CMDerivative: return "CMDerivative";
    case K::AbsolutelyMonotonic: return "AbsolutelyMonotonic";
    case K::Bernstein: return "Bernstein";
    case K::CompletelyMonotonic: return "CompletelyMonotonic";
  }
  return "Unknown";
}

ClassKind parse_class_kind(std::string_view text) {
  for (auto k : {K::Unknown, K::Positive, K::CMDerivative, K::AbsolutelyMonotonic, K::Bernstein,
                 K::CompletelyMonotonic}) {
    if (text == to_string(k)) return k;
  }
  if (text == "cm") return K::CompletelyMonotonic;
  if (text == "bernstein") return K::Bernstein;
  if (text == "am") return K::AbsolutelyMonotonic;
  if (text == "positive") return K::Positive;
  if (text == "cmd") return K::CMDerivative;
  if (text == "unknown") return K::Unknown;
  throw PreconditionError("unknown class '" + std::string(text) + "'");
}

int rank(ClassKind kind) { return static_cast<int>(kind); }
ClassKind join(ClassKind a, ClassKind b) { return rank(a) >= rank(b) ? a : b; }
bool leq(ClassKind a, ClassKind b) { return rank(a) <= rank(b); }

std::string to_string(const Interval& iv) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << iv.lo << ", " << iv.hi << ')';
  return os.str();
}

ClassKind replay(const Derivation& d) {
  const Rule* rule = find_rule(d.rule);
  if (!rule) throw Error("trace names unknown rule '" + d.rule + "'");
  std::vector<ClassKind> child_kinds;
  bool contested = rule->contested;
  for (const auto& p : d.premises) {
    child_kinds.push_back(replay(p));
    contested = contested || p.contested;
  }
  auto premise_at = [&](std::size_t i) {
    return rule->variadic ? rule->premises.front() : rule->premises.at(i);
  };
  if (!rule->variadic && child_kinds.size() != rule->premises.size()) {
    throw Error("rule " + d.rule + " expects " + std::to_string(rule->premises.size()) + " premise(s), trace has " +
                std::to_string(child_kinds.size()));
  }
  for (std::size_t i = 0; i < child_kinds.size(); ++i) {
    const ClassKind want = premise_at(i);
    if (want != K::Unknown && child_kinds[i] != want) {
      throw Error("rule " + d.rule + " premise " + std::to_string(i) + " needs " + std::string(to_string(want)) +
                  ", trace gives " + std::string(to_string(child_kinds[i])));
    }
  }
  if (d.kind != rule->conclusion) {
    throw Error("rule " + d.rule + " concludes " + std::string(to_string(rule->conclusion)) + ", trace records " +
                std::string(to_string(d.kind)));
  }
  if (contested != d.contested) throw Error("contested flag of " + d.rule + " does not match its premises");
  return rule->conclusion;
}

std::vector<std::string> rule_ids(const Derivation& d) {
  std::vector<std::string> out;
  for (const auto& p : d.premises) {
    auto sub = rule_ids(p);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  const Rule* rule = find_rule(d.rule);
  if (rule && !rule->structural) out.push_back(d.rule);
  return out;
}

std::vector<std::string> ClassJudgment::rule_ids() const {
  if (!trace) return {};
  return cmcheck::rule_ids(*trace);
}

}  // namespace cmcheck
