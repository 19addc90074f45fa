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

#pragma once

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cmcheck/expr.hpp"

namespace cmcheck {

/// Monotonicity classes. The declaration order is the merge order used when
/// several classes are established for one expression: later is better.
enum class ClassKind {
  Unknown,
  Positive,
  CMDerivative,  ///< nonnegative with a completely monotonic derivative
  AbsolutelyMonotonic,
  Bernstein,
  CompletelyMonotonic,
};

std::string_view to_string(ClassKind kind);
/// Accepts the long names and the short forms cm, bernstein, am, positive,
/// cmd, unknown (case-sensitive).
ClassKind parse_class_kind(std::string_view text);

int rank(ClassKind kind);
/// Least upper bound in the merge order.
ClassKind join(ClassKind a, ClassKind b);
bool leq(ClassKind a, ClassKind b);

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();

  bool valid() const { return lo < hi; }
  bool within(const Interval& outer) const { return lo >= outer.lo && hi <= outer.hi; }
};

std::string to_string(const Interval& iv);

/// One closure rule. `premises` lists the classes the child derivations
/// must carry, in order; a variadic rule repeats premises.front() for every
/// child. Unknown in a premise slot accepts any class.
struct Rule {
  std::string_view id;
  std::string_view statement;
  std::string_view remark;
  ClassKind conclusion;
  std::vector<ClassKind> premises;
  bool variadic = false;
  bool contested = false;
  Interval validity;
  /// Axioms and positivity bookkeeping; omitted from rule_ids().
  bool structural = false;
};

const std::vector<Rule>& rule_table();
/// nullptr when the id is not in the table.
const Rule* find_rule(std::string_view id);

struct Derivation {
  std::string rule;
  ClassKind kind = ClassKind::Unknown;
  std::string subject;
  std::string note;
  bool contested = false;
  std::vector<Derivation> premises;
};

struct ClassifyOptions {
  Bindings bindings;
  bool allow_contested = false;
  /// Rules switched off, by id.
  std::set<std::string, std::less<>> disabled_rules;
};

struct ClassJudgment {
  ClassKind kind = ClassKind::Unknown;
  Interval interval;
  std::optional<Derivation> trace;
  bool contested = false;
  /// Every class established for the expression, with its best derivation.
  std::map<ClassKind, Derivation> facts;

  /// Non-structural rule ids of the trace in post-order (premises first).
  std::vector<std::string> rule_ids() const;
  bool establishes(ClassKind kind) const { return facts.count(kind) != 0; }
  bool establishes_uncontested(ClassKind kind) const {
    auto it = facts.find(kind);
    return it != facts.end() && !it->second.contested;
  }
};

/// Best judgment derivable from the rule table, syntax-directed; Unknown
/// when nothing applies or the interval is not inside (0, inf).
ClassJudgment classify(const Expr& e, const Interval& interval, const ClassifyOptions& options = {});

/// Re-derives the class of a derivation from the rule table alone, checking
/// premise classes and contested flags at every step. Throws Error when the
/// trace is inconsistent.
ClassKind replay(const Derivation& d);

std::vector<std::string> rule_ids(const Derivation& d);

}  // namespace cmcheck
