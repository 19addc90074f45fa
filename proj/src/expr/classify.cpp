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
#include <optional>
#include <string>
#include <unordered_map>

#include "cmcheck/classify.hpp"

namespace cmcheck {

namespace {

using K = ClassKind;
using Facts = std::map<ClassKind, Derivation>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxSubstitutionDepth = 3;
// Parser identifiers never contain '#', so this cannot clash with a user parameter.
constexpr const char* kPlaceholder = "#u";

std::string fmt(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

bool is_integer(double v) { return std::isfinite(v) && v == std::round(v); }

const Derivation* get(const Facts& f, ClassKind k) {
  auto it = f.find(k);
  return it == f.end() ? nullptr : &it->second;
}

// Any derivation showing the function is nonnegative on the interval.
const Derivation* nonneg(const Facts& f) {
  for (auto k : {K::Positive, K::CompletelyMonotonic, K::Bernstein, K::AbsolutelyMonotonic, K::CMDerivative}) {
    if (auto d = get(f, k)) return d;
  }
  return nullptr;
}

class Classifier {
 public:
  Classifier(const ClassifyOptions& options, Interval interval, int depth)
      : opt_(options), iv_(interval), depth_(depth) {}

  Facts facts(const Expr& e) {
    const std::string key = to_string(e);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Facts f = compute(e, key);
    if (auto b = get(f, K::Bernstein)) offer(f, "A6", key, {*b});
    memo_.emplace(key, f);
    return f;
  }

 private:
  bool enabled(std::string_view id) const {
    const Rule* r = find_rule(id);
    if (!r) return false;
    if (opt_.disabled_rules.count(id)) return false;
    if (r->contested && !opt_.allow_contested) return false;
    return iv_.within(r->validity);
  }

  void offer(Facts& f, std::string_view id, const std::string& subject, std::vector<Derivation> premises,
             std::string note = {}) const {
    if (!enabled(id)) return;
    const Rule* r = find_rule(id);
    Derivation d;
    d.rule = std::string(id);
    d.kind = r->conclusion;
    d.subject = subject;
    d.note = std::move(note);
    d.contested = r->contested;
    for (const auto& p : premises) d.contested = d.contested || p.contested;
    d.premises = std::move(premises);
    auto it = f.find(d.kind);
    if (it == f.end()) {
      f.emplace(d.kind, std::move(d));
    } else if (it->second.contested && !d.contested) {
      it->second = std::move(d);
    }
  }

  std::optional<double> constant_value(const Expr& e) const {
    if (e.contains_var()) return std::nullopt;
    try {
      const double v = eval(e, opt_.bindings, 1.0);
      if (std::isfinite(v)) return v;
    } catch (const Error&) {
    }
    return std::nullopt;
  }

  void constant_facts(Facts& f, double v, const std::string& subject) const {
    if (v >= 0.0) {
      const std::string note = "c = " + fmt(v);
      offer(f, "A1", subject, {}, note);
      offer(f, "A2", subject, {}, note);
      offer(f, "A3", subject, {}, note);
    }
    if (v > 0.0) offer(f, "P1", subject, {}, "positive constant");
  }

  // c / x^k with c > 0 and k a positive integer.
  struct Term {
    double coeff;
    int power;
  };

  std::optional<Term> inverse_power_term(const Expr& e) const {
    auto bare = [](const Expr& t) -> std::optional<int> {
      if (t.op() == Op::Recip && t.arg(0).op() == Op::Var) return 1;
      if (t.op() == Op::PowConst && t.arg(0).op() == Op::Var && t.value() < 0 && is_integer(t.value())) {
        return static_cast<int>(-t.value());
      }
      if (t.op() == Op::Recip && t.arg(0).op() == Op::PowConst && t.arg(0).arg(0).op() == Op::Var &&
          t.arg(0).value() > 0 && is_integer(t.arg(0).value())) {
        return static_cast<int>(t.arg(0).value());
      }
      return std::nullopt;
    };
    if (auto k = bare(e)) return Term{1.0, *k};
    if (e.op() == Op::Mul) {
      for (int side = 0; side < 2; ++side) {
        auto c = constant_value(e.arg(side));
        auto k = bare(e.arg(1 - side));
        if (c && k && *c > 0.0) return Term{*c, *k};
      }
    }
    return std::nullopt;
  }

  Facts compute(const Expr& e, const std::string& subject) {
    Facts f;
    if (!e.contains_var()) {
      if (auto v = constant_value(e)) constant_facts(f, *v, subject);
      return f;
    }
    switch (e.op()) {
      case Op::Var:
        offer(f, "A4", subject, {});
        offer(f, "A5", subject, {});
        offer(f, "P1", subject, {}, "x > 0");
        break;
      case Op::Add:
        add_facts(f, e, subject);
        break;
      case Op::Mul:
        mul_facts(f, e, subject);
        break;
      case Op::Neg:
        neg_facts(f, e, subject);
        break;
      case Op::Recip:
        recip_facts(f, e, subject);
        break;
      case Op::Exp:
        exp_facts(f, e, subject);
        break;
      case Op::Log:
        log_facts(f, e.arg(0), subject);
        break;
      case Op::PowConst:
        pow_const_facts(f, e.arg(0), e.value(), subject);
        break;
      case Op::Pow:
        pow_facts(f, e, subject);
        break;
      case Op::Builtin:
        if (e.name() == "sqrt") {
          pow_const_facts(f, e.arg(0), 0.5, subject);
        } else if (e.name() == "log1p") {
          log_facts(f, Expr::add(Expr::constant(1.0), e.arg(0)), subject);
        }
        break;
      default:
        break;
    }
    if (!get(f, K::CompletelyMonotonic)) substitution_facts(f, e, subject);
    return f;
  }

  void add_facts(Facts& f, const Expr& e, const std::string& subject) {
    const Facts l = facts(e.arg(0));
    const Facts r = facts(e.arg(1));
    for (auto [kind, rule] : {std::pair{K::CompletelyMonotonic, "R1"}, std::pair{K::AbsolutelyMonotonic, "R23"},
                              std::pair{K::Bernstein, "S1"}}) {
      auto a = get(l, kind);
      auto b = get(r, kind);
      if (a && b) offer(f, rule, subject, {*a, *b});
    }
    if (auto a = get(l, K::Positive); a && nonneg(r)) {
      offer(f, "P1", subject, {*a, *nonneg(r)});
    } else if (auto b = get(r, K::Positive); b && nonneg(l)) {
      offer(f, "P1", subject, {*nonneg(l), *b});
    }
  }

  void flatten_product(const Expr& e, std::vector<Expr>& out) const {
    if (e.op() == Op::Mul) {
      flatten_product(e.arg(0), out);
      flatten_product(e.arg(1), out);
    } else {
      out.push_back(e);
    }
  }

  void mul_facts(Facts& f, const Expr& e, const std::string& subject) {
    if (auto t = inverse_power_term(e)) {
      offer(f, "R13", subject, {}, "a_" + std::to_string(t->power) + " = " + fmt(t->coeff));
    }
    const Facts l = facts(e.arg(0));
    const Facts r = facts(e.arg(1));
    if (auto a = get(l, K::CompletelyMonotonic), b = get(r, K::CompletelyMonotonic); a && b) {
      offer(f, "R1", subject, {*a, *b});
    }
    if (auto a = get(l, K::AbsolutelyMonotonic), b = get(r, K::AbsolutelyMonotonic); a && b) {
      offer(f, "R23", subject, {*a, *b});
    }
    const bool l_const = !e.arg(0).contains_var();
    const bool r_const = !e.arg(1).contains_var();
    if (auto a = get(l, K::Bernstein), b = get(r, K::Bernstein); a && b && (l_const || r_const)) {
      offer(f, "S1", subject, {*a, *b});
    }
    auto is_inverse_x = [](const Expr& t) {
      return (t.op() == Op::Recip && t.arg(0).op() == Op::Var) ||
             (t.op() == Op::PowConst && t.arg(0).op() == Op::Var && t.value() == -1.0);
    };
    if (is_inverse_x(e.arg(1))) {
      if (auto a = get(l, K::Bernstein)) offer(f, "S4", subject, {*a});
    } else if (is_inverse_x(e.arg(0))) {
      if (auto b = get(r, K::Bernstein)) offer(f, "S4", subject, {*b});
    }
    if (auto a = get(l, K::Positive), b = get(r, K::Positive); a && b) offer(f, "P1", subject, {*a, *b});

    if (enabled("R20")) {
      std::vector<Expr> factors;
      flatten_product(e, factors);
      std::vector<Derivation> premises;
      for (const auto& factor : factors) {
        if (!factor.contains_var()) break;
        const Facts ff = facts(factor);
        auto b = get(ff, K::Bernstein);
        if (!b) break;
        premises.push_back(*b);
      }
      if (premises.size() == factors.size() && factors.size() % 2 == 0) {
        offer(f, "R20", subject, std::move(premises), std::to_string(factors.size()) + " Bernstein factors");
      }
    }
  }

  void neg_facts(Facts& f, const Expr& e, const std::string& subject) {
    const Expr& inner = e.arg(0);
    if (inner.op() != Op::Log || !std::isfinite(iv_.hi)) return;
    const Expr& u = inner.arg(0);
    const Facts uf = facts(u);
    auto b = get(uf, K::Bernstein);
    auto p = get(uf, K::Positive);
    if (!b || !p) return;
    double sup = kInf;
    try {
      sup = eval(u, opt_.bindings, iv_.hi);
    } catch (const Error&) {
      return;
    }
    if (sup <= 1.0) offer(f, "R15", subject, {*b, *p}, "f <= " + fmt(sup) + " on the interval");
  }

  void recip_facts(Facts& f, const Expr& e, const std::string& subject) {
    if (auto t = inverse_power_term(e)) {
      offer(f, "R13", subject, {}, "a_" + std::to_string(t->power) + " = " + fmt(t->coeff));
    }
    const Facts uf = facts(e.arg(0));
    auto b = get(uf, K::Bernstein);
    auto p = get(uf, K::Positive);
    if (b && p) offer(f, "R14", subject, {*b, *p});
    if (p) offer(f, "P1", subject, {*p});
  }

  void exp_facts(Facts& f, const Expr& e, const std::string& subject) {
    const Expr& u = e.arg(0);
    if (u.op() == Op::Neg) {
      const Facts vf = facts(u.arg(0));
      if (auto b = get(vf, K::Bernstein)) offer(f, "R3", subject, {*b}, "u = 1");
    } else if (u.op() == Op::Mul) {
      for (int side = 0; side < 2; ++side) {
        auto c = constant_value(u.arg(side));
        if (!c || !(*c < 0.0)) continue;
        const Facts vf = facts(u.arg(1 - side));
        if (auto b = get(vf, K::Bernstein)) offer(f, "R3", subject, {*b}, "u = " + fmt(-*c));
      }
    }
    const Facts uf = facts(u);
    if (auto c = get(uf, K::CompletelyMonotonic)) offer(f, "R6", subject, {*c});
    if (auto a = get(uf, K::AbsolutelyMonotonic)) offer(f, "R5", subject, {*a}, "F = exp");
    if (auto b = get(uf, K::Bernstein)) offer(f, "R10", subject, {*b}, "F = exp");
    offer(f, "P1", subject, {}, "exp > 0");
  }

  void log_facts(Facts& f, const Expr& u, const std::string& subject) {
    if (u.op() != Op::Add) return;
    for (int side = 0; side < 2; ++side) {
      auto c = constant_value(u.arg(side));
      if (!c || *c < 1.0) continue;
      const Facts vf = facts(u.arg(1 - side));
      if (auto b = get(vf, K::Bernstein)) offer(f, "S3", subject, {*b}, "c = " + fmt(*c));
      if (*c > 1.0) {
        if (auto n = nonneg(vf)) offer(f, "P1", subject, {*n}, "log of a value > 1");
      } else if (auto p = get(vf, K::Positive)) {
        offer(f, "P1", subject, {*p}, "log of a value > 1");
      }
    }
  }

  void pow_const_facts(Facts& f, const Expr& base, double alpha, const std::string& subject) {
    if (alpha == 0.0) {
      constant_facts(f, 1.0, subject);
      return;
    }
    const Facts bf = facts(base);
    auto pos = get(bf, K::Positive);
    if (alpha > 0 && is_integer(alpha)) {
      const std::string note = "F(y) = y^" + fmt(alpha);
      if (auto c = get(bf, K::CompletelyMonotonic)) offer(f, "R4", subject, {*c}, note);
      if (auto a = get(bf, K::AbsolutelyMonotonic)) offer(f, "R5", subject, {*a}, note);
    }
    if (alpha > 0 && alpha <= 1 && base.op() == Op::Var) offer(f, "S2", subject, {}, "alpha = " + fmt(alpha));
    if (alpha < 0) {
      if (base.op() == Op::Var && is_integer(alpha)) offer(f, "R13", subject, {}, "a_" + fmt(-alpha) + " = 1");
      auto b = get(bf, K::Bernstein);
      if (b && pos) offer(f, "R2", subject, {*b, *pos}, "g(y) = y^" + fmt(alpha));
    }
    if (pos) offer(f, "P1", subject, {*pos});
  }

  void pow_facts(Facts& f, const Expr& e, const std::string& subject) {
    const Expr& base = e.arg(0);
    const Expr& expo = e.arg(1);
    if (auto v = constant_value(expo)) {
      pow_const_facts(f, base, *v, subject);
      return;
    }
    if (auto a = constant_value(base)) {
      const Facts gf = facts(expo);
      if (*a > 1.0) {
        if (expo.op() == Op::Neg) {
          const Facts vf = facts(expo.arg(0));
          if (auto b = get(vf, K::Bernstein)) offer(f, "R7", subject, {*b}, "a = " + fmt(*a) + ", t = 1");
        } else if (expo.op() == Op::Mul) {
          for (int side = 0; side < 2; ++side) {
            auto c = constant_value(expo.arg(side));
            if (!c || !(*c < 0.0)) continue;
            const Facts vf = facts(expo.arg(1 - side));
            if (auto b = get(vf, K::Bernstein)) {
              offer(f, "R7", subject, {*b}, "a = " + fmt(*a) + ", t = " + fmt(-*c));
            }
          }
        }
        if (auto c = get(gf, K::CompletelyMonotonic)) offer(f, "R4", subject, {*c}, "F(y) = " + fmt(*a) + "^y");
        if (auto am = get(gf, K::AbsolutelyMonotonic)) offer(f, "R5", subject, {*am}, "F(y) = " + fmt(*a) + "^y");
      } else if (*a > 0.0 && *a < 1.0) {
        if (auto b = get(gf, K::Bernstein)) {
          offer(f, "R7", subject, {*b}, "a = " + fmt(1.0 / *a) + ", t = 1 after inverting the base");
        }
      }
      if (*a > 0.0) offer(f, "P1", subject, {}, "positive base");
      return;
    }
    if (base.op() == Op::Var && expo.op() == Op::Var) {
      offer(f, "R11", subject, {}, "(-log f)' = -log x - 1");
    }
    const Facts bf = facts(base);
    const Facts gf = facts(expo);
    if (auto pos = get(bf, K::Positive)) {
      const Expr view = Expr::mul(expo, Expr::log(base));
      const Facts vf = facts(view);
      if (auto c = get(vf, K::CompletelyMonotonic)) offer(f, "R6", subject, {*c}, "f^g = exp(g log f)");
      if (auto a = get(vf, K::AbsolutelyMonotonic)) offer(f, "R5", subject, {*a}, "f^g = exp(g log f)");
      offer(f, "P1", subject, {*pos});
    }
    auto bb = get(bf, K::Bernstein);
    auto bc = get(bf, K::CompletelyMonotonic);
    auto gb = get(gf, K::Bernstein);
    auto gc = get(gf, K::CompletelyMonotonic);
    if (bb && gc) offer(f, "R16", subject, {*bb, *gc});
    if (bc && gb) offer(f, "R17", subject, {*bc, *gb});
    if (bc && gc) offer(f, "R18", subject, {*bc, *gc});
    if (base.op() == Op::Neg && expo.op() == Op::Neg) {
      const Facts nf = facts(base.arg(0));
      const Facts ng = facts(expo.arg(0));
      auto fb = get(nf, K::Bernstein);
      auto gbb = get(ng, K::Bernstein);
      if (fb && gbb) offer(f, "R19", subject, {*fb, *gbb});
    }
    if (expo.op() == Op::Pow && gc && gc->contested) {
      if (auto outer = bc ? bc : bb) offer(f, "R21", subject, {*outer, *gc});
    }
  }

  // f(u(x)) with every x inside copies of u: classify f on (0, inf) and
  // compose via R9 (u = x^alpha) or R8 (u positive with CM derivative).
  void substitution_facts(Facts& f, const Expr& e, const std::string& subject) {
    if (depth_ >= kMaxSubstitutionDepth || e.op() == Op::Var) return;
    if (!enabled("R8") && !enabled("R9")) return;
    std::vector<Expr> candidates;
    collect_candidates(e, e, candidates);
    const Expr placeholder = Expr::param(kPlaceholder);
    for (const auto& u : candidates) {
      Expr outer = substitute(e, u, placeholder);
      if (outer.contains_var()) continue;
      outer = substitute(outer, placeholder, Expr::var());
      const bool fractional_power =
          u.op() == Op::PowConst && u.arg(0).op() == Op::Var && u.value() > 0.0 && u.value() < 1.0;
      if (fractional_power && enabled("R9")) {
        if (auto c = outer_cm(outer)) {
          offer(f, "R9", subject, {*c}, "alpha = " + fmt(u.value()));
          return;
        }
        continue;
      }
      if (!enabled("R8")) continue;
      const Facts uf = facts(u);
      auto cmd = get(uf, K::CMDerivative);
      auto pos = get(uf, K::Positive);
      if (!cmd || !pos) continue;
      if (auto c = outer_cm(outer)) {
        offer(f, "R8", subject, {*c, *cmd, *pos}, "g = " + to_string(u));
        return;
      }
    }
  }

  std::optional<Derivation> outer_cm(const Expr& outer) const {
    Classifier sub(opt_, Interval{0.0, kInf}, depth_ + 1);
    const Facts of = sub.facts(outer);
    if (auto c = get(of, K::CompletelyMonotonic)) return *c;
    return std::nullopt;
  }

  void collect_candidates(const Expr& root, const Expr& e, std::vector<Expr>& out) const {
    if (!e.contains_var() || e.op() == Op::Var) return;
    if (!(e == root) && std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    for (const auto& a : e.args()) collect_candidates(root, a, out);
  }

  const ClassifyOptions& opt_;
  Interval iv_;
  int depth_;
  std::unordered_map<std::string, Facts> memo_;
};

}  // namespace

ClassJudgment classify(const Expr& e, const Interval& interval, const ClassifyOptions& options) {
  ClassJudgment j;
  j.interval = interval;
  if (!interval.valid() || interval.lo < 0.0) return j;
  Classifier c(options, interval, 0);
  j.facts = c.facts(e);
  for (const auto& [kind, d] : j.facts) {
    if (rank(kind) > rank(j.kind)) {
      j.kind = kind;
      j.trace = d;
      j.contested = d.contested;
    }
  }
  return j;
}

}  // namespace cmcheck
