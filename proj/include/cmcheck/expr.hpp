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

#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cmcheck/errors.hpp"
#include "cmcheck/jet.hpp"

namespace cmcheck {

enum class Op { Const, Param, Var, Add, Mul, Neg, Recip, Exp, Log, Pow, PowConst, Builtin };

/// Immutable expression tree over the single variable x.
///
/// Subtraction and division are not separate nodes: a - b is Add(a, Neg(b))
/// and a / b is Mul(a, Recip(b)). PowConst carries a literal real exponent.
class Expr {
 public:
  static Expr constant(double value);
  static Expr param(std::string name);
  static Expr var();
  static Expr add(Expr lhs, Expr rhs);
  static Expr mul(Expr lhs, Expr rhs);
  static Expr neg(Expr e);
  static Expr recip(Expr e);
  static Expr exp(Expr e);
  static Expr log(Expr e);
  static Expr pow(Expr base, Expr exponent);
  static Expr pow_const(Expr base, double exponent);
  static Expr builtin(std::string name, std::vector<Expr> args);

  Op op() const noexcept;
  /// Const: the value. PowConst: the exponent.
  double value() const noexcept;
  /// Param or Builtin name.
  const std::string& name() const noexcept;
  std::span<const Expr> args() const noexcept;
  const Expr& arg(std::size_t i) const;

  bool contains_var() const noexcept;
  std::size_t size() const noexcept;
  std::size_t depth() const noexcept;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expr make(Op op, std::vector<Expr> args, double value = 0.0, std::string name = {});
  std::shared_ptr<const Node> node_;
};

using Bindings = std::map<std::string, double, std::less<>>;

/// Builtins accepted by the parser in addition to exp, log and pow.
bool is_builtin_function(std::string_view name);

/// Grammar (precedence high to low): ^ (right-assoc), unary -, * /, + -.
/// Identifiers other than x and function names are parameters.
/// Throws ParseError carrying the byte offset of the problem.
Expr parse(std::string_view text);

/// Fully parenthesized rendering; parse(to_string(e)) == e for trees in
/// parser-canonical form (non-negative Const leaves, Pow exponents that are
/// not literal constants).
std::string to_string(const Expr& e);

/// Replaces every occurrence of `pattern` in `e` by `replacement`.
Expr substitute(const Expr& e, const Expr& pattern, const Expr& replacement);

/// Jet of the expression at x, by structural recursion into jet arithmetic.
template <class T>
Jet<T> eval_jet(const Expr& e, const Bindings& bindings, const T& x, int order) {
  switch (e.op()) {
    case Op::Const:
      return Jet<T>::constant(T(e.value()), x, order);
    case Op::Param: {
      auto it = bindings.find(e.name());
      if (it == bindings.end()) throw PreconditionError("unbound parameter '" + e.name() + "'");
      return Jet<T>::constant(T(it->second), x, order);
    }
    case Op::Var:
      return Jet<T>::variable(x, order);
    case Op::Add:
      return eval_jet(e.arg(0), bindings, x, order) + eval_jet(e.arg(1), bindings, x, order);
    case Op::Mul:
      return eval_jet(e.arg(0), bindings, x, order) * eval_jet(e.arg(1), bindings, x, order);
    case Op::Neg:
      return -eval_jet(e.arg(0), bindings, x, order);
    case Op::Recip:
      return recip(eval_jet(e.arg(0), bindings, x, order));
    case Op::Exp:
      return exp(eval_jet(e.arg(0), bindings, x, order));
    case Op::Log:
      return log(eval_jet(e.arg(0), bindings, x, order));
    case Op::Pow:
      return pow(eval_jet(e.arg(0), bindings, x, order), eval_jet(e.arg(1), bindings, x, order));
    case Op::PowConst:
      return pow(eval_jet(e.arg(0), bindings, x, order), T(e.value()));
    case Op::Builtin: {
      const auto inner = eval_jet(e.arg(0), bindings, x, order);
      if (e.name() == "sqrt") return pow(inner, T(0.5));
      if (e.name() == "log1p") return log(Jet<T>::constant(T(1), x, order) + inner);
      throw PreconditionError("no evaluator for builtin '" + e.name() + "'");
    }
  }
  throw PreconditionError("malformed expression");
}

/// Plain value f(x).
double eval(const Expr& e, const Bindings& bindings, double x);

}  // namespace cmcheck
