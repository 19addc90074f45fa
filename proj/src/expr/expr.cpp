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

#include "cmcheck/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace cmcheck {

struct Expr::Node {
  Op op;
  double value = 0.0;
  std::string name;
  std::vector<Expr> args;
  bool has_var = false;
  std::size_t size = 1;
  std::size_t depth = 1;
};

Expr Expr::constant(double value) {
  if (!std::isfinite(value)) throw PreconditionError("constant must be finite");
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->value = value;
  return Expr(std::move(n));
}

Expr Expr::param(std::string name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Param;
  n->name = std::move(name);
  return Expr(std::move(n));
}

Expr Expr::var() {
  auto n = std::make_shared<Node>();
  n->op = Op::Var;
  n->has_var = true;
  return Expr(std::move(n));
}

Expr Expr::make(Op op, std::vector<Expr> args, double value, std::string name) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->value = value;
  n->name = std::move(name);
  std::size_t depth = 0;
  for (const auto& a : args) {
    n->has_var = n->has_var || a.contains_var();
    n->size += a.size();
    depth = std::max(depth, a.depth());
  }
  n->depth = depth + 1;
  n->args = std::move(args);
  return Expr(std::move(n));
}

Expr Expr::add(Expr lhs, Expr rhs) { return make(Op::Add, {std::move(lhs), std::move(rhs)}); }
Expr Expr::mul(Expr lhs, Expr rhs) { return make(Op::Mul, {std::move(lhs), std::move(rhs)}); }
Expr Expr::neg(Expr e) { return make(Op::Neg, {std::move(e)}); }
Expr Expr::recip(Expr e) { return make(Op::Recip, {std::move(e)}); }
Expr Expr::exp(Expr e) { return make(Op::Exp, {std::move(e)}); }
Expr Expr::log(Expr e) { return make(Op::Log, {std::move(e)}); }
Expr Expr::pow(Expr base, Expr exponent) { return make(Op::Pow, {std::move(base), std::move(exponent)}); }
Expr Expr::pow_const(Expr base, double exponent) {
  if (!std::isfinite(exponent)) throw PreconditionError("exponent must be finite");
  return make(Op::PowConst, {std::move(base)}, exponent);
}
Expr Expr::builtin(std::string name, std::vector<Expr> args) {
  if (!is_builtin_function(name)) throw PreconditionError("unknown builtin '" + name + "'");
  if (args.size() != 1) throw PreconditionError("builtin '" + name + "' takes one argument");
  return make(Op::Builtin, std::move(args), 0.0, std::move(name));
}

Op Expr::op() const noexcept { return node_->op; }
double Expr::value() const noexcept { return node_->value; }
const std::string& Expr::name() const noexcept { return node_->name; }
std::span<const Expr> Expr::args() const noexcept { return node_->args; }
const Expr& Expr::arg(std::size_t i) const { return node_->args.at(i); }
bool Expr::contains_var() const noexcept { return node_->has_var; }
std::size_t Expr::size() const noexcept { return node_->size; }
std::size_t Expr::depth() const noexcept { return node_->depth; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op()) return false;
  switch (a.op()) {
    case Op::Const:
      return a.value() == b.value();
    case Op::Param:
      return a.name() == b.name();
    case Op::Var:
      return true;
    case Op::PowConst:
      if (a.value() != b.value()) return false;
      break;
    case Op::Builtin:
      if (a.name() != b.name()) return false;
      break;
    default:
      break;
  }
  if (a.args().size() != b.args().size()) return false;
  return std::equal(a.args().begin(), a.args().end(), b.args().begin());
}

bool is_builtin_function(std::string_view name) { return name == "sqrt" || name == "log1p"; }

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void render(const Expr& e, std::string& out) {
  switch (e.op()) {
    case Op::Const:
      if (std::signbit(e.value())) {
        out += "(-" + format_number(-e.value()) + ")";
      } else {
        out += format_number(e.value());
      }
      return;
    case Op::Param:
      out += e.name();
      return;
    case Op::Var:
      out += 'x';
      return;
    case Op::Add:
    case Op::Mul:
      out += '(';
      render(e.arg(0), out);
      out += e.op() == Op::Add ? " + " : " * ";
      render(e.arg(1), out);
      out += ')';
      return;
    case Op::Neg:
      out += "(-";
      render(e.arg(0), out);
      out += ')';
      return;
    case Op::Recip:
      out += "(1/";
      render(e.arg(0), out);
      out += ')';
      return;
    case Op::Exp:
    case Op::Log:
      out += e.op() == Op::Exp ? "exp(" : "log(";
      render(e.arg(0), out);
      out += ')';
      return;
    case Op::Pow:
      out += '(';
      render(e.arg(0), out);
      out += '^';
      render(e.arg(1), out);
      out += ')';
      return;
    case Op::PowConst:
      out += '(';
      render(e.arg(0), out);
      out += '^';
      out += std::signbit(e.value()) ? "-" + format_number(-e.value()) : format_number(e.value());
      out += ')';
      return;
    case Op::Builtin:
      out += e.name();
      out += '(';
      for (std::size_t i = 0; i < e.args().size(); ++i) {
        if (i) out += ", ";
        render(e.arg(i), out);
      }
      out += ')';
      return;
  }
}

}  // namespace

std::string to_string(const Expr& e) {
  std::string out;
  render(e, out);
  return out;
}

Expr substitute(const Expr& e, const Expr& pattern, const Expr& replacement) {
  if (e == pattern) return replacement;
  switch (e.op()) {
    case Op::Const:
    case Op::Param:
    case Op::Var:
      return e;
    case Op::Add:
      return Expr::add(substitute(e.arg(0), pattern, replacement), substitute(e.arg(1), pattern, replacement));
    case Op::Mul:
      return Expr::mul(substitute(e.arg(0), pattern, replacement), substitute(e.arg(1), pattern, replacement));
    case Op::Neg:
      return Expr::neg(substitute(e.arg(0), pattern, replacement));
    case Op::Recip:
      return Expr::recip(substitute(e.arg(0), pattern, replacement));
    case Op::Exp:
      return Expr::exp(substitute(e.arg(0), pattern, replacement));
    case Op::Log:
      return Expr::log(substitute(e.arg(0), pattern, replacement));
    case Op::Pow:
      return Expr::pow(substitute(e.arg(0), pattern, replacement), substitute(e.arg(1), pattern, replacement));
    case Op::PowConst:
      return Expr::pow_const(substitute(e.arg(0), pattern, replacement), e.value());
    case Op::Builtin: {
      std::vector<Expr> args;
      for (const auto& a : e.args()) args.push_back(substitute(a, pattern, replacement));
      return Expr::builtin(e.name(), std::move(args));
    }
  }
  return e;
}

double eval(const Expr& e, const Bindings& bindings, double x) {
  return eval_jet<double>(e, bindings, x, 0).value();
}

}  // namespace cmcheck
