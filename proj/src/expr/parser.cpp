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

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "cmcheck/expr.hpp"

namespace cmcheck {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Recursive descent over the byte string; every error carries the offset
// of the offending byte (or the end of input).
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
      fail(std::string("expected '") + c + "'");
    }
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::add(lhs, term());
      } else if (accept('-')) {
        lhs = Expr::add(lhs, Expr::neg(term()));
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = unary();
    bool first = true;
    for (;;) {
      if (accept('*')) {
        lhs = Expr::mul(lhs, unary());
      } else if (accept('/')) {
        Expr rhs = unary();
        if (first && lhs.op() == Op::Const && lhs.value() == 1.0) {
          lhs = Expr::recip(rhs);
        } else {
          lhs = Expr::mul(lhs, Expr::recip(rhs));
        }
      } else {
        return lhs;
      }
      first = false;
    }
  }

  Expr unary() {
    if (accept('-')) return Expr::neg(unary());
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (!accept('^')) return base;
    return make_power(base, unary());
  }

  static Expr make_power(Expr base, Expr exponent) {
    if (exponent.op() == Op::Const) return Expr::pow_const(base, exponent.value());
    if (exponent.op() == Op::Neg && exponent.arg(0).op() == Op::Const) {
      return Expr::pow_const(base, -exponent.arg(0).value());
    }
    return Expr::pow(base, exponent);
  }

  Expr atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (is_ident_start(c)) return identifier();
    if (accept('(')) {
      Expr inner = expr();
      expect(')');
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    double value = 0.0;
    const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_) {
      pos_ = start;
      fail("malformed number");
    }
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    const std::string name(text_.substr(start, pos_ - start));
    const std::size_t after_name = pos_;
    if (!accept('(')) {
      pos_ = after_name;
      if (name == "x") return Expr::var();
      return Expr::param(name);
    }
    std::vector<Expr> args;
    args.push_back(expr());
    while (accept(',')) args.push_back(expr());
    expect(')');
    auto arity = [&](std::size_t n) {
      if (args.size() != n) {
        pos_ = start;
        fail("function '" + name + "' takes " + std::to_string(n) + " argument(s)");
      }
    };
    if (name == "exp") {
      arity(1);
      return Expr::exp(args[0]);
    }
    if (name == "log") {
      arity(1);
      return Expr::log(args[0]);
    }
    if (name == "pow") {
      arity(2);
      return make_power(args[0], args[1]);
    }
    if (is_builtin_function(name)) {
      arity(1);
      return Expr::builtin(name, std::move(args));
    }
    pos_ = start;
    fail("unknown function '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace cmcheck
