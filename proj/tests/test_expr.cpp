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

#include <cmath>
#include <numbers>
#include <random>

#include "cmcheck/expr.hpp"
#include "cmcheck/precision.hpp"
#include "test_support.hpp"

using namespace cmcheck;

namespace {

// Generates only canonical trees: the shapes the parser itself produces.
class TreeGen {
 public:
  explicit TreeGen(std::uint64_t seed) : rng_(seed) {}

  Expr make(int depth) {
    if (depth <= 1) return leaf();
    switch (pick(10)) {
      case 0: return leaf();
      case 1: return Expr::add(make(depth - 1), make(depth - 1));
      case 2: return Expr::mul(make(depth - 1), make(depth - 1));
      case 3: return Expr::neg(make(depth - 1));
      case 4: return Expr::recip(make(depth - 1));
      case 5: return Expr::exp(make(depth - 1));
      case 6: return Expr::log(make(depth - 1));
      case 7: {
        Expr exponent = make(depth - 1);
        if (exponent.op() == Op::Const) exponent = Expr::var();
        if (exponent.op() == Op::Neg && exponent.arg(0).op() == Op::Const) exponent = Expr::param("a");
        return Expr::pow(make(depth - 1), exponent);
      }
      case 8: {
        static constexpr double kExps[] = {2.0, 0.5, -1.5, 1e-5, 3.25, -7.0};
        return Expr::pow_const(make(depth - 1), kExps[pick(6)]);
      }
      default: return Expr::builtin(pick(2) ? "sqrt" : "log1p", {make(depth - 1)});
    }
  }

 private:
  Expr leaf() {
    switch (pick(3)) {
      case 0: return Expr::var();
      case 1: {
        static const char* kNames[] = {"a", "b", "d", "c0", "alpha"};
        return Expr::param(kNames[pick(5)]);
      }
      default: {
        std::uniform_real_distribution<double> u(0.0, 100.0);
        return Expr::constant(pick(2) ? std::round(u(rng_)) : u(rng_) * 1e-3);
      }
    }
  }
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }

  std::mt19937_64 rng_;
};

}  // namespace

TEST_CASE("parse examples") {
  CHECK(parse("exp(-x)") == Expr::exp(Expr::neg(Expr::var())));
  const auto fam = parse("(1 + a/x)^(b*x + d)");
  const auto expected =
      Expr::pow(Expr::add(Expr::constant(1), Expr::mul(Expr::param("a"), Expr::recip(Expr::var()))),
                Expr::add(Expr::mul(Expr::param("b"), Expr::var()), Expr::param("d")));
  CHECK(fam == expected);
  CHECK(parse("x^2") == Expr::pow_const(Expr::var(), 2.0));
  CHECK(parse("pow(x, -0.5)") == Expr::pow_const(Expr::var(), -0.5));
  CHECK(parse("1/x") == Expr::recip(Expr::var()));
  CHECK(parse("x - 1") == Expr::add(Expr::var(), Expr::neg(Expr::constant(1))));
  CHECK(parse("2.5e-3") == Expr::constant(2.5e-3));
}

TEST_CASE("caret binds tighter than unary minus") {
  CHECK(parse("-x^2") == Expr::neg(Expr::pow_const(Expr::var(), 2.0)));
  CHECK(parse("x^y^z").arg(1).op() == Op::Pow);
}

TEST_CASE("parse errors carry an offset") {
  try {
    parse("exp(");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("x +"), ParseError);
  CHECK_THROWS_AS(parse("foo(x)"), ParseError);
  CHECK_THROWS_AS(parse("exp(x, x)"), ParseError);
  CHECK_THROWS_AS(parse("(x"), ParseError);
  CHECK_THROWS_AS(parse("x )"), ParseError);
  CHECK_THROWS_AS(parse("1.2.3"), ParseError);
}

TEST_CASE("round trip on 1000 random trees") {
  TreeGen gen(cmcheck::testing::kSeed);
  for (int i = 0; i < 1000; ++i) {
    const Expr e = gen.make(1 + i % 6);
    REQUIRE(e.depth() <= 6);
    const std::string text = to_string(e);
    INFO(text);
    REQUIRE(parse(text) == e);
    REQUIRE(to_string(parse(text)) == text);
  }
}

TEST_CASE("eval examples") {
  const double inv_e = std::exp(-1.0);
  const auto d1 = eval_jet<double>(parse("exp(-x)"), {}, 1.0, 2).derivatives();
  CHECK(d1[0] == doctest::Approx(inv_e).epsilon(1e-15));
  CHECK(d1[1] == doctest::Approx(-inv_e).epsilon(1e-15));
  CHECK(d1[2] == doctest::Approx(inv_e).epsilon(1e-15));

  const auto d2 = eval_jet<double>(parse("1/x"), {}, 2.0, 1).derivatives();
  CHECK(d2 == std::vector<double>{0.5, -0.25});

  // analytic oracle x^x (log x + 1)
  const auto d3 = eval_jet<double>(parse("x^x"), {}, 0.2, 1).derivatives();
  const double v = std::exp(0.2 * std::log(0.2));
  CHECK(d3[0] == doctest::Approx(0.724780).epsilon(1e-6));
  CHECK(d3[0] == doctest::Approx(v).epsilon(1e-15));
  CHECK(d3[1] == doctest::Approx(v * (std::log(0.2) + 1.0)).epsilon(1e-14));

  CHECK(eval(parse("(1 + a/x)^(b*x + d)"), {{"a", 1}, {"b", 1}, {"d", 0}}, 1.0) == doctest::Approx(2.0));
  CHECK(eval(parse("sqrt(x) + log1p(x)"), {}, 4.0) == doctest::Approx(2.0 + std::log(5.0)));
  CHECK_THROWS_AS(eval(parse("a*x"), {}, 1.0), PreconditionError);
  CHECK_THROWS_AS(eval(parse("log(x)"), {}, -1.0), DomainError);
}

TEST_CASE("extended precision evaluation") {
  const auto e = parse("exp(-x)");
  const auto jet = eval_jet<BigReal>(e, {}, BigReal(1), 3);
  CHECK(static_cast<double>(jet.derivatives()[3]) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("substitute replaces structurally equal subtrees") {
  const auto e = parse("exp(-x) + x");
  const auto s = substitute(e, Expr::var(), Expr::param("u"));
  CHECK(to_string(s) == "(exp((-u)) + u)");
  CHECK_FALSE(s.contains_var());
  CHECK(e.size() == 5);
}
