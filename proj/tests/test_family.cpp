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

#include "cmcheck/family.hpp"
#include "test_support.hpp"

using namespace cmcheck;

namespace {

constexpr double kE = std::numbers::e;
const FamilyParams kClassical{};

FamilyParams with(double a, double b, double d, double c0 = 1.0) { return {a, b, d, c0}; }

// Direct transcription of the density, as an oracle.
double g_direct(double s, const FamilyParams& p) {
  return std::pow(p.a, p.d) / std::numbers::pi * std::pow(s, p.b * s - p.d) *
         std::pow(1.0 - s, -p.b * s + p.d + 1.0) * std::sin(std::numbers::pi * s);
}

// Direct (unstable) form, fine at moderate x.
double f_direct(double x, const FamilyParams& p) {
  return (x + p.c0) * (std::exp(p.a * p.b) - std::pow(1.0 + p.a / x, p.b * x + p.d));
}

}  // namespace

TEST_CASE("f_family examples") {
  CHECK(f_family(1.0, kClassical) == doctest::Approx(2.0 * (kE - 2.0)).epsilon(1e-14));
  CHECK(f_family(1.0, with(1, 1, 0, 0)) == doctest::Approx(kE - 2.0).epsilon(1e-14));
  CHECK(std::abs(f_family(1e6, kClassical) - kE / 2.0) < 1e-5);
  for (double x : {0.3, 2.0, 7.5}) {
    for (const auto& p : {kClassical, with(2, 1, 0), with(0.5, 3, 0.4, 2)}) {
      CHECK(f_family(x, p) == doctest::Approx(f_direct(x, p)).epsilon(1e-12));
    }
  }
}

TEST_CASE("stable form keeps digits at large x") {
  // x (f - e/2) -> e/24 with error of order 1/x
  double prev = 1.0;
  for (double x : {1e3, 1e4, 1e5}) {
    const double err = std::abs(x * (f_family(x, kClassical) - kE / 2.0) - kE / 24.0);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-5);
}

TEST_CASE("density examples") {
  CHECK(density_g(0.5, kClassical) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-14));
  CHECK(density_g(1e-12, kClassical) < 1e-10);
  CHECK(density_endpoint(0, kClassical) == 0.0);
  CHECK(density_endpoint(1, kClassical) == 0.0);
  const double left = density_g(0.25, kClassical), right = density_g(0.75, kClassical);
  CHECK(left == doctest::Approx(right).epsilon(1e-14));
  CHECK(left == doctest::Approx(g_direct(0.25, kClassical)).epsilon(1e-14));
  CHECK(left == doctest::Approx(0.128267337).epsilon(1e-8));
  CHECK_THROWS_AS(density_g(0.0, kClassical), DomainError);
  CHECK_THROWS_AS(density_g(1.5, kClassical), DomainError);
}

TEST_CASE("density matches the direct formula and is nonnegative on 1e4 samples") {
  std::mt19937_64 rng(cmcheck::testing::kSeed + 21);
  std::uniform_real_distribution<double> us(1e-6, 1.0 - 1e-6), ua(0.05, 4.0), ub(-3.0, 3.0), ud(-2.0, 2.0);
  for (int i = 0; i < 10000; ++i) {
    const FamilyParams p = with(ua(rng), ub(rng), ud(rng));
    const double s = us(rng);
    const double g = density_g(s, p);
    REQUIRE(g >= 0.0);
    REQUIRE(cmcheck::testing::close_rel(g, g_direct(s, p), 1e-11, 1e-300));
  }
}

TEST_CASE("symmetry holds exactly when b = 2d + 1") {
  std::mt19937_64 rng(cmcheck::testing::kSeed + 22);
  std::uniform_real_distribution<double> ua(0.2, 3.0), ud(-0.9, 0.9), off(0.05, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = ua(rng), d = ud(rng);
    const FamilyParams sym = with(a, 2 * d + 1, d);
    CHECK(sym.symmetric());
    for (int i = 1; i <= 64; ++i) {
      const double s = i / 65.0;
      const double g = density_g(s, sym);
      REQUIRE(std::abs(g - density_g(1.0 - s, sym)) <= 1e-12 * g);
    }
    const FamilyParams asym = with(a, 2 * d + 1 + (trial % 2 ? 1 : -1) * off(rng), d);
    CHECK_FALSE(asym.symmetric());
    bool found = false;
    for (int i = 1; i <= 64 && !found; ++i) {
      const double s = i / 65.0;
      const double g = density_g(s, asym);
      found = std::abs(g - density_g(1.0 - s, asym)) > 1e-8 * g;
    }
    CHECK(found);
  }
}

TEST_CASE("limit constant") {
  CHECK(limit_const_x0(kClassical) == doctest::Approx(kE / 2.0).epsilon(1e-15));
  CHECK(limit_const_x0(with(1, 2, 1)) == 0.0);
  CHECK(limit_const_x0(with(2, 1, 0)) == doctest::Approx(2.0 * kE * kE).epsilon(1e-15));
}

TEST_CASE("representation identity") {
  for (double x : {0.1, 0.5, 1.0, 2.0, 10.0, 100.0, 1e4}) {
    const double f = f_family(x, kClassical);
    CHECK(std::abs(f - stieltjes_eval(x, kClassical)) <= 1e-8 * (1.0 + std::abs(f)));
  }
  CHECK(stieltjes_eval(1.0, kClassical) - kE / 2.0 == doctest::Approx(0.0774227).epsilon(1e-6));
}

TEST_CASE("closed and quadrature integrals") {
  const auto closed = closed_integrals(kClassical);
  CHECK(closed.I0 == doctest::Approx(kE / 24.0).epsilon(1e-15));
  CHECK(closed.I1 == doctest::Approx(kE / 48.0).epsilon(1e-15));
  const auto quad = quad_integrals(kClassical);
  CHECK(std::abs(quad.I0 - kE / 24.0) < 1e-9);
  CHECK(std::abs(quad.I1 - kE / 48.0) < 1e-9);
  CHECK(std::abs(quad.I1 - quad.I0 / 2.0) < 1e-9);

  // the closed form loses its sign at (2, 1, 0); the density does not
  const auto bad = with(2, 1, 0);
  CHECK(closed_integrals(bad).I0 == doctest::Approx(-8.0 / 3.0 * kE * kE).epsilon(1e-14));
  CHECK(quad_integrals(bad).I0 > 0.0);

  const auto asym = quad_integrals(with(1, 1, 0.3));
  CHECK(std::abs(asym.I1 / asym.I0 - 0.5) > 1e-3);
}

TEST_CASE("halving under symmetry, independent of the closed form") {
  std::mt19937_64 rng(cmcheck::testing::kSeed + 23);
  std::uniform_real_distribution<double> ua(0.2, 2.0), ud(-0.5, 0.9);
  for (int trial = 0; trial < 20; ++trial) {
    const double d = ud(rng);
    const auto p = with(ua(rng), 2 * d + 1, d);
    REQUIRE(density_integrability(p).ok);
    const auto q = quad_integrals(p);
    CHECK(std::abs(q.I1 - q.I0 / 2.0) <= 1e-9);
  }
}

TEST_CASE("integrability gate") {
  const auto ok = density_integrability(kClassical);
  CHECK(ok.ok);
  CHECK(ok.exponent_at_0 == 1.0);  // s^(-d) sin(pi s)
  CHECK(ok.exponent_at_1 == 1.0);  // (1-s)^(d+1-b) sin(pi s)
  CHECK_FALSE(density_integrability(with(1, 1, 2.5)).ok);
  CHECK_THROWS_AS(quad_integrals(with(1, 1, 2.5)), PreconditionError);
  CHECK_FALSE(density_integrability(with(1, 5, 0)).ok);
}

TEST_CASE("threshold and alpha") {
  CHECK(threshold_c(kClassical) == doctest::Approx(11.0 / 12.0).epsilon(1e-15));
  CHECK(threshold_c(with(2, 1, 0)) == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(threshold_c(with(1, 2, 1)), PreconditionError);
  CHECK(alpha_const(kClassical) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(alpha_const(with(2, 1, 0)) == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));

  std::mt19937_64 rng(cmcheck::testing::kSeed + 24);
  std::uniform_real_distribution<double> ua(0.05, 5.0), ub(-4.0, 4.0), ud(-3.0, 3.0);
  int checked = 0;
  while (checked < 100) {
    const auto p = with(ua(rng), ub(rng), ud(rng));
    if (std::abs(p.a * p.b - 2 * p.d) < 1e-3) continue;
    CHECK(std::abs(alpha_const(p) + threshold_c(p) - 1.0) <= 1e-12 * std::max(1.0, std::abs(threshold_c(p))));
    ++checked;
  }
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(kClassical.validate());
  CHECK(kClassical.classical());
  CHECK(kClassical.symmetric());
  CHECK_THROWS_AS(with(0, 1, 0).validate(), PreconditionError);
  CHECK_THROWS_AS(with(-1, 1, 0).validate(), PreconditionError);
  CHECK_THROWS_AS(with(1, 2, 1).validate(), PreconditionError);
  CHECK_THROWS_AS(with(1, std::nan(""), 0).validate(), PreconditionError);
}

TEST_CASE("gn limit probe") {
  const auto s = gn_limit_probe(kClassical, {10.0, 100.0, 1e4});
  REQUIRE(s.size() == 3);
  for (const auto& g : s) REQUIRE(g.ok);
  const double c = 11.0 / 12.0;
  CHECK(std::abs(s[2].value - c) < 1e-3);
  CHECK(std::abs(s[1].value - c) < 1e-1);
  CHECK(std::abs(s[1].value - c) < std::abs(s[0].value - c));
  const auto general = gn_limit_probe(with(2, 1, 0), {1e4});
  CHECK(general[0].ok);
}

TEST_CASE("h kernel") {
  CHECK(h_kernel(0.0, kClassical) == doctest::Approx(kE / 24.0).epsilon(1e-10));
  const double h200 = h_kernel(200.0, kClassical);
  CHECK(h200 < 1e-3);
  CHECK(h200 < h_kernel(100.0, kClassical));
  for (double t : {0.01, 0.1, 1.0, 5.0, 20.0, 50.0}) CHECK(h_kernel(t, kClassical) > 0.0);
  // moment form of the derivatives against central differences
  const double t = 1.3, step = 1e-3;
  const double fd = (h_kernel(t + step, kClassical) - h_kernel(t - step, kClassical)) / (2 * step);
  CHECK(h_derivative(t, 1, kClassical) == doctest::Approx(fd).epsilon(1e-6));
  const auto r = certify(ClassKind::CompletelyMonotonic, h_evaluator(kClassical), CertGrid::log_spaced(0.01, 50, 16, 6));
  CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("kernel positivity") {
  std::vector<double> ts;
  for (int i = 0; i < 20; ++i) ts.push_back(std::pow(10.0, -3.0 + 4.0 * i / 19.0));
  const auto r = positivity_scan(kClassical, ts);
  CHECK(std::abs(r.u0) <= 1e-10);
  CHECK(r.alpha == doctest::Approx(1.0 / 12.0));
  CHECK(r.c == doctest::Approx(11.0 / 12.0));
  CHECK(r.c_minus_s_integral == doctest::Approx(5.0 * kE / 288.0).epsilon(1e-8));
  CHECK(r.u_positive);
  CHECK(r.w_positive);
  CHECK(r.chain_holds);
  REQUIRE(r.points.size() == ts.size());
  for (const auto& p : r.points) {
    CHECK(p.u > 0.0);
    CHECK(p.w == doctest::Approx(std::exp(p.t) * p.u).epsilon(1e-12));
  }
  CHECK_THROWS_AS(positivity_scan(with(2, 1, 0), ts), PreconditionError);
}

TEST_CASE("Laplace reconstruction") {
  for (double x : {1.0, 2.0, 5.0}) {
    const auto r = laplace_recon_auto(x, kClassical);
    CHECK(std::abs(r.value - f_family(x, kClassical)) <= 1e-5);
  }
  const double target = f_family(1.0, kClassical);
  const double e1 = std::abs(laplace_recon(1.0, kClassical, 1.0).value - target);
  const double e4 = std::abs(laplace_recon(1.0, kClassical, 4.0).value - target);
  const double e16 = std::abs(laplace_recon(1.0, kClassical, 16.0).value - target);
  CHECK(e1 > 1e-3);
  CHECK(e4 < e1);
  CHECK(e16 < e4);
}

TEST_CASE("empirical threshold") {
  const auto r = empirical_min_c0(kClassical);
  CHECK(std::abs(r.value - 11.0 / 12.0) < 0.02);
  CHECK(r.certifications > 2);
  MinC0Options same;
  same.lo = same.hi = 1.2;
  const auto one = empirical_min_c0(kClassical, same);
  CHECK(one.value == 1.2);
  CHECK(one.certifications == 1);
  // shift monotonicity at the bracket ends
  const auto grid = CertGrid::log_spaced(0.01, 1000, 24, 10);
  CHECK(certify(ClassKind::CompletelyMonotonic, family_evaluator(with(1, 1, 0, 1.0)), grid).verdict == Verdict::Pass);
  CHECK(certify(ClassKind::CompletelyMonotonic, family_evaluator(with(1, 1, 0, 0.5)), grid).verdict == Verdict::Fail);
  MinC0Options flat;
  flat.lo = 1.2;
  flat.hi = 1.5;
  CHECK_THROWS_AS(empirical_min_c0(kClassical, flat), PreconditionError);
}

TEST_CASE("threshold consistency") {
  const double c = threshold_c(kClassical);
  const double tail = gn_limit_probe(kClassical, {1e4})[0].value;
  const double emp = empirical_min_c0(kClassical).value;
  CHECK(std::abs(tail - c) < 0.02);
  CHECK(std::abs(emp - c) < 0.02);
  CHECK(std::abs(emp - tail) < 0.02);
}
