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

#include <string>
#include <vector>

#include "cmcheck/certify.hpp"
#include "cmcheck/quadrature.hpp"

namespace cmcheck {

/// (x + c0)(e^(ab) - (1 + a/x)^(bx + d)).
struct FamilyParams {
  double a = 1.0;
  double b = 1.0;
  double d = 0.0;
  double c0 = 1.0;

  bool classical() const { return a == 1.0 && b == 1.0 && d == 0.0; }
  /// g(s) = g(1 - s) holds exactly when b = 2d + 1.
  bool symmetric() const { return b == 2.0 * d + 1.0; }
  /// Throws PreconditionError unless a > 0, everything is finite and ab != 2d.
  void validate() const;
};

std::string to_string(const FamilyParams& p);

double f_family(double x, const FamilyParams& p);
/// Jet evaluator of f_family with stable value and low-order terms.
Evaluator family_evaluator(const FamilyParams& p);

/// Stieltjes density on (0, 1). The two-argument form takes s and 1 - s
/// separately so both endpoints keep full relative accuracy.
double density_g(double s, const FamilyParams& p);
double density_g(double s, double one_minus_s, const FamilyParams& p);
/// Limit of g at s = 0 (end = 0) or s = 1 (end = 1); may be +inf.
double density_endpoint(int end, const FamilyParams& p);

struct Integrability {
  bool ok = true;
  double exponent_at_0 = 0.0;  ///< g ~ s^e near 0
  double exponent_at_1 = 0.0;  ///< g ~ (1 - s)^e near 1
};
Integrability density_integrability(const FamilyParams& p);

/// x0 = a(ab - 2d)e^(ab) / 2.
double limit_const_x0(const FamilyParams& p);

/// x0 + integral of g(s)/(x + s) over (0, 1); the c0 = 1 member.
double stieltjes_eval(double x, const FamilyParams& p, double tol = 1e-10);

struct IntegralPair {
  double I0 = 0.0;
  double I1 = 0.0;
};
IntegralPair closed_integrals(const FamilyParams& p);
/// Throws PreconditionError when g is not integrable.
IntegralPair quad_integrals(const FamilyParams& p, double tol = 1e-10);

double threshold_c(const FamilyParams& p);
double alpha_const(const FamilyParams& p);

struct GnSample {
  double x = 0.0;
  double value = 0.0;
  bool ok = false;
  std::string diagnostic;
};
std::vector<GnSample> gn_limit_probe(const FamilyParams& p, const std::vector<double>& xs);

/// h(t) = integral of e^(-st) g(s) over (0, 1).
double h_kernel(double t, const FamilyParams& p, double tol = 1e-10);
/// h^(n)(t) = integral of (-s)^n e^(-st) g(s).
double h_derivative(double t, int n, const FamilyParams& p, double tol = 1e-10);
Evaluator h_evaluator(const FamilyParams& p, double tol = 1e-10);

struct PositivityPoint {
  double t = 0.0;
  double h = 0.0;
  double J = 0.0;  ///< integral of e^s h(s) over (0, t)
  double u = 0.0;
  double w = 0.0;
  double chain_lhs = 0.0;  ///< c h + h'
  double chain_rhs = 0.0;  ///< e^(-ct) integral of (c - s) g
};

struct PositivityReport {
  double alpha = 0.0;
  double c = 0.0;
  double u0 = 0.0;
  double w0 = 0.0;
  double c_minus_s_integral = 0.0;
  std::vector<PositivityPoint> points;
  bool u_positive = true;
  bool w_positive = true;
  bool chain_holds = true;
};

/// Requires alpha in [0, 1]. Inner quadratures run ten times tighter than `tol`.
PositivityReport positivity_scan(const FamilyParams& p, const std::vector<double>& ts, double tol = 1e-10);

struct LaplaceRecon {
  double value = 0.0;
  double tail_bound = 0.0;
  double T = 0.0;
};
/// x0 + integral of e^(-xt) h(t) over (0, T).
LaplaceRecon laplace_recon(double x, const FamilyParams& p, double T, double tol = 1e-9);
/// Doubles T from 8 until the tail bound drops below tol.
LaplaceRecon laplace_recon_auto(double x, const FamilyParams& p, double tol = 1e-9);

struct MinC0Options {
  double lo = 0.5;
  double hi = 1.5;
  double tol = 1e-3;
  int order = 10;
  int points = 24;
  double grid_lo = 0.01;
  double grid_hi = 1000.0;
  ExecPolicy policy = ExecPolicy::Parallel;
};

struct MinC0Result {
  double value = 0.0;
  int certifications = 0;
};

/// Bisection for the smallest c0 whose family passes certify(CM).
MinC0Result empirical_min_c0(const FamilyParams& p, const MinC0Options& opt = {});

}  // namespace cmcheck
