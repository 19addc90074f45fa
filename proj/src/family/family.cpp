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

#include "cmcheck/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "cmcheck/errors.hpp"
#include "cmcheck/jet.hpp"

namespace cmcheck {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// log(1 + y) - y without cancellation near 0.
double log1pmx(double y) {
  if (std::abs(y) >= 0.5) return std::log1p(y) - y;
  double term = -y;
  double sum = 0.0;
  for (int k = 2; k < 200; ++k) {
    term *= -y;
    const double add = term / k;
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return -sum;
}

// Exponent of e^(ab) - (1 + y)^(bx + d) after factoring out e^(ab).
double family_exponent(double x, const FamilyParams& p) {
  const double y = p.a / x;
  return p.b * x * log1pmx(y) + p.d * std::log1p(y);
}

Jet<double> log1p_generator(const double& y, int order) {
  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  c[0] = std::log1p(y);
  double pw = 1.0;
  for (int k = 1; k <= order; ++k) {
    pw /= (1.0 + y);
    c[static_cast<std::size_t>(k)] = (k % 2 == 1 ? 1.0 : -1.0) * pw / k;
  }
  return Jet<double>(y, std::move(c));
}

Jet<double> log1pmx_generator(const double& y, int order) {
  auto j = log1p_generator(y, order);
  std::vector<double> c(j.coeffs().begin(), j.coeffs().end());
  c[0] = log1pmx(y);
  if (order >= 1) c[1] = -y / (1.0 + y);
  return Jet<double>(y, std::move(c));
}

void require_s(double s, double r) {
  if (!(s > 0.0 && r > 0.0)) throw DomainError("density needs 0 < s < 1");
}

double check_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw OverflowError(std::string(what) + " overflows");
  return v;
}

QuadOptions quad_opts(double tol, ExecPolicy policy = ExecPolicy::Serial) {
  QuadOptions o;
  o.abs_tol = tol;
  o.policy = policy;
  return o;
}

}  // namespace

void FamilyParams::validate() const {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(d) || !std::isfinite(c0)) {
    throw PreconditionError("family parameters must be finite");
  }
  if (!(a > 0.0)) throw PreconditionError("family needs a > 0");
  if (a * b == 2.0 * d) throw PreconditionError("family needs ab != 2d");
}

std::string to_string(const FamilyParams& p) {
  std::ostringstream os;
  os.precision(17);
  os << "(a=" << p.a << ", b=" << p.b << ", d=" << p.d << ", c0=" << p.c0 << ")";
  return os.str();
}

double f_family(double x, const FamilyParams& p) {
  if (!(x > 0.0)) throw DomainError("f_family needs x > 0");
  const double D = family_exponent(x, p);
  return check_finite((x + p.c0) * (-std::exp(p.a * p.b) * std::expm1(D)), "f_family");
}

Evaluator family_evaluator(const FamilyParams& p) {
  Evaluator ev;
  ev.label = "f_family" + to_string(p);
  ev.fn = [p](double x, int order) {
    if (!(x > 0.0)) throw DomainError("f_family needs x > 0");
    using J = Jet<double>;
    const J X = J::variable(x, order);
    const J Y = scale(recip(X), p.a);
    const J phi = compose(JetGenerator<double>(log1pmx_generator), Y);
    const J L = compose(JetGenerator<double>(log1p_generator), Y);
    const J D = scale(X, p.b) * phi + scale(L, p.d);
    const J E = exp(D);
    const double scale_ab = std::exp(p.a * p.b);
    std::vector<double> r(E.coeffs().begin(), E.coeffs().end());
    for (auto& v : r) v *= -scale_ab;
    r[0] = -scale_ab * std::expm1(D.value());
    const J f = (X + J::constant(p.c0, x, order)) * J(x, std::move(r));
    auto out = f.derivatives();
    out[0] = f_family(x, p);
    return out;
  };
  return ev;
}

double density_g(double s, const FamilyParams& p) { return density_g(s, 1.0 - s, p); }

double density_g(double s, double r, const FamilyParams& p) {
  require_s(s, r);
  const double log_g = p.d * std::log(p.a) - std::log(kPi) + (p.b * s - p.d) * std::log(s) +
                       (-p.b * s + p.d + 1.0) * std::log(r) + std::log(std::sin(kPi * std::min(s, r)));
  return std::exp(log_g);
}

double density_endpoint(int end, const FamilyParams& p) {
  if (end != 0 && end != 1) throw PreconditionError("endpoint must be 0 or 1");
  const double e = end == 0 ? 1.0 - p.d : p.d + 2.0 - p.b;
  if (e > 0.0) return 0.0;
  if (e == 0.0) return std::pow(p.a, p.d);
  return kInf;
}

Integrability density_integrability(const FamilyParams& p) {
  Integrability r;
  r.exponent_at_0 = 1.0 - p.d;
  r.exponent_at_1 = p.d + 2.0 - p.b;
  r.ok = r.exponent_at_0 > -1.0 && r.exponent_at_1 > -1.0;
  return r;
}

double limit_const_x0(const FamilyParams& p) { return 0.5 * p.a * (p.a * p.b - 2.0 * p.d) * std::exp(p.a * p.b); }

namespace {

void require_integrable(const FamilyParams& p) {
  const auto i = density_integrability(p);
  if (!i.ok) {
    std::ostringstream os;
    os << "density is not integrable: g ~ s^" << i.exponent_at_0 << " at 0 and (1-s)^" << i.exponent_at_1
       << " at 1";
    throw PreconditionError(os.str());
  }
}

}  // namespace

double stieltjes_eval(double x, const FamilyParams& p, double tol) {
  if (!(x > 0.0)) throw DomainError("stieltjes_eval needs x > 0");
  require_integrable(p);
  const auto q = tanh_sinh(Integrand([&](double s, double s0, double s1) { return density_g(s0, s1, p) / (x + s); }),
                           0.0, 1.0, quad_opts(tol));
  return limit_const_x0(p) + q.value;
}

IntegralPair closed_integrals(const FamilyParams& p) {
  const double a = p.a, b = p.b, d = p.d;
  const double bracket = 12.0 * a * d * d - 12.0 * (a * a * b + a - 2.0) * d + a * b * (a * (3.0 * a * b + 8.0) - 12.0);
  IntegralPair r;
  r.I0 = -(1.0 / 24.0) * a * std::exp(a * b) * bracket;
  r.I1 = r.I0 / 2.0;
  return r;
}

IntegralPair quad_integrals(const FamilyParams& p, double tol) {
  require_integrable(p);
  IntegralPair r;
  r.I0 = tanh_sinh(Integrand([&](double, double s0, double s1) { return density_g(s0, s1, p); }), 0.0, 1.0,
                   quad_opts(tol))
             .value;
  r.I1 = tanh_sinh(Integrand([&](double s, double s0, double s1) { return s * density_g(s0, s1, p); }), 0.0, 1.0,
                   quad_opts(tol))
             .value;
  return r;
}

double threshold_c(const FamilyParams& p) {
  const double a = p.a, b = p.b, d = p.d;
  if (a * b == 2.0 * d) throw PreconditionError("threshold_c needs ab != 2d");
  return (1.0 / 12.0) * a * (6.0 + a * b * (3.0 + 2.0 / (a * b - 2.0 * d)) - 6.0 * d);
}

double alpha_const(const FamilyParams& p) {
  const double a = p.a, b = p.b, d = p.d;
  if (a * b == 2.0 * d) throw PreconditionError("alpha_const needs ab != 2d");
  return (12.0 - a * (6.0 + 3.0 * a * b + 2.0 * a * b / (a * b - 2.0 * d) - 6.0 * d)) / 12.0;
}

std::vector<GnSample> gn_limit_probe(const FamilyParams& p, const std::vector<double>& xs) {
  std::vector<GnSample> out;
  for (double x : xs) {
    GnSample g;
    g.x = x;
    if (!(x > 0.0)) {
      g.diagnostic = "x must be positive";
      out.push_back(g);
      continue;
    }
    const double y = p.a / x;
    // b log(1+y) - a(bx+d)/(x(x+a)), rearranged to avoid cancellation.
    const double denom = p.b * (log1pmx(y) + y * y / (1.0 + y)) - p.d * y / (x * (1.0 + y));
    const double num = std::expm1(-family_exponent(x, p));
    if (!std::isfinite(denom) || std::abs(denom) < 1e-300) {
      g.diagnostic = "denominator vanishes";
    } else if (!std::isfinite(num)) {
      g.diagnostic = "numerator overflows";
    } else {
      g.value = num / denom - x;
      g.ok = std::isfinite(g.value);
      if (!g.ok) g.diagnostic = "non-finite value";
    }
    out.push_back(g);
  }
  return out;
}

double h_derivative(double t, int n, const FamilyParams& p, double tol) {
  if (!(t >= 0.0)) throw DomainError("h needs t >= 0");
  if (n < 0) throw PreconditionError("derivative order must be >= 0");
  require_integrable(p);
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return sign * tanh_sinh(Integrand([&](double s, double s0, double s1) {
                            return std::pow(s, n) * std::exp(-s * t) * density_g(s0, s1, p);
                          }),
                          0.0, 1.0, quad_opts(tol))
                    .value;
}

double h_kernel(double t, const FamilyParams& p, double tol) { return h_derivative(t, 0, p, tol); }

Evaluator h_evaluator(const FamilyParams& p, double tol) {
  Evaluator ev;
  ev.label = "h" + to_string(p);
  ev.fn = [p, tol](double t, int order) {
    std::vector<double> out;
    for (int n = 0; n <= order; ++n) out.push_back(h_derivative(t, n, p, tol));
    return out;
  };
  return ev;
}

PositivityReport positivity_scan(const FamilyParams& p, const std::vector<double>& ts, double tol) {
  PositivityReport r;
  r.alpha = alpha_const(p);
  r.c = threshold_c(p);
  if (!(r.alpha >= 0.0 && r.alpha <= 1.0)) {
    throw PreconditionError("positivity_scan needs alpha in [0, 1], got " + std::to_string(r.alpha));
  }
  const double inner = tol / 10.0;
  const double x0 = limit_const_x0(p);
  const auto I = quad_integrals(p, inner);
  r.c_minus_s_integral = r.c * I.I0 - I.I1;
  r.u0 = h_kernel(0.0, p, inner) - x0 * r.alpha;
  r.w0 = r.u0;
  const double alpha = r.alpha;
  const double c = r.c;
  r.points = tabulate<PositivityPoint>(ts.size(), [&](std::size_t i) {
    PositivityPoint q;
    q.t = ts[i];
    if (!(q.t > 0.0)) throw DomainError("positivity grid must be inside (0, inf)");
    q.h = h_kernel(q.t, p, inner);
    q.J = tanh_sinh([&](double s) { return std::exp(s) * h_kernel(s, p, inner); }, 0.0, q.t, quad_opts(tol)).value;
    q.w = std::exp(q.t) * q.h - x0 * alpha - alpha * q.J;
    q.u = std::exp(-q.t) * q.w;
    q.chain_lhs = c * q.h + h_derivative(q.t, 1, p, inner);
    q.chain_rhs = std::exp(-c * q.t) * r.c_minus_s_integral;
    return q;
  });
  for (const auto& q : r.points) {
    r.u_positive = r.u_positive && q.u > 0.0;
    r.w_positive = r.w_positive && q.w > 0.0;
    r.chain_holds = r.chain_holds && q.chain_lhs >= q.chain_rhs - tol;
  }
  return r;
}

LaplaceRecon laplace_recon(double x, const FamilyParams& p, double T, double tol) {
  if (!(x > 0.0)) throw DomainError("laplace_recon needs x > 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw PreconditionError("truncation T must be positive and finite");
  const double inner = tol / 10.0;
  LaplaceRecon r;
  r.T = T;
  const auto q = tanh_sinh([&](double t) { return std::exp(-x * t) * h_kernel(t, p, inner); }, 0.0, T,
                           quad_opts(tol, ExecPolicy::Parallel));
  r.value = limit_const_x0(p) + q.value;
  r.tail_bound = h_kernel(T, p, inner) * std::exp(-x * T) / x;
  return r;
}

LaplaceRecon laplace_recon_auto(double x, const FamilyParams& p, double tol) {
  if (!(x > 0.0)) throw DomainError("laplace_recon needs x > 0");
  for (double T = 8.0; T <= 4096.0; T *= 2.0) {
    const double bound = h_kernel(T, p, tol / 10.0) * std::exp(-x * T) / x;
    if (bound < tol) return laplace_recon(x, p, T, tol);
  }
  throw QuadratureError("tail bound unachievable for T <= 4096");
}

MinC0Result empirical_min_c0(const FamilyParams& p, const MinC0Options& opt) {
  if (!(opt.lo <= opt.hi)) throw PreconditionError("min-c0 bracket needs lo <= hi");
  const CertGrid grid = CertGrid::log_spaced(opt.grid_lo, opt.grid_hi, opt.points, opt.order);
  MinC0Result r;
  auto passes = [&](double c0) {
    FamilyParams q = p;
    q.c0 = c0;
    ++r.certifications;
    return certify(ClassKind::CompletelyMonotonic, family_evaluator(q), grid, opt.policy).verdict == Verdict::Pass;
  };
  if (opt.lo == opt.hi) {
    passes(opt.lo);
    r.value = opt.lo;
    return r;
  }
  double lo = opt.lo, hi = opt.hi;
  if (passes(lo) || !passes(hi)) throw PreconditionError("no sign change in the c0 bracket");
  while (hi - lo > opt.tol) {
    const double mid = 0.5 * (lo + hi);
    (passes(mid) ? hi : lo) = mid;
  }
  r.value = 0.5 * (lo + hi);
  return r;
}

}  // namespace cmcheck
