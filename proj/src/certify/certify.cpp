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

#include "cmcheck/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "cmcheck/errors.hpp"
#include "cmcheck/jet.hpp"
#include "cmcheck/precision.hpp"

namespace cmcheck {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string short_class(ClassKind k) {
  switch (k) {
    case ClassKind::CompletelyMonotonic: return "CM";
    case ClassKind::AbsolutelyMonotonic: return "AM";
    default: return std::string(to_string(k));
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Outcome at one grid point.
struct PointResult {
  std::vector<double> derivs;
  std::string error;
};

PointResult evaluate_point(const Evaluator& f, double x, int order) {
  PointResult p;
  try {
    p.derivs = f.fn(x, order);
    if (p.derivs.size() != static_cast<std::size_t>(order) + 1) {
      p.error = "evaluator returned " + std::to_string(p.derivs.size()) + " values";
      p.derivs.clear();
    } else if (!std::all_of(p.derivs.begin(), p.derivs.end(), [](double v) { return std::isfinite(v); })) {
      p.error = "non-finite derivative";
      p.derivs.clear();
    }
  } catch (const Error& e) {
    p.error = e.what();
  }
  return p;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int required_sign(ClassKind kind, int n) {
  switch (kind) {
    case ClassKind::CompletelyMonotonic:
      return n % 2 == 0 ? 1 : -1;
    case ClassKind::Bernstein:
    case ClassKind::CMDerivative:
      return n == 0 || n % 2 == 1 ? 1 : -1;
    case ClassKind::AbsolutelyMonotonic:
      return 1;
    case ClassKind::Positive:
      return n == 0 ? 1 : 0;
    case ClassKind::Unknown:
      break;
  }
  throw PreconditionError("no sign pattern for class Unknown");
}

CertGrid CertGrid::log_spaced(double lo, double hi, int count, int max_order) {
  if (!(lo > 0.0 && lo < hi && std::isfinite(hi)) || count < 1) {
    throw PreconditionError("log grid needs 0 < lo < hi < inf and count >= 1");
  }
  CertGrid g;
  g.max_order = max_order;
  if (count == 1) {
    g.points = {std::sqrt(lo * hi)};
    return g;
  }
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < count; ++i) g.points.push_back(std::exp(l0 + (l1 - l0) * i / (count - 1)));
  g.points.front() = lo;
  g.points.back() = hi;
  return g;
}

CertGrid CertGrid::linear(double lo, double hi, int count, int max_order) {
  if (!(lo < hi && std::isfinite(lo) && std::isfinite(hi)) || count < 1) {
    throw PreconditionError("linear grid needs finite lo < hi and count >= 1");
  }
  CertGrid g;
  g.max_order = max_order;
  if (count == 1) {
    g.points = {0.5 * (lo + hi)};
    return g;
  }
  for (int i = 0; i < count; ++i) g.points.push_back(lo + (hi - lo) * i / (count - 1));
  return g;
}

CertGrid CertGrid::inside(const Interval& iv, int count, int max_order) {
  if (!iv.valid() || count < 1) throw PreconditionError("grid needs lo < hi and count >= 1");
  CertGrid g;
  g.max_order = max_order;
  if (iv.lo < 0.0) {
    const double hi = std::isfinite(iv.hi) ? iv.hi : iv.lo + 100.0;
    for (int i = 0; i < count; ++i) g.points.push_back(iv.lo + (hi - iv.lo) * (i + 0.5) / count);
    return g;
  }
  double lo = iv.lo;
  double hi = iv.hi;
  if (lo == 0.0) lo = std::isfinite(hi) ? hi * 1e-3 : 1e-2;
  if (!std::isfinite(hi)) hi = std::max(100.0, lo * 1e4);
  const double l0 = std::log(lo), l1 = std::log(hi);
  for (int i = 0; i < count; ++i) g.points.push_back(std::exp(l0 + (l1 - l0) * (i + 0.5) / count));
  return g;
}

void CertGrid::validate() const {
  if (points.empty()) throw PreconditionError("grid has no points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!std::isfinite(points[i])) throw PreconditionError("grid point is not finite");
    if (i > 0 && !(points[i] > points[i - 1])) throw PreconditionError("grid points must be strictly increasing");
  }
  if (max_order < 0) throw PreconditionError("max order must be >= 0");
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) throw PreconditionError("tolerances must be >= 0");
}

CertReport certify(ClassKind kind, const Evaluator& f, const CertGrid& grid, ExecPolicy policy) {
  grid.validate();
  const int order = grid.max_order;
  CertReport r;
  r.kind = kind;
  r.grid = grid;
  r.label = f.label;
  r.margin = kInf;
  (void)required_sign(kind, 0);
  if (order > f.max_order) {
    r.verdict = Verdict::Inconclusive;
    r.diagnostics.push_back("order " + std::to_string(order) + " exceeds the evaluator limit of " +
                            std::to_string(f.max_order) + "; use extended precision");
    r.statement = "not checked";
    r.samples.assign(grid.points.size(), {});
    return r;
  }

  const auto results = tabulate<PointResult>(
      grid.points.size(), [&](std::size_t i) { return evaluate_point(f, grid.points[i], order); }, policy);

  // Deterministic assembly in (x, n) order.
  r.samples.resize(grid.points.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    const double x = grid.points[i];
    const auto& p = results[i];
    if (!p.error.empty()) {
      r.diagnostics.push_back("x = " + fmt(x) + ": " + p.error);
      continue;
    }
    const double tol = std::max(grid.abs_tol, grid.rel_tol * std::abs(p.derivs[0]));
    auto& row = r.samples[i];
    row.resize(p.derivs.size());
    for (int n = 0; n <= order; ++n) {
      const int s = required_sign(kind, n);
      const double signed_value = s == 0 ? 0.0 : s * p.derivs[static_cast<std::size_t>(n)];
      row[static_cast<std::size_t>(n)] = signed_value;
      if (s == 0) continue;
      r.margin = std::min(r.margin, signed_value);
      if (signed_value < -tol) r.violations.push_back({x, n, signed_value, tol});
    }
  }

  const std::string cls = short_class(kind);
  if (!r.violations.empty()) {
    r.verdict = Verdict::Fail;
    const auto& v = r.violations.front();
    r.statement = "violates the " + cls + " sign pattern at x = " + fmt(v.x) + ", n = " + std::to_string(v.n);
  } else if (!r.diagnostics.empty()) {
    r.verdict = Verdict::Inconclusive;
    r.statement = "evaluation failed at " + std::to_string(r.diagnostics.size()) + " grid point(s)";
  } else {
    r.verdict = Verdict::Pass;
    r.statement = "consistent with " + cls + " up to order " + std::to_string(order) + " on the grid";
  }
  return r;
}

std::vector<std::vector<double>> shift_rows(const CertReport& r, int k) {
  std::vector<std::vector<double>> out;
  out.reserve(r.samples.size());
  for (const auto& row : r.samples) {
    if (static_cast<int>(row.size()) <= k) {
      out.emplace_back();
    } else {
      out.emplace_back(row.begin() + k, row.end());
    }
  }
  return out;
}

Evaluator expr_evaluator(const Expr& e, const Bindings& bindings, unsigned bits) {
  Evaluator ev;
  ev.label = to_string(e);
  if (bits <= kBinary64Bits) {
    ev.max_order = kBinary64MaxOrder;
    ev.fn = [e, bindings](double x, int order) { return eval_jet<double>(e, bindings, x, order).derivatives(); };
    return ev;
  }
  set_working_precision(bits);
  // Cancellation grows by roughly one bit per order; keep 20 bits in reserve.
  ev.max_order = static_cast<int>(bits) - 20;
  ev.fn = [e, bindings](double x, int order) {
    const auto d = eval_jet<BigReal>(e, bindings, BigReal(x), order).derivatives();
    std::vector<double> out(d.size());
    for (std::size_t k = 0; k < d.size(); ++k) out[k] = static_cast<double>(d[k]);
    return out;
  };
  return ev;
}

Evaluator laplace_mixture(std::vector<double> weights, std::vector<double> abscissae) {
  if (weights.size() != abscissae.size()) throw PreconditionError("weights and abscissae differ in length");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0) || !std::isfinite(weights[i])) {
      throw PreconditionError("mixture weight must be finite and >= 0");
    }
    if (!(abscissae[i] >= 0.0) || !std::isfinite(abscissae[i])) {
      throw PreconditionError("mixture abscissa must be finite and >= 0");
    }
  }
  Evaluator ev;
  ev.label = "laplace mixture of " + std::to_string(weights.size()) + " atoms";
  ev.fn = [w = std::move(weights), t = std::move(abscissae)](double x, int order) {
    auto sum = Jet<double>::constant(0.0, x, order);
    const auto var = Jet<double>::variable(x, order);
    for (std::size_t i = 0; i < w.size(); ++i) sum = sum + scale(exp(scale(var, -t[i])), w[i]);
    return sum.derivatives();
  };
  return ev;
}

CertReport laplace_probe(const std::vector<double>& weights, const std::vector<double>& abscissae,
                         const CertGrid& grid, ExecPolicy policy) {
  return certify(ClassKind::CompletelyMonotonic, laplace_mixture(weights, abscissae), grid, policy);
}

}  // namespace cmcheck
