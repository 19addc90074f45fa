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

#include "cmcheck/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cmcheck/errors.hpp"

namespace cmcheck {

std::string_view to_string(ExecPolicy p) { return p == ExecPolicy::Serial ? "serial" : "parallel"; }

namespace {

// Beyond this the node sits within ~1e-280 of an endpoint.
constexpr double kTMax = 6.0;

struct Node {
  double x, left, right, weight;
};

// Abscissa pair for +t and -t, with the half-width folded into the weight.
void nodes_at(double t, double a, double b, std::vector<Node>& out) {
  const double half = 0.5 * (b - a);
  const double u = 0.5 * std::numbers::pi * std::sinh(t);
  const double e = std::exp(-2.0 * u);
  const double near = (b - a) * e / (1.0 + e);  // distance of the +t node to b
  const double ch = std::cosh(u);
  const double w = half * 0.5 * std::numbers::pi * std::cosh(t) / (ch * ch);
  if (!(near > 0.0) || !(w > 0.0) || !std::isfinite(w)) return;
  const double far = (b - a) - near;
  out.push_back({b - near, far, near, w});
  if (t != 0.0) out.push_back({a + near, near, far, w});
}

}  // namespace

QuadResult tanh_sinh(const Integrand& f, double a, double b, const QuadOptions& opt) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw PreconditionError("tanh_sinh: need finite a < b");
  }
  QuadResult r;
  double sum = 0.0;  // sum of weight * f over all nodes so far (step 1 weights)
  double previous = 0.0;
  for (int level = 0; level <= opt.max_level; ++level) {
    const double h = std::ldexp(1.0, -level);
    std::vector<Node> nodes;
    if (level == 0) {
      for (int j = 0; j <= static_cast<int>(kTMax); ++j) nodes_at(j, a, b, nodes);
    } else {
      for (long j = 1; j * h <= kTMax; j += 2) nodes_at(static_cast<double>(j) * h, a, b, nodes);
    }
    const auto values = tabulate<double>(
        nodes.size(), [&](std::size_t i) { return nodes[i].weight * f(nodes[i].x, nodes[i].left, nodes[i].right); },
        opt.policy);
    for (double v : values) {
      if (!std::isfinite(v)) throw QuadratureError("tanh_sinh: non-finite integrand value");
      sum += v;
    }
    r.evaluations += static_cast<int>(nodes.size());
    const double estimate = sum * h;
    r.value = estimate;
    r.level = level;
    if (level > 0) {
      r.error = std::abs(estimate - previous);
      const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(estimate));
      if (level >= opt.min_level && r.error <= target) return r;
    }
    previous = estimate;
  }
  throw QuadratureError("tanh_sinh: no convergence after level " + std::to_string(opt.max_level) +
                        " (last difference " + std::to_string(r.error) + ")");
}

QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt) {
  return tanh_sinh(Integrand([&](double x, double, double) { return f(x); }), a, b, opt);
}

}  // namespace cmcheck
