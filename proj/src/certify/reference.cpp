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

// Plain serial certifier. Deliberately shares no code with the parallel
// path beyond required_sign(), so the two can be compared in tests.
#include <cmath>
#include <limits>
#include <sstream>

#include "cmcheck/certify.hpp"
#include "cmcheck/errors.hpp"

namespace cmcheck::reference {

CertReport certify(ClassKind kind, const Evaluator& f, const CertGrid& grid) {
  grid.validate();
  CertReport r;
  r.kind = kind;
  r.grid = grid;
  r.label = f.label;
  r.margin = std::numeric_limits<double>::infinity();
  (void)required_sign(kind, 0);
  const int N = grid.max_order;
  if (N > f.max_order) {
    r.verdict = Verdict::Inconclusive;
    r.diagnostics.push_back("order " + std::to_string(N) + " exceeds the evaluator limit of " +
                            std::to_string(f.max_order) + "; use extended precision");
    r.statement = "not checked";
    r.samples.assign(grid.points.size(), {});
    return r;
  }
  auto text = [](double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
  };
  for (double x : grid.points) {
    std::vector<double> d;
    std::string error;
    try {
      d = f.fn(x, N);
      if (d.size() != static_cast<std::size_t>(N) + 1) {
        error = "evaluator returned " + std::to_string(d.size()) + " values";
      } else {
        for (double v : d) {
          if (!std::isfinite(v)) error = "non-finite derivative";
        }
      }
    } catch (const Error& e) {
      error = e.what();
    }
    if (!error.empty()) {
      r.diagnostics.push_back("x = " + text(x) + ": " + error);
      r.samples.emplace_back();
      continue;
    }
    const double tol = std::max(grid.abs_tol, grid.rel_tol * std::abs(d[0]));
    std::vector<double> row;
    for (int n = 0; n <= N; ++n) {
      const int s = required_sign(kind, n);
      const double v = s * d[n];
      row.push_back(s == 0 ? 0.0 : v);
      if (s == 0) continue;
      if (v < r.margin) r.margin = v;
      if (v < -tol) r.violations.push_back({x, n, v, tol});
    }
    r.samples.push_back(row);
  }
  const std::string cls = kind == ClassKind::CompletelyMonotonic   ? "CM"
                          : kind == ClassKind::AbsolutelyMonotonic ? "AM"
                                                                   : std::string(to_string(kind));
  if (!r.violations.empty()) {
    r.verdict = Verdict::Fail;
    r.statement = "violates the " + cls + " sign pattern at x = " + text(r.violations[0].x) +
                  ", n = " + std::to_string(r.violations[0].n);
  } else if (!r.diagnostics.empty()) {
    r.verdict = Verdict::Inconclusive;
    r.statement = "evaluation failed at " + std::to_string(r.diagnostics.size()) + " grid point(s)";
  } else {
    r.verdict = Verdict::Pass;
    r.statement = "consistent with " + cls + " up to order " + std::to_string(N) + " on the grid";
  }
  return r;
}

}  // namespace cmcheck::reference
