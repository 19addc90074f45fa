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

#include <array>
#include <cmath>
#include <limits>

#include "cmcheck/certify.hpp"
#include "cmcheck/errors.hpp"

namespace cmcheck {

namespace {

// Second-order central stencils, offsets -2..2.
constexpr std::array<std::array<double, 5>, 5> kStencil = {{
    {0, 0, 1, 0, 0},
    {0, -0.5, 0, 0.5, 0},
    {0, 1, -2, 1, 0},
    {-0.5, 1, 0, -1, 0.5},
    {1, -4, 6, -4, 1},
}};

double central(const Evaluator& f, double x, int n, double h) {
  double acc = 0.0;
  for (int k = -2; k <= 2; ++k) {
    const double c = kStencil[n][k + 2];
    if (c == 0.0) continue;
    acc += c * f.fn(x + k * h, 0).at(0);
  }
  return acc / std::pow(h, n);
}

}  // namespace

FdCheck fd_crosscheck(const Evaluator& f, double x, int n) {
  if (n < 1 || n > 4) throw PreconditionError("fd_crosscheck supports 1 <= n <= 4");
  FdCheck c;
  c.jet_value = f.fn(x, n).at(n);
  // Richardson on h and 2h cancels the h^2 term; the step balances the
  // remaining h^4 truncation against rounding amplified by h^-n.
  double h = std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (n + 4)) * std::max(1.0, std::abs(x));
  for (int attempt = 0; attempt <= 8; ++attempt, h *= 0.5) {
    try {
      const double d1 = central(f, x, n, h);
      const double d2 = central(f, x, n, 2.0 * h);
      c.fd_value = (4.0 * d1 - d2) / 3.0;
      c.step = h;
      c.discrepancy = std::abs(c.fd_value - c.jet_value);
      c.flagged = c.discrepancy > std::max(1e-4, 1e-3 * std::abs(c.jet_value));
      return c;
    } catch (const DomainError&) {
    }
  }
  throw DomainError("stencil leaves domain at x = " + std::to_string(x));
}

}  // namespace cmcheck
