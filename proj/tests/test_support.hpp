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

#include <cmath>
#include <random>
#include <vector>

#include "cmcheck/jet.hpp"

namespace cmcheck::testing {

inline constexpr unsigned kSeed = 20260101;

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(abs_floor, rel * std::max(std::abs(a), std::abs(b)));
}

inline Jet<double> random_jet(std::mt19937_64& rng, double x0, int order, double lead_lo = -2.0,
                              double lead_hi = 2.0) {
  std::uniform_real_distribution<double> lead(lead_lo, lead_hi), rest(-1.0, 1.0);
  std::vector<double> c(static_cast<std::size_t>(order) + 1);
  c[0] = lead(rng);
  for (int k = 1; k <= order; ++k) c[static_cast<std::size_t>(k)] = rest(rng);
  return Jet<double>(x0, std::move(c));
}

}  // namespace cmcheck::testing
