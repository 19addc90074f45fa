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

#include <functional>

#include "cmcheck/kernels.hpp"

namespace cmcheck {

/// Integrand on [a, b]. Receives the node x together with its exact
/// distances to both ends, so endpoint singularities such as s^(-d) or
/// (1 - s)^p can be evaluated without cancellation.
using Integrand = std::function<double(double x, double from_left, double from_right)>;

struct QuadOptions {
  double abs_tol = 1e-10;
  double rel_tol = 0.0;
  int max_level = 12;
  int min_level = 3;
  ExecPolicy policy = ExecPolicy::Parallel;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  ///< difference of the last two levels
  int evaluations = 0;
  int level = 0;
};

/// Double-exponential (tanh-sinh) quadrature. Throws QuadratureError when
/// the level limit is reached before the tolerance, or on non-finite terms.
QuadResult tanh_sinh(const Integrand& f, double a, double b, const QuadOptions& opt = {});

/// Convenience overload for integrands that only need x.
QuadResult tanh_sinh(const std::function<double(double)>& f, double a, double b, const QuadOptions& opt = {});

}  // namespace cmcheck
