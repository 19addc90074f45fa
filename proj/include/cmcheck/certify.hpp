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
#include <optional>
#include <string>
#include <vector>

#include "cmcheck/classify.hpp"
#include "cmcheck/expr.hpp"
#include "cmcheck/kernels.hpp"

namespace cmcheck {

/// Returns [f(x), f'(x), ..., f^(order)(x)]. May throw Error.
using DerivativeFn = std::function<std::vector<double>(double x, int order)>;

struct Evaluator {
  DerivativeFn fn;
  /// Highest order the evaluator is trusted for.
  int max_order = 30;
  std::string label;
};

/// Jet evaluation of an expression. bits > 53 switches to MPFR arithmetic
/// at that precision (this sets the process-wide BigReal precision).
Evaluator expr_evaluator(const Expr& e, const Bindings& bindings, unsigned bits = 53);

inline constexpr int kDefaultOrder = 12;
inline constexpr int kExtendedDefaultOrder = 40;
inline constexpr int kBinary64MaxOrder = 30;

struct CertGrid {
  std::vector<double> points;
  int max_order = kDefaultOrder;
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;

  /// Log-spaced points including both ends; needs 0 < lo < hi.
  static CertGrid log_spaced(double lo, double hi, int count, int max_order = kDefaultOrder);
  static CertGrid linear(double lo, double hi, int count, int max_order = kDefaultOrder);
  /// Points strictly inside an open interval. A zero lower end or infinite
  /// upper end is replaced by a finite stand-in; intervals reaching below
  /// zero get linear spacing.
  static CertGrid inside(const Interval& iv, int count, int max_order = kDefaultOrder);

  /// Throws PreconditionError unless the invariants hold.
  void validate() const;
};

enum class Verdict { Pass, Fail, Inconclusive };
std::string_view to_string(Verdict v);

struct Violation {
  double x = 0.0;
  int n = 0;
  double value = 0.0;  ///< the signed value, s_n * f^(n)(x)
  double tol = 0.0;
};

struct CertReport {
  ClassKind kind = ClassKind::Unknown;
  Verdict verdict = Verdict::Inconclusive;
  /// Smallest signed value over every checked (x, n); +inf when nothing was checked.
  double margin = 0.0;
  std::vector<Violation> violations;  ///< in (x, n) order; front() is the first
  /// samples[i][n] = s_n * f^(n)(points[i]); rows of failed points are empty.
  std::vector<std::vector<double>> samples;
  CertGrid grid;
  std::vector<std::string> diagnostics;
  std::string statement;
  std::string label;
};

/// The sign s_n the class requires of f^(n); 0 means order n is unconstrained.
int required_sign(ClassKind kind, int n);

/// Sign-pattern check on every (x, n <= N). Grid points are evaluated
/// concurrently under Parallel; the report is identical for both policies.
CertReport certify(ClassKind kind, const Evaluator& f, const CertGrid& grid,
                   ExecPolicy policy = ExecPolicy::Parallel);

namespace reference {
/// Straight serial loop kept as the test oracle for certify().
CertReport certify(ClassKind kind, const Evaluator& f, const CertGrid& grid);
}  // namespace reference

struct FdCheck {
  double jet_value = 0.0;
  double fd_value = 0.0;
  double discrepancy = 0.0;
  double step = 0.0;
  bool flagged = false;
};

/// Compares the n-th jet derivative (1 <= n <= 4) with a Richardson-extrapolated
/// central difference. Throws DomainError when no step keeps the stencil in
/// the domain.
FdCheck fd_crosscheck(const Evaluator& f, double x, int n);

/// f(x) = sum_i w_i exp(-t_i x), assembled from jets.
Evaluator laplace_mixture(std::vector<double> weights, std::vector<double> abscissae);

/// certify(CM) of a nonnegative exponential mixture; throws PreconditionError
/// on a negative or non-finite weight or abscissa.
CertReport laplace_probe(const std::vector<double>& weights, const std::vector<double>& abscissae,
                         const CertGrid& grid, ExecPolicy policy = ExecPolicy::Parallel);

/// Drops the first k columns of every sample row. For a CM report the result
/// holds the CM-signed derivatives of (-1)^k f^(k).
std::vector<std::vector<double>> shift_rows(const CertReport& r, int k);

}  // namespace cmcheck
