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
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmcheck/errors.hpp"

namespace cmcheck {

namespace detail {

template <class T>
bool is_finite(const T& v) {
  using std::isfinite;
  return isfinite(v);
}

}  // namespace detail

/// Truncated Taylor expansion of a univariate function at a basepoint.
///
/// coeffs()[k] is f^(k)(basepoint) / k!. Coefficients stay scaled through
/// every recurrence; derivatives() is the only place factorials appear.
/// Jets are immutable values. Binary operations require identical
/// basepoint and order and throw MismatchError otherwise.
template <class T>
class Jet {
 public:
  Jet(T basepoint, std::vector<T> coeffs)
      : basepoint_(std::move(basepoint)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw PreconditionError("jet needs at least one coefficient");
    if (!detail::is_finite(basepoint_)) throw DomainError("jet basepoint is not finite");
    for (const auto& c : coeffs_) {
      if (!detail::is_finite(c)) throw OverflowError("jet coefficient is not finite");
    }
  }

  static Jet constant(const T& c, const T& basepoint, int order) {
    check_order(order);
    std::vector<T> coeffs(static_cast<std::size_t>(order) + 1, T(0));
    coeffs[0] = c;
    return Jet(basepoint, std::move(coeffs));
  }

  static Jet variable(const T& basepoint, int order) {
    check_order(order);
    std::vector<T> coeffs(static_cast<std::size_t>(order) + 1, T(0));
    coeffs[0] = basepoint;
    if (order >= 1) coeffs[1] = T(1);
    return Jet(basepoint, std::move(coeffs));
  }

  const T& basepoint() const noexcept { return basepoint_; }
  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  std::span<const T> coeffs() const noexcept { return coeffs_; }
  const T& operator[](std::size_t k) const { return coeffs_.at(k); }
  const T& value() const noexcept { return coeffs_.front(); }

  /// Unscaled derivatives [f(x0), f'(x0), ..., f^(N)(x0)].
  std::vector<T> derivatives() const {
    std::vector<T> out(coeffs_.size());
    T factorial(1);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (k > 0) factorial *= T(static_cast<long>(k));
      out[k] = coeffs_[k] * factorial;
    }
    return out;
  }

  /// Jet of f' at the same basepoint, one order lower.
  Jet derivative() const {
    if (order() == 0) throw PreconditionError("cannot differentiate an order-0 jet");
    std::vector<T> out(coeffs_.size() - 1);
    for (std::size_t k = 0; k < out.size(); ++k) {
      out[k] = coeffs_[k + 1] * T(static_cast<long>(k + 1));
    }
    return Jet(basepoint_, std::move(out));
  }

  friend bool operator==(const Jet& a, const Jet& b) {
    return a.basepoint_ == b.basepoint_ && a.coeffs_ == b.coeffs_;
  }

 private:
  static void check_order(int order) {
    if (order < 0) throw PreconditionError("jet order must be non-negative");
  }

  T basepoint_;
  std::vector<T> coeffs_;
};

namespace detail {

template <class T>
void check_compatible(const Jet<T>& u, const Jet<T>& v) {
  if (u.order() != v.order()) {
    throw MismatchError("jet orders differ: " + std::to_string(u.order()) + " vs " +
                        std::to_string(v.order()));
  }
  if (!(u.basepoint() == v.basepoint())) throw MismatchError("jet basepoints differ");
}

template <class T>
std::vector<T> zeros_like(const Jet<T>& u) {
  return std::vector<T>(u.coeffs().size(), T(0));
}

}  // namespace detail

template <class T>
Jet<T> operator+(const Jet<T>& u, const Jet<T>& v) {
  detail::check_compatible(u, v);
  auto w = detail::zeros_like(u);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = u.coeffs()[k] + v.coeffs()[k];
  return Jet<T>(u.basepoint(), std::move(w));
}

template <class T>
Jet<T> operator-(const Jet<T>& u) {
  auto w = detail::zeros_like(u);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = -u.coeffs()[k];
  return Jet<T>(u.basepoint(), std::move(w));
}

template <class T>
Jet<T> operator-(const Jet<T>& u, const Jet<T>& v) {
  return u + (-v);
}

template <class T>
Jet<T> scale(const Jet<T>& u, const T& c) {
  auto w = detail::zeros_like(u);
  for (std::size_t k = 0; k < w.size(); ++k) w[k] = c * u.coeffs()[k];
  return Jet<T>(u.basepoint(), std::move(w));
}

/// Cauchy product: the scaled form of the Leibniz rule.
template <class T>
Jet<T> operator*(const Jet<T>& u, const Jet<T>& v) {
  detail::check_compatible(u, v);
  const auto a = u.coeffs();
  const auto b = v.coeffs();
  auto w = detail::zeros_like(u);
  for (std::size_t n = 0; n < w.size(); ++n) {
    T acc(0);
    for (std::size_t k = 0; k <= n; ++k) acc += a[k] * b[n - k];
    w[n] = acc;
  }
  return Jet<T>(u.basepoint(), std::move(w));
}

template <class T>
Jet<T> recip(const Jet<T>& u) {
  const auto a = u.coeffs();
  if (a[0] == T(0)) throw DomainError("reciprocal has a pole at the basepoint");
  auto w = detail::zeros_like(u);
  const T inv = T(1) / a[0];
  w[0] = inv;
  for (std::size_t n = 1; n < w.size(); ++n) {
    T acc(0);
    for (std::size_t k = 1; k <= n; ++k) acc += a[k] * w[n - k];
    w[n] = -inv * acc;
  }
  return Jet<T>(u.basepoint(), std::move(w));
}

template <class T>
Jet<T> operator/(const Jet<T>& u, const Jet<T>& v) {
  return u * recip(v);
}

template <class T>
Jet<T> exp(const Jet<T>& u) {
  using std::exp;
  const auto a = u.coeffs();
  auto w = detail::zeros_like(u);
  w[0] = exp(a[0]);
  if (!detail::is_finite(w[0])) throw OverflowError("exp overflows at the basepoint");
  for (std::size_t n = 1; n < w.size(); ++n) {
    T acc(0);
    for (std::size_t k = 1; k <= n; ++k) acc += T(static_cast<long>(k)) * a[k] * w[n - k];
    w[n] = acc / T(static_cast<long>(n));
  }
  return Jet<T>(u.basepoint(), std::move(w));
}

/// Principal real branch only.
template <class T>
Jet<T> log(const Jet<T>& u) {
  using std::log;
  const auto a = u.coeffs();
  if (!(a[0] > T(0))) throw DomainError("log of a non-positive value");
  auto w = detail::zeros_like(u);
  w[0] = log(a[0]);
  for (std::size_t n = 1; n < w.size(); ++n) {
    T acc(0);
    for (std::size_t k = 1; k < n; ++k) acc += T(static_cast<long>(k)) * w[k] * a[n - k];
    w[n] = (a[n] - acc / T(static_cast<long>(n))) / a[0];
  }
  return Jet<T>(u.basepoint(), std::move(w));
}

/// base^exponent as exp(exponent * log(base)); base must be positive.
template <class T>
Jet<T> pow(const Jet<T>& base, const Jet<T>& exponent) {
  detail::check_compatible(base, exponent);
  if (!(base.value() > T(0))) throw DomainError("pow needs a positive base");
  return exp(exponent * log(base));
}

/// u^alpha for a constant exponent. Integer exponents accept any sign of
/// u(x0) (negative ones need u(x0) != 0); others need u(x0) > 0.
template <class T>
Jet<T> pow(const Jet<T>& u, const T& alpha) {
  using std::abs;
  using std::pow;
  using std::round;
  const auto a = u.coeffs();
  const bool integral = (alpha == round(alpha)) && abs(alpha) <= T(64);
  if (integral) {
    long n = static_cast<long>(round(alpha));
    if (n == 0) return Jet<T>::constant(T(1), u.basepoint(), u.order());
    Jet<T> result = Jet<T>::constant(T(1), u.basepoint(), u.order());
    Jet<T> sq = u;
    long e = n < 0 ? -n : n;
    while (e > 0) {
      if (e & 1) result = result * sq;
      e >>= 1;
      if (e > 0) sq = sq * sq;
    }
    return n < 0 ? recip(result) : result;
  }
  if (!(a[0] > T(0))) throw DomainError("non-integer power of a non-positive value");
  auto w = detail::zeros_like(u);
  w[0] = pow(a[0], alpha);
  if (!detail::is_finite(w[0])) throw OverflowError("pow overflows at the basepoint");
  for (std::size_t n = 1; n < w.size(); ++n) {
    T acc(0);
    for (std::size_t k = 1; k <= n; ++k) {
      acc += (alpha * T(static_cast<long>(k)) - T(static_cast<long>(n - k))) * a[k] * w[n - k];
    }
    w[n] = acc / (T(static_cast<long>(n)) * a[0]);
  }
  return Jet<T>(u.basepoint(), std::move(w));
}

/// Produces the jet of an outer function at a requested basepoint and order.
template <class T>
using JetGenerator = std::function<Jet<T>(const T& basepoint, int order)>;

/// Jet of outer(inner(x)): the outer jet is taken at inner(x0) and the
/// inner jet, with its constant term removed, is substituted by Horner's rule.
template <class T>
Jet<T> compose(const JetGenerator<T>& outer, const Jet<T>& inner) {
  const int order = inner.order();
  const Jet<T> o = outer(inner.value(), order);
  if (o.order() != order || !(o.basepoint() == inner.value())) {
    throw MismatchError("outer generator returned a jet of the wrong order or basepoint");
  }
  std::vector<T> shifted(inner.coeffs().begin(), inner.coeffs().end());
  shifted[0] = T(0);
  const Jet<T> delta(inner.basepoint(), std::move(shifted));
  Jet<T> result = Jet<T>::constant(o.coeffs()[static_cast<std::size_t>(order)], inner.basepoint(), order);
  for (int k = order - 1; k >= 0; --k) {
    result = result * delta + Jet<T>::constant(o.coeffs()[static_cast<std::size_t>(k)], inner.basepoint(), order);
  }
  return result;
}

}  // namespace cmcheck
