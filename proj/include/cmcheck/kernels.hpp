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

#include <cstddef>
#include <exception>
#include <string_view>
#include <vector>

#include <omp.h>

namespace cmcheck {

/// Serial runs everything on the calling thread and is the reference for
/// the parallel path; both produce identical results.
enum class ExecPolicy { Serial, Parallel };

std::string_view to_string(ExecPolicy p);

inline int max_threads() { return omp_get_max_threads(); }
inline void set_threads(int n) { omp_set_num_threads(n > 0 ? n : 1); }

/// out[i] = f(i) for i in [0, n). Under Parallel the indices are spread over
/// OpenMP threads; if any call throws, the exception of the lowest failing
/// index is rethrown after the loop.
template <class T, class F>
std::vector<T> tabulate(std::size_t n, F&& f, ExecPolicy policy = ExecPolicy::Parallel) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  const bool parallel = policy == ExecPolicy::Parallel && n > 16;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = f(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace cmcheck
