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

#include "cmcheck/precision.hpp"

#include <cmath>

#include "cmcheck/errors.hpp"

namespace cmcheck {

void set_working_precision(unsigned bits) {
  if (bits < 2) throw PreconditionError("precision must be at least 2 bits");
  const auto digits10 = static_cast<unsigned>(std::ceil(bits * std::log10(2.0)));
  BigReal::default_precision(digits10);
}

unsigned working_precision() {
  return static_cast<unsigned>(std::ceil(BigReal::default_precision() / std::log10(2.0)));
}

}  // namespace cmcheck
