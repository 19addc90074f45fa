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

#include <boost/multiprecision/mpfr.hpp>

namespace cmcheck {

/// Extended-precision real used when more than binary64 is requested.
using BigReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                              boost::multiprecision::et_off>;

inline constexpr unsigned kBinary64Bits = 53;

/// Sets the process-wide working precision of BigReal (in bits). The
/// setting is global: configure it before fanning out evaluations.
void set_working_precision(unsigned bits);
unsigned working_precision();

}  // namespace cmcheck
