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

#include <string>
#include <vector>

#include "cmcheck/classify.hpp"
#include "cmcheck/expr.hpp"

namespace cmcheck {

/// A named function from the closure-rule literature together with the class
/// it is claimed to have. `contested` marks claims that are doubtful or false.
struct CatalogEntry {
  std::string name;
  std::string text;
  Expr expr;
  ClassKind claimed = ClassKind::Unknown;
  Interval interval;
  Bindings bindings;
  bool contested = false;
  std::string note;
};

const std::vector<CatalogEntry>& catalog();
/// Throws PreconditionError for unknown names.
const CatalogEntry& catalog_lookup(std::string_view name);

}  // namespace cmcheck
