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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmcheck/classify.hpp"
#include "cmcheck/family.hpp"

namespace cmcheck::cli {

using Json = nlohmann::json;

enum class Format { Json, Csv, Text };
std::string_view to_string(Format f);
Format parse_format(std::string_view s);

inline constexpr std::uint64_t kDefaultSeed = 20260101;

/// Everything that determines a run. Serialized into every report; a saved
/// config can be fed back through --config. The thread count is not part of
/// it because results do not depend on it.
struct RunConfig {
  std::string command;  // classify | certify | family-verify | family-scan | min-c0
  std::string expression;
  std::string catalog;
  Interval interval;
  Bindings params;
  std::string query_class = "cm";
  bool allow_contested = false;
  // certify
  std::optional<int> points;  ///< 16 for certify, 24 for min-c0
  std::string spacing = "log";
  std::vector<double> at;
  std::optional<int> max_order;
  double abs_tol = 1e-12;
  double rel_tol = 1e-9;
  unsigned precision = 53;
  bool samples = false;
  // family
  FamilyParams family;
  std::set<std::string> checks;
  // family-scan
  std::vector<double> a_list, b_list, d_list;
  int random = 0;
  std::string plot;
  // min-c0
  double lo = 0.5;
  double hi = 1.5;
  double tol = 1e-3;
  double grid_lo = 0.01;
  double grid_hi = 1000.0;

  Format format = Format::Json;
  std::uint64_t seed = kDefaultSeed;

  int order_or(int fallback) const { return max_order.value_or(precision > 53 ? kExtendedDefaultOrder : fallback); }
};

Json to_json(const RunConfig& c);
/// Throws Error on malformed input.
RunConfig config_from_json(const Json& j);

struct RunResult {
  int exit_code = 0;
  Json report = Json::object();
  std::string csv;
  std::string text;
};

/// Exit codes shared by all commands.
enum Exit : int {
  kOk = 0,
  kUsage = 1,        ///< parse error, invalid parameters, bad flags
  kNotEstablished = 2,
  kContestedOnly = 3,
  kFail = 4,
  kInconclusive = 5,
};

RunResult run_classify(const RunConfig& c);
RunResult run_certify(const RunConfig& c);
RunResult run_family(const RunConfig& c);
RunResult run_family_scan(const RunConfig& c);
RunResult run_min_c0(const RunConfig& c);
RunResult run_config(const RunConfig& c);

/// Sorted keys, 17 significant digits, non-finite numbers as null.
std::string dump_stable(const Json& j);
std::string emit_report(const std::vector<RunResult>& results, Format f);

/// Full command line entry point; returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cmcheck::cli
