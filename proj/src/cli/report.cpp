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

#include <cmath>
#include <cstdio>
#include <limits>

#include "cmcheck/cli.hpp"
#include "cmcheck/errors.hpp"

namespace cmcheck::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void dump(const Json& j, std::string& out) {
  switch (j.type()) {
    case Json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        out += Json(it.key()).dump();
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case Json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump(j[i], out);
      }
      out += ']';
      break;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
      }
      break;
    }
    default:
      out += j.dump();
  }
}

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_or(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (v.is_null()) return kInf;
  return v.get<double>();
}

}  // namespace

std::string_view to_string(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Text: return "text";
  }
  return "json";
}

Format parse_format(std::string_view s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw PreconditionError("unknown format '" + std::string(s) + "'");
}

std::string dump_stable(const Json& j) {
  std::string out;
  dump(j, out);
  return out;
}

Json to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["expression"] = c.expression;
  j["catalog"] = c.catalog;
  j["interval"] = Json::array({number_or_null(c.interval.lo), number_or_null(c.interval.hi)});
  j["params"] = Json::object();
  for (const auto& [k, v] : c.params) j["params"][k] = v;
  j["class"] = c.query_class;
  j["allow_contested"] = c.allow_contested;
  j["points"] = c.points ? Json(*c.points) : Json(nullptr);
  j["spacing"] = c.spacing;
  j["at"] = c.at;
  j["order"] = c.max_order ? Json(*c.max_order) : Json(nullptr);
  j["abs_tol"] = c.abs_tol;
  j["rel_tol"] = c.rel_tol;
  j["precision"] = c.precision;
  j["samples"] = c.samples;
  j["family"] = {{"a", c.family.a}, {"b", c.family.b}, {"d", c.family.d}, {"c0", c.family.c0}};
  j["checks"] = c.checks;
  j["a_list"] = c.a_list;
  j["b_list"] = c.b_list;
  j["d_list"] = c.d_list;
  j["random"] = c.random;
  j["plot"] = c.plot;
  j["min_c0"] = {{"lo", c.lo}, {"hi", c.hi}, {"tol", c.tol}, {"grid_lo", c.grid_lo}, {"grid_hi", c.grid_hi}};
  j["format"] = std::string(to_string(c.format));
  j["seed"] = c.seed;
  return j;
}

RunConfig config_from_json(const Json& j) {
  if (!j.is_object()) throw PreconditionError("config must be a JSON object");
  try {
    RunConfig c;
    c.command = j.value("command", c.command);
    c.expression = j.value("expression", c.expression);
    c.catalog = j.value("catalog", c.catalog);
    if (j.contains("interval")) {
      const auto& iv = j.at("interval");
      if (!iv.is_array() || iv.size() != 2) throw PreconditionError("interval must be [lo, hi]");
      c.interval.lo = iv[0].is_null() ? -kInf : iv[0].get<double>();
      c.interval.hi = iv[1].is_null() ? kInf : iv[1].get<double>();
    }
    if (j.contains("params")) {
      for (const auto& [k, v] : j.at("params").items()) c.params[k] = v.get<double>();
    }
    c.query_class = j.value("class", c.query_class);
    c.allow_contested = j.value("allow_contested", c.allow_contested);
    if (j.contains("points") && !j.at("points").is_null()) c.points = j.at("points").get<int>();
    c.spacing = j.value("spacing", c.spacing);
    c.at = j.value("at", c.at);
    if (j.contains("order") && !j.at("order").is_null()) c.max_order = j.at("order").get<int>();
    c.abs_tol = j.value("abs_tol", c.abs_tol);
    c.rel_tol = j.value("rel_tol", c.rel_tol);
    c.precision = j.value("precision", c.precision);
    c.samples = j.value("samples", c.samples);
    if (j.contains("family")) {
      const auto& f = j.at("family");
      c.family.a = number_or(f, "a", c.family.a);
      c.family.b = number_or(f, "b", c.family.b);
      c.family.d = number_or(f, "d", c.family.d);
      c.family.c0 = number_or(f, "c0", c.family.c0);
    }
    c.checks = j.value("checks", c.checks);
    c.a_list = j.value("a_list", c.a_list);
    c.b_list = j.value("b_list", c.b_list);
    c.d_list = j.value("d_list", c.d_list);
    c.random = j.value("random", c.random);
    c.plot = j.value("plot", c.plot);
    if (j.contains("min_c0")) {
      const auto& m = j.at("min_c0");
      c.lo = number_or(m, "lo", c.lo);
      c.hi = number_or(m, "hi", c.hi);
      c.tol = number_or(m, "tol", c.tol);
      c.grid_lo = number_or(m, "grid_lo", c.grid_lo);
      c.grid_hi = number_or(m, "grid_hi", c.grid_hi);
    }
    c.format = parse_format(j.value("format", std::string("json")));
    c.seed = j.value("seed", c.seed);
    return c;
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed config: ") + e.what());
  }
}

std::string emit_report(const std::vector<RunResult>& results, Format f) {
  switch (f) {
    case Format::Json: {
      Json runs = Json::array();
      for (const auto& r : results) runs.push_back(r.report);
      return dump_stable(Json{{"runs", runs}});
    }
    case Format::Csv: {
      std::string out;
      for (const auto& r : results) out += r.csv;
      return out;
    }
    case Format::Text: {
      std::string out;
      for (const auto& r : results) out += r.text;
      return out;
    }
  }
  return {};
}

}  // namespace cmcheck::cli
