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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cmcheck/cli.hpp"

using namespace cmcheck::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "cmcheck");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

Json first_run(const Outcome& o) { return Json::parse(o.out).at("runs").at(0); }

}  // namespace

TEST_CASE("classify exit codes") {
  const auto ok = run_args({"classify", "-e", "exp(-x)"});
  CHECK(ok.code == kOk);
  const auto j = first_run(ok);
  CHECK(j.at("judgment").at("kind") == "CompletelyMonotonic");
  CHECK(j.at("judgment").at("rule_ids") == Json::array({"R3"}));
  CHECK(j.at("query").at("established") == true);

  CHECK(run_args({"classify", "-e", "x*x"}).code == kNotEstablished);
  CHECK(run_args({"--allow-contested", "classify", "-e", "x*x"}).code == kContestedOnly);
  CHECK(run_args({"classify", "-e", "x*x", "--class", "am"}).code == kOk);

  const auto bad = run_args({"classify", "-e", "exp("});
  CHECK(bad.code == kUsage);
  CHECK(bad.err.find("offset 4") != std::string::npos);
}

TEST_CASE("catalog lookups fill the interval") {
  const auto o = run_args({"classify", "--catalog", "x_pow_x"});
  CHECK(o.code == kOk);
  CHECK(first_run(o).at("config").at("interval").at(1).get<double>() == doctest::Approx(std::exp(-1.0)));
  CHECK(run_args({"classify", "--catalog", "no_such_entry"}).code == kUsage);
}

TEST_CASE("certify exit codes") {
  const auto pass = run_args({"certify", "-e", "x^x", "--interval", "0.01", "0.35", "-N", "8"});
  CHECK(pass.code == kOk);
  const auto rep = first_run(pass).at("report");
  CHECK(rep.at("verdict") == "pass");
  CHECK(rep.at("grid").at("N") == 8);
  CHECK(rep.at("grid").at("points").size() == 16);

  const auto fail = run_args({"certify", "-e", "x^x", "--interval", "0.4", "0.9", "-N", "2"});
  CHECK(fail.code == kFail);
  CHECK(first_run(fail).at("report").at("first_violation").at("n") == 1);

  CHECK(run_args({"certify", "-e", "1/x", "--interval", "1", "10", "-N", "15"}).code == kOk);
  CHECK(run_args({"certify", "-e", "log(x - 1)", "--interval", "0.2", "0.8", "-N", "2"}).code == kInconclusive);
  CHECK(run_args({"certify", "-e", "exp(-x)", "--interval", "2", "1"}).code == kUsage);
  CHECK(run_args({"certify", "-e", "exp(-x)", "-N", "-1"}).code == kUsage);
}

TEST_CASE("certify csv export") {
  const auto o = run_args({"--format", "csv", "certify", "-e", "exp(-x)", "--interval", "1", "2", "--points", "3",
                           "-N", "2"});
  CHECK(o.code == kOk);
  std::istringstream in(o.out);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 1 + 3 * 3);
}

TEST_CASE("family verify") {
  const auto all = run_args({"family", "--a", "1", "--b", "1", "--d", "0", "--all"});
  CHECK(all.code == kOk);
  const auto rows = first_run(all).at("rows");
  REQUIRE(rows.size() > 5);
  bool threshold = false;
  for (const auto& r : rows) {
    CHECK(r.at("flag") == "pass");
    if (r.at("quantity") == "c") {
      threshold = true;
      CHECK(r.at("value").get<double>() == doctest::Approx(11.0 / 12.0));
    }
  }
  CHECK(threshold);

  const auto flagged = run_args({"family", "--a", "2", "--b", "1", "--d", "0", "--integrals"});
  CHECK(flagged.code == kOk);
  bool saw_flag = false;
  const auto flagged_rows = first_run(flagged).at("rows");
  for (const auto& r : flagged_rows) {
    if (r.at("flag") == "flag") saw_flag = true;
  }
  CHECK(saw_flag);

  CHECK(run_args({"family", "--a", "1", "--b", "2", "--d", "1", "--threshold"}).code == kUsage);
  CHECK(run_args({"family", "--a", "-1", "--all"}).code == kUsage);
}

TEST_CASE("empty report") {
  CHECK(emit_report({}, Format::Json) == "{\"runs\":[]}");
  CHECK(emit_report({}, Format::Csv).empty());
}

TEST_CASE("stable serialization") {
  const Json j = {{"b", 0.1}, {"a", {1, 2}}, {"c", std::numeric_limits<double>::infinity()}};
  CHECK(dump_stable(j) == "{\"a\":[1,2],\"b\":0.10000000000000001,\"c\":null}");
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
  const std::vector<std::vector<std::string>> cmds = {
      {"certify", "-e", "log(1 + x)/x", "--interval", "0.1", "10", "--samples"},
      {"family-scan", "--random", "3", "--seed", "7"},
      {"family", "--all"},
  };
  for (const auto& cmd : cmds) {
    auto one = cmd;
    one.insert(one.begin(), {"--threads", "1"});
    auto four = cmd;
    four.insert(four.begin(), {"--threads", "4"});
    const auto a = run_args(one), b = run_args(four), c = run_args(four);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(b.out == c.out);
  }
}

TEST_CASE("every report embeds its config and seed") {
  const auto o = run_args({"--seed", "42", "classify", "-e", "exp(-x)"});
  const auto cfg = first_run(o).at("config");
  CHECK(cfg.at("seed") == 42);
  CHECK(cfg.at("command") == "classify");
  CHECK(cfg.at("expression") == "exp(-x)");
}

TEST_CASE("config round trip") {
  RunConfig c;
  c.command = "certify";
  c.expression = "exp(-x)";
  c.interval = {0.5, 4.0};
  c.max_order = 9;
  c.points = 5;
  c.params = {{"a", 2.0}};
  c.seed = 99;
  c.format = Format::Csv;
  const auto back = config_from_json(to_json(c));
  CHECK(dump_stable(to_json(back)) == dump_stable(to_json(c)));

  const std::string path = "cli_roundtrip_config.json";
  {
    std::ofstream f(path);
    f << dump_stable(to_json(c));
  }
  const auto from_file = run_args({"--format", "json", "--config", path, "certify"});
  const auto direct = run_args({"--seed", "99", "-p", "a=2", "certify", "-e", "exp(-x)", "--interval", "0.5", "4",
                                "-N", "9", "--points", "5"});
  CHECK(from_file.code == kOk);
  CHECK(from_file.out == direct.out);
  std::remove(path.c_str());
  CHECK(run_args({"--config", "does_not_exist.json", "certify"}).code == kUsage);
}

TEST_CASE("min-c0") {
  const auto o = run_args({"min-c0", "--a", "1", "--b", "1", "--d", "0"});
  CHECK(o.code == kOk);
  CHECK(first_run(o).at("value").get<double>() == doctest::Approx(11.0 / 12.0).epsilon(0.02));
  CHECK(run_args({"min-c0", "--lo", "1.2", "--hi", "1.5"}).code == kInconclusive);
}

TEST_CASE("exit codes stay in the listed set") {
  const std::vector<std::vector<std::string>> cmds = {
      {},
      {"bogus"},
      {"classify"},
      {"certify", "-e", "x", "--spacing", "weird"},
      {"family-scan", "--a", "1,x"},
      {"--format", "xml", "classify", "-e", "x"},
      {"certify", "-e", "a*x"},
  };
  for (const auto& cmd : cmds) {
    const int code = run_args(cmd).code;
    CHECK(code >= kOk);
    CHECK(code <= kInconclusive);
  }
}
