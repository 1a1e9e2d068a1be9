// Copyright 2026 The ohlab Authors
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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"

using namespace ohlab::cli;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "ohlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "ohlab_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Splits one CSV line; fields here never contain quotes.
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("pw end to end reports the maximal relative error") {
  const Run r = invoke({"pw", "--dim", "4", "--trials", "50"});
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["experiment"] == "pw");
  CHECK(j["version"] == kVersion);
  CHECK(j["params"]["dim"] == 4);
  CHECK(j["params"]["trials"] == 50);
  CHECK(j["rows"].size() == 50);
  CHECK(j["summary"]["max_relative_error"].get<double>() <= 1e-6);
  CHECK(j["status"] == "pass");
  CHECK_FALSE(j.contains("wall_time_s"));
}

TEST_CASE("bracket n = 8 echoes lower <= upper and the constants") {
  const Run r = invoke({"bracket", "--n-list", "8", "--grid", "256"});
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  REQUIRE(j["rows"].size() == 1);
  const Json& row = j["rows"][0];
  CHECK(row["n"] == 8);
  CHECK(row["lower"].get<double>() <= row["upper"].get<double>());
  for (const char* key : {"pi1", "lambda_cb"}) {
    CHECK(row[key]["lo"].get<double>() <= row[key]["hi"].get<double>());
  }
  CHECK(row["grid"] == 256);
  CHECK(row.contains("delta"));
  CHECK(row["constants"].size() >= 6);
  for (const Json& c : row["constants"]) {
    CHECK(c.contains("name"));
    CHECK(c.contains("value"));
    CHECK(c.contains("citation"));
  }
}

TEST_CASE("bracket below n = 7 uses the Banach lower route") {
  const Run r = invoke({"bracket", "--n-list", "4", "--grid", "128"});
  REQUIRE(r.status == 0);
  const Json j = Json::parse(r.out);
  CHECK(j["rows"][0]["lower"].is_null());
  CHECK(j["rows"][0]["pi1"]["lo"].get<double>() > 0.0);
}

TEST_CASE("exit status 2 for usage errors") {
  Run r = invoke({});
  CHECK(r.status == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(invoke({"pw", "--bogus"}).status == 2);
  CHECK(invoke({"nosuch"}).status == 2);
  CHECK(invoke({"pw", "--trials", "0"}).status == 2);
  CHECK(invoke({"pw", "--dim", "65"}).status == 2);
  CHECK(invoke({"pw", "--format", "xml"}).status == 2);
  CHECK(invoke({"bracket", "--n-list", "8,x"}).status == 2);
  CHECK(invoke({"free", "--law", "bernoulli", "--dim", "7"}).status == 2);
  r = invoke({"pw", "--out", "/nonexistent-dir/x.json"});
  CHECK(r.status == 2);
  CHECK(r.err.find("/nonexistent-dir/x.json") != std::string::npos);
}

TEST_CASE("help and version succeed") {
  const Run h = invoke({"--help"});
  CHECK(h.status == 0);
  CHECK(h.out.find("bracket") != std::string::npos);
  const Run v = invoke({"--version"});
  CHECK(v.status == 0);
  CHECK(v.out.find(kVersion) != std::string::npos);
}

TEST_CASE("exit status 1 when a check fails") {
  const Run r = invoke({"pw", "--trials", "2", "--nodes", "8", "--tol", "1e-14"});
  CHECK(r.status == 1);
  const Json j = Json::parse(r.out);
  CHECK(j["status"] == "fail");
}

TEST_CASE("identical seeded runs are byte-identical at one thread") {
  setenv("OHLAB_THREADS", "1", 1);
  const std::vector<std::vector<std::string>> commands = {
      {"pw", "--trials", "3"},
      {"ohnorm", "--trials", "2"},
      {"basis", "--trials", "2"},
      {"sumspace", "--trials", "2"},
      {"bracket", "--n-list", "8", "--grid", "128"},
      {"free", "--dim", "32", "--summands", "3", "--trials", "2"},
      {"fock", "--cutoff", "6", "--kmax", "3"}};
  for (const auto& cmd : commands) {
    const Run a = invoke(cmd);
    const Run b = invoke(cmd);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
  unsetenv("OHLAB_THREADS");
}

TEST_CASE("CSV and JSON carry identical numbers") {
  const Run j = invoke({"sumspace", "--trials", "3"});
  const Run c = invoke({"sumspace", "--trials", "3", "--format", "csv"});
  REQUIRE(j.status == 0);
  REQUIRE(c.status == 0);
  const Json report = Json::parse(j.out);
  std::stringstream lines(c.out);
  std::string header_line;
  std::getline(lines, header_line);
  const std::vector<std::string> header = split(header_line);
  std::size_t row = 0;
  std::string line;
  while (std::getline(lines, line)) {
    const std::vector<std::string> cells = split(line);
    REQUIRE(cells.size() == header.size());
    const Json& r = report["rows"][row++];
    for (std::size_t i = 0; i < header.size(); ++i) {
      const Json& v = r[header[i]];
      if (v.is_number_float()) CHECK(std::stod(cells[i]) == v.get<double>());
    }
  }
  CHECK(row == report["rows"].size());
}

TEST_CASE("report merge") {
  const auto p8 = scratch("b8.json");
  const auto p16 = scratch("b16.json");
  REQUIRE(invoke({"bracket", "--n-list", "8", "--grid", "128", "--out", p8.string()}).status == 0);
  REQUIRE(invoke({"bracket", "--n-list", "16", "--grid", "128", "--out", p16.string()}).status == 0);

  const Run one = invoke({"report", p8.string()});
  CHECK(one.status == 0);
  CHECK(one.out == slurp(p8));

  const Run both = invoke({"report", p16.string(), p8.string()});
  REQUIRE(both.status == 0);
  const Json merged = Json::parse(both.out);
  REQUIRE(merged["rows"].size() == 2);
  CHECK(merged["rows"][0]["n"] == 8);
  CHECK(merged["rows"][1]["n"] == 16);
  CHECK(merged["rows"][0]["source"] == p8.string());

  Json other = Json::parse(slurp(p16));
  other["version"] = "9.9.9";
  const auto pv = scratch("bv.json");
  std::ofstream(pv) << other.dump();
  const Run conflict = invoke({"report", p8.string(), pv.string()});
  CHECK(conflict.status == 2);
  CHECK(conflict.err.find("version") != std::string::npos);

  const auto pw = scratch("pw.json");
  REQUIRE(invoke({"pw", "--trials", "1", "--out", pw.string()}).status == 0);
  const Run mismatch = invoke({"report", p8.string(), pw.string()});
  CHECK(mismatch.status == 2);
  CHECK(mismatch.err.find(pw.string()) != std::string::npos);

  CHECK(invoke({"report", scratch("missing.json").string()}).status == 2);
}

TEST_CASE("list parsing") {
  CHECK(parse_size_list("8,16,...,128") == std::vector<std::size_t>{8, 16, 32, 64, 128});
  CHECK(parse_size_list("8") == std::vector<std::size_t>{8});
  CHECK(parse_size_list("3,9,...,81") == std::vector<std::size_t>{3, 9, 27, 81});
  CHECK_THROWS_AS(parse_size_list("8,12,...,64"), ConfigError);
  CHECK_THROWS_AS(parse_size_list("-1"), ConfigError);
  CHECK(parse_double_list("1e-12,0.5") == std::vector<double>{1e-12, 0.5});
  CHECK_THROWS_AS(parse_double_list("1,,2"), ConfigError);
}
