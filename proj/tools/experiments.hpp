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

// Experiment orchestration behind the ohlab command-line tool. Every
// experiment returns a JSON report; the report carries a status and one
// entry per asserted check so that a failing run can still be inspected.

#ifndef OHLAB_TOOLS_EXPERIMENTS_HPP_
#define OHLAB_TOOLS_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "ohlab/common.hpp"
#include "ohlab/freeprob.hpp"

namespace ohlab::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

enum class Subcommand { kPw, kOhnorm, kBasis, kSumspace, kBracket, kFree, kFock, kReport };
enum class Format { kJson, kCsv };

const char* subcommand_name(Subcommand s);

// Raised for anything that maps to exit status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  Subcommand subcommand = Subcommand::kPw;
  std::size_t nodes = 4096;
  std::size_t grid = 1024;
  std::uint64_t seed = 1;
  double tol = 1e-6;
  std::size_t trials = 20;
  std::string out;
  Format format = Format::kJson;
  bool timing = false;

  // pw: matrix dimension (default 4); free: model dimension (default 512).
  std::size_t dim = 0;
  // ohnorm: tuple length and matrix size; basis: coefficient length.
  std::size_t n = 4;
  std::size_t m = 4;
  std::size_t restarts = 8;
  std::size_t max_iter = 500;
  // free
  std::size_t summands = 16;
  freeprob::BaseLaw law = freeprob::BaseLaw::kSemicircular;
  // fock
  std::size_t cutoff = 10;
  std::size_t kmax = 5;
  std::size_t fre1_cutoff = 6;
  std::size_t letters = 2;
  // sumspace
  std::size_t points = 10;
  std::vector<double> t_sweep = {1e-12, 1e-2, 1.0, 1e2, 1e4};
  // bracket
  std::vector<std::size_t> n_list = {8, 16, 32, 64, 128, 256, 512, 1024, 2048, 4096};
  // report
  std::vector<std::string> inputs;

  std::size_t effective_dim() const;
  // Throws ConfigError on out-of-range values.
  void validate() const;
};

struct Outcome {
  Json report;
  bool passed = true;
};

// Runs one experiment. Throws ConfigError for invalid configurations; a
// violated analytic bound is reported as a failed check, not thrown.
Outcome run(const RunConfig& config);

// Concatenates reports of one experiment and version. A single input is
// returned unchanged; otherwise rows are tagged with their source path and
// sorted by n when every row has one.
Json merge_reports(const std::vector<std::string>& paths);

std::string encode(const Json& report, Format format);

// "8,16,...,64" expands geometrically with ratio 16/8; plain lists are
// taken verbatim.
std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

// Full command-line entry point; returns the exit status (0 success,
// 1 failed check or numerical failure, 2 invalid configuration).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Commuting strictly positive pair U diag(l) U*, U diag(k) U* with
// eigenvalues log-uniform in [1, cond].
struct CommutingPair {
  Matrix a;
  Matrix b;
};
CommutingPair random_commuting_pair(Index dim, double cond, std::uint64_t seed);

}  // namespace ohlab::cli

#endif  // OHLAB_TOOLS_EXPERIMENTS_HPP_
