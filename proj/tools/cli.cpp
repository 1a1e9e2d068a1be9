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

#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "experiments.hpp"

namespace ohlab::cli {

namespace {

void add_common(CLI::App* app, RunConfig& c, std::string& format) {
  app->add_option("--nodes", c.nodes, "arcsine quadrature nodes")->capture_default_str();
  app->add_option("--grid", c.grid, "nodes per axis of the 2-D grid")->capture_default_str();
  app->add_option("--seed", c.seed, "base seed")->capture_default_str();
  app->add_option("--tol", c.tol, "relative tolerance for checks")->capture_default_str();
  app->add_option("--trials", c.trials, "random instances")->capture_default_str();
  app->add_option("--out", c.out, "output path (default: standard output)");
  app->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app->add_flag("--timing", c.timing, "add wall_time_s to the report (breaks byte identity)");
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ohlab: numerical experiments on OH, interpolation norms and free sums", "ohlab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig c;
  std::string format = "json";
  std::string law = "semicircular";
  std::string n_list;
  std::string t_sweep;
  std::map<CLI::App*, Subcommand> kinds;

  auto* pw = app.add_subcommand("pw", "integral formula for the geometric mean, primal and dual");
  add_common(pw, c, format);
  pw->add_option("--dim", c.dim, "matrix dimension (default 4)");
  kinds[pw] = Subcommand::kPw;

  auto* oh = app.add_subcommand("ohnorm", "OH norm: spectral formula against variational form");
  add_common(oh, c, format);
  oh->add_option("--n", c.n, "tuple length")->capture_default_str();
  oh->add_option("--m", c.m, "matrix size")->capture_default_str();
  oh->add_option("--restarts", c.restarts, "variational restarts")->capture_default_str();
  oh->add_option("--max-iter", c.max_iter, "iterations per restart")->capture_default_str();
  kinds[oh] = Subcommand::kOhnorm;

  auto* basis = app.add_subcommand("basis", "first-level norm of the canonical basis of F_n");
  add_common(basis, c, format);
  basis->add_option("--n", c.n, "coefficient length")->capture_default_str();
  kinds[basis] = Subcommand::kBasis;

  auto* sum = app.add_subcommand("sumspace", "sum-space norms and the three-term functional");
  add_common(sum, c, format);
  sum->add_option("--points", c.points, "grid points")->capture_default_str();
  sum->add_option("--t-sweep", t_sweep, "comma-separated t values");
  kinds[sum] = Subcommand::kSumspace;

  auto* br = app.add_subcommand("bracket", "lower and upper bounds for the diagonal tensor");
  add_common(br, c, format);
  br->add_option("--n-list", n_list, "n values, e.g. 8,16,...,4096");
  kinds[br] = Subcommand::kBracket;

  auto* fr = app.add_subcommand("free", "sampled free family at dimension D");
  add_common(fr, c, format);
  fr->add_option("--dim", c.dim, "model dimension (default 512)");
  fr->add_option("--summands", c.summands, "free summands n")->capture_default_str();
  fr->add_option("--law", law, "base law")
      ->check(CLI::IsMember({"semicircular", "bernoulli"}))
      ->capture_default_str();
  kinds[fr] = Subcommand::kFree;

  auto* fock = app.add_subcommand("fock", "exact truncated full Fock space model");
  add_common(fock, c, format);
  fock->add_option("--cutoff", c.cutoff, "word length cutoff L")->capture_default_str();
  fock->add_option("--kmax", c.kmax, "highest Catalan index")->capture_default_str();
  fock->add_option("--fre1-cutoff", c.fre1_cutoff, "cutoff for the projection identity")
      ->capture_default_str();
  fock->add_option("--letters", c.letters, "letters for the exact inequality")->capture_default_str();
  kinds[fock] = Subcommand::kFock;

  auto* rep = app.add_subcommand("report", "merge reports of one experiment");
  rep->add_option("inputs", c.inputs, "report files")->required();
  rep->add_option("--out", c.out, "output path (default: standard output)");
  rep->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  kinds[rep] = Subcommand::kReport;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and --version are successes and go to the output stream.
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, err, err);
    if (app.get_subcommands().empty()) err << app.help();
    return 2;
  }

  try {
    c.subcommand = kinds.at(app.get_subcommands().front());
    c.format = format == "csv" ? Format::kCsv : Format::kJson;
    c.law = law == "bernoulli" ? freeprob::BaseLaw::kBernoulli : freeprob::BaseLaw::kSemicircular;
    if (!n_list.empty()) c.n_list = parse_size_list(n_list);
    if (!t_sweep.empty()) c.t_sweep = parse_double_list(t_sweep);
    c.validate();

    std::ofstream file;
    if (!c.out.empty()) {
      file.open(c.out, std::ios::out | std::ios::trunc);
      if (!file) {
        err << "ohlab: cannot open output path " << c.out << "\n";
        return 2;
      }
    }
    const Outcome result = run(c);
    std::ostream& sink = c.out.empty() ? out : file;
    sink << encode(result.report, c.format);
    sink.flush();
    if (!sink) {
      err << "ohlab: write failed for " << (c.out.empty() ? "standard output" : c.out) << "\n";
      return 2;
    }
    if (!result.passed) {
      err << "ohlab: " << subcommand_name(c.subcommand) << ": one or more checks failed\n";
      return 1;
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "ohlab: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "ohlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "ohlab: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace ohlab::cli
