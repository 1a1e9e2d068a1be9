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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Timing budgets are measured on the wall clock.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "experiments.hpp"
#include "ohlab/ohlab.hpp"
#include "oracles.hpp"

using namespace ohlab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Verdict {
  bool passed = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

// 1. Arcsine moments at N = 64.
void quadrature(Verdict& v) {
  const auto start = Clock::now();
  const quad::ArcsineRule rule(64);
  double worst = 0.0;
  for (unsigned k = 0; k <= 6; ++k) {
    const double got = quad::integrate_mu([k](double t) { return std::pow(t, k); }, rule);
    worst = std::max(worst, std::abs(got - oracle::central_binomial_over_4k(k)));
  }
  const double elapsed = seconds_since(start);
  v.detail << "max error " << worst << ", " << elapsed << " s";
  v.require(worst <= 1e-12, "error <= 1e-12");
  v.require(elapsed < 0.1, "runtime < 0.1 s");
}

struct PwInstance {
  Matrix a;
  Matrix b;
  Vector x;
  double oracle;
};

std::vector<PwInstance> pw_instances() {
  std::mt19937_64 rng(2026);
  std::vector<PwInstance> out;
  for (int i = 0; i < 50; ++i) {
    const Index dim = 1 + i % 8;
    const Matrix u = oracle::random_unitary(dim, rng);
    RealVector l(dim);
    RealVector k(dim);
    for (Index j = 0; j < dim; ++j) {
      l(j) = log_uniform(rng, 1.0, 1e3);
      k(j) = log_uniform(rng, 1.0, 1e3);
    }
    Matrix a = u * l.cast<Complex>().asDiagonal() * u.adjoint();
    Matrix b = u * k.cast<Complex>().asDiagonal() * u.adjoint();
    Vector x = oracle::random_vector(dim, rng);
    x /= x.norm();
    const Vector ux = u.adjoint() * x;
    double o = 0.0;
    for (Index j = 0; j < dim; ++j) o += std::norm(ux(j)) * std::sqrt(l(j) * k(j));
    out.push_back({(a + a.adjoint()) * 0.5, (b + b.adjoint()) * 0.5, x, o});
  }
  return out;
}

// 2 and 3. Geometric mean integral formulas.
void pw(Verdict& primal_v, Verdict& dual_v) {
  const std::vector<PwInstance> inst = pw_instances();
  const quad::ArcsineRule rule(4096);
  std::vector<double> primal(inst.size());
  const auto start = Clock::now();
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const geomean::PWProblem p{numlin::PositiveMatrix(inst[i].a), numlin::PositiveMatrix(inst[i].b)};
    primal[i] = geomean::pw_primal(p, inst[i].x, rule);
  }
  const double elapsed = seconds_since(start);
  double worst = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    worst = std::max(worst, std::abs(primal[i] - inst[i].oracle) / inst[i].oracle);
  }
  primal_v.detail << "max relative error " << worst << " over 50 pairs, " << elapsed << " s";
  primal_v.require(worst <= 1e-6, "relative error <= 1e-6");
  primal_v.require(elapsed < 2.0, "runtime < 2 s");

  double worst_gap = 0.0;
  double worst_energy = 0.0;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const geomean::PWProblem p{numlin::PositiveMatrix(inst[i].a), numlin::PositiveMatrix(inst[i].b)};
    const geomean::DualResult d = geomean::pw_dual(p, inst[i].x, rule);
    const geomean::WitnessCheck w = geomean::dual_witness_validate(d.witness, p, rule);
    worst_gap = std::max(worst_gap, std::abs(d.value - primal[i]) / primal[i]);
    worst_energy =
        std::max(worst_energy, std::abs(w.functional_norm * w.functional_norm - d.value) / d.value);
  }
  dual_v.detail << "max |dual - primal| / primal " << worst_gap << ", max |norm^2 - value| / value "
                << worst_energy;
  dual_v.require(worst_gap <= 2e-6, "dual within 2e-6 of primal");
  dual_v.require(worst_energy <= 1e-6, "witness energy within 1e-6");
}

// 4. Spectral formula against the variational form.
void oh_equivalence(Verdict& v) {
  std::mt19937_64 rng(4);
  const auto start = Clock::now();
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Index m = 1 + i % 6;
    const int n = 1 + (i / 6) % 6;
    std::vector<Matrix> xs;
    for (int k = 0; k < n; ++k) xs.push_back(oracle::random_matrix(m, m, rng));
    const ohspace::OHTuple x(xs);
    ohspace::VariationalOptions opts;
    opts.restarts = 8;
    opts.seed = static_cast<std::uint64_t>(i);
    const double direct = ohspace::oh_norm_direct(x);
    const double var = ohspace::oh_norm_variational(x, opts).value;
    worst = std::max(worst, std::abs(var - direct) / direct);
  }
  const double elapsed = seconds_since(start);
  v.detail << "max relative difference " << worst << " over 100 tuples, " << elapsed << " s";
  v.require(worst <= 1e-6, "relative difference <= 1e-6");
  v.require(elapsed < 10.0, "runtime < 10 s");
}

// 5. First-level norm of the canonical basis.
void basis(Verdict& v) {
  const quad::ArcsineRule rule(4096);
  std::mt19937_64 rng(5);
  const double floor = 1.0 / std::sqrt(2.0) - 1e-3;
  const double ceil = std::sqrt(2.0) + 1e-3;
  double lo = 1e300;
  double hi = 0.0;
  double spread = 0.0;
  for (Index n : {1, 2, 4, 8, 16}) {
    double nlo = 1e300;
    double nhi = 0.0;
    for (int t = 0; t < 20; ++t) {
      const Vector a = oracle::random_vector(n, rng);
      const double r = ohspace::fn_scalar_norm(a, rule).value / a.norm();
      nlo = std::min(nlo, r);
      nhi = std::max(nhi, r);
    }
    lo = std::min(lo, nlo);
    hi = std::max(hi, nhi);
    spread = std::max(spread, nhi - nlo);
  }
  v.detail << "ratio in [" << lo << ", " << hi << "], max spread at fixed n " << spread;
  v.require(lo >= floor && hi <= ceil, "ratio inside [1/sqrt(2) - 1e-3, sqrt(2) + 1e-3]");
  v.require(spread <= 1e-6, "constant within 1e-6");
}

// 6. Closed form of the l2-sum norm and the l1/l2 sandwich.
void sum_norms(Verdict& v) {
  std::mt19937_64 rng(6);
  double worst = 0.0;
  bool sandwich = true;
  for (Index p : {1, 2, 5, 10, 32, 64}) {
    for (int trial = 0; trial < 5; ++trial) {
      kfunc::WeightedGrid w{RealVector(p), RealVector(p), RealVector(p)};
      for (Index i = 0; i < p; ++i) {
        w.nu(i) = log_uniform(rng, 0.1, 1.0);
        w.g(i) = log_uniform(rng, 1e-3, 1e3);
        w.h(i) = log_uniform(rng, 1e-3, 1e3);
      }
      const Vector k = oracle::random_vector(p, rng);
      double acc = 0.0;
      for (Index i = 0; i < p; ++i) {
        const auto f = [&](double lam) {
          return w.g(i) * lam * lam + w.h(i) * (1.0 - lam) * (1.0 - lam);
        };
        double lo = 0.0;
        double hi = 1.0;
        for (int it = 0; it < 200; ++it) {
          const double m1 = lo + (hi - lo) / 3.0;
          const double m2 = hi - (hi - lo) / 3.0;
          if (f(m1) < f(m2)) hi = m2; else lo = m1;
        }
        acc += w.nu(i) * std::norm(k(i)) * f(0.5 * (lo + hi));
      }
      const double l2 = kfunc::l2sum2_norm(k, w);
      worst = std::max(worst, std::abs(l2 - std::sqrt(acc)) / std::sqrt(acc));
      const double l1 = kfunc::l2sum1_norm(k, w).value;
      sandwich = sandwich && l1 >= l2 * (1.0 - 1e-12) && l1 <= std::sqrt(2.0) * l2 * (1.0 + 1e-12);
    }
  }
  v.detail << "max relative gap to pointwise minimization " << worst;
  v.require(worst <= 1e-10, "closed form within 1e-10");
  v.require(sandwich, "l2sum2 <= l2sum1 <= sqrt(2) l2sum2");
}

// 7. Witness inequality audit.
void witness(Verdict& v, const quad::Grid2D& grid) {
  for (double delta : {1e-2, 1e-4}) {
    try {
      const tensorlog::WitnessAudit a = tensorlog::witness_validate(tensorlog::witness_build(7, delta), grid);
      v.detail << "delta " << delta << ": fg " << a.f_sq + a.g_sq << " <= " << a.fg_bound << ", h "
               << a.h_sq << " <= " << a.h_bound << ", k " << a.k_sq << " <= " << a.k_bound
               << ", pairing " << a.pairing << " >= " << a.pairing_floor << "; ";
    } catch (const BoundViolation& e) {
      v.require(false, e.what());
    }
  }
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

// 8 and 9. Brackets over n = 8..4096.
void brackets(Verdict& growth, Verdict& projection, const quad::Grid2D& grid) {
  const auto start = Clock::now();
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t n = 8; n <= 4096; n *= 2) {
    const double nn = static_cast<double>(n);
    const double scale = std::sqrt(nn * (1.0 + std::log(nn)));
    tensorlog::BracketReport r;
    try {
      r = tensorlog::bracket(n, grid);
    } catch (const BoundViolation& e) {
      growth.require(false, e.what());
      continue;
    }
    const std::string tag = "n=" + std::to_string(n) + ": ";
    growth.require(r.lower.value >= scale / (16.0 * std::sqrt(2.0) * oracle::kPi),
                   tag + "lower >= (16 sqrt(2) pi)^-1 sqrt(n(1+ln n))");
    growth.require(r.upper.certified <= 18.0 * scale, tag + "upper <= 18 sqrt(n(1+ln n))");
    growth.require(r.lower.value <= r.upper.certified, tag + "lower <= upper");
    lx.push_back(std::log(scale));
    ly.push_back(std::log(0.5 * (r.lower.value + r.upper.certified)));

    const double s = std::sqrt(nn / (1.0 + std::log(nn)));
    projection.require(r.lambda_cb.lo >= s / 108.0 * (1.0 - 1e-12), tag + "lambda_cb lo >= s/108");
    projection.require(r.lambda_cb.hi <= 288.0 * std::sqrt(2.0) * oracle::kPi * s * (1.0 + 1e-12),
                       tag + "lambda_cb hi <= 288 sqrt(2) pi s");
    projection.require(r.lambda_cb.lo <= r.lambda_cb.hi, tag + "lambda_cb lo <= hi");
    projection.require(std::abs(r.pi1.lo * (nn / r.pi1.lo) - nn) <= 1e-12 * nn,
                       tag + "pi1.lo * (n / pi1.lo) = n");
    projection.require(r.lambda_cb.hi <= nn / r.pi1.lo * (1.0 + 1e-12),
                       tag + "lambda_cb hi <= n / pi1.lo");
    if (n == 4096) {
      projection.detail << "n=4096: pi1 [" << r.pi1.lo << ", " << r.pi1.hi << "], lambda_cb ["
                        << r.lambda_cb.lo << ", " << r.lambda_cb.hi << "]";
    }
  }
  const double slope = lx.size() >= 2 ? regression_slope(lx, ly) : 0.0;
  const double elapsed = seconds_since(start);
  growth.detail << "midpoint slope " << slope << ", " << elapsed << " s at grid "
                << grid.rule_t().size();
  growth.require(std::abs(slope - 1.0) <= 0.1, "slope within 1 +- 0.1");
  growth.require(elapsed < 60.0, "runtime < 60 s");
}

// 10. Exact and sampled models of Voiculescu's inequality.
void voiculescu(Verdict& v) {
  const auto start = Clock::now();
  const std::vector<double> m = freeprob::fock_semicircular_moments(10, 5);
  const std::vector<double> c = oracle::catalan(5);
  double moment_err = 0.0;
  for (unsigned k = 1; k <= 5; ++k) moment_err = std::max(moment_err, std::abs(m[2 * k] - c[k]));
  const double fre1 = freeprob::fock_projection_identity(6);
  v.require(moment_err <= 1e-10, "Fock moments C1..C5 within 1e-10");
  v.require(fre1 <= 1e-12, "(1 - P1) s1 (1 - P1) = 0 within 1e-12");

  const std::size_t trials = 20;
  const std::size_t n = 16;
  const Index dim = 512;
  std::vector<double> margin(trials);
  std::vector<double> converse(trials);
  std::vector<double> norm_dev(trials);
  parallel_for(trials, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(10, t);
    const freeprob::FreeFamily fam = freeprob::free_family(
        freeprob::sample_bases(freeprob::BaseLaw::kSemicircular, n, dim, derive_seed(seed, 0)),
        derive_seed(seed, 1));
    const freeprob::FamilyAnalysis an = freeprob::analyze(fam);
    const freeprob::VoiculescuResult r = freeprob::voiculescu_check(an);
    const freeprob::ConverseResult cv = freeprob::voiculescu_converse_check(an);
    margin[t] = r.margin / r.rhs;
    converse[t] = std::min({cv.triangle.margin / cv.triangle.rhs, cv.column.margin / cv.column.rhs,
                            cv.row.margin / cv.row.rhs});
    norm_dev[t] = std::abs(r.lhs / (2.0 * std::sqrt(static_cast<double>(n))) - 1.0);
  });
  const double min_margin = *std::min_element(margin.begin(), margin.end());
  const double min_converse = *std::min_element(converse.begin(), converse.end());
  const double max_dev = *std::max_element(norm_dev.begin(), norm_dev.end());
  const double elapsed = seconds_since(start);
  v.detail << "Fock moment error " << moment_err << ", projection residual " << fre1
           << "; D=512, n=16, 20 trials: min margin/rhs " << min_margin << ", min converse/rhs "
           << min_converse << ", max |norm/2sqrt(n) - 1| " << max_dev << ", " << elapsed << " s";
  v.require(min_margin >= -0.01, "margin >= -0.01 rhs");
  v.require(max_dev <= 0.05, "sum norm within 5% of 2 sqrt(n)");
  v.require(min_converse >= -0.02, "converse margins >= -0.02 rhs");
  v.require(elapsed < 120.0, "runtime < 120 s");
}

// 11. Byte-identical output of every subcommand at one thread.
void determinism(Verdict& v) {
  setenv("OHLAB_THREADS", "1", 1);
  const std::vector<std::vector<std::string>> commands = {
      {"pw", "--trials", "5"},
      {"ohnorm", "--trials", "5"},
      {"basis", "--trials", "5"},
      {"sumspace", "--trials", "5"},
      {"bracket", "--n-list", "8,16", "--grid", "256"},
      {"free", "--dim", "64", "--summands", "4", "--trials", "3"},
      {"fock"}};
  auto invoke = [](std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "ohlab");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream os;
    std::ostringstream err;
    const int status = cli::cli_main(static_cast<int>(argv.size()), argv.data(), os, err);
    out = os.str();
    return status;
  };
  for (const auto& cmd : commands) {
    std::string a;
    std::string b;
    const int sa = invoke(cmd, a);
    const int sb = invoke(cmd, b);
    v.require(sa == sb && a == b && !a.empty(), cmd.front() + " output identical");
  }
  // report: merging the same file twice must also be reproducible.
  const std::string path = "acceptance_determinism_pw.json";
  std::string written;
  invoke({"pw", "--trials", "2", "--out", path}, written);
  std::string a;
  std::string b;
  invoke({"report", path, path}, a);
  invoke({"report", path, path}, b);
  v.require(a == b && !a.empty(), "report output identical");
  std::remove(path.c_str());
  unsetenv("OHLAB_THREADS");
  v.detail << commands.size() + 1 << " subcommands compared";
}

}  // namespace

int main() {
  const quad::Grid2D grid(1024);
  std::vector<Verdict> verdicts(12);
  const std::vector<std::string> names = {
      "",
      "quadrature exactness",
      "geometric mean primal vs oracle",
      "geometric mean dual and witness",
      "OH norm oracle equivalence",
      "canonical basis ratio",
      "sum-space closed form and sandwich",
      "witness inequality audit",
      "logarithmic growth of the bracket",
      "projection-constant brackets",
      "Voiculescu exact and sampled models",
      "determinism"};
  struct Step {
    std::vector<int> criteria;
    std::function<void()> run;
  };
  const std::vector<Step> steps = {
      {{1}, [&] { quadrature(verdicts[1]); }},
      {{2, 3}, [&] { pw(verdicts[2], verdicts[3]); }},
      {{4}, [&] { oh_equivalence(verdicts[4]); }},
      {{5}, [&] { basis(verdicts[5]); }},
      {{6}, [&] { sum_norms(verdicts[6]); }},
      {{7}, [&] { witness(verdicts[7], grid); }},
      {{8, 9}, [&] { brackets(verdicts[8], verdicts[9], grid); }},
      {{10}, [&] { voiculescu(verdicts[10]); }},
      {{11}, [&] { determinism(verdicts[11]); }}};
  for (const Step& step : steps) {
    try {
      step.run();
    } catch (const std::exception& e) {
      for (int c : step.criteria) verdicts[c].require(false, std::string("exception: ") + e.what());
    }
  }
  bool all = true;
  for (int c = 1; c <= 11; ++c) {
    all = all && verdicts[c].passed;
    std::printf("criterion %2d %s: %s | %s\n", c, verdicts[c].passed ? "PASS" : "FAIL",
                names[c].c_str(), verdicts[c].detail.str().c_str());
  }
  std::printf("%s\n", all ? "all criteria passed" : "some criteria failed");
  return all ? 0 : 1;
}
