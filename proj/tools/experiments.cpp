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

#include "experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "ohlab/ohlab.hpp"

namespace ohlab::cli {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Accumulates named pass/fail checks for a report.
class Checks {
 public:
  void add(const std::string& name, bool passed, Json detail = Json::object()) {
    Json entry = Json::object();
    entry["name"] = name;
    entry["passed"] = passed;
    if (!detail.empty()) entry["detail"] = std::move(detail);
    list_.push_back(std::move(entry));
    passed_ = passed_ && passed;
  }
  bool passed() const { return passed_; }
  Json json() const { return list_; }

 private:
  Json list_ = Json::array();
  bool passed_ = true;
};

Json interval_json(const tensorlog::Interval& i) { return Json{{"lo", i.lo}, {"hi", i.hi}}; }

Json constants_json() {
  Json out = Json::array();
  for (const auto& c : tensorlog::BracketConstants::all()) {
    out.push_back(Json{{"name", c.name}, {"value", c.value}, {"citation", c.citation}});
  }
  return out;
}

Json law_json(freeprob::BaseLaw law) {
  return law == freeprob::BaseLaw::kBernoulli ? "bernoulli" : "semicircular";
}

Vector gaussian_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

Matrix gaussian_matrix(Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      x(i, j) = Complex(re, im);
    }
  }
  return x;
}

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

Json experiment_pw(const RunConfig& c, Checks& checks) {
  const auto dim = static_cast<Index>(c.effective_dim());
  const quad::ArcsineRule rule(c.nodes);
  std::vector<Json> rows(c.trials);
  parallel_for(c.trials, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(c.seed, t);
    const CommutingPair pair = random_commuting_pair(dim, 1e3, seed);
    std::mt19937_64 rng(derive_seed(seed, 1));
    Vector x = gaussian_vector(dim, rng);
    x /= x.norm();
    const numlin::PositiveMatrix a(pair.a);
    const numlin::PositiveMatrix b(pair.b);
    const numlin::PositiveMatrix root = numlin::sqrt_commuting(a, b);
    const double oracle = x.dot(root.matrix() * x).real();
    const geomean::PWProblem problem(a, b);
    const double primal = geomean::pw_primal(problem, x, rule);
    const geomean::DualResult dual = geomean::pw_dual(problem, x, rule);
    const geomean::WitnessCheck wc = geomean::dual_witness_validate(dual.witness, problem, rule);
    const double norm_sq = wc.functional_norm * wc.functional_norm;
    rows[t] = Json{{"trial", t},
                   {"dim", dim},
                   {"commutator_norm", problem.commutator_norm()},
                   {"oracle", oracle},
                   {"primal", primal},
                   {"dual", dual.value},
                   {"primal_rel_err", std::abs(primal - oracle) / std::abs(oracle)},
                   {"dual_rel_gap", std::abs(dual.value - primal) / std::abs(primal)},
                   {"witness_norm_sq", norm_sq},
                   {"witness_rel_err", std::abs(norm_sq - dual.value) / std::abs(dual.value)},
                   {"ratio_residual", wc.ratio_residual}};
  });
  double max_rel = 0.0;
  double max_gap = 0.0;
  double max_witness = 0.0;
  for (const Json& r : rows) {
    max_rel = std::max(max_rel, r["primal_rel_err"].get<double>());
    max_gap = std::max(max_gap, r["dual_rel_gap"].get<double>());
    max_witness = std::max(max_witness, r["witness_rel_err"].get<double>());
  }
  checks.add("primal_vs_oracle", max_rel <= c.tol, Json{{"max", max_rel}, {"tol", c.tol}});
  checks.add("dual_vs_primal", max_gap <= 2.0 * c.tol, Json{{"max", max_gap}, {"tol", 2.0 * c.tol}});
  checks.add("witness_energy", max_witness <= c.tol, Json{{"max", max_witness}, {"tol", c.tol}});
  return Json{{"rows", rows},
              {"summary",
               {{"max_relative_error", max_rel},
                {"max_dual_gap", max_gap},
                {"max_witness_error", max_witness}}}};
}

Json experiment_ohnorm(const RunConfig& c, Checks& checks) {
  std::vector<Json> rows(c.trials);
  parallel_for(c.trials, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(c.seed, t);
    std::mt19937_64 rng(seed);
    std::vector<Matrix> xs;
    for (std::size_t k = 0; k < c.n; ++k) xs.push_back(gaussian_matrix(static_cast<Index>(c.m), rng));
    const ohspace::OHTuple tuple(std::move(xs));
    const double direct = ohspace::oh_norm_direct(tuple);
    ohspace::VariationalOptions opts;
    opts.restarts = c.restarts;
    opts.max_iter = c.max_iter;
    opts.seed = derive_seed(seed, 1);
    const ohspace::VariationalResult var = ohspace::oh_norm_variational(tuple, opts);
    rows[t] = Json{{"trial", t},
                   {"n", c.n},
                   {"m", c.m},
                   {"direct", direct},
                   {"variational", var.value},
                   {"rel_diff", std::abs(var.value - direct) / direct},
                   {"converged", var.converged},
                   {"monotone", var.monotone},
                   {"iterations", var.iterations},
                   {"best_restart", var.best_restart},
                   {"min_eig_a", var.min_eig_a},
                   {"min_eig_b", var.min_eig_b}};
  });
  double max_rel = 0.0;
  bool monotone = true;
  bool feasible = true;
  for (const Json& r : rows) {
    max_rel = std::max(max_rel, r["rel_diff"].get<double>());
    monotone = monotone && r["monotone"].get<bool>();
    feasible = feasible &&
               r["variational"].get<double>() <= r["direct"].get<double>() * (1.0 + c.tol);
  }
  checks.add("variational_vs_direct", max_rel <= c.tol, Json{{"max", max_rel}, {"tol", c.tol}});
  checks.add("half_step_monotone", monotone);
  checks.add("variational_below_direct", feasible);
  return Json{{"rows", rows}, {"summary", {{"max_relative_difference", max_rel}}}};
}

Json experiment_basis(const RunConfig& c, Checks& checks) {
  const quad::ArcsineRule rule(c.nodes);
  std::vector<Json> rows(c.trials);
  parallel_for(c.trials, [&](std::size_t t) {
    std::mt19937_64 rng(derive_seed(c.seed, t));
    const Vector a = gaussian_vector(static_cast<Index>(c.n), rng);
    const ohspace::FnScalarResult r = ohspace::fn_scalar_norm(a, rule);
    rows[t] = Json{{"trial", t},
                   {"n", c.n},
                   {"norm2", a.norm()},
                   {"value", r.value},
                   {"ratio", r.value / a.norm()},
                   {"weight_ratio", r.ratio},
                   {"converged", r.converged}};
  });
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const Json& r : rows) {
    lo = std::min(lo, r["ratio"].get<double>());
    hi = std::max(hi, r["ratio"].get<double>());
  }
  const double floor = 1.0 / kSqrt2 - 1e-3;
  const double ceil = kSqrt2 + 1e-3;
  checks.add("ratio_in_range", lo >= floor && hi <= ceil,
             Json{{"min", lo}, {"max", hi}, {"floor", floor}, {"ceil", ceil}});
  checks.add("ratio_constant", hi - lo < 1e-6, Json{{"spread", hi - lo}, {"tol", 1e-6}});
  return Json{{"rows", rows}, {"summary", {{"min_ratio", lo}, {"max_ratio", hi}, {"spread", hi - lo}}}};
}

Json experiment_sumspace(const RunConfig& c, Checks& checks) {
  const auto p = static_cast<Index>(c.points);
  std::vector<double> sweep = c.t_sweep;
  std::sort(sweep.begin(), sweep.end());
  std::vector<Json> rows(c.trials);
  parallel_for(c.trials, [&](std::size_t t) {
    std::mt19937_64 rng(derive_seed(c.seed, t));
    kfunc::WeightedGrid w{RealVector(p), RealVector(p), RealVector(p)};
    for (Index i = 0; i < p; ++i) {
      w.nu(i) = log_uniform(rng, 0.5, 1.5) / static_cast<double>(p);
      w.g(i) = log_uniform(rng, 1e-2, 1e2);
      w.h(i) = log_uniform(rng, 1e-2, 1e2);
    }
    const Vector k = gaussian_vector(p, rng);
    const double l2 = kfunc::l2sum2_norm(k, w);
    // Pointwise: min over real lambda of g lambda^2 + h (1 - lambda)^2.
    std::vector<double> terms(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) {
      const double gi = w.g(i);
      const double hi = w.h(i);
      const ScalarMinimum best = golden_section_minimize(
          [&](double lam) { return gi * lam * lam + hi * (1.0 - lam) * (1.0 - lam); }, 0.0, 1.0,
          1e-9);
      terms[static_cast<std::size_t>(i)] = w.nu(i) * std::norm(k(i)) * best.value;
    }
    const double brute = std::sqrt(pairwise_sum(terms));
    const kfunc::SumNormResult l1 = kfunc::l2sum1_norm(k, w);
    kfunc::ThreeTermParams params;
    params.base = w.nu;
    params.d = RealVector(p);
    for (Index i = 0; i < p; ++i) params.d(i) = log_uniform(rng, 0.1, 10.0);
    const double two_term = kfunc::two_term_norm(k, params).value;
    Json ik = Json::array();
    bool nondecreasing = true;
    bool below_two_term = true;
    double previous = 0.0;
    for (double tp : sweep) {
      params.t_param = tp;
      const double v = kfunc::ik_t_norm(k, params).value;
      ik.push_back(Json{{"t", tp}, {"value", v}});
      nondecreasing = nondecreasing && v >= previous * (1.0 - 1e-9);
      below_two_term = below_two_term && v <= two_term * (1.0 + 1e-9);
      previous = v;
    }
    rows[t] = Json{{"trial", t},
                   {"points", c.points},
                   {"l2sum2", l2},
                   {"l2sum2_bruteforce", brute},
                   {"l2sum2_rel_diff", std::abs(brute - l2) / l2},
                   {"l2sum1", l1.value},
                   {"l1_over_l2", l1.value / l2},
                   {"l2sum1_converged", l1.converged},
                   {"two_term", two_term},
                   {"ik_t", ik},
                   {"ik_t_nondecreasing", nondecreasing},
                   {"ik_t_below_two_term", below_two_term},
                   {"gap_at_max_t", two_term - previous}};
  });
  bool in_range = true;
  double worst_closed = 0.0;
  bool monotone = true;
  bool below = true;
  for (const Json& r : rows) {
    const double ratio = r["l1_over_l2"].get<double>();
    in_range = in_range && ratio >= 1.0 - 1e-12 && ratio <= kSqrt2 * (1.0 + 1e-12);
    worst_closed = std::max(worst_closed, r["l2sum2_rel_diff"].get<double>());
    monotone = monotone && r["ik_t_nondecreasing"].get<bool>();
    below = below && r["ik_t_below_two_term"].get<bool>();
  }
  if (c.points <= 64) {
    checks.add("l2sum2 closed form vs pointwise minimization", worst_closed <= 1e-10,
               Json{{"max_rel_diff", worst_closed}});
  }
  checks.add("l2sum1_between_l2sum2_and_sqrt2", in_range);
  checks.add("ik_t_nondecreasing", monotone);
  checks.add("ik_t_below_two_term", below);

  // K(d1, d2) with d1 = t, d2 = 1 - t and a constant profile against the
  // scalar basis norm.
  const quad::ArcsineRule rule(c.nodes);
  const auto q = static_cast<Index>(rule.size());
  RealVector d1(q);
  RealVector d2(q);
  for (Index i = 0; i < q; ++i) {
    d1(i) = rule.node(static_cast<std::size_t>(i));
    d2(i) = rule.complement(static_cast<std::size_t>(i));
  }
  const double kd = kfunc::k_d1d2_norm(Vector::Ones(q), d1, d2, rule).value;
  const double fn = ohspace::fn_scalar_norm(Vector::Ones(1), rule).value;
  checks.add("k_d1d2_matches_basis_norm", std::abs(kd - fn) <= 1e-8,
             Json{{"k_d1d2", kd}, {"fn_scalar", fn}});
  return Json{{"rows", rows}, {"summary", {{"max_closed_form_rel_diff", worst_closed}, {"k_d1d2", kd}, {"fn_scalar_norm_e1", fn}}}};
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

Json witness_json(const tensorlog::WitnessAudit& a) {
  return Json{{"delta", a.delta},
              {"nodes_inside", a.nodes_inside},
              {"fg_sq", a.f_sq + a.g_sq},
              {"fg_bound", a.fg_bound},
              {"h_sq", a.h_sq},
              {"h_bound", a.h_bound},
              {"k_sq", a.k_sq},
              {"k_bound", a.k_bound},
              {"pairing", a.pairing},
              {"pairing_floor", a.pairing_floor},
              {"scaled_fg", a.scaled_fg},
              {"scaled_hk", a.scaled_hk}};
}

Json experiment_bracket(const RunConfig& c, Checks& checks) {
  const quad::Grid2D grid(c.grid);
  std::vector<std::size_t> ns = c.n_list;
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const Json constants = constants_json();
  Json rows = Json::array();
  std::vector<double> log_scale;
  std::vector<double> log_mid;
  for (std::size_t n : ns) {
    const double nn = static_cast<double>(n);
    Json row = Json::object();
    row["n"] = n;
    try {
      const tensorlog::UpperBound up = tensorlog::diag_upper_bound_identity(n, grid);
      std::optional<tensorlog::LowerBound> low;
      if (n >= 7) low = tensorlog::diag_lower_bound(n, grid);
      const tensorlog::Interval pi1 =
          tensorlog::pi1_bracket(n, low ? low->value : 0.0, up.certified);
      const tensorlog::Interval lcb = tensorlog::lambda_cb_bracket(n, pi1);
      row["lower"] = low ? Json(low->value) : Json(nullptr);
      row["upper"] = up.certified;
      row["pi1"] = interval_json(pi1);
      row["lambda_cb"] = interval_json(lcb);
      row["constants"] = constants;
      row["grid"] = c.grid;
      row["delta"] = low ? Json(low->delta) : Json(nullptr);
      row["delta_upper"] = up.delta;
      row["lower_guaranteed"] = low ? Json(low->guaranteed) : Json(nullptr);
      row["lower_chain"] = low ? Json(low->analytic_chain) : Json(nullptr);
      row["upper_guaranteed"] = up.guaranteed;
      row["upper_numeric"] = up.numeric;
      row["upper_chain"] = up.chain;
      row["chi_norm_numeric"] = up.chi_norm_numeric;
      row["grid_resolves_delta_upper"] = up.grid_resolves_delta;
      row["method"] = Json{{"lower", low ? "witness pairing on the arcsine grid" : "none (n < 7)"},
                           {"upper", "closed-form a1 bound plus exact rectangle masses"},
                           {"pi1_lo", n >= 7 ? "lower / 18" : "(2 / sqrt(pi)) sqrt(n)"}};
      if (low) row["witness"] = witness_json(low->audit);

      const std::string tag = "n=" + std::to_string(n);
      if (low) {
        checks.add(tag + ": lower >= guaranteed", low->value >= low->guaranteed,
                   Json{{"lower", low->value}, {"guaranteed", low->guaranteed}});
        checks.add(tag + ": lower <= upper", low->value <= up.certified);
      }
      const double upper_cap = tensorlog::BracketConstants::upper_c * std::sqrt(nn * (1.0 + std::log(nn)));
      checks.add(tag + ": upper <= 18 sqrt(n (1 + ln n))", up.certified <= upper_cap,
                 Json{{"upper", up.certified}, {"cap", upper_cap}});
      checks.add(tag + ": pi1 lo <= hi", pi1.lo <= pi1.hi);
      checks.add(tag + ": lambda_cb lo <= hi", lcb.lo <= lcb.hi);
      const double s = std::sqrt(nn / (1.0 + std::log(nn)));
      const double lcb_floor = s / tensorlog::BracketConstants::psc_c;
      const double lcb_ceil = tensorlog::BracketConstants::gamma_c * s;
      checks.add(tag + ": lambda_cb within [s / 108, 288 sqrt(2) pi s]",
                 lcb.lo >= lcb_floor * (1.0 - 1e-12) && lcb.hi <= lcb_ceil * (1.0 + 1e-12),
                 Json{{"s", s}, {"floor", lcb_floor}, {"ceil", lcb_ceil}});
      checks.add(tag + ": lambda_cb hi <= n / pi1 lo", lcb.hi <= nn / pi1.lo * (1.0 + 1e-12),
                 Json{{"n_over_pi1_lo", nn / pi1.lo}});
      if (low) {
        log_scale.push_back(std::log(std::sqrt(nn * (1.0 + std::log(nn)))));
        log_mid.push_back(std::log(0.5 * (low->value + up.certified)));
      }
    } catch (const BoundViolation& e) {
      row["error"] = e.what();
      checks.add("n=" + std::to_string(n) + ": witness bounds", false, Json{{"error", e.what()}});
    }
    rows.push_back(std::move(row));
  }
  Json summary = Json::object();
  if (log_scale.size() >= 2) {
    const double slope = regression_slope(log_scale, log_mid);
    summary["midpoint_slope"] = slope;
    if (log_scale.size() >= 4) {
      checks.add("midpoint slope within 1 +- 0.1", std::abs(slope - 1.0) <= 0.1,
                 Json{{"slope", slope}});
    }
  }
  return Json{{"rows", rows}, {"summary", summary}};
}

Json experiment_free(const RunConfig& c, Checks& checks) {
  const auto dim = static_cast<Index>(c.effective_dim());
  const std::size_t n = c.summands;
  const double root_n = std::sqrt(static_cast<double>(n));
  const bool semicircular = c.law == freeprob::BaseLaw::kSemicircular;
  std::vector<Json> rows(c.trials);
  parallel_for(c.trials, [&](std::size_t t) {
    const std::uint64_t seed = derive_seed(c.seed, t);
    const freeprob::FreeFamily fam = freeprob::free_family(
        freeprob::sample_bases(c.law, n, dim, derive_seed(seed, 0)), derive_seed(seed, 1));
    const freeprob::FamilyAnalysis an = freeprob::analyze(fam);
    const freeprob::VoiculescuResult v = freeprob::voiculescu_check(an);
    const freeprob::ConverseResult cv = freeprob::voiculescu_converse_check(an);
    const std::vector<double> moments =
        freeprob::even_moments(an.sum_eigenvalues / root_n, 4);
    auto margin_json = [](const freeprob::Margin& m) {
      return Json{{"lhs", m.lhs}, {"rhs", m.rhs}, {"margin", m.margin}};
    };
    rows[t] = Json{{"trial", t},
                   {"lhs", v.lhs},
                   {"rhs", v.rhs},
                   {"margin", v.margin},
                   {"max_member_norm", v.max_member_norm},
                   {"column_term", v.column_term},
                   {"row_term", v.row_term},
                   {"norm_ratio", v.lhs / (2.0 * root_n)},
                   {"converse_triangle", margin_json(cv.triangle)},
                   {"converse_column", margin_json(cv.column)},
                   {"converse_row", margin_json(cv.row)},
                   {"m2", moments[0]},
                   {"m4", moments[1]},
                   {"m6", moments[2]},
                   {"m8", moments[3]}};
  });
  const double catalan[] = {1.0, 2.0, 5.0, 14.0};
  double worst_margin = std::numeric_limits<double>::infinity();
  double worst_converse = std::numeric_limits<double>::infinity();
  double worst_norm = 0.0;
  double worst_m2 = 0.0;
  double worst_moment = 0.0;
  for (const Json& r : rows) {
    worst_margin = std::min(worst_margin, r["margin"].get<double>() / r["rhs"].get<double>());
    for (const char* key : {"converse_triangle", "converse_column", "converse_row"}) {
      const Json& m = r[key];
      worst_converse = std::min(worst_converse, m["margin"].get<double>() / m["rhs"].get<double>());
    }
    worst_norm = std::max(worst_norm, std::abs(r["norm_ratio"].get<double>() - 1.0));
    worst_m2 = std::max(worst_m2, std::abs(r["m2"].get<double>() - 1.0));
    const char* keys[] = {"m2", "m4", "m6", "m8"};
    for (int k = 0; k < 4; ++k) {
      worst_moment =
          std::max(worst_moment, std::abs(r[keys[k]].get<double>() - catalan[k]) / catalan[k]);
    }
  }
  checks.add("voiculescu margin >= -0.01 rhs", worst_margin >= -0.01,
             Json{{"min_margin_over_rhs", worst_margin}});
  checks.add("converse margins >= -0.02 rhs", worst_converse >= -0.02,
             Json{{"min_margin_over_rhs", worst_converse}});
  checks.add("second moment within 2%", worst_m2 <= 0.02, Json{{"max_deviation", worst_m2}});
  if (semicircular) {
    checks.add("sum norm within 5% of 2 sqrt(n)", worst_norm <= 0.05,
               Json{{"max_deviation", worst_norm}});
    checks.add("moments within 5% of Catalan", worst_moment <= 0.05,
               Json{{"max_relative_deviation", worst_moment}});
  }
  return Json{{"rows", rows},
              {"summary",
               {{"min_margin_over_rhs", worst_margin},
                {"min_converse_margin_over_rhs", worst_converse},
                {"max_norm_deviation", worst_norm},
                {"max_m2_deviation", worst_m2},
                {"max_moment_deviation", worst_moment}}}};
}

Json experiment_fock(const RunConfig& c, Checks& checks) {
  const std::vector<double> moments = freeprob::fock_semicircular_moments(c.cutoff, c.kmax);
  const std::vector<double> stable = freeprob::fock_semicircular_moments(c.cutoff + 2, c.kmax);
  Json rows = Json::array();
  double worst_even = 0.0;
  double worst_odd = 0.0;
  bool unchanged = true;
  double catalan = 1.0;
  for (std::size_t j = 0; j < moments.size(); ++j) {
    Json row = Json{{"order", j}, {"moment", moments[j]}};
    if (j % 2 == 0) {
      const std::size_t k = j / 2;
      if (k > 0) catalan = catalan * 2.0 * static_cast<double>(2 * k - 1) / static_cast<double>(k + 1);
      row["catalan"] = catalan;
      worst_even = std::max(worst_even, std::abs(moments[j] - catalan));
    } else {
      worst_odd = std::max(worst_odd, std::abs(moments[j]));
    }
    unchanged = unchanged && moments[j] == stable[j];
    rows.push_back(std::move(row));
  }
  const double fre1 = freeprob::fock_projection_identity(c.fre1_cutoff);
  const freeprob::FockSpace space(c.fre1_cutoff, c.letters);
  const double defect = freeprob::fock_truncation_defect(space);
  const freeprob::VoiculescuResult v = freeprob::fock_voiculescu_check(c.fre1_cutoff, c.letters);
  checks.add("even moments are Catalan", worst_even <= 1e-10, Json{{"max_error", worst_even}});
  checks.add("odd moments vanish", worst_odd <= 1e-10, Json{{"max_error", worst_odd}});
  checks.add("moments stable under larger cutoff", unchanged);
  checks.add("(1 - P1) s1 (1 - P1) = 0", fre1 <= 1e-12, Json{{"residual", fre1}});
  checks.add("exact-model Voiculescu margin", v.margin >= -1e-9, Json{{"margin", v.margin}});
  return Json{{"rows", rows},
              {"summary",
               {{"max_even_error", worst_even},
                {"max_odd_error", worst_odd},
                {"projection_residual", fre1},
                {"truncation_defect", defect},
                {"voiculescu", {{"lhs", v.lhs}, {"rhs", v.rhs}, {"margin", v.margin}}}}}};
}

Json params_json(const RunConfig& c) {
  Json p = Json::object();
  switch (c.subcommand) {
    case Subcommand::kPw:
      p = Json{{"dim", c.effective_dim()}, {"trials", c.trials}, {"nodes", c.nodes},
               {"seed", c.seed}, {"tol", c.tol}};
      break;
    case Subcommand::kOhnorm:
      p = Json{{"n", c.n}, {"m", c.m}, {"trials", c.trials}, {"restarts", c.restarts},
               {"max_iter", c.max_iter}, {"seed", c.seed}, {"tol", c.tol}};
      break;
    case Subcommand::kBasis:
      p = Json{{"n", c.n}, {"nodes", c.nodes}, {"trials", c.trials}, {"seed", c.seed}};
      break;
    case Subcommand::kSumspace:
      p = Json{{"points", c.points}, {"nodes", c.nodes}, {"t_sweep", c.t_sweep},
               {"trials", c.trials}, {"seed", c.seed}};
      break;
    case Subcommand::kBracket:
      p = Json{{"n_list", c.n_list}, {"grid", c.grid}};
      break;
    case Subcommand::kFree:
      p = Json{{"dim", c.effective_dim()}, {"summands", c.summands}, {"trials", c.trials},
               {"seed", c.seed}, {"law", law_json(c.law)}};
      break;
    case Subcommand::kFock:
      p = Json{{"cutoff", c.cutoff}, {"kmax", c.kmax}, {"fre1_cutoff", c.fre1_cutoff},
               {"letters", c.letters}};
      break;
    case Subcommand::kReport:
      p = Json{{"inputs", c.inputs}};
      break;
  }
  return p;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(path + ": not valid JSON (" + e.what() + ")");
  }
}

// CSV cell for a scalar JSON value; numbers at 17 significant digits.
std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_float()) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v.get<double>());
    return buf;
  }
  std::string s = v.get<std::string>();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, Json>>& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (!v.is_array()) {
    out.emplace_back(prefix, v);
  }
}

}  // namespace

const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::kPw: return "pw";
    case Subcommand::kOhnorm: return "ohnorm";
    case Subcommand::kBasis: return "basis";
    case Subcommand::kSumspace: return "sumspace";
    case Subcommand::kBracket: return "bracket";
    case Subcommand::kFree: return "free";
    case Subcommand::kFock: return "fock";
    case Subcommand::kReport: return "report";
  }
  return "unknown";
}

std::size_t RunConfig::effective_dim() const {
  if (dim != 0) return dim;
  return subcommand == Subcommand::kFree ? 512 : 4;
}

void RunConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  require(nodes >= 1, "--nodes must be at least 1");
  require(grid >= 2, "--grid must be at least 2");
  require(trials >= 1, "--trials must be at least 1");
  require(tol > 0.0, "--tol must be positive");
  switch (subcommand) {
    case Subcommand::kPw:
      require(effective_dim() <= 64, "--dim must be in [1, 64] for pw");
      break;
    case Subcommand::kOhnorm:
      require(n >= 1 && m >= 1, "--n and --m must be at least 1");
      require(restarts >= 1, "--restarts must be at least 1");
      require(max_iter >= 1, "--max-iter must be at least 1");
      break;
    case Subcommand::kBasis:
      require(n >= 1, "--n must be at least 1");
      break;
    case Subcommand::kSumspace:
      require(points >= 1, "--points must be at least 1");
      require(!t_sweep.empty(), "--t-sweep must list at least one value");
      for (double t : t_sweep) require(t > 0.0 && std::isfinite(t), "--t-sweep values must be positive");
      break;
    case Subcommand::kBracket:
      require(!n_list.empty(), "--n-list must list at least one n");
      for (std::size_t n : n_list) require(n >= 1, "--n-list entries must be at least 1");
      break;
    case Subcommand::kFree:
      require(effective_dim() >= 2, "--dim must be at least 2");
      require(summands >= 1, "--summands must be at least 1");
      require(law != freeprob::BaseLaw::kBernoulli || effective_dim() % 2 == 0,
              "--law bernoulli needs an even --dim");
      break;
    case Subcommand::kFock:
      require(cutoff >= kmax, "--cutoff must be at least --kmax");
      require(kmax >= 1, "--kmax must be at least 1");
      require(letters >= 1, "--letters must be at least 1");
      break;
    case Subcommand::kReport:
      require(!inputs.empty(), "report needs at least one input file");
      break;
  }
}

CommutingPair random_commuting_pair(Index dim, double cond, std::uint64_t seed) {
  freeprob::Rng rng(seed);
  const Matrix u = freeprob::haar_unitary(dim, rng);
  RealVector la(dim);
  RealVector ka(dim);
  for (Index i = 0; i < dim; ++i) {
    la(i) = log_uniform(rng, 1.0, cond);
    ka(i) = log_uniform(rng, 1.0, cond);
  }
  Matrix a = u * la.cast<Complex>().asDiagonal() * u.adjoint();
  Matrix b = u * ka.cast<Complex>().asDiagonal() * u.adjoint();
  return {(a + a.adjoint()) * 0.5, (b + b.adjoint()) * 0.5};
}

Outcome run(const RunConfig& config) {
  config.validate();
  if (config.subcommand == Subcommand::kReport) {
    return {merge_reports(config.inputs), true};
  }
  const auto start = std::chrono::steady_clock::now();
  Checks checks;
  Json body;
  try {
    switch (config.subcommand) {
      case Subcommand::kPw: body = experiment_pw(config, checks); break;
      case Subcommand::kOhnorm: body = experiment_ohnorm(config, checks); break;
      case Subcommand::kBasis: body = experiment_basis(config, checks); break;
      case Subcommand::kSumspace: body = experiment_sumspace(config, checks); break;
      case Subcommand::kBracket: body = experiment_bracket(config, checks); break;
      case Subcommand::kFree: body = experiment_free(config, checks); break;
      case Subcommand::kFock: body = experiment_fock(config, checks); break;
      case Subcommand::kReport: break;
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  Json report = Json::object();
  report["experiment"] = subcommand_name(config.subcommand);
  report["version"] = kVersion;
  report["params"] = params_json(config);
  report["rows"] = body["rows"];
  report["summary"] = body["summary"];
  if (config.subcommand == Subcommand::kBracket) report["constants"] = constants_json();
  report["checks"] = checks.json();
  report["status"] = checks.passed() ? "pass" : "fail";
  if (config.timing) {
    report["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return {report, checks.passed()};
}

Json merge_reports(const std::vector<std::string>& paths) {
  if (paths.empty()) throw ConfigError("report: no input files");
  std::vector<Json> docs;
  for (const std::string& p : paths) {
    Json d = read_json_file(p);
    if (!d.is_object() || !d.contains("experiment") || !d.contains("version") ||
        !d.contains("rows") || !d["rows"].is_array()) {
      throw ConfigError("report: " + p + " is not an ohlab report (needs experiment, version, rows)");
    }
    docs.push_back(std::move(d));
  }
  if (docs.size() == 1) return docs.front();
  for (std::size_t i = 1; i < docs.size(); ++i) {
    if (docs[i]["version"] != docs[0]["version"]) {
      throw ConfigError("report: version conflict: " + paths[0] + " has " +
                        docs[0]["version"].dump() + ", " + paths[i] + " has " +
                        docs[i]["version"].dump());
    }
    if (docs[i]["experiment"] != docs[0]["experiment"]) {
      throw ConfigError("report: schema mismatch: " + paths[i] + " holds experiment " +
                        docs[i]["experiment"].dump() + ", expected " +
                        docs[0]["experiment"].dump());
    }
  }
  std::vector<Json> rows;
  bool all_have_n = true;
  bool all_pass = true;
  Json checks = Json::array();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const Json& r : docs[i]["rows"]) {
      Json tagged = r;
      tagged["source"] = paths[i];
      all_have_n = all_have_n && r.is_object() && r.contains("n") && r["n"].is_number();
      rows.push_back(std::move(tagged));
    }
    if (docs[i].contains("status")) all_pass = all_pass && docs[i]["status"] == "pass";
    if (docs[i].contains("checks")) {
      for (const Json& ch : docs[i]["checks"]) {
        Json tagged = ch;
        tagged["source"] = paths[i];
        checks.push_back(std::move(tagged));
      }
    }
  }
  if (all_have_n) {
    std::stable_sort(rows.begin(), rows.end(), [](const Json& a, const Json& b) {
      return a["n"].get<double>() < b["n"].get<double>();
    });
  }
  Json out = Json::object();
  out["experiment"] = docs[0]["experiment"];
  out["version"] = docs[0]["version"];
  out["sources"] = paths;
  out["rows"] = rows;
  out["checks"] = checks;
  out["status"] = all_pass ? "pass" : "fail";
  return out;
}

std::string encode(const Json& report, Format format) {
  if (format == Format::kJson) return report.dump(2) + "\n";
  std::vector<std::vector<std::pair<std::string, Json>>> flat;
  std::vector<std::string> header;
  std::map<std::string, std::size_t> seen;
  for (const Json& row : report.value("rows", Json::array())) {
    auto& cells = flat.emplace_back();
    flatten(row, "", cells);
    for (const auto& [key, value] : cells) {
      if (seen.emplace(key, header.size()).second) header.push_back(key);
    }
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& cells : flat) {
    std::vector<std::string> line(header.size());
    for (const auto& [key, value] : cells) line[seen[key]] = csv_cell(value);
    for (std::size_t i = 0; i < line.size(); ++i) os << (i ? "," : "") << line[i];
    os << "\n";
  }
  return os.str();
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  auto to_size = [&](const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      throw ConfigError("invalid list entry '" + s + "' in '" + text + "'");
    }
    if (pos != s.size() || s.find('-') != std::string::npos) {
      throw ConfigError("invalid list entry '" + s + "' in '" + text + "'");
    }
    return static_cast<std::size_t>(v);
  };
  std::vector<std::size_t> out;
  const auto ellipsis = std::find(parts.begin(), parts.end(), "...");
  if (ellipsis == parts.end()) {
    for (const auto& p : parts) out.push_back(to_size(p));
    return out;
  }
  if (parts.size() != 4 || ellipsis != parts.begin() + 2) {
    throw ConfigError("expected 'a,b,...,c' in '" + text + "'");
  }
  const std::size_t a = to_size(parts[0]);
  const std::size_t b = to_size(parts[1]);
  const std::size_t last = to_size(parts[3]);
  if (a == 0 || b <= a || b % a != 0) {
    throw ConfigError("'a,b,...,c' needs b a positive multiple of a in '" + text + "'");
  }
  const std::size_t ratio = b / a;
  for (std::size_t v = a; v <= last; v *= ratio) out.push_back(v);
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw ConfigError("invalid number '" + item + "' in '" + text + "'");
    }
    if (pos != item.size()) throw ConfigError("invalid number '" + item + "' in '" + text + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace ohlab::cli
