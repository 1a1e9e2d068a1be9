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

#include "ohlab/tensorlog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ohlab/kfunc.hpp"
#include "ohlab/numlin.hpp"

namespace ohlab::tensorlog {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

bool within(double value, double bound) {
  return value <= bound + kBoundSlack * std::max(1.0, std::abs(bound));
}

bool at_least(double value, double floor) {
  return value >= floor - kBoundSlack * std::max(1.0, std::abs(floor));
}

// I = [delta, 1/2] x [1/2, 1 - delta], tested with explicit complements.
bool in_rectangle(double t, double s, double one_minus_s, double delta) {
  return t >= delta && t <= 0.5 && s >= 0.5 && one_minus_s >= delta;
}

// chi: [0,1/2]^2 u I u I' u [1/2,1]^2 with I' the mirror of I.
bool in_chi(double t, double one_minus_t, double s, double one_minus_s, double delta) {
  const bool low_t = t <= 0.5;
  const bool low_s = s <= 0.5;
  const bool high_t = t >= 0.5;
  const bool high_s = s >= 0.5;
  if ((low_t && low_s) || (high_t && high_s)) return true;
  if (low_t && high_s) return t >= delta && one_minus_s >= delta;
  return one_minus_t >= delta && s >= delta;
}

// Per-row reduction of several integrands; rows in parallel, then rows
// reduced pairwise in index order.
template <std::size_t K, typename Fn>
std::array<double, K> integrate_rows(const quad::Grid2D& grid, Fn&& row_terms) {
  const quad::ArcsineRule& rt = grid.rule_t();
  const quad::ArcsineRule& rs = grid.rule_s();
  std::array<std::vector<double>, K> rows;
  for (auto& r : rows) r.assign(rt.size(), 0.0);
  parallel_for(rt.size(), [&](std::size_t i) {
    std::array<std::vector<double>, K> values;
    for (auto& v : values) v.assign(rs.size(), 0.0);
    row_terms(i, values);
    for (std::size_t c = 0; c < K; ++c) rows[c][i] = quad::weighted_sum(values[c], rs);
  });
  std::array<double, K> out{};
  for (std::size_t c = 0; c < K; ++c) out[c] = quad::weighted_sum(rows[c], rt);
  return out;
}

void require_delta(double delta) {
  if (!(delta > 0.0 && delta < 0.5)) {
    std::ostringstream os;
    os << "delta = " << delta << " outside (0, 1/2)";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

std::vector<Constant> BracketConstants::all() {
  return {
      {"lower_c", lower_c,
       "diagonal lower bound >= lower_c sqrt(n (1 + ln n)) for n >= 7, from the witness "
       "pairing with delta = 1/(n e)"},
      {"upper_c", upper_c,
       "diagonal upper bound <= upper_c sqrt(1 + ln n) ||a||_2, from the split at "
       "delta = 1/(e^2 n^2)"},
      {"pi1_lo_factor", pi1_lo_factor,
       "pi1(id_OHn) >= tensor norm / 18 (tensor norm of the diagonal is at most 18 pi1)"},
      {"pi1_hi_factor", pi1_hi_factor,
       "pi1(id_OHn) <= 6 tensor norm (tensor norm of the diagonal is at least pi1 / 6)"},
      {"psc_c", psc_c, "lambda_cb(OHn) >= sqrt(n / (1 + ln n)) / 108 (projection constant)"},
      {"gamma_c", gamma_c,
       "lambda_cb(OHn) <= 288 sqrt(2) pi sqrt(n / (1 + ln n)) (projection constant)"},
      {"witness_c", witness_c, "witness scale C sqrt(-ln delta) with C = 4 sqrt(2) / pi"},
      {"banach_c", banach_c,
       "pi1(id_OHn) >= (2 / sqrt(pi)) sqrt(n), Banach-space estimate used for n < 7"},
  };
}

double default_lower_delta(std::size_t n) {
  if (n == 0) throw InvalidArgument("default_lower_delta: n must be positive");
  return 1.0 / (static_cast<double>(n) * kE);
}

double default_upper_delta(std::size_t n) {
  if (n == 0) throw InvalidArgument("default_upper_delta: n must be positive");
  const double nn = static_cast<double>(n);
  return 1.0 / (kE * kE * nn * nn);
}

bool WitnessQuadruple::inside(double t, double s) const {
  return in_rectangle(t, s, 1.0 - s, delta);
}

double WitnessQuadruple::v(double t, double one_minus_t, double s, double one_minus_s) {
  return 1.0 / (t * s + one_minus_t * one_minus_s);
}

double WitnessQuadruple::f(double t, double s) const {
  return inside(t, s) ? t * s * v(t, 1.0 - t, s, 1.0 - s) : 0.0;
}

double WitnessQuadruple::g(double t, double s) const {
  return inside(t, s) ? (1.0 - t) * (1.0 - s) * v(t, 1.0 - t, s, 1.0 - s) : 0.0;
}

double WitnessQuadruple::h(double t, double s) const {
  return inside(t, s) ? t * (1.0 - s) * v(t, 1.0 - t, s, 1.0 - s) : 0.0;
}

double WitnessQuadruple::k(double t, double s) const {
  return inside(t, s) ? (1.0 - t) * s * v(t, 1.0 - t, s, 1.0 - s) : 0.0;
}

WitnessQuadruple witness_build(std::size_t n, double delta) {
  if (n == 0) throw InvalidArgument("witness_build: n must be positive");
  require_delta(delta);
  return {n, delta, BracketConstants::witness_c * std::sqrt(-std::log(delta))};
}

WitnessQuadruple witness_build(std::size_t n) { return witness_build(n, default_lower_delta(n)); }

WitnessAudit witness_validate(const WitnessQuadruple& q, const quad::Grid2D& grid, bool strict) {
  require_delta(q.delta);
  const quad::ArcsineRule& rt = grid.rule_t();
  const quad::ArcsineRule& rs = grid.rule_s();
  std::vector<std::size_t> inside_count(rt.size(), 0);
  const auto sums = integrate_rows<5>(grid, [&](std::size_t i, auto& values) {
    const double t = rt.node(i);
    const double u = rt.complement(i);
    for (std::size_t j = 0; j < rs.size(); ++j) {
      const double s = rs.node(j);
      const double w = rs.complement(j);
      if (!in_rectangle(t, s, w, q.delta)) continue;
      ++inside_count[i];
      const double v = WitnessQuadruple::v(t, u, s, w);
      values[0][j] = t * s * v * v;
      values[1][j] = u * w * v * v;
      values[2][j] = t * w * v * v;
      values[3][j] = u * s * v * v;
      values[4][j] = v;
    }
  });

  WitnessAudit a;
  a.delta = q.delta;
  for (std::size_t c : inside_count) a.nodes_inside += c;
  a.f_sq = sums[0];
  a.g_sq = sums[1];
  a.h_sq = sums[2];
  a.k_sq = sums[3];
  a.pairing = sums[4];

  const double log_delta = -std::log(q.delta);
  a.fg_bound = 16.0 / (kPi * kPi) * log_delta;
  a.h_bound = 16.0 / (3.0 * kPi * kPi);
  a.k_bound = 32.0 / (kPi * kPi) / q.delta;
  a.pairing_floor = -std::log(8.0 * q.delta) / (kPi * kPi);

  a.fg_ok = within(a.f_sq + a.g_sq, a.fg_bound);
  a.h_ok = within(a.h_sq, a.h_bound);
  a.k_ok = within(a.k_sq, a.k_bound);
  a.pairing_ok = at_least(a.pairing, a.pairing_floor);

  a.scaled_fg = std::sqrt(std::max(a.f_sq, a.g_sq)) / q.scale;
  a.scaled_hk = std::sqrt(std::max(a.h_sq, a.k_sq)) / q.scale;
  a.scaled_ok = within(a.scaled_fg, 1.0) &&
                within(a.scaled_hk, std::sqrt(static_cast<double>(q.n)));

  if (strict && !(a.fg_ok && a.h_ok && a.k_ok && a.pairing_ok)) {
    std::ostringstream os;
    os.precision(17);
    os << "witness bounds violated at delta = " << q.delta << ":";
    if (!a.fg_ok) os << " ||f||^2 + ||g||^2 = " << a.f_sq + a.g_sq << " > " << a.fg_bound << ";";
    if (!a.h_ok) os << " ||h||^2 = " << a.h_sq << " > " << a.h_bound << ";";
    if (!a.k_ok) os << " ||k||^2 = " << a.k_sq << " > " << a.k_bound << ";";
    if (!a.pairing_ok) os << " pairing = " << a.pairing << " < " << a.pairing_floor << ";";
    throw BoundViolation(os.str());
  }
  return a;
}

LowerBound diag_lower_bound(std::size_t n, const quad::Grid2D& grid) {
  if (n < 7) throw InvalidArgument("diag_lower_bound: n must be at least 7");
  const WitnessQuadruple q = witness_build(n);
  LowerBound out;
  out.n = n;
  out.delta = q.delta;
  out.audit = witness_validate(q, grid, true);
  const double root_n = std::sqrt(static_cast<double>(n));
  out.value = root_n * out.audit.pairing / q.scale;
  out.analytic_chain = root_n * out.audit.pairing_floor / q.scale;
  out.guaranteed =
      BracketConstants::lower_c * std::sqrt(static_cast<double>(n) * (1.0 + std::log(static_cast<double>(n))));
  return out;
}

namespace {

UpperBound upper_from_norms(std::size_t n, double norm2, double trace_norm,
                            const quad::Grid2D& grid) {
  UpperBound out;
  out.n = n;
  out.delta = default_upper_delta(n);
  out.norm2 = norm2;
  out.trace_norm = trace_norm;
  const double delta = out.delta;
  const double nn = static_cast<double>(n);
  out.guaranteed = BracketConstants::upper_c * std::sqrt(1.0 + std::log(nn)) * norm2;
  out.grid_resolves_delta =
      grid.rule_t().node(0) < delta && grid.rule_s().node(0) < delta;
  if (norm2 == 0.0) return out;

  const quad::ArcsineRule& rt = grid.rule_t();
  const quad::ArcsineRule& rs = grid.rule_s();
  // J(rho) = int chi / (rho ts + (1-t)(1-s)) dmu dmu.
  const auto j = [&](double rho) {
    const auto sum = integrate_rows<1>(grid, [&](std::size_t i, auto& values) {
      const double t = rt.node(i);
      const double u = rt.complement(i);
      for (std::size_t jj = 0; jj < rs.size(); ++jj) {
        const double s = rs.node(jj);
        const double w = rs.complement(jj);
        if (in_chi(t, u, s, w, delta)) values[0][jj] = 1.0 / (rho * t * s + u * w);
      }
    });
    return sum[0];
  };
  const kfunc::SumNormResult chi = kfunc::l2sum1_from_profile(j, 1e-8);
  out.chi_norm_numeric = chi.value;
  out.chi_converged = chi.converged;
  out.a1_numeric = norm2 * chi.value;
  out.a1_analytic = norm2 * (4.0 * kSqrt2 + 8.0 * kSqrt2 / kPi * std::sqrt(-std::log(delta)));

  // Rectangles of 1 - chi. Masses near the corners use the symmetry
  // nu1([1-delta, 1]) = nu2([0, delta]) to avoid forming 1 - delta.
  const double nu2_corner = quad::nu2_mass(0.0, delta);
  const double nu1_corner = nu2_corner;
  const double nu1_upper_half = quad::nu1_mass(0.5, 1.0);
  const double nu2_middle = quad::nu2_mass(delta, 0.5);
  const double r1 = std::sqrt(nu2_corner * nu1_upper_half);  // [0,delta) x [1/2,1]
  const double r2 = std::sqrt(nu2_middle * nu1_corner);      // [delta,1/2] x (1-delta,1]
  const double r3 = std::sqrt(nu1_upper_half * nu2_corner);  // [1/2,1] x [0,delta)
  const double r4 = std::sqrt(nu1_corner * nu2_middle);      // (1-delta,1] x [delta,1/2]
  out.a2_exact = trace_norm * (r1 + r2 + r3 + r4);
  out.a2_chain = 4.0 * std::pow(2.0, 13.0 / 4.0) / kPi * std::pow(delta, 0.25) * trace_norm;

  out.certified = out.a1_analytic + out.a2_exact;
  out.chain = out.a1_analytic + out.a2_chain;
  out.numeric = out.a1_numeric + out.a2_exact;
  return out;
}

}  // namespace

UpperBound diag_upper_bound(const Matrix& a, const quad::Grid2D& grid) {
  if (a.rows() != a.cols()) throw InvalidArgument("diag_upper_bound: a must be square");
  require_finite(a, "diag_upper_bound");
  return upper_from_norms(static_cast<std::size_t>(a.rows()), a.norm(),
                          numlin::schatten_norm(a, 1.0), grid);
}

UpperBound diag_upper_bound_identity(std::size_t n, const quad::Grid2D& grid) {
  if (n == 0) throw InvalidArgument("diag_upper_bound_identity: n must be positive");
  const double nn = static_cast<double>(n);
  return upper_from_norms(n, std::sqrt(nn), nn, grid);
}

Interval pi1_bracket(std::size_t n, double lower, double upper) {
  if (n == 0) throw InvalidArgument("pi1_bracket: n must be positive");
  const double nn = static_cast<double>(n);
  Interval out;
  out.lo = n >= 7 ? BracketConstants::pi1_lo_factor * lower
                  : BracketConstants::banach_c * std::sqrt(nn);
  out.hi = std::min(BracketConstants::pi1_hi_factor * upper, nn);
  return out;
}

Interval lambda_cb_bracket(std::size_t n, const Interval& pi1) {
  if (n == 0) throw InvalidArgument("lambda_cb_bracket: n must be positive");
  if (!(pi1.lo > 0.0)) throw InvalidArgument("lambda_cb_bracket: pi1 lower end must be positive");
  const double nn = static_cast<double>(n);
  const double base = std::sqrt(nn / (1.0 + std::log(nn)));
  Interval out;
  out.lo = base / BracketConstants::psc_c;
  out.hi = std::min(BracketConstants::gamma_c * base, nn / pi1.lo);
  return out;
}

BracketReport bracket(std::size_t n, const quad::Grid2D& grid) {
  BracketReport out;
  out.n = n;
  out.grid = grid.rule_t().size();
  out.lower = diag_lower_bound(n, grid);
  out.upper = diag_upper_bound_identity(n, grid);
  out.pi1 = pi1_bracket(n, out.lower.value, out.upper.certified);
  out.lambda_cb = lambda_cb_bracket(n, out.pi1);
  return out;
}

}  // namespace ohlab::tensorlog
