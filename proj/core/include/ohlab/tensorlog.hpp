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

// Lower and upper brackets for the norm of sum a_ij f_i (x) f_j in the
// projective tensor product of G_n with itself, for the diagonal a = I_n,
// and the brackets they imply for the completely 1-summing norm of id_OHn
// and the projection constant lambda_cb(OH_n).
//
// Lower side: the witness v(t,s) = 1/(ts + (1-t)(1-s)) on
// I = [delta, 1/2] x [1/2, 1-delta] with f = ts v, g = (1-t)(1-s) v,
// h = t(1-s) v, k = (1-t)s v, divided by C sqrt(-ln delta), C = 4 sqrt(2)/pi.
// Upper side: split a = a chi + a (1 - chi) with chi the indicator of
// [0,1/2]^2 u [delta,1/2]x[1/2,1-delta] u [1/2,1-delta]x[delta,1/2] u [1/2,1]^2;
// the first part is a weighted l1-sum norm, the second a sum of four
// rank-one projective norms with closed-form masses.

#ifndef OHLAB_TENSORLOG_HPP_
#define OHLAB_TENSORLOG_HPP_

#include <string>
#include <utility>
#include <vector>

#include "ohlab/common.hpp"
#include "ohlab/quad.hpp"

namespace ohlab::tensorlog {

struct Constant {
  std::string name;
  double value;
  std::string citation;
};

// Fixed constants of the bracket arithmetic.
struct BracketConstants {
  static constexpr double lower_c = 1.0 / (16.0 * 1.41421356237309504880 * kPi);
  static constexpr double upper_c = 18.0;
  static constexpr double pi1_lo_factor = 1.0 / 18.0;
  static constexpr double pi1_hi_factor = 6.0;
  static constexpr double psc_c = 108.0;
  static constexpr double gamma_c = 288.0 * 1.41421356237309504880 * kPi;
  // Witness scale C in C sqrt(-ln delta).
  static constexpr double witness_c = 4.0 * 1.41421356237309504880 / kPi;
  // Small-n fallback pi1 >= (2/sqrt(pi)) sqrt(n).
  static constexpr double banach_c = 2.0 / 1.77245385090551602730;

  static std::vector<Constant> all();
};

// 1/(n e).
double default_lower_delta(std::size_t n);
// 1/(e^2 n^2).
double default_upper_delta(std::size_t n);

struct WitnessQuadruple {
  std::size_t n = 0;
  double delta = 0.0;
  double scale = 0.0;

  bool inside(double t, double s) const;
  // 1/(ts + (1-t)(1-s)); complements passed explicitly.
  static double v(double t, double one_minus_t, double s, double one_minus_s);
  // Unscaled f, g, h, k; zero outside I.
  double f(double t, double s) const;
  double g(double t, double s) const;
  double h(double t, double s) const;
  double k(double t, double s) const;
};

// Requires 0 < delta < 1/2; scale = C sqrt(-ln delta).
WitnessQuadruple witness_build(std::size_t n, double delta);
WitnessQuadruple witness_build(std::size_t n);

struct WitnessAudit {
  double delta = 0.0;
  std::size_t nodes_inside = 0;
  // int t s v^2 and int (1-t)(1-s) v^2 against mu x mu (the squared
  // L2(nu1 x nu1) and L2(nu2 x nu2) norms of f and g).
  double f_sq = 0.0;
  double g_sq = 0.0;
  // Squared L2(nu1 x nu2) norm of h and L2(nu2 x nu1) norm of k.
  double h_sq = 0.0;
  double k_sq = 0.0;
  // int f dnu1 dnu1 = int_I v dmu dmu.
  double pairing = 0.0;

  double fg_bound = 0.0;       // 16 pi^-2 (-ln delta)
  double h_bound = 0.0;        // 16 / (3 pi^2)
  double k_bound = 0.0;        // 32 pi^-2 / delta
  double pairing_floor = 0.0;  // (-ln 8 delta) / pi^2

  bool fg_ok = false;
  bool h_ok = false;
  bool k_ok = false;
  bool pairing_ok = false;

  // After dividing by the scale: max(||f||, ||g||) and max(||h||, ||k||),
  // to be compared with 1 and sqrt(n).
  double scaled_fg = 0.0;
  double scaled_hk = 0.0;
  bool scaled_ok = false;
};

inline constexpr double kBoundSlack = 1e-8;

// Evaluates the five integrals on the grid (integrand zeroed outside I) and
// compares them with their analytic bounds. Any violation beyond 1e-8 throws
// BoundViolation unless strict is false.
WitnessAudit witness_validate(const WitnessQuadruple& q, const quad::Grid2D& grid,
                              bool strict = true);

struct LowerBound {
  std::size_t n = 0;
  double delta = 0.0;
  double value = 0.0;           // sqrt(n) * pairing / scale
  double analytic_chain = 0.0;  // sqrt(n) (-ln 8 delta) / (pi^2 scale)
  double guaranteed = 0.0;      // lower_c sqrt(n (1 + ln n))
  WitnessAudit audit;
};

// n >= 7, delta = 1/(n e).
LowerBound diag_lower_bound(std::size_t n, const quad::Grid2D& grid);

struct UpperBound {
  std::size_t n = 0;
  double delta = 0.0;
  double norm2 = 0.0;     // ||a||_2
  double trace_norm = 0.0;  // ||a||_S1
  // l1-sum norm of chi on the grid, and ||a||_2 times it.
  double chi_norm_numeric = 0.0;
  double a1_numeric = 0.0;
  // ||a||_2 (4 sqrt 2 + 8 sqrt(2) pi^-1 sqrt(-ln delta)).
  double a1_analytic = 0.0;
  // ||a||_S1 times the sum over the four rectangles of sqrt(mass x mass).
  double a2_exact = 0.0;
  // 4 2^(13/4) pi^-1 delta^(1/4) ||a||_S1.
  double a2_chain = 0.0;
  double certified = 0.0;  // a1_analytic + a2_exact
  double chain = 0.0;      // a1_analytic + a2_chain
  double numeric = 0.0;    // a1_numeric + a2_exact
  double guaranteed = 0.0; // upper_c sqrt(1 + ln n) ||a||_2
  // The smallest grid node lies below delta, so the rectangles are resolved.
  bool grid_resolves_delta = false;
  bool chi_converged = true;
};

// Upper bound for a general coefficient matrix (n = a.rows()).
UpperBound diag_upper_bound(const Matrix& a, const quad::Grid2D& grid);
// Upper bound for a = I_n without forming the matrix.
UpperBound diag_upper_bound_identity(std::size_t n, const quad::Grid2D& grid);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// lo = lower/18 for n >= 7, else (2/sqrt(pi)) sqrt(n); hi = min(6 upper, n).
Interval pi1_bracket(std::size_t n, double lower, double upper);
// lo = sqrt(n/(1+ln n))/108; hi = min(288 sqrt(2) pi sqrt(n/(1+ln n)), n/pi1_lo).
Interval lambda_cb_bracket(std::size_t n, const Interval& pi1);

struct BracketReport {
  std::size_t n = 0;
  LowerBound lower;
  UpperBound upper;
  Interval pi1;
  Interval lambda_cb;
  std::size_t grid = 0;
};

// Full bracket for the diagonal at one n >= 7.
BracketReport bracket(std::size_t n, const quad::Grid2D& grid);

}  // namespace ohlab::tensorlog

#endif  // OHLAB_TENSORLOG_HPP_
