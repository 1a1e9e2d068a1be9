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

// Norms of sum spaces L2(g nu) + L2(h nu) on a finite weighted set: the
// l2-sum (closed form), the l1-sum, the weighted quotient K(d1, d2) and the
// commutative three-term functional IK_t.

#ifndef OHLAB_KFUNC_HPP_
#define OHLAB_KFUNC_HPP_

#include "ohlab/common.hpp"
#include "ohlab/quad.hpp"

namespace ohlab::kfunc {

inline constexpr double kDefaultOuterTol = 1e-8;

// Base weights nu and the two route weights g, h; all finite and > 0.
struct WeightedGrid {
  RealVector nu;
  RealVector g;
  RealVector h;

  Index size() const { return nu.size(); }
  // Throws InvalidArgument on length mismatch or a non-positive weight.
  void validate() const;
};

// nu = rule weights, g = 1/t, h = 1/(1-t).
WeightedGrid arcsine_grid(const quad::ArcsineRule& rule);

// (sum nu |k|^2 / (1/g + 1/h))^(1/2).
double l2sum2_norm(const Vector& k, const WeightedGrid& w);

struct SumNormResult {
  double value = 0.0;
  // Weight ratio rho at the optimum; k1 = k (rho/g) / (rho/g + 1/h).
  double ratio = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
};

// inf over k = k1 + k2 of ||k1||_{L2(g nu)} + ||k2||_{L2(h nu)}.
//
// Writing a + b = min over lambda in (0,1) of (a^2/lambda + b^2/(1-lambda))^(1/2)
// and minimizing pointwise in k1 leaves value^2 = min over rho > 0 of
// (1 + rho) J(rho), J(rho) = sum nu |k|^2 / (rho/g + 1/h). The map is convex in
// lambda = rho/(1+rho), so golden section over ln(rho) is exact up to tol.
SumNormResult l2sum1_norm(const Vector& k, const WeightedGrid& w,
                          double outer_tol = kDefaultOuterTol);

// Same minimization for a caller-supplied J. Used where the weighted grid is
// too large to materialize.
SumNormResult l2sum1_from_profile(const std::function<double(double rho)>& j,
                                  double outer_tol = kDefaultOuterTol);

// Optimal split (k1, k2) for a given ratio.
std::pair<Vector, Vector> l2sum1_split(const Vector& k, const WeightedGrid& w, double ratio);

// K(d1, d2) on the arcsine rule: l2sum1 with nu = rule weights, g = 1/d1,
// h = 1/d2. Densities are given by their values at the nodes.
SumNormResult k_d1d2_norm(const Vector& k, const RealVector& d1, const RealVector& d2,
                          const quad::ArcsineRule& rule, double outer_tol = kDefaultOuterTol);

struct ThreeTermParams {
  double t_param = 1.0;
  RealVector d;     // density, > 0 everywhere
  RealVector base;  // base weights, > 0

  void validate() const;
};

struct ThreeTermResult {
  double value = 0.0;
  Vector x1;
  Vector x2;
  Vector x3;
  // Outer scale sigma at the optimum (= ||x2 + x3||_2).
  double sigma = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
};

// inf over x = x1 + d^(1/2) x2 + d^(1/2) x3 of
// t^(1/2) ||x1||_1 + ||x2||_2 + ||x3||_2, norms against the base weights.
//
// Multiplications by d^(1/2) commute here, so only y = x2 + x3 matters and
// ||x2|| + ||x3|| >= ||y|| with equality at x2 = x3 = y/2. With
// ||u|| = min over sigma of (||u||^2/sigma + sigma)/2 the inner problem in x1
// is a pointwise soft threshold at level sqrt(t) d sigma; the outer problem is
// convex in sigma.
ThreeTermResult ik_t_norm(const Vector& x, const ThreeTermParams& params,
                          double outer_tol = kDefaultOuterTol);

// Objective of ik_t_norm at an explicit decomposition (x1, x2, x3).
double ik_t_objective(const Vector& x1, const Vector& x2, const Vector& x3,
                      const ThreeTermParams& params);

// Two-slot K-norm inf over x = d^(1/2)(x2 + x3) of ||x2||_2 + ||x3||_2,
// evaluated as l2sum1 with g = h = 1/d.
SumNormResult two_term_norm(const Vector& x, const ThreeTermParams& params,
                            double outer_tol = kDefaultOuterTol);

}  // namespace ohlab::kfunc

#endif  // OHLAB_KFUNC_HPP_
