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

// Integral formulas for the geometric mean ((AB)^(1/2) x, x) of two commuting
// strictly positive matrices, in primal (parallel-sum) and dual
// (constrained energy) form, discretized on one arcsine rule.

#ifndef OHLAB_GEOMEAN_HPP_
#define OHLAB_GEOMEAN_HPP_

#include <vector>

#include "ohlab/numlin.hpp"
#include "ohlab/quad.hpp"

namespace ohlab::geomean {

// A, B strictly positive with ||AB - BA|| <= 1e-8 ||A|| ||B||.
class PWProblem {
 public:
  PWProblem(numlin::PositiveMatrix a, numlin::PositiveMatrix b);

  const numlin::PositiveMatrix& a() const { return a_; }
  const numlin::PositiveMatrix& b() const { return b_; }
  Index dim() const { return a_.dim(); }
  double commutator_norm() const { return commutator_norm_; }
  const Matrix& a_inv() const { return a_inv_; }
  const Matrix& b_inv() const { return b_inv_; }

  // t A^-1 + (1-t) B^-1, with 1 - t passed separately.
  Matrix pencil(double t, double one_minus_t) const;

 private:
  numlin::PositiveMatrix a_;
  numlin::PositiveMatrix b_;
  Matrix a_inv_;
  Matrix b_inv_;
  double commutator_norm_ = 0.0;
};

// integral over mu of (x, (t A^-1 + (1-t) B^-1)^-1 x), i.e. of the parallel sum
// of A/t and B/(1-t).
double pw_primal(const PWProblem& p, const Vector& x, const quad::ArcsineRule& rule);

// h(t) at every node of the rule. f(t) = t A^-1 h(t) and g(t) = (1-t) B^-1 h(t)
// give A f/t = B g/(1-t) = h by construction.
struct DualWitness {
  std::vector<Vector> h_values;
  Vector multiplier;
};

struct DualResult {
  double value = 0.0;
  DualWitness witness;
};

// Minimizes integral (A f, f)/t + (B g, g)/(1-t) dmu subject to
// integral A^(1/2) f / t dmu = B^(1/2) y over witnesses of the form above.
// The minimizer is h(t) = M(t)^-1 A^(-1/2) lambda with M(t) the pencil and
// G lambda = B^(1/2) y, G = integral A^(-1/2) M^-1 A^(-1/2) dmu; the value is
// (B^(1/2) y, lambda).
DualResult pw_dual(const PWProblem& p, const Vector& y, const quad::ArcsineRule& rule);

struct WitnessCheck {
  // (integral (A f, f)/t + (B g, g)/(1-t) dmu)^(1/2).
  double functional_norm = 0.0;
  // max over nodes of ||A f/t - B g/(1-t)||_2.
  double ratio_residual = 0.0;
};

WitnessCheck dual_witness_validate(const DualWitness& w, const PWProblem& p,
                                   const quad::ArcsineRule& rule);

// integral A^(-1/2) h(t) dmu; equals B^(1/2) y for a feasible witness.
Vector witness_constraint(const DualWitness& w, const PWProblem& p, const quad::ArcsineRule& rule);

}  // namespace ohlab::geomean

#endif  // OHLAB_GEOMEAN_HPP_
