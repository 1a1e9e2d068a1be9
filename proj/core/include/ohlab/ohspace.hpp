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

// Norms in M_m(OH_n): the spectral formula ||sum conj(x_k) (x) x_k||^(1/2) and
// the variational form sup over positive a, b in the Hilbert-Schmidt unit
// ball of (sum tr(a x_k* b x_k))^(1/2). Also the first-level norm of the
// canonical basis of F_n inside the l1-sum quotient G_n.

#ifndef OHLAB_OHSPACE_HPP_
#define OHLAB_OHSPACE_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "ohlab/numlin.hpp"
#include "ohlab/quad.hpp"

namespace ohlab::ohspace {

// (x_1, ..., x_n), all m x m with finite entries.
class OHTuple {
 public:
  explicit OHTuple(std::vector<Matrix> xs);

  std::size_t n() const { return xs_.size(); }
  Index m() const { return xs_.front().rows(); }
  const Matrix& operator[](std::size_t k) const { return xs_[k]; }
  const std::vector<Matrix>& matrices() const { return xs_; }

  OHTuple scaled(Complex lambda) const;
  // (u x_k v)_k.
  OHTuple rotated(const Matrix& u, const Matrix& v) const;

 private:
  std::vector<Matrix> xs_;
};

// sum conj(x_k) (x) x_k, an m^2 x m^2 matrix.
Matrix oh_kernel(const OHTuple& x);

double oh_norm_direct(const OHTuple& x);

// Positive a, b with ||a||_2, ||b||_2 <= 1.
struct BallPoint {
  numlin::PositiveMatrix a_pos;
  numlin::PositiveMatrix b_pos;
};

struct VariationalOptions {
  std::size_t restarts = 8;
  double tol = 1e-10;
  std::size_t max_iter = 500;
  std::uint64_t seed = 0;
};

struct VariationalResult {
  VariationalResult(double v, BallPoint p) : value(v), argmax(std::move(p)) {}

  double value = 0.0;
  BallPoint argmax;
  bool converged = false;
  std::size_t iterations = 0;
  std::size_t best_restart = 0;
  // Objective sum tr(a x* b x) after every half-step of the best restart.
  std::vector<double> trace;
  // Every restart's trace was nondecreasing up to 1e-12 relative.
  bool monotone = true;
  double min_eig_a = 0.0;
  double min_eig_b = 0.0;
};

// Alternating maximization: for fixed B the best A is M/||M||_2 with
// M = sum x_k* B x_k, and symmetrically B = N/||N||_2 with N = sum x_k A x_k*.
// Restart 0 starts from B = I/sqrt(m); the others from normalized Wishart
// matrices seeded by derive_seed(seed, r). Ties go to the lowest restart.
VariationalResult oh_norm_variational(const OHTuple& x, const VariationalOptions& opts = {});

// sum_k tr(a x_k* b x_k), real for positive a, b.
double oh_objective(const OHTuple& x, const Matrix& a, const Matrix& b);

struct FnScalarResult {
  double value = 0.0;
  double ratio = 0.0;
  bool converged = true;
};

// First-level norm of sum a_k f_k in G_n. Projecting onto span(a) reduces it
// to ||a||_2 times the scalar quotient norm
//   inf over phi + psi = 1 of (int |phi|^2/t dmu)^(1/2) + (int |psi|^2/(1-t) dmu)^(1/2)
//   = min over rho > 0 of ((1 + rho) int dmu / (rho t + 1 - t))^(1/2),
// minimized by golden section over ln(rho).
FnScalarResult fn_scalar_norm(const Vector& a, const quad::ArcsineRule& rule,
                              double outer_tol = 1e-10);

}  // namespace ohlab::ohspace

#endif  // OHLAB_OHSPACE_HPP_
