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

// Dense complex linear algebra used by every other module: Hermitian and
// positive matrices with checked structure, Schatten norms, Kronecker
// products, parallel sums and square roots of commuting products.

#ifndef OHLAB_NUMLIN_HPP_
#define OHLAB_NUMLIN_HPP_

#include <limits>

#include "ohlab/common.hpp"

namespace ohlab::numlin {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdClampTol = 1e-10;
inline constexpr double kStrictPositiveTol = 1e-12;
inline constexpr double kCommuteTol = 1e-8;
inline constexpr double kEigenspaceGap = 1e-8;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest entry modulus.
double max_abs(const Matrix& m);

// A square matrix H with max|H - H*| <= 1e-12 max|H| at construction.
// The stored value is the symmetrized (H + H*)/2.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  Matrix m_;
};

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // unitary, columns are eigenvectors
};

// Throws NumericalError if the eigensolver reports failure.
EigenDecomposition herm_eig(const HermitianMatrix& h);

// ||H - U diag(l) U*||_max, used as the post-condition diagnostic.
double reconstruction_residual(const HermitianMatrix& h, const EigenDecomposition& e);

// Hermitian matrix with nonnegative spectrum. Eigenvalues in
// [-1e-10 ||P||, 0) are clamped to zero (and the matrix rebuilt); anything
// more negative is rejected.
class PositiveMatrix {
 public:
  explicit PositiveMatrix(const HermitianMatrix& h);
  explicit PositiveMatrix(const Matrix& m) : PositiveMatrix(HermitianMatrix(m)) {}

  static PositiveMatrix identity(Index dim);
  static PositiveMatrix diagonal(const RealVector& d);

  const Matrix& matrix() const { return m_; }
  Index dim() const { return m_.rows(); }
  double min_eig() const { return eig_.values(0); }
  double norm() const { return eig_.values(eig_.values.size() - 1); }
  // min_eig > 1e-12 ||P||.
  bool strictly_positive() const { return strict_; }
  const EigenDecomposition& eigen() const { return eig_; }

  // U diag(l^p) U*. Negative powers require strict positivity.
  Matrix power(double p) const;
  Matrix inverse() const { return power(-1.0); }
  Matrix sqrt() const { return power(0.5); }

 private:
  Matrix m_;
  EigenDecomposition eig_;
  bool strict_ = false;
};

// (sum sigma_i^p)^(1/p) for p = 1/2 or p >= 1; max sigma_i for p = inf.
double schatten_norm(const Matrix& x, double p);

// Operator norm; uses the Hermitian eigensolver when x is exactly Hermitian.
double operator_norm(const Matrix& x);

Matrix kron(const Matrix& x, const Matrix& y);
Matrix conj(const Matrix& x);

// (C1^-1 + C2^-1)^-1, evaluated as C1 (C1 + C2)^-1 C2.
PositiveMatrix parallel_sum(const PositiveMatrix& c1, const PositiveMatrix& c2);

// ||AB - BA||_op.
double commutator_norm(const Matrix& a, const Matrix& b);

// Positive square root of AB for commuting A, B, by simultaneous
// diagonalization: eigenspaces of A (eigenvalues with relative gap below 1e-8
// grouped together), then B diagonalized inside each eigenspace.
PositiveMatrix sqrt_commuting(const PositiveMatrix& a, const PositiveMatrix& b);

}  // namespace ohlab::numlin

#endif  // OHLAB_NUMLIN_HPP_
