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

#include "ohlab/numlin.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace ohlab::numlin {

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("HermitianMatrix: matrix is not square");
  }
  require_finite(m, "HermitianMatrix");
  const double scale = max_abs(m);
  const double skew = max_abs(m - m.adjoint());
  if (skew > kHermitianTol * scale) {
    std::ostringstream os;
    os << "HermitianMatrix: max|H - H*| = " << skew << " exceeds " << kHermitianTol
       << " * max|H| = " << kHermitianTol * scale;
    throw InvalidArgument(os.str());
  }
  m_ = (m + m.adjoint()) * 0.5;
}

EigenDecomposition herm_eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "herm_eig: eigensolver did not converge (dim " << h.dim() << ")";
    throw NumericalError(os.str());
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double reconstruction_residual(const HermitianMatrix& h, const EigenDecomposition& e) {
  const Matrix rebuilt = e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
  return max_abs(h.matrix() - rebuilt);
}

PositiveMatrix::PositiveMatrix(const HermitianMatrix& h) : m_(h.matrix()), eig_(herm_eig(h)) {
  RealVector& lambda = eig_.values;
  const double scale = std::max(std::abs(lambda(0)), std::abs(lambda(lambda.size() - 1)));
  bool clamped = false;
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) >= 0.0) continue;
    if (lambda(i) < -kPsdClampTol * scale) {
      std::ostringstream os;
      os << "PositiveMatrix: eigenvalue " << lambda(i) << " below -" << kPsdClampTol
         << " * ||P|| = " << -kPsdClampTol * scale;
      throw InvalidArgument(os.str());
    }
    lambda(i) = 0.0;
    clamped = true;
  }
  if (clamped) {
    m_ = eig_.vectors * lambda.cast<Complex>().asDiagonal() * eig_.vectors.adjoint();
    m_ = (m_ + m_.adjoint()).eval() * 0.5;
  }
  strict_ = norm() > 0.0 && min_eig() > kStrictPositiveTol * norm();
}

PositiveMatrix PositiveMatrix::identity(Index dim) {
  return PositiveMatrix(Matrix(Matrix::Identity(dim, dim)));
}

PositiveMatrix PositiveMatrix::diagonal(const RealVector& d) {
  return PositiveMatrix(Matrix(d.cast<Complex>().asDiagonal()));
}

Matrix PositiveMatrix::power(double p) const {
  if (p < 0.0 && !strict_) {
    throw InvalidArgument("PositiveMatrix::power: negative power of a singular matrix");
  }
  RealVector lp(eig_.values.size());
  for (Index i = 0; i < lp.size(); ++i) {
    lp(i) = eig_.values(i) == 0.0 ? 0.0 : std::pow(eig_.values(i), p);
  }
  Matrix out = eig_.vectors * lp.cast<Complex>().asDiagonal() * eig_.vectors.adjoint();
  return (out + out.adjoint()) * 0.5;
}

namespace {

bool exactly_hermitian(const Matrix& x) {
  return x.rows() == x.cols() && x == x.adjoint();
}

RealVector singular_values(const Matrix& x) {
  if (exactly_hermitian(x)) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(x, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("singular_values: eigensolver did not converge");
    }
    return solver.eigenvalues().cwiseAbs();
  }
  Eigen::BDCSVD<Matrix> svd(x);
  return svd.singularValues();
}

}  // namespace

double schatten_norm(const Matrix& x, double p) {
  const bool supported = p == 0.5 || (p >= 1.0);
  if (!supported || std::isnan(p)) {
    std::ostringstream os;
    os << "schatten_norm: unsupported p = " << p << " (allowed: 1/2, [1, inf])";
    throw InvalidArgument(os.str());
  }
  require_finite(x, "schatten_norm");
  const RealVector s = singular_values(x);
  const double top = s.maxCoeff();
  if (std::isinf(p) || top == 0.0) return top;
  double acc = 0.0;
  for (Index i = 0; i < s.size(); ++i) acc += std::pow(s(i) / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double operator_norm(const Matrix& x) { return schatten_norm(x, kInf); }

Matrix kron(const Matrix& x, const Matrix& y) {
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return out;
}

Matrix conj(const Matrix& x) { return x.conjugate(); }

PositiveMatrix parallel_sum(const PositiveMatrix& c1, const PositiveMatrix& c2) {
  if (c1.dim() != c2.dim()) throw InvalidArgument("parallel_sum: dimension mismatch");
  if (!c1.strictly_positive() || !c2.strictly_positive()) {
    throw InvalidArgument("parallel_sum: both arguments must be strictly positive");
  }
  const Matrix sum = c1.matrix() + c2.matrix();
  Eigen::LLT<Matrix> llt(sum);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("parallel_sum: C1 + C2 is not positive definite");
  }
  Matrix out = c1.matrix() * llt.solve(c2.matrix());
  out = (out + out.adjoint()).eval() * 0.5;
  return PositiveMatrix(out);
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  return operator_norm(a * b - b * a);
}

PositiveMatrix sqrt_commuting(const PositiveMatrix& a, const PositiveMatrix& b) {
  if (a.dim() != b.dim()) throw InvalidArgument("sqrt_commuting: dimension mismatch");
  const double comm = commutator_norm(a.matrix(), b.matrix());
  const double allowed = kCommuteTol * a.norm() * b.norm();
  if (comm > allowed) {
    std::ostringstream os;
    os << "sqrt_commuting: ||AB - BA|| = " << comm << " exceeds " << allowed;
    throw InvalidArgument(os.str());
  }
  const EigenDecomposition& ea = a.eigen();
  const Index n = a.dim();
  const double gap = kEigenspaceGap * std::max(a.norm(), 0.0);

  Matrix basis(n, n);
  RealVector root(n);
  Index start = 0;
  while (start < n) {
    Index end = start + 1;
    while (end < n && ea.values(end) - ea.values(end - 1) <= gap) ++end;
    const Index k = end - start;
    const Matrix v = ea.vectors.middleCols(start, k);
    const double lambda = ea.values.segment(start, k).mean();
    Matrix bk = v.adjoint() * b.matrix() * v;
    bk = (bk + bk.adjoint()).eval() * 0.5;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(bk);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("sqrt_commuting: eigensolver did not converge on an eigenspace");
    }
    basis.middleCols(start, k) = v * solver.eigenvectors();
    for (Index i = 0; i < k; ++i) {
      root(start + i) = std::sqrt(std::max(0.0, lambda) * std::max(0.0, solver.eigenvalues()(i)));
    }
    start = end;
  }
  Matrix out = basis * root.cast<Complex>().asDiagonal() * basis.adjoint();
  out = (out + out.adjoint()).eval() * 0.5;
  return PositiveMatrix(out);
}

}  // namespace ohlab::numlin
