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

#include "ohlab/geomean.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace ohlab::geomean {

namespace {

template <typename T>
T pairwise_reduce(std::span<const T> xs) {
  constexpr std::size_t kBlock = 16;
  if (xs.size() <= kBlock) {
    T acc = xs[0];
    for (std::size_t i = 1; i < xs.size(); ++i) acc += xs[i];
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise_reduce(xs.first(half)) + pairwise_reduce(xs.subspan(half));
}

void require_dim(const Vector& x, Index dim, const char* what) {
  if (x.size() != dim) {
    std::ostringstream os;
    os << what << ": vector of length " << x.size() << " for a problem of dimension " << dim;
    throw InvalidArgument(os.str());
  }
  require_finite(Matrix(x), what);
}

Eigen::LLT<Matrix> factor(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("pencil t A^-1 + (1-t) B^-1 is not positive definite");
  }
  return llt;
}

}  // namespace

PWProblem::PWProblem(numlin::PositiveMatrix a, numlin::PositiveMatrix b)
    : a_(std::move(a)), b_(std::move(b)) {
  if (a_.dim() != b_.dim()) throw InvalidArgument("PWProblem: dimension mismatch");
  if (!a_.strictly_positive() || !b_.strictly_positive()) {
    throw InvalidArgument("PWProblem: A and B must be strictly positive");
  }
  commutator_norm_ = numlin::commutator_norm(a_.matrix(), b_.matrix());
  const double allowed = numlin::kCommuteTol * a_.norm() * b_.norm();
  if (commutator_norm_ > allowed) {
    std::ostringstream os;
    os << "PWProblem: ||AB - BA|| = " << commutator_norm_ << " exceeds " << allowed;
    throw InvalidArgument(os.str());
  }
  a_inv_ = a_.inverse();
  b_inv_ = b_.inverse();
}

Matrix PWProblem::pencil(double t, double one_minus_t) const {
  return t * a_inv_ + one_minus_t * b_inv_;
}

double pw_primal(const PWProblem& p, const Vector& x, const quad::ArcsineRule& rule) {
  require_dim(x, p.dim(), "pw_primal");
  std::vector<double> values(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    const auto llt = factor(p.pencil(rule.node(i), rule.complement(i)));
    values[i] = x.dot(llt.solve(x)).real();
  });
  return quad::weighted_sum(values, rule);
}

DualResult pw_dual(const PWProblem& p, const Vector& y, const quad::ArcsineRule& rule) {
  require_dim(y, p.dim(), "pw_dual");
  const Matrix a_inv_sqrt = p.a().power(-0.5);
  const Vector c = p.b().sqrt() * y;

  std::vector<Matrix> gram_terms(rule.size());
  std::vector<Matrix> solved(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    const auto llt = factor(p.pencil(rule.node(i), rule.complement(i)));
    solved[i] = llt.solve(a_inv_sqrt);
    gram_terms[i] = rule.weight(i) * (a_inv_sqrt * solved[i]);
  });
  Matrix gram = pairwise_reduce<Matrix>(gram_terms);
  gram = (gram + gram.adjoint()).eval() * 0.5;
  Eigen::LLT<Matrix> gram_llt(gram);
  if (gram_llt.info() != Eigen::Success) {
    throw NumericalError("pw_dual: quadrature Gram operator is not positive definite");
  }

  DualResult out;
  out.witness.multiplier = gram_llt.solve(c);
  out.witness.h_values.resize(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    out.witness.h_values[i] = solved[i] * out.witness.multiplier;
  }
  out.value = c.dot(out.witness.multiplier).real();
  return out;
}

WitnessCheck dual_witness_validate(const DualWitness& w, const PWProblem& p,
                                   const quad::ArcsineRule& rule) {
  WitnessCheck out;
  if (w.h_values.empty()) return out;
  if (w.h_values.size() != rule.size()) {
    throw InvalidArgument("dual_witness_validate: witness and rule differ in node count");
  }
  std::vector<double> energy(rule.size());
  std::vector<double> residual(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const Vector& h = w.h_values[i];
    if (h.size() != p.dim()) {
      throw InvalidArgument("dual_witness_validate: witness dimension mismatch");
    }
    const double t = rule.node(i);
    const double u = rule.complement(i);
    const Vector f = t * (p.a_inv() * h);
    const Vector g = u * (p.b_inv() * h);
    const Vector af = p.a().matrix() * f;
    const Vector bg = p.b().matrix() * g;
    energy[i] = f.dot(af).real() / t + g.dot(bg).real() / u;
    residual[i] = (af / t - bg / u).norm();
  }
  out.functional_norm = std::sqrt(std::max(0.0, quad::weighted_sum(energy, rule)));
  out.ratio_residual = *std::max_element(residual.begin(), residual.end());
  return out;
}

Vector witness_constraint(const DualWitness& w, const PWProblem& p, const quad::ArcsineRule& rule) {
  if (w.h_values.size() != rule.size()) {
    throw InvalidArgument("witness_constraint: witness and rule differ in node count");
  }
  const Matrix a_inv_sqrt = p.a().power(-0.5);
  std::vector<Vector> terms(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    terms[i] = rule.weight(i) * (a_inv_sqrt * w.h_values[i]);
  }
  return pairwise_reduce<Vector>(terms);
}

}  // namespace ohlab::geomean
