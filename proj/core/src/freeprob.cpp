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

#include "ohlab/freeprob.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace ohlab::freeprob {

namespace {

constexpr Index kMaxFockDim = 4096;

void require_dim(Index d, const char* what) {
  if (d < 1) {
    std::ostringstream os;
    os << what << ": dimension must be at least 1";
    throw InvalidArgument(os.str());
  }
}

Matrix symmetrized(const Matrix& a) { return (a + a.adjoint()) * 0.5; }

bool exactly_hermitian(const Matrix& a) { return a == a.adjoint(); }

RealVector singular_values(const Matrix& a, bool hermitian) {
  if (hermitian) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("singular_values: eigensolver did not converge");
    }
    return solver.eigenvalues().cwiseAbs();
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues();
}

RealVector hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("hermitian_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

Matrix centered(const Matrix& a) {
  return a - normalized_trace(a) * Matrix::Identity(a.rows(), a.cols());
}

double catalan(std::size_t k) {
  double c = 1.0;
  for (std::size_t j = 0; j < k; ++j) {
    c = c * 2.0 * static_cast<double>(2 * j + 1) / static_cast<double>(j + 2);
  }
  return c;
}

}  // namespace

Matrix ginibre(Index d, Rng& rng) {
  require_dim(d, "ginibre");
  std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
  Matrix z(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      z(i, j) = Complex(re, im);
    }
  }
  return z;
}

Matrix haar_unitary(Index d, Rng& rng) {
  const Matrix z = ginibre(d, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mod = std::abs(rjj);
    if (mod > 0.0) q.col(j) *= rjj / mod;
  }
  return q;
}

Matrix gue(Index d, Rng& rng) {
  const Matrix g = ginibre(d, rng);
  Matrix h = centered(symmetrized(g));
  h = symmetrized(h);
  const double second = h.squaredNorm() / static_cast<double>(d);
  if (!(second > 0.0)) throw NumericalError("gue: degenerate sample");
  return h / std::sqrt(second);
}

Matrix bernoulli(Index d) {
  require_dim(d, "bernoulli");
  if (d % 2 != 0) throw InvalidArgument("bernoulli: dimension must be even");
  Matrix b = Matrix::Zero(d, d);
  for (Index i = 0; i < d; ++i) b(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
  return b;
}

Complex normalized_trace(const Matrix& a) {
  return a.trace() / static_cast<double>(a.rows());
}

FreeFamily free_family(const std::vector<Matrix>& bases, std::uint64_t seed) {
  if (bases.empty()) throw InvalidArgument("free_family: at least one base matrix is required");
  FreeFamily fam;
  fam.dim = bases.front().rows();
  require_dim(fam.dim, "free_family");
  fam.hermitian = true;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i].rows() != fam.dim || bases[i].cols() != fam.dim) {
      std::ostringstream os;
      os << "free_family: base " << i << " is " << bases[i].rows() << "x" << bases[i].cols()
         << ", expected " << fam.dim << "x" << fam.dim;
      throw InvalidArgument(os.str());
    }
    require_finite(bases[i], "free_family");
    if (!exactly_hermitian(bases[i])) fam.hermitian = false;
  }
  fam.members.resize(bases.size());
  parallel_for(bases.size(), [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    const Matrix u = haar_unitary(fam.dim, rng);
    Matrix a = u * centered(bases[i]) * u.adjoint();
    a = centered(a);
    if (fam.hermitian) a = symmetrized(a);
    fam.members[i] = std::move(a);
  });
  return fam;
}

std::vector<Matrix> sample_bases(BaseLaw law, std::size_t n, Index d, std::uint64_t seed) {
  std::vector<Matrix> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (law == BaseLaw::kBernoulli) {
      out[i] = bernoulli(d);
    } else {
      Rng rng(derive_seed(seed, i));
      out[i] = gue(d, rng);
    }
  }
  return out;
}

FamilyAnalysis analyze(const FreeFamily& fam) {
  if (fam.members.empty()) throw InvalidArgument("analyze: empty family");
  const std::size_t n = fam.members.size();
  const double d = static_cast<double>(fam.dim);
  FamilyAnalysis an;
  an.member_norm.resize(n);
  an.member_trace_norm.resize(n);
  an.member_tau_star_a.resize(n);
  an.member_tau_a_star.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const Matrix& a = fam.members[i];
    const RealVector s = singular_values(a, fam.hermitian);
    an.member_norm[i] = s.maxCoeff();
    an.member_trace_norm[i] = s.sum() / d;
    an.member_tau_star_a[i] = (a.adjoint() * a).trace().real() / d;
    an.member_tau_a_star[i] = (a * a.adjoint()).trace().real() / d;
  });
  Matrix sum = Matrix::Zero(fam.dim, fam.dim);
  for (const Matrix& a : fam.members) sum += a;
  if (fam.hermitian) {
    an.sum_eigenvalues = hermitian_eigenvalues(sum);
    const RealVector s = an.sum_eigenvalues.cwiseAbs();
    an.sum_norm = s.maxCoeff();
    an.sum_trace_norm = s.sum() / d;
  } else {
    const RealVector s = singular_values(sum, false);
    an.sum_norm = s.maxCoeff();
    an.sum_trace_norm = s.sum() / d;
  }
  return an;
}

VoiculescuResult voiculescu_check(const FamilyAnalysis& an) {
  VoiculescuResult out;
  out.lhs = an.sum_norm;
  out.max_member_norm = *std::max_element(an.member_norm.begin(), an.member_norm.end());
  out.column_term = std::sqrt(pairwise_sum(an.member_tau_star_a));
  out.row_term = std::sqrt(pairwise_sum(an.member_tau_a_star));
  out.rhs = out.max_member_norm + out.column_term + out.row_term;
  out.margin = out.rhs - out.lhs;
  return out;
}

VoiculescuResult voiculescu_check(const FreeFamily& fam) { return voiculescu_check(analyze(fam)); }

ConverseResult voiculescu_converse_check(const FamilyAnalysis& an) {
  ConverseResult out;
  const double lhs = an.sum_trace_norm;
  out.triangle = {lhs, pairwise_sum(an.member_trace_norm), 0.0};
  out.column = {lhs, std::sqrt(pairwise_sum(an.member_tau_star_a)), 0.0};
  out.row = {lhs, std::sqrt(pairwise_sum(an.member_tau_a_star)), 0.0};
  for (Margin* m : {&out.triangle, &out.column, &out.row}) m->margin = m->rhs - m->lhs;
  return out;
}

ConverseResult voiculescu_converse_check(const FreeFamily& fam) {
  return voiculescu_converse_check(analyze(fam));
}

FockSpace::FockSpace(std::size_t cutoff, std::size_t letter_dim)
    : cutoff_(cutoff), letter_dim_(letter_dim) {
  if (letter_dim < 1) throw InvalidArgument("FockSpace: letter_dim must be at least 1");
  Index size = 1;
  Index total = 0;
  for (std::size_t k = 0; k <= cutoff; ++k) {
    offsets_.push_back(total);
    total += size;
    if (total > kMaxFockDim) {
      std::ostringstream os;
      os << "FockSpace: dimension exceeds " << kMaxFockDim << " (cutoff " << cutoff
         << ", letter_dim " << letter_dim << ")";
      throw InvalidArgument(os.str());
    }
    size *= static_cast<Index>(letter_dim);
  }
  dim_ = total;
}

Vector FockSpace::vacuum() const {
  Vector v = Vector::Zero(dim_);
  v(0) = 1.0;
  return v;
}

Matrix FockSpace::creation(std::size_t letter) const {
  if (letter >= letter_dim_) throw InvalidArgument("FockSpace::creation: letter out of range");
  Matrix l = Matrix::Zero(dim_, dim_);
  Index words = 1;
  const auto d = static_cast<Index>(letter_dim_);
  for (std::size_t k = 0; k < cutoff_; ++k) {
    const Index shift = static_cast<Index>(letter) * words;
    for (Index w = 0; w < words; ++w) l(offsets_[k + 1] + shift + w, offsets_[k] + w) = 1.0;
    words *= d;
  }
  return l;
}

Matrix FockSpace::creation(const Vector& h) const {
  if (h.size() != static_cast<Index>(letter_dim_)) {
    throw InvalidArgument("FockSpace::creation: vector length differs from letter_dim");
  }
  Matrix l = Matrix::Zero(dim_, dim_);
  for (std::size_t a = 0; a < letter_dim_; ++a) l += h(static_cast<Index>(a)) * creation(a);
  return l;
}

Matrix FockSpace::semicircular(std::size_t letter) const {
  const Matrix l = creation(letter);
  return l + l.adjoint();
}

Matrix FockSpace::first_letter_projection(std::size_t letter) const {
  if (letter >= letter_dim_) {
    throw InvalidArgument("FockSpace::first_letter_projection: letter out of range");
  }
  Matrix p = Matrix::Zero(dim_, dim_);
  Index words = 1;
  const auto d = static_cast<Index>(letter_dim_);
  for (std::size_t k = 1; k <= cutoff_; ++k) {
    // Level k holds d * words words; those starting with `letter` are one block.
    const Index start = offsets_[k] + static_cast<Index>(letter) * words;
    for (Index w = 0; w < words; ++w) p(start + w, start + w) = 1.0;
    words *= d;
  }
  return p;
}

Matrix FockSpace::top_level_projection() const {
  Matrix p = Matrix::Zero(dim_, dim_);
  for (Index i = offsets_[cutoff_]; i < dim_; ++i) p(i, i) = 1.0;
  return p;
}

double fock_truncation_defect(const FockSpace& fock) {
  const Matrix keep = Matrix::Identity(fock.dim(), fock.dim()) - fock.top_level_projection();
  double worst = 0.0;
  for (std::size_t a = 0; a < fock.letter_dim(); ++a) {
    const Matrix la = fock.creation(a);
    for (std::size_t b = 0; b < fock.letter_dim(); ++b) {
      const Matrix expected = a == b ? keep : Matrix(Matrix::Zero(fock.dim(), fock.dim()));
      const Matrix diff = la.adjoint() * fock.creation(b) - expected;
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

std::vector<double> fock_semicircular_moments(std::size_t cutoff, std::size_t k_max) {
  if (cutoff < k_max) {
    std::ostringstream os;
    os << "fock_semicircular_moments: cutoff " << cutoff << " is below k_max " << k_max;
    throw InvalidArgument(os.str());
  }
  const FockSpace fock(cutoff, 1);
  const Matrix s = fock.semicircular(0);
  const Vector omega = fock.vacuum();
  std::vector<double> moments(2 * k_max + 1);
  Vector v = omega;
  moments[0] = 1.0;
  for (std::size_t j = 1; j <= 2 * k_max; ++j) {
    v = s * v;
    moments[j] = omega.dot(v).real();
  }
  return moments;
}

double fock_projection_identity(std::size_t cutoff) {
  const FockSpace fock(cutoff, 2);
  const Matrix complement =
      Matrix::Identity(fock.dim(), fock.dim()) - fock.first_letter_projection(0);
  const Matrix sandwich = complement * fock.semicircular(0) * complement;
  return sandwich.cwiseAbs().maxCoeff();
}

VoiculescuResult fock_voiculescu_check(std::size_t cutoff, std::size_t letter_dim) {
  const FockSpace fock(cutoff, letter_dim);
  const Vector omega = fock.vacuum();
  Matrix sum = Matrix::Zero(fock.dim(), fock.dim());
  VoiculescuResult out;
  double col = 0.0;
  double row = 0.0;
  for (std::size_t a = 0; a < letter_dim; ++a) {
    const Matrix s = fock.semicircular(a);
    sum += s;
    out.max_member_norm = std::max(out.max_member_norm, hermitian_eigenvalues(s).cwiseAbs().maxCoeff());
    col += omega.dot(s.adjoint() * s * omega).real();
    row += omega.dot(s * s.adjoint() * omega).real();
  }
  out.lhs = hermitian_eigenvalues(sum).cwiseAbs().maxCoeff();
  out.column_term = std::sqrt(col);
  out.row_term = std::sqrt(row);
  out.rhs = out.max_member_norm + out.column_term + out.row_term;
  out.margin = out.rhs - out.lhs;
  return out;
}

std::vector<double> even_moments(const RealVector& eigenvalues, std::size_t k_max) {
  std::vector<double> out(k_max);
  std::vector<double> powers(static_cast<std::size_t>(eigenvalues.size()));
  for (std::size_t k = 1; k <= k_max; ++k) {
    for (Index i = 0; i < eigenvalues.size(); ++i) {
      powers[static_cast<std::size_t>(i)] = std::pow(eigenvalues(i), static_cast<double>(2 * k));
    }
    out[k - 1] = pairwise_sum(powers) / static_cast<double>(eigenvalues.size());
  }
  return out;
}

CltResult free_clt_check(std::size_t summands, Index dim, std::size_t trials, std::uint64_t seed,
                         BaseLaw law) {
  if (summands < 1) throw InvalidArgument("free_clt_check: at least one summand is required");
  if (trials < 1) throw InvalidArgument("free_clt_check: at least one trial is required");
  constexpr std::size_t kMoments = 4;
  CltResult out;
  out.summands = summands;
  out.dim = dim;
  out.trials = trials;
  for (std::size_t k = 1; k <= kMoments; ++k) out.catalan.push_back(catalan(k));
  std::vector<std::vector<double>> per_trial(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const std::uint64_t trial_seed = derive_seed(seed, t);
    const FreeFamily fam =
        free_family(sample_bases(law, summands, dim, derive_seed(trial_seed, 0)),
                    derive_seed(trial_seed, 1));
    Matrix s = Matrix::Zero(dim, dim);
    for (const Matrix& a : fam.members) s += a;
    s /= std::sqrt(static_cast<double>(summands));
    per_trial[t] = even_moments(hermitian_eigenvalues(symmetrized(s)), kMoments);
  }
  out.even_moments.assign(kMoments, 0.0);
  for (std::size_t k = 0; k < kMoments; ++k) {
    std::vector<double> column(trials);
    for (std::size_t t = 0; t < trials; ++t) {
      column[t] = per_trial[t][k];
      out.max_relative_deviation = std::max(
          out.max_relative_deviation, std::abs(per_trial[t][k] - out.catalan[k]) / out.catalan[k]);
    }
    out.even_moments[k] = pairwise_sum(column) / static_cast<double>(trials);
  }
  return out;
}

}  // namespace ohlab::freeprob
