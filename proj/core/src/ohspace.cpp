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

#include "ohlab/ohspace.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

namespace ohlab::ohspace {

OHTuple::OHTuple(std::vector<Matrix> xs) : xs_(std::move(xs)) {
  if (xs_.empty()) throw InvalidArgument("OHTuple: at least one matrix is required");
  const Index m = xs_.front().rows();
  for (std::size_t k = 0; k < xs_.size(); ++k) {
    if (xs_[k].rows() != m || xs_[k].cols() != m) {
      std::ostringstream os;
      os << "OHTuple: x_" << k << " is " << xs_[k].rows() << "x" << xs_[k].cols()
         << ", expected " << m << "x" << m;
      throw InvalidArgument(os.str());
    }
    require_finite(xs_[k], "OHTuple");
  }
}

OHTuple OHTuple::scaled(Complex lambda) const {
  std::vector<Matrix> out;
  out.reserve(xs_.size());
  for (const Matrix& x : xs_) out.push_back(lambda * x);
  return OHTuple(std::move(out));
}

OHTuple OHTuple::rotated(const Matrix& u, const Matrix& v) const {
  std::vector<Matrix> out;
  out.reserve(xs_.size());
  for (const Matrix& x : xs_) out.push_back(u * x * v);
  return OHTuple(std::move(out));
}

Matrix oh_kernel(const OHTuple& x) {
  const Index m = x.m();
  Matrix k = Matrix::Zero(m * m, m * m);
  for (const Matrix& xk : x.matrices()) k += numlin::kron(numlin::conj(xk), xk);
  return k;
}

double oh_norm_direct(const OHTuple& x) { return std::sqrt(numlin::operator_norm(oh_kernel(x))); }

double oh_objective(const OHTuple& x, const Matrix& a, const Matrix& b) {
  double acc = 0.0;
  for (const Matrix& xk : x.matrices()) acc += (a * xk.adjoint() * b * xk).trace().real();
  return acc;
}

namespace {

Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

// Returns m / ||m||_2, or the zero matrix when m vanishes.
Matrix normalize_hs(const Matrix& m) {
  const double n = m.norm();
  return n > 0.0 ? Matrix(m / n) : Matrix(Matrix::Zero(m.rows(), m.cols()));
}

struct RestartOutcome {
  double objective = 0.0;
  Matrix a;
  Matrix b;
  std::vector<double> trace;
  bool converged = false;
  bool monotone = true;
  std::size_t iterations = 0;
};

Matrix wishart_start(Index m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(m, m);
  for (Index j = 0; j < m; ++j) {
    for (Index i = 0; i < m; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  return normalize_hs(hermitian_part(g * g.adjoint()));
}

RestartOutcome run_restart(const OHTuple& x, Matrix b, const VariationalOptions& opts) {
  RestartOutcome out;
  const Index m = x.m();
  Matrix a = Matrix::Zero(m, m);
  double previous = -1.0;
  for (std::size_t it = 0; it < opts.max_iter; ++it) {
    Matrix mm = Matrix::Zero(m, m);
    for (const Matrix& xk : x.matrices()) mm += xk.adjoint() * b * xk;
    a = normalize_hs(hermitian_part(mm));
    out.trace.push_back(oh_objective(x, a, b));

    Matrix nn = Matrix::Zero(m, m);
    for (const Matrix& xk : x.matrices()) nn += xk * a * xk.adjoint();
    b = normalize_hs(hermitian_part(nn));
    const double current = oh_objective(x, a, b);
    out.trace.push_back(current);
    out.iterations = it + 1;

    if (previous >= 0.0 && std::abs(current - previous) <= opts.tol * std::max(current, 0.0)) {
      out.converged = true;
      break;
    }
    if (current == 0.0) {
      out.converged = true;
      break;
    }
    previous = current;
  }
  for (std::size_t i = 1; i < out.trace.size(); ++i) {
    const double slack = 1e-12 * std::max(1.0, std::abs(out.trace[i - 1]));
    if (out.trace[i] < out.trace[i - 1] - slack) out.monotone = false;
  }
  out.objective = out.trace.empty() ? 0.0 : out.trace.back();
  out.a = std::move(a);
  out.b = std::move(b);
  return out;
}

}  // namespace

VariationalResult oh_norm_variational(const OHTuple& x, const VariationalOptions& opts) {
  if (opts.restarts < 1) throw InvalidArgument("oh_norm_variational: restarts must be >= 1");
  if (!(opts.tol > 0.0)) throw InvalidArgument("oh_norm_variational: tol must be positive");
  if (opts.max_iter < 1) throw InvalidArgument("oh_norm_variational: max_iter must be >= 1");
  const Index m = x.m();

  std::vector<RestartOutcome> outcomes(opts.restarts);
  parallel_for(opts.restarts, [&](std::size_t r) {
    Matrix b0 = r == 0 ? Matrix(Matrix::Identity(m, m) / std::sqrt(static_cast<double>(m)))
                       : wishart_start(m, derive_seed(opts.seed, r));
    outcomes[r] = run_restart(x, std::move(b0), opts);
  });

  std::size_t best = 0;
  for (std::size_t r = 1; r < outcomes.size(); ++r) {
    if (outcomes[r].objective > outcomes[best].objective) best = r;
  }
  RestartOutcome& win = outcomes[best];
  // A vanishing tuple leaves a = 0; any point of the ball is then optimal.
  if (win.a.isZero(0.0)) win.a = Matrix::Identity(m, m) / std::sqrt(static_cast<double>(m));
  if (win.b.isZero(0.0)) win.b = Matrix::Identity(m, m) / std::sqrt(static_cast<double>(m));

  VariationalResult out(std::sqrt(std::max(0.0, win.objective)),
                        BallPoint{numlin::PositiveMatrix(win.a), numlin::PositiveMatrix(win.b)});
  out.converged = win.converged;
  out.iterations = win.iterations;
  out.best_restart = best;
  out.trace = std::move(win.trace);
  out.monotone = std::all_of(outcomes.begin(), outcomes.end(),
                             [](const RestartOutcome& o) { return o.monotone; });
  out.min_eig_a = out.argmax.a_pos.min_eig();
  out.min_eig_b = out.argmax.b_pos.min_eig();
  return out;
}

FnScalarResult fn_scalar_norm(const Vector& a, const quad::ArcsineRule& rule, double outer_tol) {
  require_finite(Matrix(a), "fn_scalar_norm");
  if (!(outer_tol > 0.0)) throw InvalidArgument("fn_scalar_norm: outer_tol must be positive");
  const double scale = a.norm();
  if (scale == 0.0) return {};
  std::vector<double> values(rule.size());
  const auto objective = [&](double log_rho) {
    const double rho = std::exp(log_rho);
    for (std::size_t i = 0; i < rule.size(); ++i) {
      values[i] = 1.0 / (rho * rule.node(i) + rule.complement(i));
    }
    return (1.0 + rho) * quad::weighted_sum(values, rule);
  };
  const ScalarMinimum m = golden_section_minimize(objective, -30.0, 30.0, outer_tol);
  return {scale * std::sqrt(m.value), std::exp(m.argmin), m.converged};
}

}  // namespace ohlab::ohspace
