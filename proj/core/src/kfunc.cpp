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

#include "ohlab/kfunc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace ohlab::kfunc {

namespace {

// Half-width of the golden-section bracket in ln(rho).
constexpr double kLogRatioHalfWidth = 50.0;
// The IK_t optimum sits in (0, ||x/sqrt(d)||]; the lower end of the
// bracket in ln(sigma) is taken this far below.
constexpr double kLogSigmaDepth = 80.0;

void require_positive(const RealVector& v, const char* what) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!(v(i) > 0.0) || !std::isfinite(v(i))) {
      std::ostringstream os;
      os << what << "[" << i << "] = " << v(i) << " is not finite and positive";
      throw InvalidArgument(os.str());
    }
  }
}

void require_finite_vector(const Vector& k, const char* what) {
  for (Index i = 0; i < k.size(); ++i) {
    if (!std::isfinite(k(i).real()) || !std::isfinite(k(i).imag())) {
      std::ostringstream os;
      os << what << ": non-finite value at index " << i;
      throw InvalidArgument(os.str());
    }
  }
}

void require_length(const Vector& k, Index n, const char* what) {
  if (k.size() != n) {
    std::ostringstream os;
    os << what << ": " << k.size() << " values for a grid of " << n << " points";
    throw InvalidArgument(os.str());
  }
}

}  // namespace

void WeightedGrid::validate() const {
  if (nu.size() == 0) throw InvalidArgument("WeightedGrid: empty grid");
  if (g.size() != nu.size() || h.size() != nu.size()) {
    throw InvalidArgument("WeightedGrid: nu, g and h differ in length");
  }
  require_positive(nu, "WeightedGrid.nu");
  require_positive(g, "WeightedGrid.g");
  require_positive(h, "WeightedGrid.h");
}

WeightedGrid arcsine_grid(const quad::ArcsineRule& rule) {
  const Index n = static_cast<Index>(rule.size());
  WeightedGrid w{RealVector(n), RealVector(n), RealVector(n)};
  for (Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    w.nu(i) = rule.weight(u);
    w.g(i) = 1.0 / rule.node(u);
    w.h(i) = 1.0 / rule.complement(u);
  }
  return w;
}

double l2sum2_norm(const Vector& k, const WeightedGrid& w) {
  w.validate();
  require_length(k, w.size(), "l2sum2_norm");
  require_finite_vector(k, "l2sum2_norm");
  std::vector<double> terms(static_cast<std::size_t>(k.size()));
  for (Index i = 0; i < k.size(); ++i) {
    terms[static_cast<std::size_t>(i)] = w.nu(i) * std::norm(k(i)) / (1.0 / w.g(i) + 1.0 / w.h(i));
  }
  return std::sqrt(pairwise_sum(terms));
}

namespace {

SumNormResult minimize_profile(const std::function<double(double)>& j, double outer_tol,
                               double center) {
  if (!(outer_tol > 0.0)) throw InvalidArgument("l2sum1: outer_tol must be positive");
  const auto objective = [&j](double log_rho) {
    const double rho = std::exp(log_rho);
    return (1.0 + rho) * j(rho);
  };
  const ScalarMinimum m = golden_section_minimize(objective, center - kLogRatioHalfWidth,
                                                  center + kLogRatioHalfWidth, outer_tol);
  SumNormResult out;
  out.value = std::sqrt(std::max(0.0, m.value));
  out.ratio = std::exp(m.argmin);
  out.converged = m.converged;
  out.iterations = m.iterations;
  return out;
}

}  // namespace

SumNormResult l2sum1_from_profile(const std::function<double(double)>& j, double outer_tol) {
  return minimize_profile(j, outer_tol, 0.0);
}

SumNormResult l2sum1_norm(const Vector& k, const WeightedGrid& w, double outer_tol) {
  w.validate();
  require_length(k, w.size(), "l2sum1_norm");
  require_finite_vector(k, "l2sum1_norm");
  if (k.isZero(0.0)) return {};
  const Index n = k.size();
  std::vector<double> mass(static_cast<std::size_t>(n));
  RealVector inv_g = w.g.cwiseInverse();
  RealVector inv_h = w.h.cwiseInverse();
  for (Index i = 0; i < n; ++i) mass[static_cast<std::size_t>(i)] = w.nu(i) * std::norm(k(i));
  // rho is only meaningful relative to g/h; center the bracket on its range.
  const RealVector ratio = w.g.cwiseQuotient(w.h);
  const double center = 0.5 * (std::log(ratio.minCoeff()) + std::log(ratio.maxCoeff()));
  std::vector<double> terms(static_cast<std::size_t>(n));
  const auto j = [&](double rho) {
    for (Index i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      terms[u] = mass[u] / (rho * inv_g(i) + inv_h(i));
    }
    return pairwise_sum(terms);
  };
  return minimize_profile(j, outer_tol, center);
}

std::pair<Vector, Vector> l2sum1_split(const Vector& k, const WeightedGrid& w, double ratio) {
  w.validate();
  require_length(k, w.size(), "l2sum1_split");
  if (!(ratio > 0.0)) throw InvalidArgument("l2sum1_split: ratio must be positive");
  Vector k1(k.size());
  for (Index i = 0; i < k.size(); ++i) {
    const double a = ratio / w.g(i);
    k1(i) = k(i) * (a / (a + 1.0 / w.h(i)));
  }
  return {k1, k - k1};
}

SumNormResult k_d1d2_norm(const Vector& k, const RealVector& d1, const RealVector& d2,
                          const quad::ArcsineRule& rule, double outer_tol) {
  const auto n = static_cast<Index>(rule.size());
  if (d1.size() != n || d2.size() != n) {
    throw InvalidArgument("k_d1d2_norm: densities must be given at every node");
  }
  require_positive(d1, "k_d1d2_norm.d1");
  require_positive(d2, "k_d1d2_norm.d2");
  WeightedGrid w{RealVector(n), d1.cwiseInverse(), d2.cwiseInverse()};
  for (Index i = 0; i < n; ++i) w.nu(i) = rule.weight(static_cast<std::size_t>(i));
  return l2sum1_norm(k, w, outer_tol);
}

void ThreeTermParams::validate() const {
  if (!(t_param > 0.0) || !std::isfinite(t_param)) {
    throw InvalidArgument("ThreeTermParams: t must be finite and positive");
  }
  if (d.size() == 0 || d.size() != base.size()) {
    throw InvalidArgument("ThreeTermParams: d and base weights differ in length");
  }
  require_positive(d, "ThreeTermParams.d");
  require_positive(base, "ThreeTermParams.base");
}

double ik_t_objective(const Vector& x1, const Vector& x2, const Vector& x3,
                      const ThreeTermParams& params) {
  params.validate();
  const Index n = params.d.size();
  require_length(x1, n, "ik_t_objective");
  require_length(x2, n, "ik_t_objective");
  require_length(x3, n, "ik_t_objective");
  std::vector<double> l1(static_cast<std::size_t>(n));
  std::vector<double> q2(static_cast<std::size_t>(n));
  std::vector<double> q3(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    l1[u] = params.base(i) * std::abs(x1(i));
    q2[u] = params.base(i) * std::norm(x2(i));
    q3[u] = params.base(i) * std::norm(x3(i));
  }
  return std::sqrt(params.t_param) * pairwise_sum(l1) + std::sqrt(pairwise_sum(q2)) +
         std::sqrt(pairwise_sum(q3));
}

ThreeTermResult ik_t_norm(const Vector& x, const ThreeTermParams& params, double outer_tol) {
  params.validate();
  const Index n = params.d.size();
  require_length(x, n, "ik_t_norm");
  require_finite_vector(x, "ik_t_norm");
  if (!(outer_tol > 0.0)) throw InvalidArgument("ik_t_norm: outer_tol must be positive");

  ThreeTermResult out;
  out.x1 = Vector::Zero(n);
  out.x2 = Vector::Zero(n);
  out.x3 = Vector::Zero(n);
  if (x.isZero(0.0)) return out;

  const double root_t = std::sqrt(params.t_param);
  std::vector<double> modulus(static_cast<std::size_t>(n));
  std::vector<double> s_terms(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    modulus[u] = std::abs(x(i));
    s_terms[u] = params.base(i) * modulus[u] * modulus[u] / params.d(i);
  }
  const double s = std::sqrt(pairwise_sum(s_terms));

  std::vector<double> terms(static_cast<std::size_t>(n));
  const auto reduced = [&](double log_sigma) {
    const double sigma = std::exp(log_sigma);
    for (Index i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      const double tau = root_t * params.d(i) * sigma;
      const double a = modulus[u];
      const double pointwise = a <= tau ? a * a / (2.0 * params.d(i) * sigma)
                                        : root_t * a - 0.5 * params.t_param * params.d(i) * sigma;
      terms[u] = params.base(i) * pointwise;
    }
    return 0.5 * sigma + pairwise_sum(terms);
  };
  const double hi = std::log(s) + 1.0;
  const ScalarMinimum m = golden_section_minimize(reduced, hi - kLogSigmaDepth - 1.0, hi, outer_tol);
  const double sigma = std::exp(m.argmin);

  for (Index i = 0; i < n; ++i) {
    const double a = std::abs(x(i));
    const double tau = root_t * params.d(i) * sigma;
    out.x1(i) = a <= tau ? Complex(0.0) : x(i) * (1.0 - tau / a);
    const Complex rest = (x(i) - out.x1(i)) / (2.0 * std::sqrt(params.d(i)));
    out.x2(i) = rest;
    out.x3(i) = rest;
  }
  out.sigma = sigma;
  out.value = ik_t_objective(out.x1, out.x2, out.x3, params);
  out.converged = m.converged;
  out.iterations = m.iterations;
  return out;
}

SumNormResult two_term_norm(const Vector& x, const ThreeTermParams& params, double outer_tol) {
  params.validate();
  const RealVector inv_d = params.d.cwiseInverse();
  return l2sum1_norm(x, WeightedGrid{params.base, inv_d, inv_d}, outer_tol);
}

}  // namespace ohlab::kfunc
