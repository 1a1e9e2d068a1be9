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

#include "ohlab/quad.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

namespace ohlab::quad {

ArcsineRule::ArcsineRule(std::size_t n) {
  if (n == 0) throw InvalidArgument("arcsine_rule: N must be at least 1");
  nodes_.resize(n);
  complements_.resize(n);
  weights_.assign(n, 1.0 / static_cast<double>(n));
  // Ascending order: index i holds sin^2(theta/2) with theta = (2i+1) pi / 2N.
  const std::size_t half = n / 2;
  for (std::size_t i = 0; i < half; ++i) {
    const double theta = static_cast<double>(2 * i + 1) * kPi / (2.0 * static_cast<double>(n));
    const double sn = std::sin(theta / 2.0);
    const double cs = std::cos(theta / 2.0);
    nodes_[i] = sn * sn;
    complements_[i] = cs * cs;
    nodes_[n - 1 - i] = complements_[i];
    complements_[n - 1 - i] = nodes_[i];
  }
  if (n % 2 == 1) {
    nodes_[half] = 0.5;
    complements_[half] = 0.5;
  }
}

ArcsineRule arcsine_rule(std::size_t n) { return ArcsineRule(n); }

double weighted_sum(std::span<const double> values, const ArcsineRule& rule) {
  if (values.size() != rule.size()) {
    throw InvalidArgument("weighted_sum: value count does not match the rule");
  }
  std::vector<double> terms(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      std::ostringstream os;
      os.precision(17);
      os << "integrand is not finite at node t = " << rule.node(i) << " (index " << i << ")";
      throw NumericalError(os.str());
    }
    terms[i] = rule.weight(i) * values[i];
  }
  return pairwise_sum(terms);
}

double integrate_mu(const Integrand& f, const ArcsineRule& rule) {
  std::vector<double> values(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) values[i] = f(rule.node(i), rule.complement(i));
  return weighted_sum(values, rule);
}

double integrate_mu(const std::function<double(double)>& f, const ArcsineRule& rule) {
  return integrate_mu([&f](double t, double) { return f(t); }, rule);
}

Grid2D::Grid2D(ArcsineRule rule_t, ArcsineRule rule_s)
    : t_(std::move(rule_t)), s_(std::move(rule_s)) {}

double integrate_2d(const Integrand2D& f, const Grid2D& grid) {
  const ArcsineRule& rt = grid.rule_t();
  const ArcsineRule& rs = grid.rule_s();
  std::vector<double> rows(rt.size());
  parallel_for(rt.size(), [&](std::size_t i) {
    std::vector<double> values(rs.size());
    for (std::size_t j = 0; j < rs.size(); ++j) {
      values[j] = f(rt.node(i), rt.complement(i), rs.node(j), rs.complement(j));
      if (!std::isfinite(values[j])) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand is not finite at node (t, s) = (" << rt.node(i) << ", " << rs.node(j)
           << ")";
        throw NumericalError(os.str());
      }
    }
    rows[i] = weighted_sum(values, rs);
  });
  return weighted_sum(rows, rt);
}

namespace {

void require_unit_interval(double t, const char* what) {
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << what << ": argument " << t << " outside [0, 1]";
    throw InvalidArgument(os.str());
  }
}

void require_interval(double alpha, double beta, const char* what) {
  require_unit_interval(alpha, what);
  require_unit_interval(beta, what);
  if (alpha > beta) {
    std::ostringstream os;
    os << what << ": empty interval [" << alpha << ", " << beta << "]";
    throw InvalidArgument(os.str());
  }
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double mu_cdf(double t) {
  require_unit_interval(t, "mu_cdf");
  return (2.0 / kPi) * std::asin(std::sqrt(t));
}

double mu_mass(double alpha, double beta) {
  require_interval(alpha, beta, "mu_mass");
  return mu_cdf(beta) - mu_cdf(alpha);
}

double nu1_mass(double alpha, double beta) {
  require_interval(alpha, beta, "nu1_mass");
  if (alpha == beta) return 0.0;
  if (alpha == 0.0) return kInf;
  return (2.0 / kPi) * (std::sqrt((1.0 - alpha) / alpha) - std::sqrt((1.0 - beta) / beta));
}

double nu2_mass(double alpha, double beta) {
  require_interval(alpha, beta, "nu2_mass");
  if (alpha == beta) return 0.0;
  if (beta == 1.0) return kInf;
  return (2.0 / kPi) * (std::sqrt(beta / (1.0 - beta)) - std::sqrt(alpha / (1.0 - alpha)));
}

double arcsine_moment(unsigned k) {
  // C(2k, k) / 4^k = prod_{j=1..k} (2j - 1) / (2j).
  double m = 1.0;
  for (unsigned j = 1; j <= k; ++j) m *= static_cast<double>(2 * j - 1) / static_cast<double>(2 * j);
  return m;
}

}  // namespace ohlab::quad
