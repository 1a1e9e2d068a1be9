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

// Quadrature for the arcsine probability mu(dt) = dt / (pi sqrt(t(1-t)))
// on [0,1] and its product mu x mu, plus closed-form masses of intervals
// under mu, nu1 = mu/t and nu2 = mu/(1-t).

#ifndef OHLAB_QUAD_HPP_
#define OHLAB_QUAD_HPP_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "ohlab/common.hpp"

namespace ohlab::quad {

inline constexpr std::size_t kDefaultNodes = 4096;
inline constexpr std::size_t kDefaultGrid = 1024;

// Gauss-Chebyshev (first kind) rule mapped to [0,1]: nodes
// (1 + cos((2j-1) pi / 2N)) / 2, weights 1/N. Nodes are stored ascending
// together with their complements 1 - t, both computed from half-angle
// sines and cosines so that complement(i) == node(N-1-i) bit-for-bit.
class ArcsineRule {
 public:
  explicit ArcsineRule(std::size_t n);

  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> complements() const { return complements_; }
  std::span<const double> weights() const { return weights_; }
  double node(std::size_t i) const { return nodes_[i]; }
  double complement(std::size_t i) const { return complements_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

 private:
  std::vector<double> nodes_;
  std::vector<double> complements_;
  std::vector<double> weights_;
};

ArcsineRule arcsine_rule(std::size_t n);

// sum_i w_i values_i with pairwise reduction. Throws NumericalError naming
// the first non-finite entry.
double weighted_sum(std::span<const double> values, const ArcsineRule& rule);

// Integrand receives (t, 1 - t).
using Integrand = std::function<double(double t, double one_minus_t)>;
using Integrand2D = std::function<double(double t, double one_minus_t, double s,
                                         double one_minus_s)>;

double integrate_mu(const Integrand& f, const ArcsineRule& rule);
double integrate_mu(const std::function<double(double)>& f, const ArcsineRule& rule);

// Tensor product of two arcsine rules.
class Grid2D {
 public:
  Grid2D(ArcsineRule rule_t, ArcsineRule rule_s);
  explicit Grid2D(std::size_t n) : Grid2D(ArcsineRule(n), ArcsineRule(n)) {}

  const ArcsineRule& rule_t() const { return t_; }
  const ArcsineRule& rule_s() const { return s_; }
  std::size_t size() const { return t_.size() * s_.size(); }

 private:
  ArcsineRule t_;
  ArcsineRule s_;
};

// Rows (fixed t) are evaluated in parallel and reduced pairwise; rows are
// then reduced pairwise in index order, so the result does not depend on the
// thread count.
double integrate_2d(const Integrand2D& f, const Grid2D& grid);

// (2/pi) asin(sqrt(t)).
double mu_cdf(double t);
// mu([alpha, beta]).
double mu_mass(double alpha, double beta);
// nu1([alpha, beta]) = (2/pi)(sqrt((1-alpha)/alpha) - sqrt((1-beta)/beta));
// infinite when alpha = 0.
double nu1_mass(double alpha, double beta);
// nu2([alpha, beta]) = (2/pi)(sqrt(beta/(1-beta)) - sqrt(alpha/(1-alpha)));
// infinite when beta = 1.
double nu2_mass(double alpha, double beta);

// Arcsine moment integral of t^k: C(2k, k) / 4^k.
double arcsine_moment(unsigned k);

}  // namespace ohlab::quad

#endif  // OHLAB_QUAD_HPP_
