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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ohlab/kfunc.hpp"
#include "ohlab/ohspace.hpp"
#include "oracles.hpp"

using namespace ohlab;
using namespace ohlab::kfunc;

namespace {

double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

WeightedGrid random_grid(Index p, std::mt19937_64& rng) {
  WeightedGrid w{RealVector(p), RealVector(p), RealVector(p)};
  for (Index i = 0; i < p; ++i) {
    w.nu(i) = log_uniform(rng, 0.1, 1.0);
    w.g(i) = log_uniform(rng, 1e-2, 1e2);
    w.h(i) = log_uniform(rng, 1e-2, 1e2);
  }
  return w;
}

ThreeTermParams random_spec(Index p, double t, std::mt19937_64& rng) {
  ThreeTermParams s;
  s.t_param = t;
  s.d = RealVector(p);
  s.base = RealVector(p);
  for (Index i = 0; i < p; ++i) {
    s.d(i) = log_uniform(rng, 0.1, 10.0);
    s.base(i) = log_uniform(rng, 0.1, 1.0);
  }
  return s;
}

// sqrt(sum nu g |k1|^2) + sqrt(sum nu h |k2|^2).
double split_cost(const Vector& k1, const Vector& k2, const WeightedGrid& w) {
  double a = 0.0;
  double b = 0.0;
  for (Index i = 0; i < k1.size(); ++i) {
    a += w.nu(i) * w.g(i) * std::norm(k1(i));
    b += w.nu(i) * w.h(i) * std::norm(k2(i));
  }
  return std::sqrt(a) + std::sqrt(b);
}

}  // namespace

TEST_CASE("WeightedGrid validation") {
  WeightedGrid w{RealVector::Ones(3), RealVector::Ones(3), RealVector::Ones(2)};
  CHECK_THROWS_AS(w.validate(), InvalidArgument);
  w.h = RealVector::Ones(3);
  w.g(1) = 0.0;
  CHECK_THROWS_AS(w.validate(), InvalidArgument);
  CHECK_THROWS_AS(l2sum2_norm(Vector::Ones(3), w), InvalidArgument);
}

TEST_CASE("l2sum2 closed forms") {
  const Index p = 10;
  const WeightedGrid flat{RealVector::Constant(p, 1.0 / p), RealVector::Ones(p), RealVector::Ones(p)};
  CHECK(l2sum2_norm(Vector::Ones(p), flat) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(l2sum2_norm(Vector::Zero(p), flat) == 0.0);
  const quad::ArcsineRule rule(4096);
  const WeightedGrid arc = arcsine_grid(rule);
  CHECK(l2sum2_norm(Vector::Ones(static_cast<Index>(rule.size())), arc) ==
        doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("l2sum2 equals pointwise minimization of g |k1|^2 + h |k - k1|^2") {
  std::mt19937_64 rng(31);
  for (Index p : {1, 7, 64}) {
    const WeightedGrid w = random_grid(p, rng);
    const Vector k = oracle::random_vector(p, rng);
    double acc = 0.0;
    for (Index i = 0; i < p; ++i) {
      // Brute force over real lambda with k1 = lambda k.
      double lo = 0.0;
      double hi = 1.0;
      const auto f = [&](double lam) {
        return w.g(i) * lam * lam + w.h(i) * (1.0 - lam) * (1.0 - lam);
      };
      for (int it = 0; it < 200; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) < f(m2)) hi = m2; else lo = m1;
      }
      acc += w.nu(i) * std::norm(k(i)) * f(0.5 * (lo + hi));
    }
    CHECK(std::abs(l2sum2_norm(k, w) - std::sqrt(acc)) <= 1e-10 * std::sqrt(acc));
  }
}

TEST_CASE("l2sum1 against a brute-force decomposition scan") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const WeightedGrid w = random_grid(10, rng);
    const Vector k = oracle::random_vector(10, rng);
    const SumNormResult r = l2sum1_norm(k, w);
    CHECK(r.converged);
    CHECK(std::abs(r.value - oracle::l2sum1(k, w.nu, w.g, w.h)) <= 1e-4 * r.value);
    // The reported split attains the value.
    const auto [k1, k2] = l2sum1_split(k, w, r.ratio);
    CHECK((k1 + k2 - k).norm() <= 1e-12 * k.norm());
    CHECK(split_cost(k1, k2, w) == doctest::Approx(r.value).epsilon(1e-7));
    // Bracketed by the l2-sum norm.
    const double l2 = l2sum2_norm(k, w);
    CHECK(r.value >= l2 * (1.0 - 1e-12));
    CHECK(r.value <= std::sqrt(2.0) * l2 * (1.0 + 1e-12));
  }
}

TEST_CASE("l2sum1 with one route effectively disabled") {
  std::mt19937_64 rng(43);
  WeightedGrid w = random_grid(8, rng);
  w.g = 1e8 * w.h;
  const Vector k = oracle::random_vector(8, rng);
  double direct = 0.0;
  for (Index i = 0; i < 8; ++i) direct += w.nu(i) * w.h(i) * std::norm(k(i));
  CHECK(std::abs(l2sum1_norm(k, w).value - std::sqrt(direct)) <= 1e-3 * std::sqrt(direct));
  CHECK(l2sum1_norm(Vector::Zero(8), w).value == 0.0);
}

TEST_CASE("k_d1d2 aliases") {
  const quad::ArcsineRule rule(4096);
  const auto q = static_cast<Index>(rule.size());
  RealVector d1(q);
  RealVector d2(q);
  for (Index i = 0; i < q; ++i) {
    d1(i) = rule.node(static_cast<std::size_t>(i));
    d2(i) = rule.complement(static_cast<std::size_t>(i));
  }
  const double kd = k_d1d2_norm(Vector::Ones(q), d1, d2, rule).value;
  CHECK(kd == doctest::Approx(ohspace::fn_scalar_norm(Vector::Ones(1), rule).value).epsilon(1e-8));
  CHECK(k_d1d2_norm(Vector::Zero(q), d1, d2, rule).value == 0.0);

  const quad::ArcsineRule small(16);
  const WeightedGrid ones{RealVector::Constant(16, 1.0 / 16.0), RealVector::Ones(16), RealVector::Ones(16)};
  CHECK(k_d1d2_norm(Vector::Ones(16), RealVector::Ones(16), RealVector::Ones(16), small).value ==
        doctest::Approx(l2sum1_norm(Vector::Ones(16), ones).value).epsilon(1e-12));
}

TEST_CASE("ik_t: limits and explicit decomposition") {
  std::mt19937_64 rng(51);
  const Vector x = oracle::random_vector(6, rng);
  ThreeTermParams params = random_spec(6, 1e-12, rng);
  CHECK(ik_t_norm(x, params).value <= 1e-5);
  CHECK(ik_t_norm(Vector::Zero(6), params).value == 0.0);
  params.t_param = 0.7;
  const ThreeTermResult r = ik_t_norm(x, params);
  RealVector root_d = params.d.cwiseSqrt();
  const Vector rebuilt = r.x1 + root_d.cast<Complex>().cwiseProduct(r.x2 + r.x3);
  CHECK((rebuilt - x).norm() <= 1e-12 * x.norm());
  CHECK(ik_t_objective(r.x1, r.x2, r.x3, params) == doctest::Approx(r.value).epsilon(1e-14));
  params.t_param = -1.0;
  CHECK_THROWS_AS(ik_t_norm(x, params), InvalidArgument);
}

TEST_CASE("ik_t against coordinate descent on a 6-point grid, and monotone in t") {
  std::mt19937_64 rng(53);
  const Vector x = oracle::random_vector(6, rng);
  ThreeTermParams params = random_spec(6, 1.0, rng);
  double previous = 0.0;
  for (double t : {1e-4, 1e-2, 1.0, 1e2, 1e4}) {
    params.t_param = t;
    const double got = ik_t_norm(x, params).value;
    const double want = oracle::ik_t(x, params.d, params.base, t);
    CHECK(std::abs(got - want) <= 1e-6 * want);
    CHECK(got >= previous);
    previous = got;
  }
  // Large t pushes everything into the d^(1/2) slots.
  double two = 0.0;
  for (Index i = 0; i < 6; ++i) two += params.base(i) * std::norm(x(i)) / params.d(i);
  CHECK(two_term_norm(x, params).value == doctest::Approx(std::sqrt(two)).epsilon(1e-9));
  CHECK(previous <= std::sqrt(two) * (1.0 + 1e-9));
}
