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

#include <cmath>
#include <vector>

#include "ohlab/quad.hpp"
#include "oracles.hpp"

using namespace ohlab;
using namespace ohlab::quad;

TEST_CASE("arcsine rule layout") {
  for (std::size_t n : {1u, 2u, 7u, 64u, 4096u}) {
    const ArcsineRule r(n);
    REQUIRE(r.size() == n);
    double wsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      wsum += r.weight(i);
      CHECK(r.node(i) > 0.0);
      CHECK(r.node(i) < 1.0);
      CHECK(r.complement(i) == r.node(n - 1 - i));
      if (i > 0) CHECK(r.node(i - 1) < r.node(i));
    }
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(ArcsineRule(5).node(2) == 0.5);
  CHECK_THROWS_AS(ArcsineRule(0), InvalidArgument);
}

TEST_CASE("nodes agree with the cosine form of the Chebyshev rule") {
  const std::size_t n = 37;
  const ArcsineRule r(n);
  std::vector<double> cosine;
  for (std::size_t j = 1; j <= n; ++j) {
    cosine.push_back(0.5 * (1.0 + std::cos((2.0 * j - 1.0) * oracle::kPi / (2.0 * n))));
  }
  std::sort(cosine.begin(), cosine.end());
  for (std::size_t i = 0; i < n; ++i) CHECK(r.node(i) == doctest::Approx(cosine[i]).epsilon(1e-14));
}

TEST_CASE("moments against C(2k, k) / 4^k") {
  const ArcsineRule r(64);
  for (unsigned k = 0; k <= 6; ++k) {
    const double got = integrate_mu([k](double t) { return std::pow(t, k); }, r);
    CHECK(std::abs(got - oracle::central_binomial_over_4k(k)) <= 1e-12);
    CHECK(arcsine_moment(k) == doctest::Approx(oracle::central_binomial_over_4k(k)).epsilon(1e-15));
  }
  CHECK(integrate_mu([](double t) { return t * t; }, r) == doctest::Approx(0.375).epsilon(1e-14));
}

TEST_CASE("integrate_mu: constant and the scalar geometric-mean identity") {
  const ArcsineRule r(4096);
  CHECK(integrate_mu([](double) { return 1.0; }, r) == doctest::Approx(1.0).epsilon(1e-14));
  // int dmu / (a t + b (1 - t)) = 1/sqrt(ab), so with a = 1/4, b = 1 the value is 2.
  const double v = integrate_mu([](double t, double u) { return 1.0 / (t / 4.0 + u); }, r);
  CHECK(std::abs(v - 2.0) <= 1e-12);
  const double oracle_v = oracle::arcsine_integral([](double t) { return 1.0 / (t / 4.0 + 1.0 - t); });
  CHECK(std::abs(oracle_v - 2.0) <= 1e-12);
}

TEST_CASE("integrate_mu agrees with Gauss-Legendre in the angle variable") {
  const ArcsineRule r(4096);
  const auto f = [](double t) { return std::exp(t) * std::cos(3.0 * t); };
  CHECK(integrate_mu(f, r) == doctest::Approx(oracle::arcsine_integral(f)).epsilon(1e-12));
}

TEST_CASE("non-finite integrand names the node") {
  const ArcsineRule r(8);
  try {
    integrate_mu([](double t) { return t > 0.9 ? std::nan("") : 1.0; }, r);
    FAIL("expected NumericalError");
  } catch (const NumericalError& e) {
    CHECK(std::string(e.what()).find("node t = ") != std::string::npos);
  }
}

TEST_CASE("integrate_2d: constant, product and thread independence") {
  const Grid2D g(128);
  CHECK(integrate_2d([](double, double, double, double) { return 1.0; }, g) ==
        doctest::Approx(1.0).epsilon(1e-14));
  const double prod = integrate_2d([](double t, double, double s, double) { return t * s * s; }, g);
  CHECK(prod == doctest::Approx(0.5 * 0.375).epsilon(1e-13));
  const Grid2D g2(ArcsineRule(16), ArcsineRule(64));
  CHECK(g2.size() == 16 * 64);
  CHECK(integrate_2d([](double t, double, double, double w) { return t * w; }, g2) ==
        doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("mu_cdf closed values") {
  CHECK(mu_cdf(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mu_cdf(0.25) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(mu_cdf(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(mu_cdf(0.0) == 0.0);
  CHECK_THROWS_AS(mu_cdf(1.5), InvalidArgument);
  CHECK_THROWS_AS(mu_mass(0.6, 0.4), InvalidArgument);
}

TEST_CASE("interval masses against numerical integration of the densities") {
  const double a = 0.03;
  const double b = 0.71;
  CHECK(mu_mass(a, b) ==
        doctest::Approx(oracle::arcsine_integral([](double) { return 1.0; }, a, b)).epsilon(1e-12));
  CHECK(nu1_mass(a, b) ==
        doctest::Approx(oracle::arcsine_integral([](double t) { return 1.0 / t; }, a, b))
            .epsilon(1e-12));
  CHECK(nu2_mass(a, b) ==
        doctest::Approx(oracle::arcsine_integral([](double t) { return 1.0 / (1.0 - t); }, a, b))
            .epsilon(1e-12));
  CHECK(std::isinf(nu1_mass(0.0, 0.5)));
  CHECK(std::isinf(nu2_mass(0.5, 1.0)));
  CHECK(nu1_mass(0.5, 1.0) == doctest::Approx(2.0 / oracle::kPi));
  CHECK(nu1_mass(0.2, 0.2) == 0.0);
}
