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


#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "ohlab/ohlab.hpp"

namespace {

using namespace ohlab;

Matrix gaussian(Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix x(m, m);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < m; ++i) x(i, j) = Complex(normal(rng), normal(rng));
  return x;
}

void BM_ArcsineRule(benchmark::State& state) {
  for (auto _ : state) {
    quad::ArcsineRule rule(static_cast<std::size_t>(state.range(0)));
    benchmark::DoNotOptimize(rule.node(0));
  }
}
BENCHMARK(BM_ArcsineRule)->Arg(64)->Arg(4096);

void BM_PwPrimal(benchmark::State& state) {
  const auto dim = static_cast<Index>(state.range(0));
  RealVector l(dim);
  RealVector k(dim);
  for (Index i = 0; i < dim; ++i) {
    l(i) = 1.0 + static_cast<double>(i);
    k(i) = 100.0 / (1.0 + static_cast<double>(i));
  }
  const geomean::PWProblem p(numlin::PositiveMatrix::diagonal(l), numlin::PositiveMatrix::diagonal(k));
  const quad::ArcsineRule rule(4096);
  const Vector x = Vector::Ones(dim) / std::sqrt(static_cast<double>(dim));
  for (auto _ : state) benchmark::DoNotOptimize(geomean::pw_primal(p, x, rule));
}
BENCHMARK(BM_PwPrimal)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PwDual(benchmark::State& state) {
  const auto dim = static_cast<Index>(state.range(0));
  RealVector l = RealVector::LinSpaced(dim, 1.0, 50.0);
  RealVector k = RealVector::LinSpaced(dim, 20.0, 2.0);
  const geomean::PWProblem p(numlin::PositiveMatrix::diagonal(l), numlin::PositiveMatrix::diagonal(k));
  const quad::ArcsineRule rule(4096);
  const Vector y = Vector::Ones(dim);
  for (auto _ : state) benchmark::DoNotOptimize(geomean::pw_dual(p, y, rule).value);
}
BENCHMARK(BM_PwDual)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_OhNormDirect(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Matrix> xs;
  for (int k = 0; k < 6; ++k) xs.push_back(gaussian(state.range(0), rng));
  const ohspace::OHTuple x(xs);
  for (auto _ : state) benchmark::DoNotOptimize(ohspace::oh_norm_direct(x));
}
BENCHMARK(BM_OhNormDirect)->Arg(4)->Arg(6);

void BM_OhNormVariational(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::vector<Matrix> xs;
  for (int k = 0; k < 6; ++k) xs.push_back(gaussian(state.range(0), rng));
  const ohspace::OHTuple x(xs);
  for (auto _ : state) benchmark::DoNotOptimize(ohspace::oh_norm_variational(x).value);
}
BENCHMARK(BM_OhNormVariational)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

void BM_L2Sum1(benchmark::State& state) {
  const quad::ArcsineRule rule(static_cast<std::size_t>(state.range(0)));
  const kfunc::WeightedGrid w = kfunc::arcsine_grid(rule);
  const Vector k = Vector::Ones(static_cast<Index>(rule.size()));
  for (auto _ : state) benchmark::DoNotOptimize(kfunc::l2sum1_norm(k, w).value);
}
BENCHMARK(BM_L2Sum1)->Arg(64)->Arg(4096);

void BM_IkT(benchmark::State& state) {
  const auto p = static_cast<Index>(state.range(0));
  kfunc::ThreeTermParams params;
  params.t_param = 1.0;
  params.d = RealVector::LinSpaced(p, 0.5, 2.0);
  params.base = RealVector::Constant(p, 1.0 / static_cast<double>(p));
  const Vector x = Vector::LinSpaced(p, Complex(1.0, 0.0), Complex(-1.0, 0.5));
  for (auto _ : state) benchmark::DoNotOptimize(kfunc::ik_t_norm(x, params).value);
}
BENCHMARK(BM_IkT)->Arg(10)->Arg(1000);

void BM_DiagLowerBound(benchmark::State& state) {
  const quad::Grid2D grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(tensorlog::diag_lower_bound(64, grid).value);
}
BENCHMARK(BM_DiagLowerBound)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_DiagUpperBound(benchmark::State& state) {
  const quad::Grid2D grid(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(tensorlog::diag_upper_bound_identity(64, grid).certified);
  }
}
BENCHMARK(BM_DiagUpperBound)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_HaarUnitary(benchmark::State& state) {
  freeprob::Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(freeprob::haar_unitary(state.range(0), rng).data());
  }
}
BENCHMARK(BM_HaarUnitary)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_FreeFamilyAnalysis(benchmark::State& state) {
  const auto dim = static_cast<Index>(state.range(0));
  const freeprob::FreeFamily fam =
      freeprob::free_family(freeprob::sample_bases(freeprob::BaseLaw::kSemicircular, 4, dim, 1), 2);
  for (auto _ : state) benchmark::DoNotOptimize(freeprob::analyze(fam).sum_norm);
}
BENCHMARK(BM_FreeFamilyAnalysis)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_FockMoments(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(freeprob::fock_semicircular_moments(10, 5).back());
  }
}
BENCHMARK(BM_FockMoments);

}  // namespace

BENCHMARK_MAIN();
