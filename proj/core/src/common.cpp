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

#include "ohlab/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <sstream>
#include <thread>
#include <vector>

namespace ohlab {

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 16;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::size_t thread_count() {
  if (const char* env = std::getenv("OHLAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v >= 1) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

namespace {

// Set on worker threads; nested parallel_for calls then run inline so the
// number of live threads stays at thread_count().
thread_local bool in_worker = false;

}  // namespace

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = in_worker ? 1 : std::min(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    pool.emplace_back([&, begin, end] {
      in_worker = true;
      for (std::size_t i = begin; i < end; ++i) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo,
                                      double hi, double tol, std::size_t max_iter) {
  if (!(lo < hi)) throw InvalidArgument("golden_section_minimize: empty bracket");
  if (!(tol > 0.0)) throw InvalidArgument("golden_section_minimize: tol must be positive");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  ScalarMinimum out;
  std::size_t it = 0;
  while (b - a > tol && it < max_iter) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  out.iterations = it;
  out.converged = (b - a) <= tol;
  if (fc <= fd) {
    out.argmin = c;
    out.value = fc;
  } else {
    out.argmin = d;
    out.value = fd;
  }
  // The bracket ends are candidates too when the minimum sits on the boundary.
  for (double x : {lo, hi}) {
    const double fx = f(x);
    if (fx < out.value) {
      out.value = fx;
      out.argmin = x;
    }
  }
  return out;
}

void require_finite(const Matrix& m, const std::string& what) {
  if (m.rows() < 1 || m.cols() < 1) {
    throw InvalidArgument(what + ": dimensions must be at least 1");
  }
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        std::ostringstream os;
        os << what << ": non-finite entry at (" << i << ", " << j << ")";
        throw InvalidArgument(os.str());
      }
    }
  }
}

}  // namespace ohlab
