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

#ifndef OHLAB_COMMON_HPP_
#define OHLAB_COMMON_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ohlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kE = 2.718281828459045235360287471352662498;

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on the caller's input was not met.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A numerical routine failed (non-convergence, singular system, NaN).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// An inequality that is proved analytically was violated by a computed value.
class BoundViolation : public Error {
 public:
  using Error::Error;
};

// Pairwise (cascade) summation. The grouping depends only on the length,
// so the result is reproducible bit-for-bit.
double pairwise_sum(std::span<const double> values);

// SplitMix64 finalizer applied to base + index; used to derive independent
// seeds for restarts and trials.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Worker cap from OHLAB_THREADS (default: hardware concurrency, at least 1).
std::size_t thread_count();

// Runs body(i) for i in [0, count). Work is split into contiguous blocks;
// callers write results into preallocated slots so reductions can be done in
// index order afterwards. The exception from the lowest failing index is
// rethrown. Calls made from inside a worker run sequentially.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

struct ScalarMinimum {
  double argmin = 0.0;
  double value = 0.0;
  bool converged = false;
  std::size_t iterations = 0;
};

// Golden-section search for a unimodal f on [lo, hi], stopping when the
// bracket is shorter than tol.
ScalarMinimum golden_section_minimize(const std::function<double(double)>& f, double lo,
                                      double hi, double tol, std::size_t max_iter = 200);

// Throws InvalidArgument if any entry is NaN or infinite.
void require_finite(const Matrix& m, const std::string& what);

}  // namespace ohlab

#endif  // OHLAB_COMMON_HPP_
