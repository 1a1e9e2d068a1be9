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

// Two models of free families: independent Haar rotations of D x D
// matrices with the normalized trace tau = tr/D (asymptotically free), and
// creation operators on a truncated full Fock space with the vacuum state
// (exactly free below the cutoff).

#ifndef OHLAB_FREEPROB_HPP_
#define OHLAB_FREEPROB_HPP_

#include <cstdint>
#include <random>
#include <vector>

#include "ohlab/common.hpp"

namespace ohlab::freeprob {

using Rng = std::mt19937_64;

// Complex Ginibre matrix, entries with E|z|^2 = 1.
Matrix ginibre(Index d, Rng& rng);

// Q from the QR factorization of a Ginibre matrix, columns multiplied by the
// phases of diag(R) so that the law is Haar.
Matrix haar_unitary(Index d, Rng& rng);

// Hermitian, tau(a) = 0 and tau(a^2) = 1 exactly (up to rounding).
Matrix gue(Index d, Rng& rng);

// diag(+1, -1, +1, ...) with D even: tau(a) = 0, tau(a^2) = 1.
Matrix bernoulli(Index d);

Complex normalized_trace(const Matrix& a);

enum class BaseLaw { kSemicircular, kBernoulli };

struct FreeFamily {
  Index dim = 0;
  std::vector<Matrix> members;
  // Every member is exactly Hermitian (symmetrized after rotation).
  bool hermitian = false;
};

// Member i is U_i (b_i - tau(b_i)) U_i*, re-centered, with U_i Haar from
// derive_seed(seed, i). Hermitian bases give exactly Hermitian members.
FreeFamily free_family(const std::vector<Matrix>& bases, std::uint64_t seed);

// n independent bases of the given law, base i drawn from derive_seed(seed, i).
std::vector<Matrix> sample_bases(BaseLaw law, std::size_t n, Index d, std::uint64_t seed);

// Spectral data shared by the checks below.
struct FamilyAnalysis {
  std::vector<double> member_norm;        // ||a_i||_op
  std::vector<double> member_trace_norm;  // tau(|a_i|)
  std::vector<double> member_tau_star_a;  // tau(a_i* a_i)
  std::vector<double> member_tau_a_star;  // tau(a_i a_i*)
  double sum_norm = 0.0;                  // ||sum a_i||_op
  double sum_trace_norm = 0.0;            // tau(|sum a_i|)
  // Eigenvalues of sum a_i when the family is Hermitian (else empty).
  RealVector sum_eigenvalues;
};

FamilyAnalysis analyze(const FreeFamily& fam);

struct VoiculescuResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double max_member_norm = 0.0;
  double column_term = 0.0;  // (sum tau(a_i* a_i))^(1/2)
  double row_term = 0.0;     // (sum tau(a_i a_i*))^(1/2)
};

// ||sum a_i|| <= max ||a_i|| + (sum tau(a_i* a_i))^(1/2) + (sum tau(a_i a_i*))^(1/2).
VoiculescuResult voiculescu_check(const FreeFamily& fam);
VoiculescuResult voiculescu_check(const FamilyAnalysis& an);

struct Margin {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
};

struct ConverseResult {
  Margin triangle;  // tau|sum a| <= sum tau|a_i|
  Margin column;    // tau|sum a| <= (sum tau(a_i* a_i))^(1/2)
  Margin row;       // tau|sum a| <= (sum tau(a_i a_i*))^(1/2)
};

ConverseResult voiculescu_converse_check(const FreeFamily& fam);
ConverseResult voiculescu_converse_check(const FamilyAnalysis& an);

// Truncated full Fock space over C^letter_dim with levels 0..cutoff. Basis
// vectors are words; level k occupies letter_dim^k consecutive slots, words
// ordered with the first letter most significant.
class FockSpace {
 public:
  FockSpace(std::size_t cutoff, std::size_t letter_dim);

  std::size_t cutoff() const { return cutoff_; }
  std::size_t letter_dim() const { return letter_dim_; }
  Index dim() const { return dim_; }
  Index level_offset(std::size_t k) const { return offsets_[k]; }

  Vector vacuum() const;
  // l(e_letter): w -> letter w, words of maximal length are sent to 0.
  Matrix creation(std::size_t letter) const;
  // l(h) = sum h_a l(e_a).
  Matrix creation(const Vector& h) const;
  // s_a = l(e_a) + l(e_a)*.
  Matrix semicircular(std::size_t letter) const;
  // Projection onto the span of words starting with the given letter.
  Matrix first_letter_projection(std::size_t letter) const;
  // Projection onto the top level (words of length cutoff).
  Matrix top_level_projection() const;

 private:
  std::size_t cutoff_;
  std::size_t letter_dim_;
  Index dim_ = 0;
  std::vector<Index> offsets_;
};

// max over letter pairs of ||l(e_a)* l(e_b) - delta_ab (1 - P_top)||_max.
double fock_truncation_defect(const FockSpace& fock);

// <Omega, s^j Omega> for j = 0..2 k_max on a one-letter space; requires
// cutoff >= k_max. Even moments are Catalan numbers, odd moments vanish.
std::vector<double> fock_semicircular_moments(std::size_t cutoff, std::size_t k_max);

// ||(1 - P_1) s_1 (1 - P_1)||_max on the two-letter space.
double fock_projection_identity(std::size_t cutoff);

// Voiculescu's inequality in the exact model: a_i = s_i for letter_dim
// letters, expectations taken in the vacuum state.
VoiculescuResult fock_voiculescu_check(std::size_t cutoff, std::size_t letter_dim);

struct CltResult {
  std::size_t summands = 0;
  Index dim = 0;
  std::size_t trials = 0;
  // Averages over trials of tau(S^(2k)) for k = 1..4, S = n^(-1/2) sum a_i.
  std::vector<double> even_moments;
  std::vector<double> catalan;
  // max over k and trials of |tau(S^(2k)) - C_k| / C_k.
  double max_relative_deviation = 0.0;
};

// Moments tau(S^(2k)), k = 1..k_max, from the eigenvalues of a Hermitian S.
std::vector<double> even_moments(const RealVector& eigenvalues, std::size_t k_max);

CltResult free_clt_check(std::size_t summands, Index dim, std::size_t trials, std::uint64_t seed,
                         BaseLaw law = BaseLaw::kSemicircular);

}  // namespace ohlab::freeprob

#endif  // OHLAB_FREEPROB_HPP_
