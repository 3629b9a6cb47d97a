#pragma once

// Block decomposition of the index set and the step-by-step evolution of
// P_n = P{|S_n| <= sqrt(n)}.
//
// Block C_k = {n : k^2 <= n + 1 < (k+1)^2} = {k^2-1, ..., (k+1)^2-2}. Going
// from P_{n-1} to P_n only one lattice point changes status: it lies in
//   A_n = [-1 - sqrt(n), -sqrt(n-1))   (mass gained), or
//   B_n = [-sqrt(n-1), 1 - sqrt(n))    (mass lost).
// Within a block the gains sit at n = k^2-1 and n = k^2 + 2i, the losses at
// n = k^2 + 1 + 2i, which pins the block minimum at (k+1)^2-2 and the block
// maximum at k^2.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rademacher/exactnum.hpp"

namespace rademacher {

/// The unique k >= 1 with k^2 <= n + 1 < (k+1)^2.
std::uint64_t block_of(std::uint64_t n);

struct Block {
  std::uint64_t k = 0;
  std::vector<std::uint64_t> members;  // k^2-1 .. (k+1)^2-2
  std::vector<std::uint64_t> sub1;     // k^2, k^2+2, ..., (k+1)^2-3
  std::vector<std::uint64_t> sub2;     // k^2-1, k^2+1, ..., (k+1)^2-2
};

Block build_block(std::uint64_t k);

enum class StepSide { kA, kB };
const char* to_string(StepSide side);

struct StepClassification {
  std::uint64_t n = 0;
  HalfOpenInterval a_interval;
  HalfOpenInterval b_interval;
  StepSide hit_side = StepSide::kA;
  std::int64_t hit_integer = 0;
  SignedDyadic increment;  // P_n - P_{n-1}
};

/// Throws std::invalid_argument for n < 3 and InvariantViolation if the
/// lattice point chosen by the case split is not inside the chosen interval.
StepClassification classify_step(std::uint64_t n);

/// The gain-minus-loss pair
///   delta_i = P{S_{k^2+2i-1} = k+1} - P{S_{k^2+2i} = k},
/// computed as a pmf difference and through the closed form
///   -binom(k^2-1+2i, k(k-1)/2+i-1) / 2^{k^2+2i} * 2k / (k(k-1)+2i).
/// Throws DivisibilityViolation if the closed form is not dyadic and
/// InvariantViolation if the two routes disagree.
SignedDyadic delta(std::uint64_t k, std::uint64_t i);

/// The closed-form route alone.
SignedDyadic delta_closed_form(std::uint64_t k, std::uint64_t i);

struct DeltaSequence {
  std::uint64_t k = 0;
  std::vector<SignedDyadic> deltas;
};

/// delta_0 <= ... <= delta_{k-1} < 0, or InvariantViolation naming the index.
DeltaSequence delta_sequence(std::uint64_t k);

/// P{S_{k^2-2} = k} + k * delta_0, which vanishes for every k >= 2.
SignedDyadic anchor_identity(std::uint64_t k);

/// P_n assembled from 1/2 and the per-step gains and losses of the blocks
/// below n, without summing the pmf over the central window.
DyadicProb recursive_pn(std::uint64_t n);

/// (Q_k^-, Q_k^+) = (P_{(k+1)^2-2}, P_{k^2}).
std::pair<DyadicProb, DyadicProb> envelope(std::uint64_t k);

struct Violation {
  std::string check;
  std::string detail;
};

struct BlockReport {
  std::uint64_t k = 0;
  DyadicProb q_minus;
  DyadicProb q_plus;
  std::vector<std::pair<std::uint64_t, DyadicProb>> probabilities;  // n in C_k

  bool min_at_last = false;        // P_{(k+1)^2-2} is the block minimum
  bool max_at_square = false;      // P_{k^2} is the block maximum
  bool odd_chain = false;          // P over C_{k,2} non-increasing in n
  bool even_chain = false;         // P_{(k+1)^2-2} <= P over C_{k,1}, non-increasing in n
  bool all_at_least_half = false;
  bool envelope_gap = false;       // Q_k^- < Q_k^+
  bool q_minus_increasing = true;  // strictly, versus block k-1
  bool q_plus_decreasing = true;   // strictly, versus block k-1

  std::vector<Violation> violations;

  [[nodiscard]] bool passed() const { return violations.empty(); }
};

/// Checks every block 2..max_k. Violations are collected, not thrown.
std::vector<BlockReport> verify_theorem(std::uint64_t max_k);

}  // namespace rademacher
