#pragma once

// Uniform bounds on P_n by range of n, and the one-sigma normal limit the
// block envelopes converge to.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rademacher/exactnum.hpp"

namespace rademacher {

struct BoundRow {
  std::string label;  // "n=1", "3-7", "24+", ...
  std::uint64_t first_n = 0;
  std::optional<std::uint64_t> last_n;  // open-ended when empty
  DyadicProb lower;
  DyadicProb upper;
};

/// The tightest row that applies to n. Lower bounds are the block minima
/// Q_2^-, Q_3^-, Q_4^-; upper bounds the maxima Q_2^+, Q_3^+, Q_4^+, Q_5^+.
const BoundRow& bound_row(std::uint64_t n);
const std::vector<BoundRow>& bound_rows();

/// P{|Z| <= 1} for standard normal Z, to ten digits.
inline constexpr const char* kNormalOneSigmaText = "0.6826894921";
inline constexpr double kNormalOneSigma = 0.6826894921;

/// Exact comparison of x with the ten-digit constant.
std::strong_ordering compare_to_normal_limit(const DyadicProb& x);

/// x - 0.6826894921, rounded half-even to `digits` places, with sign.
std::string gap_to_normal_limit(const DyadicProb& x, unsigned digits);

/// Upper bound for 15 <= n <= 23 as printed in the source table; the exact
/// block maximum P_16 differs from it.
inline constexpr const char* kPrintedUpperBoundFrom15 = "25833/32768";

}  // namespace rademacher
