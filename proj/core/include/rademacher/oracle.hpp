#pragma once

// Ground-truth engines that never touch the binomial code path: exhaustive
// enumeration of all 2^n sign vectors, and the additive recurrence
// c_n(m) = c_{n-1}(m-1) + c_{n-1}(m+1).

#include <cstdint>
#include <vector>

#include "rademacher/distribution.hpp"
#include "rademacher/exactnum.hpp"

namespace rademacher::oracle {

inline constexpr std::uint64_t kMaxEnumerate = 26;

/// Number of sign vectors of length n whose sum is m.
class CountTable {
 public:
  CountTable() = default;
  /// counts_by_offset[(m + n)] for m in [-n, n]; odd offsets must be zero.
  CountTable(std::uint64_t n, std::vector<BigCount> counts_by_offset);

  [[nodiscard]] std::uint64_t n() const { return n_; }
  /// Zero for |m| > n or wrong parity.
  [[nodiscard]] BigCount count(std::int64_t m) const;
  [[nodiscard]] BigCount total() const;
  [[nodiscard]] const std::vector<BigCount>& raw() const { return counts_; }

  friend bool operator==(const CountTable&, const CountTable&) = default;

 private:
  std::uint64_t n_ = 0;
  std::vector<BigCount> counts_;
};

/// Iterates all 2^n sign vectors; n must lie in [1, 26].
CountTable enumerate_counts(std::uint64_t n);

/// Additive recurrence seeded at n = 1.
CountTable convolve_counts(std::uint64_t n);

/// Produces the recurrence rows 1, 2, 3, ... one at a time.
class ConvolutionSweep {
 public:
  ConvolutionSweep();
  [[nodiscard]] const CountTable& current() const { return table_; }
  const CountTable& advance();

 private:
  CountTable table_;
};

enum class Engine { kEnumerate, kConvolve };

/// Mass of q^2 m^2 <= p^2 n over 2^n, with the same closed boundary as
/// central_prob but an independent window test.
DyadicProb central_prob_from(const CountTable& table, const SigmaThreshold& a);

DyadicProb oracle_central_prob(std::uint64_t n, const SigmaThreshold& a, Engine engine);

}  // namespace rademacher::oracle
