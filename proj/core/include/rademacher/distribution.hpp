#pragma once

// Exact law of S_n = e_1 + ... + e_n for independent fair signs, and of the
// Binomial(n, 1/2) count T_n = (S_n + n) / 2.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rademacher/exactnum.hpp"

namespace rademacher {

/// Number of summands; always at least one.
class SignSum {
 public:
  explicit SignSum(std::uint64_t n);
  [[nodiscard]] std::uint64_t size() const { return n_; }
  /// Whether m is a value of S_n with positive probability.
  [[nodiscard]] bool supports(std::int64_t m) const;

 private:
  std::uint64_t n_;
};

/// Non-negative rational number of standard deviations, kept reduced.
class SigmaThreshold {
 public:
  SigmaThreshold() = default;
  /// Throws std::invalid_argument when q == 0.
  SigmaThreshold(std::uint64_t p, std::uint64_t q);

  /// Parses "p", "p/q" or a finite decimal such as "1.5".
  static SigmaThreshold parse(std::string_view text);
  static SigmaThreshold one() { return {1, 1}; }

  [[nodiscard]] std::uint64_t p() const { return p_; }
  [[nodiscard]] std::uint64_t q() const { return q_; }
  [[nodiscard]] bool is_one() const { return p_ == 1 && q_ == 1; }
  [[nodiscard]] double approx() const { return static_cast<double>(p_) / static_cast<double>(q_); }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SigmaThreshold&, const SigmaThreshold&) = default;

 private:
  std::uint64_t p_ = 1;
  std::uint64_t q_ = 1;
};

/// Values of S_n with positive probability, increasing.
std::vector<std::int64_t> support(std::uint64_t n);

/// P{S_n = m}; exact zero off the support.
DyadicProb pmf(std::uint64_t n, std::int64_t m);

/// P{lo <= S_n < hi}.
DyadicProb interval_prob(std::uint64_t n, const SurdBound& lo, const SurdBound& hi);
inline DyadicProb interval_prob(std::uint64_t n, const HalfOpenInterval& interval) {
  return interval_prob(n, interval.lo, interval.hi);
}

/// Largest M >= 0 with q^2 M^2 <= p^2 n, i.e. the cut-off of |m| <= a sqrt(n).
std::uint64_t central_radius(std::uint64_t n, const SigmaThreshold& a);

/// P{|S_n| <= a sqrt(n)}, both ends closed.
DyadicProb central_prob(std::uint64_t n, const SigmaThreshold& a = SigmaThreshold::one());

/// P_n with the convention P_0 = 1.
DyadicProb central_prob_or_one(std::uint64_t n, const SigmaThreshold& a = SigmaThreshold::one());

/// Endpoint (shift + sign*sqrt(radicand)) / denominator for a Binomial count.
struct BinomialBound {
  SurdBound numerator;
  std::uint64_t denominator = 1;

  static BinomialBound rational(std::int64_t p, std::uint64_t q = 1) {
    return {SurdBound::integer(p), q};
  }
};

/// P{lo <= T_n <= hi} for T_n ~ Binomial(n, 1/2). Endpoints are moved to the
/// S_n scale through m = 2t - n, so surd endpoints stay exact.
DyadicProb binomial_range_prob(std::uint64_t n, const BinomialBound& lo, const BinomialBound& hi);

/// The two endpoints (n -/+ sqrt(n)) / 2.
BinomialBound lower_one_sigma(std::uint64_t n);
BinomialBound upper_one_sigma(std::uint64_t n);

}  // namespace rademacher
