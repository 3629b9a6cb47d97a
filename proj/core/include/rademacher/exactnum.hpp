#pragma once

// Exact arithmetic for Rademacher-sum probabilities.
//
// Every probability that appears when summing fair signs has a power-of-two
// denominator, so the value types here are dyadic: numerator / 2^exponent.
// Interval endpoints of the form c + s*sqrt(m) are kept symbolic and compared
// with integers by squaring, never through floating point.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rademacher {

/// Raised when a sum of probabilities would exceed one.
class OverflowAboveOne : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when a quantity that must be dyadic fails to reduce to one.
class DivisibilityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when a structural invariant of a computed object fails.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// ---------------------------------------------------------------------------
// BigCount

/// Arbitrary-precision non-negative integer.
class BigCount {
 public:
  BigCount() = default;
  BigCount(std::uint64_t value);  // NOLINT(google-explicit-constructor)
  /// Throws std::invalid_argument for negative values.
  explicit BigCount(mpz_class value);

  static BigCount parse(std::string_view decimal);
  static BigCount pow2(std::uint64_t exponent);

  BigCount& operator+=(const BigCount& other);
  BigCount& operator*=(const BigCount& other);
  friend BigCount operator+(BigCount lhs, const BigCount& rhs) { return lhs += rhs; }
  friend BigCount operator*(BigCount lhs, const BigCount& rhs) { return lhs *= rhs; }

  [[nodiscard]] BigCount shifted_left(std::uint64_t bits) const;

  [[nodiscard]] bool is_zero() const { return sgn(value_) == 0; }
  [[nodiscard]] bool is_odd() const { return mpz_odd_p(value_.get_mpz_t()) != 0; }
  [[nodiscard]] std::size_t bit_length() const;
  [[nodiscard]] std::string to_string() const { return value_.get_str(); }
  [[nodiscard]] const mpz_class& mpz() const { return value_; }

  friend bool operator==(const BigCount& a, const BigCount& b) {
    return cmp(a.value_, b.value_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigCount& a, const BigCount& b) {
    return cmp(a.value_, b.value_) <=> 0;
  }

 private:
  mpz_class value_{0};
};

// ---------------------------------------------------------------------------
// DyadicProb / SignedDyadic

/// Exact probability numerator / 2^exponent in [0, 1].
///
/// Values are kept at whatever exponent the producing computation used;
/// normalized() reduces to an odd numerator (or 0/2^0). Equality and ordering
/// compare values, not representations.
class DyadicProb {
 public:
  DyadicProb() = default;
  /// Throws OverflowAboveOne when numerator > 2^exponent.
  DyadicProb(BigCount numerator, std::uint64_t exponent);

  static DyadicProb zero() { return {}; }
  static DyadicProb one() { return {BigCount{1}, 0}; }
  static DyadicProb half() { return {BigCount{1}, 1}; }

  /// Accepts "p/q" with q a power of two, "p/2^e", or a bare "0" / "1".
  static DyadicProb parse(std::string_view text);

  [[nodiscard]] const BigCount& numerator() const { return numerator_; }
  [[nodiscard]] std::uint64_t exponent() const { return exponent_; }
  [[nodiscard]] bool is_zero() const { return numerator_.is_zero(); }

  [[nodiscard]] DyadicProb normalized() const;
  /// Same value over 2^exponent; exponent must not be below the current one.
  [[nodiscard]] DyadicProb with_exponent(std::uint64_t exponent) const;

  /// "numerator/2^exponent" in the stored representation.
  [[nodiscard]] std::string to_dyadic_text() const;
  /// Reduced "p/q"; "0" and "1" for the endpoints.
  [[nodiscard]] std::string to_fraction_text() const;

  friend bool operator==(const DyadicProb& a, const DyadicProb& b);
  friend std::strong_ordering operator<=>(const DyadicProb& a, const DyadicProb& b);

 private:
  BigCount numerator_;
  std::uint64_t exponent_ = 0;
};

enum class Sign : int { kNegative = -1, kZero = 0, kPositive = 1 };

/// Signed dyadic value with |value| <= 1; sign is kZero iff magnitude is zero.
class SignedDyadic {
 public:
  SignedDyadic() = default;
  explicit SignedDyadic(DyadicProb magnitude);
  /// Throws std::invalid_argument if sign and magnitude disagree about zero.
  SignedDyadic(Sign sign, DyadicProb magnitude);

  [[nodiscard]] Sign sign() const { return sign_; }
  [[nodiscard]] const DyadicProb& magnitude() const { return magnitude_; }
  [[nodiscard]] bool is_zero() const { return sign_ == Sign::kZero; }
  [[nodiscard]] bool is_negative() const { return sign_ == Sign::kNegative; }

  [[nodiscard]] SignedDyadic negated() const;
  /// Multiplies by a non-negative integer; throws OverflowAboveOne past one.
  [[nodiscard]] SignedDyadic scaled(std::uint64_t factor) const;
  /// Throws std::domain_error for negative values.
  [[nodiscard]] DyadicProb to_probability() const;

  /// "+p/q", "-p/q" or "0".
  [[nodiscard]] std::string to_fraction_text() const;
  static SignedDyadic parse(std::string_view text);

  friend SignedDyadic operator+(const SignedDyadic& a, const SignedDyadic& b);
  friend SignedDyadic operator-(const SignedDyadic& a, const SignedDyadic& b) {
    return a + b.negated();
  }
  friend bool operator==(const SignedDyadic& a, const SignedDyadic& b);
  friend std::strong_ordering operator<=>(const SignedDyadic& a, const SignedDyadic& b);

 private:
  Sign sign_ = Sign::kZero;
  DyadicProb magnitude_;
};

/// Exact sum; throws OverflowAboveOne if the result exceeds one.
DyadicProb dyadic_add(const DyadicProb& x, const DyadicProb& y);
/// Exact signed difference x - y.
SignedDyadic dyadic_sub(const DyadicProb& x, const DyadicProb& y);

inline constexpr unsigned kMaxDecimalDigits = 50;

/// Round-half-even decimal expansion with `digits` places after the point.
std::string to_decimal_string(const DyadicProb& x, unsigned digits);
std::string to_decimal_string(const SignedDyadic& x, unsigned digits);

// ---------------------------------------------------------------------------
// Quadratic surd bounds

/// The real number shift + radical_sign * sqrt(radicand).
class SurdBound {
 public:
  SurdBound() = default;
  /// radical_sign must be -1, 0 or +1.
  SurdBound(std::int64_t shift, int radical_sign, std::uint64_t radicand);

  static SurdBound integer(std::int64_t value) { return {value, 0, 0}; }

  [[nodiscard]] std::int64_t shift() const { return shift_; }
  [[nodiscard]] int radical_sign() const { return radical_sign_; }
  [[nodiscard]] std::uint64_t radicand() const { return radicand_; }

  /// Greatest integer not above the value, computed exactly.
  [[nodiscard]] std::int64_t floor() const;
  /// For display only.
  [[nodiscard]] double approx() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const SurdBound&, const SurdBound&) = default;

 private:
  std::int64_t shift_ = 0;
  int radical_sign_ = 0;
  std::uint64_t radicand_ = 0;
};

/// Exact three-way comparison of z against b.
std::strong_ordering cmp_int_surd(std::int64_t z, const SurdBound& b);

/// lo <= z < hi.
bool in_half_open(std::int64_t z, const SurdBound& lo, const SurdBound& hi);

/// Half-open interval [lo, hi) with surd endpoints.
struct HalfOpenInterval {
  SurdBound lo;
  SurdBound hi;

  [[nodiscard]] bool contains(std::int64_t z) const { return in_half_open(z, lo, hi); }
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const HalfOpenInterval&, const HalfOpenInterval&) = default;
};

std::uint64_t isqrt(std::uint64_t value);
std::uint64_t ceil_sqrt(std::uint64_t value);

// ---------------------------------------------------------------------------
// Binomial coefficients

/// binom(n, j); zero outside 0 <= j <= n.
BigCount binomial(std::uint64_t n, std::int64_t j);

/// binom(n, j) by the running product n(n-1)...(n-j+1)/j!, one exact
/// division per factor. Kept as the reference kernel for benchmarks.
BigCount binomial_running_product(std::uint64_t n, std::int64_t j);

/// Walks binom(n, j) along n -> n+1 with j -> j or j+1, one multiply and one
/// exact division per step. seek() walks forward when the target is a few
/// steps ahead and falls back to a fresh binomial otherwise.
class BinomialWalker {
 public:
  BinomialWalker(std::uint64_t n, std::uint64_t j);

  [[nodiscard]] std::uint64_t n() const { return n_; }
  [[nodiscard]] std::uint64_t j() const { return j_; }
  [[nodiscard]] const BigCount& value() const { return value_; }

  /// binom(n+1, j) or binom(n+1, j+1).
  void step(bool raise_j);
  const BigCount& seek(std::uint64_t n, std::uint64_t j);

 private:
  std::uint64_t n_;
  std::uint64_t j_;
  BigCount value_;
};

/// Full row binom(n, 0..n).
std::vector<BigCount> pascal_row(std::uint64_t n);

/// Memoized Pascal rows for sweeps that read many coefficients of one n.
/// Concurrent readers are safe; rows are immutable once published.
class PascalRowCache {
 public:
  using Row = std::shared_ptr<const std::vector<BigCount>>;

  Row row(std::uint64_t n);
  [[nodiscard]] BigCount coefficient(std::uint64_t n, std::int64_t j);
  [[nodiscard]] std::size_t size() const;
  void clear();

 private:
  mutable std::shared_mutex mutex_;
  std::unordered_map<std::uint64_t, Row> rows_;
};

}  // namespace rademacher
