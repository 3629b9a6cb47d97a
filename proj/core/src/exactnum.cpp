#include "rademacher/exactnum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <mutex>
#include <sstream>

namespace rademacher {

namespace {

mpz_class pow2_mpz(std::uint64_t exponent) {
  mpz_class out;
  mpz_setbit(out.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
  return out;
}

mpz_class shl(const mpz_class& value, std::uint64_t bits) {
  mpz_class out;
  mpz_mul_2exp(out.get_mpz_t(), value.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  return out;
}

mpz_class from_int64(std::int64_t v) {
  mpz_class out;
  mpz_set_si(out.get_mpz_t(), static_cast<long>(v));
  return out;
}

mpz_class from_uint64(std::uint64_t v) {
  mpz_class out;
  mpz_set_ui(out.get_mpz_t(), static_cast<unsigned long>(v));
  return out;
}

bool parse_u64(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

// Both values at the larger exponent; returns that exponent.
std::uint64_t align(const DyadicProb& x, const DyadicProb& y, mpz_class& xn, mpz_class& yn) {
  const std::uint64_t e = std::max(x.exponent(), y.exponent());
  xn = shl(x.numerator().mpz(), e - x.exponent());
  yn = shl(y.numerator().mpz(), e - y.exponent());
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// BigCount

BigCount::BigCount(std::uint64_t value) : value_(from_uint64(value)) {}

BigCount::BigCount(mpz_class value) : value_(std::move(value)) {
  if (sgn(value_) < 0) throw std::invalid_argument("BigCount: negative value");
}

BigCount BigCount::parse(std::string_view decimal) {
  decimal = trim(decimal);
  if (decimal.empty() ||
      !std::all_of(decimal.begin(), decimal.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw std::invalid_argument("BigCount: not a non-negative decimal integer: '" +
                                std::string(decimal) + "'");
  return BigCount{mpz_class(std::string(decimal), 10)};
}

BigCount BigCount::pow2(std::uint64_t exponent) { return BigCount{pow2_mpz(exponent)}; }

BigCount& BigCount::operator+=(const BigCount& other) {
  value_ += other.value_;
  return *this;
}

BigCount& BigCount::operator*=(const BigCount& other) {
  value_ *= other.value_;
  return *this;
}

BigCount BigCount::shifted_left(std::uint64_t bits) const { return BigCount{shl(value_, bits)}; }

std::size_t BigCount::bit_length() const {
  if (is_zero()) return 0;
  return mpz_sizeinbase(value_.get_mpz_t(), 2);
}

// ---------------------------------------------------------------------------
// DyadicProb

DyadicProb::DyadicProb(BigCount numerator, std::uint64_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  if (numerator_.bit_length() > exponent_ + 1 ||
      cmp(numerator_.mpz(), pow2_mpz(exponent_)) > 0)
    throw OverflowAboveOne("dyadic value " + numerator_.to_string() + "/2^" +
                           std::to_string(exponent_) + " exceeds one");
}

DyadicProb DyadicProb::normalized() const {
  if (is_zero()) return {};
  const auto tz = mpz_scan1(numerator_.mpz().get_mpz_t(), 0);
  const std::uint64_t drop = std::min<std::uint64_t>(tz, exponent_);
  mpz_class n;
  mpz_fdiv_q_2exp(n.get_mpz_t(), numerator_.mpz().get_mpz_t(), static_cast<mp_bitcnt_t>(drop));
  return {BigCount{std::move(n)}, exponent_ - drop};
}

DyadicProb DyadicProb::with_exponent(std::uint64_t exponent) const {
  if (exponent < exponent_) return normalized().with_exponent(exponent);
  return {numerator_.shifted_left(exponent - exponent_), exponent};
}

std::string DyadicProb::to_dyadic_text() const {
  return numerator_.to_string() + "/2^" + std::to_string(exponent_);
}

std::string DyadicProb::to_fraction_text() const {
  const DyadicProb r = normalized();
  if (r.exponent_ == 0) return r.numerator_.to_string();
  return r.numerator_.to_string() + "/" + pow2_mpz(r.exponent_).get_str();
}

DyadicProb DyadicProb::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    BigCount n = BigCount::parse(text);
    return {std::move(n), 0};
  }
  BigCount numerator = BigCount::parse(text.substr(0, slash));
  std::string_view denom = trim(text.substr(slash + 1));
  if (denom.starts_with("2^")) {
    std::uint64_t e = 0;
    if (!parse_u64(denom.substr(2), e))
      throw std::invalid_argument("DyadicProb: bad exponent in '" + std::string(text) + "'");
    return {std::move(numerator), e};
  }
  const BigCount q = BigCount::parse(denom);
  if (q.is_zero() || mpz_popcount(q.mpz().get_mpz_t()) != 1)
    throw std::invalid_argument("DyadicProb: denominator is not a power of two in '" +
                                std::string(text) + "'");
  return {std::move(numerator), q.bit_length() - 1};
}

bool operator==(const DyadicProb& a, const DyadicProb& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const DyadicProb& a, const DyadicProb& b) {
  mpz_class an, bn;
  align(a, b, an, bn);
  return cmp(an, bn) <=> 0;
}

DyadicProb dyadic_add(const DyadicProb& x, const DyadicProb& y) {
  mpz_class xn, yn;
  const auto e = align(x, y, xn, yn);
  return {BigCount{mpz_class(xn + yn)}, e};
}

SignedDyadic dyadic_sub(const DyadicProb& x, const DyadicProb& y) {
  mpz_class xn, yn;
  const auto e = align(x, y, xn, yn);
  mpz_class d = xn - yn;
  const int s = sgn(d);
  if (s == 0) return {};
  mpz_class mag = abs(d);
  return {s > 0 ? Sign::kPositive : Sign::kNegative, DyadicProb{BigCount{std::move(mag)}, e}};
}

// ---------------------------------------------------------------------------
// SignedDyadic

SignedDyadic::SignedDyadic(DyadicProb magnitude)
    : sign_(magnitude.is_zero() ? Sign::kZero : Sign::kPositive), magnitude_(std::move(magnitude)) {}

SignedDyadic::SignedDyadic(Sign sign, DyadicProb magnitude)
    : sign_(sign), magnitude_(std::move(magnitude)) {
  if ((sign_ == Sign::kZero) != magnitude_.is_zero())
    throw std::invalid_argument("SignedDyadic: sign is zero iff magnitude is zero");
}

SignedDyadic SignedDyadic::negated() const {
  return {static_cast<Sign>(-static_cast<int>(sign_)), magnitude_};
}

SignedDyadic SignedDyadic::scaled(std::uint64_t factor) const {
  if (factor == 0 || is_zero()) return {};
  mpz_class n = magnitude_.numerator().mpz() * from_uint64(factor);
  return {sign_, DyadicProb{BigCount{std::move(n)}, magnitude_.exponent()}};
}

DyadicProb SignedDyadic::to_probability() const {
  if (is_negative())
    throw std::domain_error("negative value " + to_fraction_text() + " is not a probability");
  return magnitude_;
}

std::string SignedDyadic::to_fraction_text() const {
  switch (sign_) {
    case Sign::kZero: return "0";
    case Sign::kPositive: return "+" + magnitude_.to_fraction_text();
    case Sign::kNegative: return "-" + magnitude_.to_fraction_text();
  }
  return "0";
}

SignedDyadic SignedDyadic::parse(std::string_view text) {
  text = trim(text);
  Sign sign = Sign::kPositive;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    if (text.front() == '-') sign = Sign::kNegative;
    text.remove_prefix(1);
  }
  DyadicProb mag = DyadicProb::parse(text);
  if (mag.is_zero()) return {};
  return {sign, std::move(mag)};
}

SignedDyadic operator+(const SignedDyadic& a, const SignedDyadic& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.sign_ == b.sign_) return {a.sign_, dyadic_add(a.magnitude_, b.magnitude_)};
  SignedDyadic d = dyadic_sub(a.magnitude_, b.magnitude_);
  return a.sign_ == Sign::kPositive ? d : d.negated();
}

bool operator==(const SignedDyadic& a, const SignedDyadic& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const SignedDyadic& a, const SignedDyadic& b) {
  if (a.sign_ != b.sign_) return static_cast<int>(a.sign_) <=> static_cast<int>(b.sign_);
  const auto by_magnitude = a.magnitude_ <=> b.magnitude_;
  if (a.sign_ == Sign::kNegative) return 0 <=> by_magnitude;
  return by_magnitude;
}

// ---------------------------------------------------------------------------
// Decimal rendering

namespace {

std::string render_decimal(const DyadicProb& x, unsigned digits, bool negative) {
  if (digits == 0 || digits > kMaxDecimalDigits)
    throw std::invalid_argument("digits must be in [1, " + std::to_string(kMaxDecimalDigits) +
                                "]");
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const mpz_class scaled = x.numerator().mpz() * scale;
  const auto e = static_cast<mp_bitcnt_t>(x.exponent());
  mpz_class q, r;
  mpz_fdiv_q_2exp(q.get_mpz_t(), scaled.get_mpz_t(), e);
  mpz_fdiv_r_2exp(r.get_mpz_t(), scaled.get_mpz_t(), e);
  if (e > 0) {
    const mpz_class half = pow2_mpz(e - 1);
    const int c = cmp(r, half);
    if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  }
  mpz_class whole, frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), q.get_mpz_t(), scale.get_mpz_t());
  std::string f = frac.get_str();
  f.insert(0, digits - f.size(), '0');
  std::string out = (negative && sgn(q) != 0) ? "-" : "";
  return out + whole.get_str() + "." + f;
}

}  // namespace

std::string to_decimal_string(const DyadicProb& x, unsigned digits) {
  return render_decimal(x, digits, false);
}

std::string to_decimal_string(const SignedDyadic& x, unsigned digits) {
  return render_decimal(x.magnitude(), digits, x.is_negative());
}

// ---------------------------------------------------------------------------
// Surd bounds

std::uint64_t isqrt(std::uint64_t value) {
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), from_uint64(value).get_mpz_t());
  return r.get_ui();
}

std::uint64_t ceil_sqrt(std::uint64_t value) {
  const std::uint64_t r = isqrt(value);
  const mpz_class square = from_uint64(r) * from_uint64(r);
  return square == from_uint64(value) ? r : r + 1;
}

SurdBound::SurdBound(std::int64_t shift, int radical_sign, std::uint64_t radicand)
    : shift_(shift), radical_sign_(radical_sign), radicand_(radicand) {
  if (radical_sign < -1 || radical_sign > 1)
    throw std::invalid_argument("SurdBound: radical sign must be -1, 0 or +1");
}

std::int64_t SurdBound::floor() const {
  if (radical_sign_ == 0 || radicand_ == 0) return shift_;
  if (radical_sign_ > 0) return shift_ + static_cast<std::int64_t>(isqrt(radicand_));
  return shift_ - static_cast<std::int64_t>(ceil_sqrt(radicand_));
}

double SurdBound::approx() const {
  return static_cast<double>(shift_) +
         radical_sign_ * std::sqrt(static_cast<double>(radicand_));
}

std::string SurdBound::to_string() const {
  std::ostringstream os;
  const bool has_radical = radical_sign_ != 0 && radicand_ != 0;
  if (!has_radical) {
    os << shift_;
    return os.str();
  }
  if (shift_ != 0) os << shift_ << (radical_sign_ > 0 ? "+" : "-");
  else if (radical_sign_ < 0) os << "-";
  os << "sqrt(" << radicand_ << ")";
  return os.str();
}

std::string HalfOpenInterval::to_string() const {
  return "[" + lo.to_string() + ", " + hi.to_string() + ")";
}

std::strong_ordering cmp_int_surd(std::int64_t z, const SurdBound& b) {
  const mpz_class d = from_int64(z) - from_int64(b.shift());
  const int ds = sgn(d);
  if (b.radical_sign() == 0 || b.radicand() == 0) return ds <=> 0;
  const mpz_class m = from_uint64(b.radicand());
  if (b.radical_sign() > 0) {
    // d vs +sqrt(m), m > 0
    if (ds <= 0) return std::strong_ordering::less;
    return cmp(mpz_class(d * d), m) <=> 0;
  }
  // d vs -sqrt(m), m > 0
  if (ds >= 0) return std::strong_ordering::greater;
  return 0 <=> cmp(mpz_class(d * d), m);
}

bool in_half_open(std::int64_t z, const SurdBound& lo, const SurdBound& hi) {
  return cmp_int_surd(z, lo) != std::strong_ordering::less &&
         cmp_int_surd(z, hi) == std::strong_ordering::less;
}

// ---------------------------------------------------------------------------
// Binomials

namespace {

constexpr std::uint64_t kRunningProductCutoff = 48;

// lo * (lo+1) * ... * hi, balanced so that large products hit GMP's
// subquadratic multiplication.
mpz_class range_product(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return 1;
  if (hi - lo < 16) {
    mpz_class acc = static_cast<unsigned long>(lo);
    for (std::uint64_t v = lo + 1; v <= hi; ++v)
      mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(v));
    return acc;
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  return range_product(lo, mid) * range_product(mid + 1, hi);
}

}  // namespace

BigCount binomial_running_product(std::uint64_t n, std::int64_t j) {
  if (j < 0 || static_cast<std::uint64_t>(j) > n) return BigCount{0};
  const std::uint64_t r = std::min<std::uint64_t>(static_cast<std::uint64_t>(j),
                                                  n - static_cast<std::uint64_t>(j));
  mpz_class acc = 1;
  // acc == binom(n - r + i, i) after step i, so every division is exact.
  for (std::uint64_t i = 1; i <= r; ++i) {
    mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n - r + i));
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(i));
  }
  return BigCount{std::move(acc)};
}

BigCount binomial(std::uint64_t n, std::int64_t j) {
  if (j < 0 || static_cast<std::uint64_t>(j) > n) return BigCount{0};
  const std::uint64_t r = std::min<std::uint64_t>(static_cast<std::uint64_t>(j),
                                                  n - static_cast<std::uint64_t>(j));
  if (r < kRunningProductCutoff) return binomial_running_product(n, static_cast<std::int64_t>(r));
  mpz_class numer = range_product(n - r + 1, n);
  const mpz_class denom = range_product(1, r);
  mpz_divexact(numer.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
  return BigCount{std::move(numer)};
}

BinomialWalker::BinomialWalker(std::uint64_t n, std::uint64_t j)
    : n_(n), j_(j), value_(binomial(n, static_cast<std::int64_t>(j))) {
  if (j > n) throw std::invalid_argument("BinomialWalker: j > n");
}

void BinomialWalker::step(bool raise_j) {
  mpz_class v = value_.mpz();
  // binom(n+1, j) = binom(n, j) (n+1)/(n+1-j);  binom(n+1, j+1) = binom(n, j) (n+1)/(j+1)
  mpz_mul_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(n_ + 1));
  const std::uint64_t divisor = raise_j ? j_ + 1 : n_ + 1 - j_;
  mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(divisor));
  value_ = BigCount{std::move(v)};
  ++n_;
  if (raise_j) ++j_;
}

const BigCount& BinomialWalker::seek(std::uint64_t n, std::uint64_t j) {
  if (n == n_ && j == j_) return value_;
  // Short forward walks are cheaper than a fresh coefficient.
  constexpr std::uint64_t kMaxWalk = 8;
  if (n > n_ && n - n_ <= kMaxWalk && j >= j_ && j - j_ <= n - n_) {
    for (std::uint64_t raises = j - j_; n_ < n;) {
      const bool raise = raises > 0;
      step(raise);
      if (raise) --raises;
    }
    return value_;
  }
  if (j > n) throw std::invalid_argument("BinomialWalker: j > n");
  n_ = n;
  j_ = j;
  value_ = binomial(n, static_cast<std::int64_t>(j));
  return value_;
}

std::vector<BigCount> pascal_row(std::uint64_t n) {
  std::vector<BigCount> row;
  row.reserve(n + 1);
  mpz_class acc = 1;
  row.emplace_back(acc);
  for (std::uint64_t j = 0; j < n; ++j) {
    mpz_mul_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(n - j));
    mpz_divexact_ui(acc.get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(j + 1));
    row.emplace_back(acc);
  }
  return row;
}

PascalRowCache::Row PascalRowCache::row(std::uint64_t n) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = rows_.find(n); it != rows_.end()) return it->second;
  }
  auto built = std::make_shared<const std::vector<BigCount>>(pascal_row(n));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = rows_.emplace(n, std::move(built));
  return it->second;
}

BigCount PascalRowCache::coefficient(std::uint64_t n, std::int64_t j) {
  if (j < 0 || static_cast<std::uint64_t>(j) > n) return BigCount{0};
  return (*row(n))[static_cast<std::size_t>(j)];
}

std::size_t PascalRowCache::size() const {
  std::shared_lock lock(mutex_);
  return rows_.size();
}

void PascalRowCache::clear() {
  std::unique_lock lock(mutex_);
  rows_.clear();
}

}  // namespace rademacher
