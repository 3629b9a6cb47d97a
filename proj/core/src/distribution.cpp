#include "rademacher/distribution.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace rademacher {

namespace {

bool parse_u64(std::string_view text, std::uint64_t& out) {
  if (text.empty()) return false;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool same_parity(std::int64_t m, std::uint64_t n) {
  return ((m % 2) + 2) % 2 == static_cast<std::int64_t>(n % 2);
}

}  // namespace

SignSum::SignSum(std::uint64_t n) : n_(n) {
  if (n == 0) throw std::invalid_argument("SignSum: n must be at least 1");
}

bool SignSum::supports(std::int64_t m) const {
  const auto n = static_cast<std::int64_t>(n_);
  return m >= -n && m <= n && same_parity(m, n_);
}

SigmaThreshold::SigmaThreshold(std::uint64_t p, std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("SigmaThreshold: zero denominator");
  const std::uint64_t g = std::gcd(p, q);
  p_ = p / g;
  q_ = q / g;
}

SigmaThreshold SigmaThreshold::parse(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("not a non-negative rational: '" + std::string(text) + "'");
  };
  std::uint64_t p = 0, q = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    if (!parse_u64(text.substr(0, slash), p) || !parse_u64(text.substr(slash + 1), q) || q == 0)
      throw bad();
    return {p, q};
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const auto whole = text.substr(0, dot);
    const auto frac = text.substr(dot + 1);
    std::uint64_t w = 0, f = 0;
    if ((whole.empty() && frac.empty()) || frac.size() > 18) throw bad();
    if (!whole.empty() && !parse_u64(whole, w)) throw bad();
    if (!frac.empty() && !parse_u64(frac, f)) throw bad();
    for (std::size_t i = 0; i < frac.size(); ++i) q *= 10;
    return {w * q + f, q};
  }
  if (!parse_u64(text, p)) throw bad();
  return {p, 1};
}

std::string SigmaThreshold::to_string() const {
  if (q_ == 1) return std::to_string(p_);
  return std::to_string(p_) + "/" + std::to_string(q_);
}

std::vector<std::int64_t> support(std::uint64_t n) {
  const SignSum sum(n);
  std::vector<std::int64_t> out;
  out.reserve(n + 1);
  for (auto m = -static_cast<std::int64_t>(n); m <= static_cast<std::int64_t>(n); m += 2)
    out.push_back(m);
  return out;
}

DyadicProb pmf(std::uint64_t n, std::int64_t m) {
  const SignSum sum(n);
  if (!sum.supports(m)) return {};
  const auto t = (static_cast<std::int64_t>(n) + m) / 2;
  return {binomial(n, t), n};
}

DyadicProb interval_prob(std::uint64_t n, const SurdBound& lo, const SurdBound& hi) {
  const SignSum sum(n);
  const auto sn = static_cast<std::int64_t>(n);
  const std::int64_t first = std::max(lo.floor(), -sn);
  const std::int64_t last = std::min(hi.floor(), sn);
  DyadicProb total;
  for (std::int64_t z = first; z <= last; ++z) {
    if (sum.supports(z) && in_half_open(z, lo, hi)) total = dyadic_add(total, pmf(n, z));
  }
  return total;
}

std::uint64_t central_radius(std::uint64_t n, const SigmaThreshold& a) {
  // floor(sqrt(p^2 n) / q) == floor(isqrt(p^2 n) / q)
  mpz_class x = a.p();
  x *= a.p();
  x *= static_cast<unsigned long>(n);
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  r /= static_cast<unsigned long>(a.q());
  return std::min<std::uint64_t>(r.get_ui(), n);
}

DyadicProb central_prob(std::uint64_t n, const SigmaThreshold& a) {
  const SignSum sum(n);
  std::uint64_t radius = central_radius(n, a);
  if (radius % 2 != n % 2) {
    if (radius == 0) return {};
    --radius;
  }
  // t = (n + m) / 2 runs over [(n - radius)/2, (n + radius)/2].
  const std::uint64_t t_lo = (n - radius) / 2;
  const std::uint64_t t_hi = (n + radius) / 2;
  mpz_class term = binomial(n, static_cast<std::int64_t>(t_lo)).mpz();
  mpz_class total = term;
  for (std::uint64_t t = t_lo; t < t_hi; ++t) {
    mpz_mul_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(n - t));
    mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(t + 1));
    total += term;
  }
  return {BigCount{std::move(total)}, n};
}

DyadicProb central_prob_or_one(std::uint64_t n, const SigmaThreshold& a) {
  if (n == 0) return DyadicProb::one();
  return central_prob(n, a);
}

DyadicProb binomial_range_prob(std::uint64_t n, const BinomialBound& lo, const BinomialBound& hi) {
  const SignSum sum(n);
  if (lo.denominator == 0 || hi.denominator == 0)
    throw std::invalid_argument("binomial_range_prob: zero denominator");
  const auto sn = static_cast<std::int64_t>(n);

  // d*t >= c + s*sqrt(r) with t = (m + n)/2  <=>  d*m >= 2c - d*n + s*sqrt(4r)
  const auto to_sign_scale = [&](const BinomialBound& b) {
    const auto d = static_cast<std::int64_t>(b.denominator);
    return SurdBound(2 * b.numerator.shift() - d * sn, b.numerator.radical_sign(),
                     4 * b.numerator.radicand());
  };
  const SurdBound lo_s = to_sign_scale(lo);
  const SurdBound hi_s = to_sign_scale(hi);
  const auto dlo = static_cast<std::int64_t>(lo.denominator);
  const auto dhi = static_cast<std::int64_t>(hi.denominator);

  const std::int64_t first = std::max(floor_div(lo_s.floor(), dlo), -sn);
  const std::int64_t last = std::min(floor_div(hi_s.floor(), dhi) + 1, sn);
  DyadicProb total;
  for (std::int64_t m = first; m <= last; ++m) {
    if (!sum.supports(m)) continue;
    if (cmp_int_surd(dlo * m, lo_s) == std::strong_ordering::less) continue;
    if (cmp_int_surd(dhi * m, hi_s) == std::strong_ordering::greater) continue;
    total = dyadic_add(total, pmf(n, m));
  }
  return total;
}

BinomialBound lower_one_sigma(std::uint64_t n) {
  return {SurdBound(static_cast<std::int64_t>(n), -1, n), 2};
}

BinomialBound upper_one_sigma(std::uint64_t n) {
  return {SurdBound(static_cast<std::int64_t>(n), +1, n), 2};
}

}  // namespace rademacher
