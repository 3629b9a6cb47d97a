#include "rademacher/theorem.hpp"

#include <string_view>

namespace rademacher {

namespace {

constexpr unsigned kLimitScale = 10;                 // digits in the constant
constexpr unsigned long kLimitDigits = 6826894921UL;  // 0.6826894921 * 10^10

std::vector<BoundRow> make_rows() {
  const auto p = [](std::string_view text) { return DyadicProb::parse(text); };
  return {
      {"n=0", 0, 0, p("1"), p("1")},
      {"n=1", 1, 1, p("1"), p("1")},
      {"n=2", 2, 2, p("1/2"), p("1/2")},
      {"3-7", 3, 7, p("35/64"), p("7/8")},
      {"8-14", 8, 14, p("4719/8192"), p("105/128")},
      {"15-23", 15, 23, p("156009/262144"), p("25883/32768")},
      {"24+", 24, std::nullopt, p("156009/262144"), p("3231615/4194304")},
  };
}

// x * 10^10 - L * 2^e, the numerator of x - L over 2^e * 10^10.
mpz_class scaled_gap(const DyadicProb& x) {
  mpz_class ten;
  mpz_ui_pow_ui(ten.get_mpz_t(), 10, kLimitScale);
  mpz_class lhs = x.numerator().mpz() * ten;
  mpz_class rhs = kLimitDigits;
  mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(x.exponent()));
  return lhs - rhs;
}

}  // namespace

const std::vector<BoundRow>& bound_rows() {
  static const std::vector<BoundRow> rows = make_rows();
  return rows;
}

const BoundRow& bound_row(std::uint64_t n) {
  const auto& rows = bound_rows();
  for (const auto& row : rows) {
    if (n >= row.first_n && (!row.last_n || n <= *row.last_n)) return row;
  }
  return rows.back();
}

std::strong_ordering compare_to_normal_limit(const DyadicProb& x) {
  return sgn(scaled_gap(x)) <=> 0;
}

std::string gap_to_normal_limit(const DyadicProb& x, unsigned digits) {
  if (digits == 0 || digits > kMaxDecimalDigits)
    throw std::invalid_argument("digits must be in [1, 50]");
  const mpz_class gap = scaled_gap(x);
  const bool negative = sgn(gap) < 0;
  // |gap| * 10^digits / (2^e * 10^10), rounded half-even.
  mpz_class numer = abs(gap);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  numer *= scale;
  mpz_class denom;
  mpz_ui_pow_ui(denom.get_mpz_t(), 10, kLimitScale);
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<mp_bitcnt_t>(x.exponent()));
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), numer.get_mpz_t(), denom.get_mpz_t());
  const int c = cmp(mpz_class(2 * r), denom);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) ++q;
  mpz_class whole, frac;
  mpz_fdiv_qr(whole.get_mpz_t(), frac.get_mpz_t(), q.get_mpz_t(), scale.get_mpz_t());
  std::string f = frac.get_str();
  f.insert(0, digits - f.size(), '0');
  return std::string(negative && sgn(q) != 0 ? "-" : "") + whole.get_str() + "." + f;
}

}  // namespace rademacher
