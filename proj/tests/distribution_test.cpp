#include "doctest.h"
#include "test_oracles.hpp"

#include "rademacher/distribution.hpp"

using namespace rademacher;

TEST_CASE("SignSum support") {
  CHECK_THROWS_AS(SignSum(0), std::invalid_argument);
  const SignSum s(3);
  CHECK(s.supports(-3));
  CHECK(s.supports(1));
  CHECK_FALSE(s.supports(0));
  CHECK_FALSE(s.supports(5));
  CHECK(support(3) == std::vector<std::int64_t>{-3, -1, 1, 3});
  CHECK(support(2) == std::vector<std::int64_t>{-2, 0, 2});
}

TEST_CASE("SigmaThreshold parsing") {
  CHECK(SigmaThreshold::parse("1") == SigmaThreshold::one());
  CHECK(SigmaThreshold::parse("2/4") == SigmaThreshold(1, 2));
  CHECK(SigmaThreshold::parse("1.5") == SigmaThreshold(3, 2));
  CHECK(SigmaThreshold::parse("0.25") == SigmaThreshold(1, 4));
  CHECK(SigmaThreshold::parse("3/2").to_string() == "3/2");
  CHECK(SigmaThreshold(6, 3).p() == 2);
  CHECK_THROWS_AS(SigmaThreshold(1, 0), std::invalid_argument);
  CHECK_THROWS(SigmaThreshold::parse("-1"));
  CHECK_THROWS(SigmaThreshold::parse("abc"));
  CHECK_THROWS(SigmaThreshold::parse("1/0"));
}

TEST_CASE("pmf small cases") {
  CHECK(pmf(2, 0) == DyadicProb::half());
  CHECK(pmf(3, 1) == DyadicProb::parse("3/8"));
  CHECK(pmf(3, 0).is_zero());
  CHECK(pmf(3, 5).is_zero());
  CHECK(pmf(13, 3) == DyadicProb(BigCount{1287}, 13));  // binom(13, 8) = binom(13, 5)
}

TEST_CASE("pmf is normalized and symmetric for n <= 500") {
  for (std::uint64_t n = 1; n <= 500; ++n) {
    DyadicProb total;
    const auto n_i = static_cast<std::int64_t>(n);
    for (std::int64_t m = -n_i; m <= n_i; m += 2) {
      CHECK(pmf(n, m) == pmf(n, -m));
      total = dyadic_add(total, pmf(n, m));
    }
    CHECK(total == DyadicProb::one());
  }
}

TEST_CASE("central probabilities for small n") {
  const char* expected[] = {"1",        "1/2",       "3/4",         "7/8",         "5/8",
                            "25/32",    "35/64",     "91/128",      "105/128",     "21/32",
                            "99/128",   "627/1024",  "3003/4096",   "4719/8192",   "715/1024",
                            "25883/32768", "21879/32768", "24973/32768", "20995/32768",
                            "96577/131072"};
  for (std::uint64_t n = 1; n <= 20; ++n) {
    CAPTURE(n);
    CHECK(central_prob(n).to_fraction_text() == expected[n - 1]);
  }
  CHECK(central_prob_or_one(0) == DyadicProb::one());
  CHECK(central_prob(10, SigmaThreshold(2, 1)) == DyadicProb::parse("501/512"));
  CHECK(central_prob(9, SigmaThreshold(1, 2)) == DyadicProb::parse("63/128"));
  CHECK(central_prob(16, SigmaThreshold(3, 2)) == DyadicProb::parse("30251/32768"));
  CHECK(central_prob(7, SigmaThreshold(0, 1)).is_zero());
  CHECK(central_prob(8, SigmaThreshold(0, 1)) == pmf(8, 0));
}

TEST_CASE("central radius") {
  CHECK(central_radius(16, SigmaThreshold::one()) == 4);
  CHECK(central_radius(15, SigmaThreshold::one()) == 3);
  CHECK(central_radius(9, SigmaThreshold(1, 2)) == 1);
  CHECK(central_radius(16, SigmaThreshold(3, 2)) == 6);
  for (std::uint64_t n = 1; n < 3000; n += 7) {
    const std::uint64_t r = central_radius(n, SigmaThreshold::one());
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
}

TEST_CASE("interval probabilities match pmf sums") {
  for (std::uint64_t n = 1; n <= 60; ++n) {
    const auto n_i = static_cast<std::int64_t>(n);
    // [-sqrt n, floor(sqrt n) + 1) picks up the same points as |m| <= sqrt n
    const auto top = static_cast<std::int64_t>(isqrt(n)) + 1;
    const DyadicProb closed = interval_prob(n, SurdBound(0, -1, n), SurdBound::integer(top));
    CHECK(closed == central_prob(n));
    for (std::int64_t lo = -n_i - 1; lo <= n_i + 1; ++lo) {
      DyadicProb want;
      for (std::int64_t m = lo; m < lo + 3; ++m) want = dyadic_add(want, pmf(n, m));
      CHECK(interval_prob(n, SurdBound::integer(lo), SurdBound::integer(lo + 3)) == want);
    }
  }
  CHECK(interval_prob(5, SurdBound::integer(2), SurdBound::integer(2)).is_zero());
  CHECK(interval_prob(5, SurdBound::integer(3), SurdBound::integer(-3)).is_zero());
}

TEST_CASE("binomial reformulation agrees with the sign-sum view") {
  for (std::uint64_t n = 1; n <= 400; ++n) {
    CAPTURE(n);
    CHECK(binomial_range_prob(n, lower_one_sigma(n), upper_one_sigma(n)) == central_prob(n));
  }
  // P{T_2 = 1}
  CHECK(binomial_range_prob(2, BinomialBound::rational(1), BinomialBound::rational(1)) ==
        DyadicProb::half());
  CHECK(binomial_range_prob(4, BinomialBound::rational(0), BinomialBound::rational(4)) ==
        DyadicProb::one());
  CHECK(binomial_range_prob(4, BinomialBound::rational(3, 2), BinomialBound::rational(5, 2)) ==
        DyadicProb::parse("3/8"));
  CHECK_THROWS_AS(binomial_range_prob(4, {SurdBound::integer(0), 0}, BinomialBound::rational(1)),
                  std::invalid_argument);
}

TEST_CASE("central probability grows with the threshold") {
  const SigmaThreshold steps[] = {{0, 1}, {1, 4}, {1, 2}, {3, 4}, {1, 1}, {3, 2}, {2, 1}, {3, 1}};
  for (std::uint64_t n = 1; n <= 200; ++n) {
    DyadicProb prev;
    for (const auto& a : steps) {
      const DyadicProb cur = central_prob(n, a);
      CHECK(prev <= cur);
      prev = cur;
    }
  }
}

TEST_CASE("P_n is not monotone in n") {
  // a witness: 5 -> 6 rises, 6 -> 7 falls
  CHECK(central_prob(6) > central_prob(5));
  CHECK(central_prob(7) < central_prob(6));
  CHECK(central_prob(16) > central_prob(15));
}
