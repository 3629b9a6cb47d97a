#include "doctest.h"

#include "rademacher/blocks.hpp"
#include "rademacher/distribution.hpp"
#include "rademacher/theorem.hpp"

using namespace rademacher;

TEST_CASE("block membership") {
  CHECK(block_of(3) == 2);
  CHECK(block_of(7) == 2);
  CHECK(block_of(8) == 3);
  CHECK(block_of(14) == 3);
  CHECK(block_of(15) == 4);
  for (std::uint64_t k = 1; k <= 60; ++k) {
    const Block b = build_block(k);
    REQUIRE(b.members.size() == 2 * k + 1);
    CHECK(b.members.front() == k * k - 1);
    CHECK(b.members.back() == (k + 1) * (k + 1) - 2);
    CHECK(b.sub1.size() == k);
    CHECK(b.sub2.size() == k + 1);
    CHECK(b.sub1.front() == k * k);
    CHECK(b.sub2.front() == k * k - 1);
    for (auto n : b.members) CHECK(block_of(n) == k);
  }
  CHECK(build_block(2).sub1 == std::vector<std::uint64_t>{4, 6});
  CHECK(build_block(2).sub2 == std::vector<std::uint64_t>{3, 5, 7});
  CHECK_THROWS_AS(build_block(0), std::invalid_argument);
}

TEST_CASE("step classification for small n") {
  struct Row { std::uint64_t n; StepSide side; std::int64_t hit; const char* inc; };
  const Row rows[] = {
      {3, StepSide::kA, -2, "+1/4"},   {4, StepSide::kA, -3, "+1/8"},
      {5, StepSide::kB, -2, "-1/4"},   {6, StepSide::kA, -3, "+5/32"},
      {7, StepSide::kB, -2, "-15/64"}, {8, StepSide::kA, -3, "+21/128"},
  };
  for (const auto& r : rows) {
    CAPTURE(r.n);
    const auto s = classify_step(r.n);
    CHECK(s.hit_side == r.side);
    CHECK(s.hit_integer == r.hit);
    CHECK(s.increment.to_fraction_text() == r.inc);
  }
  CHECK_THROWS_AS(classify_step(2), std::invalid_argument);
  CHECK(std::string(to_string(StepSide::kA)) == "A");
  CHECK(std::string(to_string(StepSide::kB)) == "B");
}

TEST_CASE("step consistency, side pattern and exclusivity up to 2000") {
  DyadicProb prev = central_prob(2);
  for (std::uint64_t n = 3; n <= 2000; ++n) {
    CAPTURE(n);
    const auto s = classify_step(n);
    const DyadicProb cur = central_prob(n);
    CHECK((SignedDyadic(prev) + s.increment) == SignedDyadic(cur));

    const std::uint64_t k = block_of(n);
    const bool expect_a = n == k * k - 1 || (n >= k * k && (n - k * k) % 2 == 0);
    CHECK((s.hit_side == StepSide::kA) == expect_a);

    // exactly one integer of matching parity in A_n union B_n
    int occupants = 0;
    const auto lo = static_cast<std::int64_t>(n) * -1 - 2;
    for (std::int64_t z = lo; z <= 2; ++z) {
      if ((z + static_cast<std::int64_t>(n) + 1) % 2 != 0) continue;  // S_{n-1} parity
      if (s.a_interval.contains(z) || s.b_interval.contains(z)) ++occupants;
    }
    CHECK(occupants == 1);
    CHECK((s.hit_side == StepSide::kA ? s.a_interval : s.b_interval).contains(s.hit_integer));
    prev = cur;
  }
}

TEST_CASE("interval geometry up to 5000") {
  for (std::uint64_t n = 3; n <= 5000; ++n) {
    const auto s = classify_step(n);
    // A_n lies left of B_n and they abut at -sqrt(n-1)
    CHECK(s.a_interval.hi == s.b_interval.lo);
    CHECK(s.a_interval.hi == SurdBound(0, -1, n - 1));
    CHECK(s.a_interval.lo == SurdBound(-1, -1, n));
    CHECK(s.b_interval.hi == SurdBound(1, -1, n));
  }
}

TEST_CASE("delta values") {
  CHECK(delta(2, 0).to_fraction_text() == "-1/8");
  CHECK(delta(2, 1).to_fraction_text() == "-5/64");
  const auto seq3 = delta_sequence(3);
  REQUIRE(seq3.deltas.size() == 3);
  CHECK(seq3.deltas[0].to_fraction_text() == "-7/128");
  CHECK(seq3.deltas[1].to_fraction_text() == "-45/1024");
  CHECK(seq3.deltas[2].to_fraction_text() == "-297/8192");
  CHECK(delta(3, 0) == dyadic_sub(pmf(8, 4), pmf(9, 3)));
  CHECK_THROWS_AS(delta(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(delta(3, 3), std::invalid_argument);
}

TEST_CASE("delta sequences: negative, non-decreasing, two routes agree") {
  for (std::uint64_t k = 2; k <= 120; ++k) {
    CAPTURE(k);
    const auto seq = delta_sequence(k);
    REQUIRE(seq.deltas.size() == k);
    for (std::uint64_t i = 0; i < k; ++i) {
      CHECK(seq.deltas[i].is_negative());
      if (i > 0) CHECK(seq.deltas[i - 1] <= seq.deltas[i]);
      if (k <= 40) {
        CHECK(seq.deltas[i] ==
              dyadic_sub(pmf(k * k + 2 * i - 1, static_cast<std::int64_t>(k + 1)),
                         pmf(k * k + 2 * i, static_cast<std::int64_t>(k))));
        CHECK(seq.deltas[i] == delta_closed_form(k, i));
      }
    }
  }
}

TEST_CASE("anchor identity") {
  for (std::uint64_t k = 2; k <= 150; ++k) CHECK(anchor_identity(k).is_zero());
  CHECK_THROWS_AS(anchor_identity(1), std::invalid_argument);
}

TEST_CASE("block sums of increments recover the envelope gap") {
  // P_{k^2} - P_{(k+1)^2-2} equals minus the sum of the last 2k-1 steps' net effect
  for (std::uint64_t k = 2; k <= 30; ++k) {
    const auto [lo, hi] = envelope(k);
    SignedDyadic net;
    for (std::uint64_t n = k * k + 1; n <= (k + 1) * (k + 1) - 2; ++n)
      net = net + classify_step(n).increment;
    CHECK((SignedDyadic(hi) + net) == SignedDyadic(lo));
  }
}

TEST_CASE("recursion reproduces direct summation") {
  CHECK(recursive_pn(2) == DyadicProb::half());
  CHECK_THROWS_AS(recursive_pn(1), std::invalid_argument);
  for (std::uint64_t n = 2; n <= 600; ++n) {
    CAPTURE(n);
    CHECK(recursive_pn(n) == central_prob(n));
  }
  for (std::uint64_t n : {1023ULL, 1024ULL, 1025ULL, 1999ULL, 2000ULL})
    CHECK(recursive_pn(n) == central_prob(n));
}

TEST_CASE("envelopes") {
  CHECK(envelope(2).first == DyadicProb::parse("35/64"));
  CHECK(envelope(2).second == DyadicProb::parse("7/8"));
  CHECK(envelope(3).first == DyadicProb::parse("4719/8192"));
  CHECK(envelope(3).second == DyadicProb::parse("105/128"));
  CHECK(envelope(4).first == DyadicProb::parse("156009/262144"));
  CHECK(envelope(4).second == DyadicProb::parse("25883/32768"));
  CHECK(envelope(5).second == DyadicProb::parse("3231615/4194304"));
  CHECK_THROWS_AS(envelope(1), std::invalid_argument);
}

TEST_CASE("theorem blocks 2..40") {
  const auto reports = verify_theorem(40);
  REQUIRE(reports.size() == 39);
  for (const auto& r : reports) {
    CAPTURE(r.k);
    CHECK(r.passed());
    CHECK(r.min_at_last);
    CHECK(r.max_at_square);
    CHECK(r.odd_chain);
    CHECK(r.even_chain);
    CHECK(r.all_at_least_half);
    CHECK(r.envelope_gap);
    CHECK(r.q_minus_increasing);
    CHECK(r.q_plus_decreasing);
    CHECK(r.probabilities.size() == 2 * r.k + 1);
  }
  CHECK_THROWS_AS(verify_theorem(1), std::invalid_argument);
}

TEST_CASE("envelope at k = 100 straddles the normal limit") {
  const auto [lo, hi] = envelope(100);
  CHECK(compare_to_normal_limit(lo) == std::strong_ordering::less);
  CHECK(compare_to_normal_limit(hi) == std::strong_ordering::greater);
  CHECK(to_decimal_string(lo, 10) > std::string("0.6726894921"));
  CHECK(to_decimal_string(hi, 10) < std::string("0.6926894921"));
}
