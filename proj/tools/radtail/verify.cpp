#include <algorithm>
#include <array>
#include <optional>
#include <string_view>

#include "cli.hpp"
#include "rademacher/blocks.hpp"
#include "rademacher/oracle.hpp"
#include "rademacher/parallel.hpp"
#include "rademacher/theorem.hpp"

namespace rademacher::cli {

namespace {

using json = nlohmann::ordered_json;

inline constexpr std::uint64_t kEnumerateCeiling = 20;
inline constexpr std::uint64_t kConvolveCeiling = 500;

struct Check {
  Check(std::string check_name, std::string check_range)
      : name(std::move(check_name)), range(std::move(check_range)) {}

  std::string name;
  std::string range;
  std::uint64_t evaluated = 0;
  std::optional<std::string> counterexample;

  void fail(std::string witness) {
    if (!counterexample) counterexample = std::move(witness);
  }
  [[nodiscard]] bool pass() const { return !counterexample; }

  [[nodiscard]] json to_json() const {
    json j{{"name", name}, {"range", range}, {"pass", pass()}, {"evaluated", evaluated}};
    if (counterexample) j["counterexample"] = *counterexample;
    return j;
  }
};

std::string span(std::uint64_t a, std::uint64_t b) {
  return std::to_string(a) + ".." + std::to_string(b);
}

std::string eq_text(std::string_view lhs, const DyadicProb& a, std::string_view rhs,
                    const DyadicProb& b) {
  return std::string(lhs) + " = " + a.to_fraction_text() + ", " + std::string(rhs) + " = " +
         b.to_fraction_text();
}

const std::array<SigmaThreshold, 5>& oracle_thresholds() {
  static const std::array<SigmaThreshold, 5> as{SigmaThreshold(0, 1), SigmaThreshold(1, 2),
                                                SigmaThreshold(1, 1), SigmaThreshold(3, 2),
                                                SigmaThreshold(2, 1)};
  return as;
}

// Computes P_0..P_max_n once; later checks read from it.
std::vector<DyadicProb> direct_values(std::uint64_t max_n) {
  std::vector<DyadicProb> p(max_n + 1);
  parallel_for(max_n + 1, [&](std::size_t n) { p[n] = central_prob_or_one(n); });
  return p;
}

Check golden_values() {
  Check c{"golden_values", "table and bound fractions"};
  const std::array<std::pair<std::uint64_t, std::string_view>, 13> golden{{
      {1, "1"}, {2, "1/2"}, {3, "3/4"}, {4, "7/8"}, {5, "5/8"}, {6, "25/32"}, {7, "35/64"},
      {8, "91/128"}, {9, "105/128"}, {10, "21/32"}, {14, "4719/8192"}, {23, "156009/262144"},
      {25, "3231615/4194304"}}};
  for (const auto& [n, text] : golden) {
    ++c.evaluated;
    const DyadicProb expected = DyadicProb::parse(text);
    const DyadicProb direct = central_prob(n);
    const DyadicProb conv = oracle::oracle_central_prob(n, SigmaThreshold::one(),
                                                        oracle::Engine::kConvolve);
    if (direct != expected || conv != expected) {
      c.fail("n=" + std::to_string(n) + ": expected " + std::string(text) + ", direct " +
             direct.to_fraction_text() + ", convolve " + conv.to_fraction_text());
    }
  }
  return c;
}

}  // namespace

nlohmann::ordered_json run_verification(const VerifyConfig& config) {
  const std::uint64_t max_n = config.max_n;
  const std::uint64_t max_k = config.max_k;
  const std::vector<DyadicProb> p = direct_values(max_n);
  std::vector<Check> checks;

  {
    Check c{"at_least_half", span(1, max_n)};
    for (std::uint64_t n = 1; n <= max_n; ++n, ++c.evaluated) {
      if (p[n] < DyadicProb::half())
        c.fail("P_" + std::to_string(n) + " = " + p[n].to_fraction_text() + " < 1/2");
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"theorem_bounds", span(0, max_n)};
    for (std::uint64_t n = 0; n <= max_n; ++n, ++c.evaluated) {
      const BoundRow& row = bound_row(n);
      if (p[n] < row.lower || p[n] > row.upper) {
        c.fail("P_" + std::to_string(n) + " = " + p[n].to_fraction_text() + " outside row " +
               row.label + " [" + row.lower.to_fraction_text() + ", " +
               row.upper.to_fraction_text() + "]");
      }
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"step_consistency", span(3, max_n)};
    for (std::uint64_t n = 3; n <= max_n; ++n, ++c.evaluated) {
      const SignedDyadic stepped = SignedDyadic(p[n - 1]) + classify_step(n).increment;
      if (stepped != SignedDyadic(p[n])) {
        c.fail("n=" + std::to_string(n) + ": P_{n-1} + increment = " +
               stepped.to_fraction_text() + ", P_n = " + p[n].to_fraction_text());
      }
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"recursion_equivalence", span(2, max_n)};
    std::vector<std::optional<std::string>> bad(max_n + 1);
    parallel_for(max_n - 1, [&](std::size_t idx) {
      const std::uint64_t n = idx + 2;
      const DyadicProb r = recursive_pn(n);
      if (r != p[n]) bad[n] = "n=" + std::to_string(n) + ": " + eq_text("recursive", r, "direct", p[n]);
    });
    for (std::uint64_t n = 2; n <= max_n; ++n, ++c.evaluated)
      if (bad[n]) c.fail(*bad[n]);
    checks.push_back(std::move(c));
  }
  {
    Check c{"step_exclusivity", span(3, max_n)};
    for (std::uint64_t n = 3; n <= max_n; ++n, ++c.evaluated) {
      const StepClassification step = classify_step(n);
      const DyadicProb in_a = interval_prob(n - 1, step.a_interval);
      const DyadicProb in_b = interval_prob(n - 1, step.b_interval);
      const DyadicProb hit = pmf(n - 1, step.hit_integer);
      const bool a_side = step.hit_side == StepSide::kA;
      const DyadicProb& nonzero = a_side ? in_a : in_b;
      const DyadicProb& other = a_side ? in_b : in_a;
      if (!other.is_zero() || nonzero != hit) {
        c.fail("n=" + std::to_string(n) + ": P{A} = " + in_a.to_fraction_text() + ", P{B} = " +
               in_b.to_fraction_text() + ", pmf at " + std::to_string(step.hit_integer) + " = " +
               hit.to_fraction_text());
      }
    }
    checks.push_back(std::move(c));
  }
  {
    // A_n u B_n = [-1 - sqrt(n), 1 - sqrt(n)) holds one even and one odd integer.
    Check c{"interval_geometry", span(3, max_n)};
    for (std::uint64_t n = 3; n <= max_n; ++n, ++c.evaluated) {
      const StepClassification step = classify_step(n);
      const SurdBound lo = step.a_interval.lo;
      const SurdBound hi = step.b_interval.hi;
      int inside = 0, even = 0;
      for (std::int64_t z = lo.floor() - 1; z <= hi.floor() + 1; ++z) {
        if (in_half_open(z, lo, hi)) {
          ++inside;
          if (z % 2 == 0) ++even;
        }
        const bool in_a = step.a_interval.contains(z);
        const bool in_b = step.b_interval.contains(z);
        if (in_a && in_b) c.fail("n=" + std::to_string(n) + ": A_n and B_n overlap at " + std::to_string(z));
      }
      if (inside != 2 || even != 1) {
        c.fail("n=" + std::to_string(n) + ": union holds " + std::to_string(inside) +
               " integers, " + std::to_string(even) + " even");
      }
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"delta_sequences", span(2, max_k)};
    for (std::uint64_t k = 2; k <= max_k; ++k, ++c.evaluated) {
      try {
        (void)delta_sequence(k);
      } catch (const std::logic_error& e) {
        c.fail(e.what());
      }
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"anchor_identity", span(2, max_k)};
    for (std::uint64_t k = 2; k <= max_k; ++k, ++c.evaluated) {
      const SignedDyadic v = anchor_identity(k);
      if (!v.is_zero())
        c.fail("k=" + std::to_string(k) + ": P{S_{k^2-2}=k} + k delta_0 = " + v.to_fraction_text());
    }
    checks.push_back(std::move(c));
  }
  {
    Check c{"sufficiency_chain", span(2, max_k)};
    for (std::uint64_t k = 2; k <= max_k; ++k, ++c.evaluated) {
      const DyadicProb before = central_prob(k * k - 2);
      const DyadicProb after = central_prob((k + 1) * (k + 1) - 2);
      if (before > after) {
        c.fail("k=" + std::to_string(k) + ": " +
               eq_text("P_{k^2-2}", before, "P_{(k+1)^2-2}", after));
      }
    }
    checks.push_back(std::move(c));
  }

  const std::vector<BlockReport> blocks = verify_theorem(max_k);
  {
    Check c{"block_envelopes", span(2, max_k)};
    Check m{"envelope_monotonicity", span(2, max_k)};
    Check s{"envelope_limit_sides", span(2, max_k)};
    for (const auto& b : blocks) {
      ++c.evaluated;
      ++m.evaluated;
      ++s.evaluated;
      for (const auto& v : b.violations) {
        if (v.check == "q_minus_increasing" || v.check == "q_plus_decreasing")
          m.fail(v.check + ": " + v.detail);
        else
          c.fail(v.check + ": " + v.detail);
      }
      if (compare_to_normal_limit(b.q_minus) >= 0 || compare_to_normal_limit(b.q_plus) <= 0) {
        s.fail("k=" + std::to_string(b.k) + ": Q^- = " + to_decimal_string(b.q_minus, 12) +
               ", Q^+ = " + to_decimal_string(b.q_plus, 12) + " vs " + kNormalOneSigmaText);
      }
    }
    checks.push_back(std::move(c));
    checks.push_back(std::move(m));
    checks.push_back(std::move(s));
  }
  {
    const std::uint64_t top = std::min(max_n, kEnumerateCeiling);
    Check c{"oracle_enumerate", span(1, top) + " x a in {0, 1/2, 1, 3/2, 2}"};
    for (std::uint64_t n = 1; n <= top; ++n) {
      const oracle::CountTable table = oracle::enumerate_counts(n);
      for (const auto& a : oracle_thresholds()) {
        ++c.evaluated;
        const DyadicProb o = oracle::central_prob_from(table, a);
        const DyadicProb d = central_prob(n, a);
        if (o != d)
          c.fail("n=" + std::to_string(n) + ", a=" + a.to_string() + ": " + eq_text("enumerate", o, "direct", d));
      }
    }
    checks.push_back(std::move(c));
  }
  {
    const std::uint64_t top = std::min(max_n, kConvolveCeiling);
    Check c{"oracle_convolve", span(1, top) + " x a in {0, 1/2, 1, 3/2, 2}"};
    oracle::ConvolutionSweep sweep;
    for (std::uint64_t n = 1; n <= top; ++n) {
      if (n > 1) sweep.advance();
      for (const auto& a : oracle_thresholds()) {
        ++c.evaluated;
        const DyadicProb o = oracle::central_prob_from(sweep.current(), a);
        const DyadicProb d = central_prob(n, a);
        if (o != d)
          c.fail("n=" + std::to_string(n) + ", a=" + a.to_string() + ": " + eq_text("convolve", o, "direct", d));
      }
    }
    checks.push_back(std::move(c));
  }
  checks.push_back(golden_values());

  json flags = json::array();
  {
    const DyadicProb direct = central_prob(16);
    const DyadicProb conv =
        oracle::oracle_central_prob(16, SigmaThreshold::one(), oracle::Engine::kConvolve);
    const DyadicProb enumerated =
        oracle::oracle_central_prob(16, SigmaThreshold::one(), oracle::Engine::kEnumerate);
    const DyadicProb printed = DyadicProb::parse(kPrintedUpperBoundFrom15);
    if (direct != printed) {
      flags.push_back(json{
          {"id", "upper_bound_n15_digits"},
          {"severity", "informational"},
          {"detail", "upper bound for n >= 15 is printed as 25833/32768 but Q_4^+ = P_16 "
                     "evaluates to " + direct.to_fraction_text() + " (digit transposition)"},
          {"printed", kPrintedUpperBoundFrom15},
          {"computed", direct.to_fraction_text()},
          {"confirmed_by", {{"direct", direct.to_fraction_text()},
                            {"convolve", conv.to_fraction_text()},
                            {"enumerate", enumerated.to_fraction_text()}}}});
    }
  }
  flags.push_back(json{
      {"id", "normal_limit_notation"},
      {"severity", "informational"},
      {"detail", "the envelope limit is written Phi(1) ~ 0.68; Phi(1) ~ 0.8413 is the normal "
                 "distribution function, the stated value is P{|Z| <= 1} = 2 Phi(1) - 1"},
      {"target", kNormalOneSigmaText}});
  flags.push_back(json{
      {"id", "recursion_partial_block_index"},
      {"severity", "informational"},
      {"detail", "trailing partial-block sums of the recursive formula index S_{k^2+j-2} with k; "
                 "k_n (the block of n) is used"}});

  json checks_json = json::array();
  for (const auto& c : checks) checks_json.push_back(c.to_json());
  return json{{"config", {{"max_n", max_n}, {"max_k", max_k}}},
              {"checks", std::move(checks_json)},
              {"flags", std::move(flags)}};
}

bool report_passed(const nlohmann::ordered_json& report) {
  return std::all_of(report.at("checks").begin(), report.at("checks").end(),
                     [](const auto& c) { return c.at("pass").template get<bool>(); });
}

}  // namespace rademacher::cli
