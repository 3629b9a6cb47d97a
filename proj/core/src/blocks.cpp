#include "rademacher/blocks.hpp"

#include <algorithm>
#include <sstream>

#include "rademacher/distribution.hpp"
#include "rademacher/parallel.hpp"

namespace rademacher {

namespace {

std::string fraction(const DyadicProb& p) { return p.to_fraction_text(); }

// -binom(N, J) * 2k / (k(k-1) + 2i) / 2^{k^2+2i} with N = k^2-1+2i,
// J = k(k-1)/2+i-1; binom_lower holds binom(N, J).
SignedDyadic closed_form_from(const BigCount& binom_lower, std::uint64_t k, std::uint64_t i) {
  mpz_class numer = binom_lower.mpz();
  mpz_mul_ui(numer.get_mpz_t(), numer.get_mpz_t(), static_cast<unsigned long>(2 * k));
  const std::uint64_t denom = k * (k - 1) + 2 * i;
  if (mpz_divisible_ui_p(numer.get_mpz_t(), static_cast<unsigned long>(denom)) == 0) {
    throw DivisibilityViolation("delta closed form for k=" + std::to_string(k) +
                                ", i=" + std::to_string(i) + " is not dyadic");
  }
  mpz_divexact_ui(numer.get_mpz_t(), numer.get_mpz_t(), static_cast<unsigned long>(denom));
  return {Sign::kNegative, DyadicProb{BigCount{std::move(numer)}, k * k + 2 * i}};
}

void check_delta_args(std::uint64_t k, std::uint64_t i) {
  if (k < 2) throw std::invalid_argument("delta: k must be at least 2");
  if (i >= k) throw std::invalid_argument("delta: i must lie in [0, k-1]");
}

void require_same(const SignedDyadic& by_pmf, const SignedDyadic& closed, std::uint64_t k,
                  std::uint64_t i) {
  if (by_pmf != closed) {
    throw InvariantViolation("delta(k=" + std::to_string(k) + ", i=" + std::to_string(i) +
                             "): pmf difference " + by_pmf.to_fraction_text() +
                             " != closed form " + closed.to_fraction_text());
  }
}

}  // namespace

std::uint64_t block_of(std::uint64_t n) { return isqrt(n + 1); }

Block build_block(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("build_block: k must be at least 1");
  Block b;
  b.k = k;
  const std::uint64_t first = k * k - 1;
  const std::uint64_t last = (k + 1) * (k + 1) - 2;
  for (std::uint64_t n = first; n <= last; ++n) {
    b.members.push_back(n);
    ((n - first) % 2 == 0 ? b.sub2 : b.sub1).push_back(n);
  }
  return b;
}

const char* to_string(StepSide side) { return side == StepSide::kA ? "A" : "B"; }

StepClassification classify_step(std::uint64_t n) {
  if (n < 3) throw std::invalid_argument("classify_step: n must be at least 3");
  const std::uint64_t k = block_of(n);
  const auto sk = static_cast<std::int64_t>(k);

  StepClassification step;
  step.n = n;
  step.a_interval = {SurdBound(-1, -1, n), SurdBound(0, -1, n - 1)};
  step.b_interval = {SurdBound(0, -1, n - 1), SurdBound(1, -1, n)};

  if (n == k * k - 1) {
    step.hit_side = StepSide::kA;
    step.hit_integer = -sk;
  } else if ((n - k * k) % 2 == 0) {
    step.hit_side = StepSide::kA;
    step.hit_integer = -1 - sk;
  } else {
    step.hit_side = StepSide::kB;
    step.hit_integer = -sk;
  }

  const HalfOpenInterval& chosen =
      step.hit_side == StepSide::kA ? step.a_interval : step.b_interval;
  if (!chosen.contains(step.hit_integer) || !SignSum(n - 1).supports(step.hit_integer)) {
    throw InvariantViolation("classify_step(" + std::to_string(n) + "): " +
                             std::to_string(step.hit_integer) + " is not a value of S_" +
                             std::to_string(n - 1) + " in " + to_string(step.hit_side) + "_n = " +
                             chosen.to_string());
  }

  const SignedDyadic mass{pmf(n - 1, -step.hit_integer)};
  step.increment = step.hit_side == StepSide::kA ? mass : mass.negated();
  return step;
}

SignedDyadic delta_closed_form(std::uint64_t k, std::uint64_t i) {
  check_delta_args(k, i);
  const std::uint64_t n = k * k - 1 + 2 * i;
  const auto j = static_cast<std::int64_t>(k * (k - 1) / 2 + i) - 1;
  return closed_form_from(binomial(n, j), k, i);
}

SignedDyadic delta(std::uint64_t k, std::uint64_t i) {
  check_delta_args(k, i);
  const auto sk = static_cast<std::int64_t>(k);
  const SignedDyadic by_pmf = dyadic_sub(pmf(k * k + 2 * i - 1, sk + 1), pmf(k * k + 2 * i, sk));
  const SignedDyadic closed = delta_closed_form(k, i);
  require_same(by_pmf, closed, k, i);
  return by_pmf;
}

DeltaSequence delta_sequence(std::uint64_t k) {
  check_delta_args(k, 0);
  DeltaSequence seq;
  seq.k = k;
  seq.deltas.reserve(k);

  // pmf route on the S-scale: P{S_N = k+1} and P{S_{N+1} = k} share the upper
  // index t = k(k+1)/2 + i. The closed form walks the lower index instead.
  const std::uint64_t t0 = k * (k + 1) / 2;
  BinomialWalker upper(k * k - 1, t0);
  BinomialWalker lower(k * k - 1, k * (k - 1) / 2 - 1);

  for (std::uint64_t i = 0; i < k; ++i) {
    const std::uint64_t n_gain = k * k + 2 * i - 1;
    const DyadicProb gain{upper.seek(n_gain, t0 + i), n_gain};
    const DyadicProb loss{upper.seek(n_gain + 1, t0 + i), n_gain + 1};
    const SignedDyadic by_pmf = dyadic_sub(gain, loss);

    const SignedDyadic closed =
        closed_form_from(lower.seek(n_gain, k * (k - 1) / 2 + i - 1), k, i);
    require_same(by_pmf, closed, k, i);

    if (!by_pmf.is_negative()) {
      throw InvariantViolation("delta_sequence(" + std::to_string(k) + "): delta_" +
                               std::to_string(i) + " = " + by_pmf.to_fraction_text() +
                               " is not negative");
    }
    if (!seq.deltas.empty() && seq.deltas.back() > by_pmf) {
      throw InvariantViolation("delta_sequence(" + std::to_string(k) + "): delta_" +
                               std::to_string(i - 1) + " = " +
                               seq.deltas.back().to_fraction_text() + " > delta_" +
                               std::to_string(i) + " = " + by_pmf.to_fraction_text());
    }
    seq.deltas.push_back(by_pmf);
  }
  return seq;
}

SignedDyadic anchor_identity(std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("anchor_identity: k must be at least 2");
  const SignedDyadic gain{pmf(k * k - 2, static_cast<std::int64_t>(k))};
  return gain + delta(k, 0).scaled(k);
}

DyadicProb recursive_pn(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("recursive_pn: n must be at least 2");
  const std::uint64_t kn = block_of(n);
  if (kn < 2) return DyadicProb::half();
  const std::uint64_t i_max = n - (kn * kn - 1);

  // Everything is accumulated over 2^(n-1); the largest S-index used is n-1.
  const std::uint64_t e = n - 1;
  mpz_class total;
  mpz_setbit(total.get_mpz_t(), static_cast<mp_bitcnt_t>(e - 1));  // 1/2

  BinomialWalker walker(2, 2);
  // sign * P{S_len = value}
  const auto add = [&](int sign, std::uint64_t len, std::uint64_t value) {
    const BigCount& c = walker.seek(len, (len + value) / 2);
    mpz_class term;
    mpz_mul_2exp(term.get_mpz_t(), c.mpz().get_mpz_t(), static_cast<mp_bitcnt_t>(e - len));
    if (sign > 0) total += term;
    else total -= term;
  };
  const auto block_terms = [&](std::uint64_t k, std::uint64_t last_j) {
    add(+1, k * k - 2, k);
    for (std::uint64_t j = 1; j <= last_j; ++j) {
      if (j % 2 == 1) add(+1, k * k + j - 2, k + 1);
      else add(-1, k * k + j - 2, k);
    }
  };

  for (std::uint64_t k = 2; k < kn; ++k) block_terms(k, 2 * k);
  block_terms(kn, i_max);

  if (sgn(total) < 0) throw InvariantViolation("recursive_pn: negative total");
  return {BigCount{std::move(total)}, e};
}

std::pair<DyadicProb, DyadicProb> envelope(std::uint64_t k) {
  if (k < 2) throw std::invalid_argument("envelope: k must be at least 2");
  return {central_prob((k + 1) * (k + 1) - 2), central_prob(k * k)};
}

namespace {

BlockReport check_block(std::uint64_t k) {
  const Block block = build_block(k);
  BlockReport r;
  r.k = k;
  r.probabilities.reserve(block.members.size());
  for (std::uint64_t n : block.members) r.probabilities.emplace_back(n, central_prob(n));

  const auto p_at = [&](std::uint64_t n) -> const DyadicProb& {
    return r.probabilities[n - block.members.front()].second;
  };
  const auto flag = [&](const std::string& check, std::string detail) {
    r.violations.push_back({check, "k=" + std::to_string(k) + ": " + std::move(detail)});
  };

  const std::uint64_t n_min = (k + 1) * (k + 1) - 2;
  const std::uint64_t n_max = k * k;
  r.q_minus = p_at(n_min);
  r.q_plus = p_at(n_max);

  r.min_at_last = true;
  r.max_at_square = true;
  r.all_at_least_half = true;
  for (const auto& [n, p] : r.probabilities) {
    if (p < r.q_minus && r.min_at_last) {
      r.min_at_last = false;
      flag("block_min", "P_" + std::to_string(n) + " = " + fraction(p) + " < P_" +
                            std::to_string(n_min) + " = " + fraction(r.q_minus));
    }
    if (p > r.q_plus && r.max_at_square) {
      r.max_at_square = false;
      flag("block_max", "P_" + std::to_string(n) + " = " + fraction(p) + " > P_" +
                            std::to_string(n_max) + " = " + fraction(r.q_plus));
    }
    if (p < DyadicProb::half() && r.all_at_least_half) {
      r.all_at_least_half = false;
      flag("at_least_half", "P_" + std::to_string(n) + " = " + fraction(p) + " < 1/2");
    }
  }

  // Non-increasing in n along a chain.
  const auto chain = [&](const std::vector<std::uint64_t>& ns, const char* name) {
    for (std::size_t idx = 1; idx < ns.size(); ++idx) {
      if (p_at(ns[idx]) > p_at(ns[idx - 1])) {
        flag(name, "P_" + std::to_string(ns[idx]) + " = " + fraction(p_at(ns[idx])) + " > P_" +
                       std::to_string(ns[idx - 1]) + " = " + fraction(p_at(ns[idx - 1])));
        return false;
      }
    }
    return true;
  };
  r.odd_chain = chain(block.sub2, "chain_sub2");
  std::vector<std::uint64_t> second = block.sub1;
  second.push_back(n_min);
  r.even_chain = chain(second, "chain_sub1");

  r.envelope_gap = r.q_minus < r.q_plus;
  if (!r.envelope_gap)
    flag("envelope_gap", "Q^- = " + fraction(r.q_minus) + " >= Q^+ = " + fraction(r.q_plus));
  return r;
}

}  // namespace

std::vector<BlockReport> verify_theorem(std::uint64_t max_k) {
  if (max_k < 2) throw std::invalid_argument("verify_theorem: max_k must be at least 2");
  std::vector<BlockReport> reports(max_k - 1);
  parallel_for(reports.size(), [&](std::size_t idx) { reports[idx] = check_block(idx + 2); });

  for (std::size_t idx = 1; idx < reports.size(); ++idx) {
    BlockReport& cur = reports[idx];
    const BlockReport& prev = reports[idx - 1];
    cur.q_minus_increasing = prev.q_minus < cur.q_minus;
    cur.q_plus_decreasing = prev.q_plus > cur.q_plus;
    if (!cur.q_minus_increasing) {
      cur.violations.push_back({"q_minus_increasing", "Q_" + std::to_string(prev.k) + "^- = " +
                                                          fraction(prev.q_minus) + " >= Q_" +
                                                          std::to_string(cur.k) + "^- = " +
                                                          fraction(cur.q_minus)});
    }
    if (!cur.q_plus_decreasing) {
      cur.violations.push_back({"q_plus_decreasing", "Q_" + std::to_string(prev.k) + "^+ = " +
                                                         fraction(prev.q_plus) + " <= Q_" +
                                                         std::to_string(cur.k) + "^+ = " +
                                                         fraction(cur.q_plus)});
    }
  }
  return reports;
}

}  // namespace rademacher
