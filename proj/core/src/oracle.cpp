#include "rademacher/oracle.hpp"

#include <bit>

#include "rademacher/parallel.hpp"

namespace rademacher::oracle {

CountTable::CountTable(std::uint64_t n, std::vector<BigCount> counts_by_offset)
    : n_(n), counts_(std::move(counts_by_offset)) {
  if (counts_.size() != 2 * n + 1) throw std::invalid_argument("CountTable: wrong row length");
}

BigCount CountTable::count(std::int64_t m) const {
  const auto n = static_cast<std::int64_t>(n_);
  if (m < -n || m > n) return BigCount{0};
  return counts_[static_cast<std::size_t>(m + n)];
}

BigCount CountTable::total() const {
  BigCount sum;
  for (const auto& c : counts_) sum += c;
  return sum;
}

CountTable enumerate_counts(std::uint64_t n) {
  if (n < 1 || n > kMaxEnumerate)
    throw std::out_of_range("enumerate_counts: n must lie in [1, 26], got " + std::to_string(n));

  // A set bit is a +1. With w plus signs the sum is 2w - n.
  constexpr std::size_t kChunks = 64;
  const std::uint64_t space = std::uint64_t{1} << n;
  const std::uint64_t chunk = (space + kChunks - 1) / kChunks;
  std::vector<std::vector<std::uint64_t>> partial(kChunks, std::vector<std::uint64_t>(n + 1, 0));
  parallel_for(kChunks, [&](std::size_t c) {
    auto& tally = partial[c];
    const std::uint64_t begin = c * chunk;
    const std::uint64_t end = std::min(space, begin + chunk);
    for (std::uint64_t mask = begin; mask < end; ++mask)
      ++tally[static_cast<std::size_t>(std::popcount(mask))];
  });

  std::vector<BigCount> counts(2 * n + 1, BigCount{0});
  for (std::uint64_t w = 0; w <= n; ++w) {
    std::uint64_t total = 0;
    for (const auto& tally : partial) total += tally[w];
    counts[2 * w] = BigCount{total};  // offset m + n = 2w
  }
  return {n, std::move(counts)};
}

ConvolutionSweep::ConvolutionSweep()
    : table_(1, {BigCount{1}, BigCount{0}, BigCount{1}}) {}

const CountTable& ConvolutionSweep::advance() {
  const std::uint64_t n = table_.n() + 1;
  const auto& prev = table_.raw();
  std::vector<BigCount> next(2 * n + 1, BigCount{0});
  // next offset o <-> m = o - n; prev offset of m is m + n - 1 = o - 1.
  for (std::size_t o = 0; o < next.size(); ++o) {
    BigCount c;
    if (o >= 2 && o - 2 < prev.size()) c += prev[o - 2];  // from m - 1
    if (o < prev.size()) c += prev[o];                    // from m + 1
    next[o] = std::move(c);
  }
  table_ = CountTable(n, std::move(next));
  return table_;
}

CountTable convolve_counts(std::uint64_t n) {
  if (n < 1) throw std::invalid_argument("convolve_counts: n must be at least 1");
  ConvolutionSweep sweep;
  while (sweep.current().n() < n) sweep.advance();
  return sweep.current();
}

DyadicProb central_prob_from(const CountTable& table, const SigmaThreshold& a) {
  const auto n = static_cast<std::int64_t>(table.n());
  const mpz_class rhs = mpz_class(static_cast<unsigned long>(a.p())) * a.p() * n;
  const mpz_class q2 = mpz_class(static_cast<unsigned long>(a.q())) * a.q();
  BigCount mass;
  for (std::int64_t m = -n; m <= n; ++m) {
    const mpz_class mm = mpz_class(static_cast<long>(m)) * m;
    if (q2 * mm <= rhs) mass += table.count(m);
  }
  return {mass, table.n()};
}

DyadicProb oracle_central_prob(std::uint64_t n, const SigmaThreshold& a, Engine engine) {
  switch (engine) {
    case Engine::kEnumerate: return central_prob_from(enumerate_counts(n), a);
    case Engine::kConvolve: return central_prob_from(convolve_counts(n), a);
  }
  throw std::invalid_argument("unknown oracle engine");
}

}  // namespace rademacher::oracle
