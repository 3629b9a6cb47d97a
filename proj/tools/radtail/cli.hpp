#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "rademacher/distribution.hpp"
#include "rademacher/exactnum.hpp"

namespace rademacher::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2 };

enum class Format { kCsv, kJson, kText };
enum class PnEngine { kDirect, kRecursive, kEnumerate, kConvolve };

struct Options {
  SigmaThreshold a = SigmaThreshold::one();
  Format format = Format::kText;
  unsigned digits = 4;
  PnEngine engine = PnEngine::kDirect;
};

/// Usage problems detected after argument parsing (bad ranges, engine limits).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One row of `table` / the result of `pn`.
struct OutputRecord {
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::string side;       // "A", "B" or "none"
  std::string increment;  // signed fraction, empty when side is "none"
  std::string p_exact;    // reduced fraction
  std::string p_decimal;
  std::string bound_class;

  friend bool operator==(const OutputRecord&, const OutputRecord&) = default;
};

inline constexpr const char* kTableCsvHeader = "n,k,side,increment,p_exact,p_decimal";

/// P{|S_n| <= a sqrt(n)} through the chosen engine; n = 0 gives 1.
DyadicProb probability(std::uint64_t n, const Options& opts);

OutputRecord make_record(std::uint64_t n, const DyadicProb& p, const Options& opts);

int cmd_pn(std::uint64_t n, const Options& opts, std::ostream& out);
int cmd_table(std::uint64_t from, std::uint64_t to, const Options& opts, std::ostream& out);
int cmd_envelopes(std::uint64_t max_k, const Options& opts, std::ostream& out);
int cmd_deltas(std::uint64_t k, const Options& opts, std::ostream& out);
int cmd_verify(std::uint64_t max_n, std::uint64_t max_k, std::ostream& out);
int cmd_compare(std::uint64_t n, const Options& opts, std::ostream& out);

std::vector<OutputRecord> parse_table_csv(std::istream& in);
std::vector<OutputRecord> parse_table_json(const std::string& text);

struct VerifyConfig {
  std::uint64_t max_n = 2000;
  std::uint64_t max_k = 100;
};

/// Full invariant suite as a JSON report {config, checks, flags}.
nlohmann::ordered_json run_verification(const VerifyConfig& config);
bool report_passed(const nlohmann::ordered_json& report);

/// Parses argv and dispatches; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rademacher::cli
