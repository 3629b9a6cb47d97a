#include "doctest.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "rademacher/distribution.hpp"

using namespace rademacher;
using namespace rademacher::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "radtail");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("pn prints the exact fraction") {
  const auto r = invoke({"pn", "14"});
  CHECK(r.code == kPass);
  CHECK(r.out.find("4719/8192") != std::string::npos);
  CHECK(r.out.find("0.5760") != std::string::npos);

  const auto j = nlohmann::ordered_json::parse(invoke({"pn", "16", "--format", "json"}).out);
  CHECK(j["p_exact"] == "25883/32768");
  CHECK(j["side"] == "A");
  CHECK(j["increment"] == "+3003/32768");
}

TEST_CASE("engines agree") {
  for (const char* engine : {"direct", "recursive", "enumerate", "convolve"}) {
    CAPTURE(engine);
    const auto r = invoke({"pn", "20", "--format", "csv", "--engine", engine});
    CHECK(r.code == kPass);
    CHECK(r.out.find("96577/131072") != std::string::npos);
  }
  const auto half = invoke({"pn", "9", "--a", "1/2", "--format", "csv", "--engine", "enumerate"});
  CHECK(half.out.find("63/128") != std::string::npos);
}

TEST_CASE("table CSV round-trip") {
  Options opts;
  opts.format = Format::kCsv;
  std::ostringstream out;
  REQUIRE(cmd_table(0, 40, opts, out) == kPass);
  const std::string text = out.str();
  CHECK(text.rfind(std::string(kTableCsvHeader) + "\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);

  std::istringstream in(text);
  const auto rows = parse_table_csv(in);
  REQUIRE(rows.size() == 41);
  for (const auto& row : rows) {
    CAPTURE(row.n);
    CHECK(DyadicProb::parse(row.p_exact) == central_prob_or_one(row.n));
    auto expected = make_record(row.n, DyadicProb::parse(row.p_exact), opts);
    expected.bound_class.clear();  // not a CSV column
    CHECK(row == expected);
  }
  CHECK(rows[0].side == "none");
  CHECK(rows[2].p_exact == "1/2");
  CHECK(rows[7].side == "B");
  CHECK(rows[7].increment == "-15/64");
}

TEST_CASE("table JSON round-trip") {
  Options opts;
  opts.format = Format::kJson;
  opts.digits = 12;
  std::ostringstream out;
  REQUIRE(cmd_table(1, 30, opts, out) == kPass);
  const auto rows = parse_table_json(out.str());
  REQUIRE(rows.size() == 30);
  std::ostringstream csv;
  opts.format = Format::kCsv;
  REQUIRE(cmd_table(1, 30, opts, csv) == kPass);
  std::istringstream in(csv.str());
  const auto csv_rows = parse_table_csv(in);
  REQUIRE(csv_rows.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].n == csv_rows[i].n);
    CHECK(rows[i].side == csv_rows[i].side);
    CHECK(rows[i].increment == csv_rows[i].increment);
    CHECK(rows[i].p_exact == csv_rows[i].p_exact);
    CHECK(rows[i].p_decimal == csv_rows[i].p_decimal);
  }
}

TEST_CASE("table engines produce identical output") {
  std::string reference;
  for (const char* engine : {"direct", "recursive", "convolve", "enumerate"}) {
    const auto r = invoke({"table", "2", "24", "--format", "csv", "--engine", engine});
    REQUIRE(r.code == kPass);
    if (reference.empty()) reference = r.out;
    CHECK(r.out == reference);
  }
}

TEST_CASE("deltas and envelopes") {
  const auto d = invoke({"deltas", "2", "--format", "csv"});
  CHECK(d.code == kPass);
  CHECK(d.out == "k,i,delta,delta_decimal\n2,0,-1/8,-0.1250\n2,1,-5/64,-0.0781\n");

  const auto e = invoke({"envelopes", "--max-k", "5", "--format", "json"});
  CHECK(e.code == kPass);
  const auto j = nlohmann::ordered_json::parse(e.out);
  REQUIRE(j.size() == 4);
  CHECK(j[2]["q_minus"] == "156009/262144");
  CHECK(j[2]["q_plus"] == "25883/32768");
  CHECK(j[3]["q_plus"] == "3231615/4194304");
}

TEST_CASE("compare reports Chebyshev as vacuous at one sigma") {
  const auto r = invoke({"compare", "16", "--format", "json"});
  CHECK(r.code == kPass);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["exact"] == "25883/32768");
  CHECK(j["chebyshev"] == "0");
  CHECK(j["chebyshev_vacuous"] == true);
  CHECK(j["normal"] == "0.6826894921");

  const auto two = nlohmann::ordered_json::parse(
      invoke({"compare", "16", "--a", "2", "--format", "json"}).out);
  CHECK(two["chebyshev"] == "3/4");
  CHECK(two["chebyshev_vacuous"] == false);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(invoke({}).code == kUsageError);
  CHECK(invoke({"frobnicate"}).code == kUsageError);
  CHECK(invoke({"pn"}).code == kUsageError);
  CHECK(invoke({"pn", "-3"}).code == kUsageError);
  CHECK(invoke({"pn", "5", "--format", "xml"}).code == kUsageError);
  CHECK(invoke({"pn", "5", "--digits", "0"}).code == kUsageError);
  CHECK(invoke({"pn", "5", "--digits", "51"}).code == kUsageError);
  CHECK(invoke({"pn", "5", "--a", "1/0"}).code == kUsageError);
  CHECK(invoke({"pn", "27", "--engine", "enumerate"}).code == kUsageError);
  CHECK(invoke({"table", "9", "3"}).code == kUsageError);
  CHECK(invoke({"deltas", "1"}).code == kUsageError);
  CHECK(invoke({"verify", "--max-n", "1"}).code == kUsageError);
  CHECK(invoke({"--help"}).code == kPass);
}

TEST_CASE("verification report") {
  const auto report = run_verification({200, 12});
  CHECK(report_passed(report));
  CHECK(report["config"]["max_n"] == 200);
  CHECK(report["config"]["max_k"] == 12);
  for (const auto& check : report["checks"]) {
    CAPTURE(check["name"].get<std::string>());
    CHECK(check["pass"] == true);
    CHECK(check.contains("range"));
    CHECK_FALSE(check.contains("counterexample"));
  }
  std::vector<std::string> ids;
  for (const auto& flag : report["flags"]) {
    ids.push_back(flag["id"]);
    CHECK(flag["severity"] == "informational");
  }
  CHECK(std::find(ids.begin(), ids.end(), "upper_bound_n15_digits") != ids.end());
  CHECK(std::find(ids.begin(), ids.end(), "normal_limit_notation") != ids.end());

  const auto r = invoke({"verify", "--max-n", "60", "--max-k", "6"});
  CHECK(r.code == kPass);
  CHECK(nlohmann::ordered_json::parse(r.out)["checks"].size() == report["checks"].size());
}
