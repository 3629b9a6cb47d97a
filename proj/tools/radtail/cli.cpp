#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "rademacher/blocks.hpp"
#include "rademacher/oracle.hpp"
#include "rademacher/theorem.hpp"

namespace rademacher::cli {

namespace {

using json = nlohmann::ordered_json;

std::string fixed10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

json record_json(const OutputRecord& r) {
  return json{{"n", r.n},
              {"k", r.k},
              {"side", r.side},
              {"increment", r.increment},
              {"p_exact", r.p_exact},
              {"p_decimal", r.p_decimal},
              {"bound_class", r.bound_class}};
}

void write_csv_row(std::ostream& out, const OutputRecord& r) {
  out << r.n << ',' << r.k << ',' << r.side << ',' << r.increment << ',' << r.p_exact << ','
      << r.p_decimal << '\n';
}

void write_text_rows(std::ostream& out, const std::vector<OutputRecord>& rows) {
  out << std::left << std::setw(7) << "n" << std::setw(5) << "k" << std::setw(6) << "side"
      << std::setw(22) << "increment" << std::setw(26) << "P_n" << std::setw(10) << "approx"
      << "bounds\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(7) << r.n << std::setw(5) << r.k << std::setw(6) << r.side
        << std::setw(22) << (r.increment.empty() ? "-" : r.increment) << std::setw(26)
        << r.p_exact << std::setw(10) << r.p_decimal << r.bound_class << '\n';
  }
}

std::string bound_class_label(std::uint64_t n) {
  const BoundRow& row = bound_row(n);
  return row.label + " [" + row.lower.to_fraction_text() + ", " + row.upper.to_fraction_text() +
         "]";
}

}  // namespace

DyadicProb probability(std::uint64_t n, const Options& opts) {
  if (n == 0) return DyadicProb::one();
  switch (opts.engine) {
    case PnEngine::kDirect: return central_prob(n, opts.a);
    case PnEngine::kRecursive:
      if (!opts.a.is_one()) throw UsageError("engine 'recursive' only supports --a 1");
      if (n == 1) return DyadicProb::one();
      return recursive_pn(n);
    case PnEngine::kEnumerate:
      if (n > oracle::kMaxEnumerate)
        throw UsageError("engine 'enumerate' is limited to n <= 26");
      return oracle::oracle_central_prob(n, opts.a, oracle::Engine::kEnumerate);
    case PnEngine::kConvolve:
      return oracle::oracle_central_prob(n, opts.a, oracle::Engine::kConvolve);
  }
  throw UsageError("unknown engine");
}

OutputRecord make_record(std::uint64_t n, const DyadicProb& p, const Options& opts) {
  OutputRecord r;
  r.n = n;
  r.k = block_of(n);
  r.p_exact = p.to_fraction_text();
  r.p_decimal = to_decimal_string(p, opts.digits);
  r.side = "none";
  if (n >= 3 && opts.a.is_one()) {
    const StepClassification step = classify_step(n);
    r.side = to_string(step.hit_side);
    r.increment = step.increment.to_fraction_text();
  }
  r.bound_class = opts.a.is_one() ? bound_class_label(n) : "a=" + opts.a.to_string();
  return r;
}

int cmd_pn(std::uint64_t n, const Options& opts, std::ostream& out) {
  const OutputRecord r = make_record(n, probability(n, opts), opts);
  switch (opts.format) {
    case Format::kCsv:
      out << kTableCsvHeader << '\n';
      write_csv_row(out, r);
      break;
    case Format::kJson: {
      json j = record_json(r);
      j["a"] = opts.a.to_string();
      out << j.dump(2) << '\n';
      break;
    }
    case Format::kText:
      out << "P{|S_" << n << "| <= " << (opts.a.is_one() ? "" : opts.a.to_string() + "*")
          << "sqrt(" << n << ")} = " << r.p_exact << " ~ " << r.p_decimal << '\n';
      if (r.side != "none")
        out << "step from P_" << n - 1 << ": " << r.side << "-side, " << r.increment << '\n';
      out << "block k = " << r.k << ", bounds " << r.bound_class << '\n';
      break;
  }
  return kPass;
}

int cmd_table(std::uint64_t from, std::uint64_t to, const Options& opts, std::ostream& out) {
  if (from > to) throw UsageError("table: FROM must not exceed TO");
  std::vector<OutputRecord> rows;
  rows.reserve(to - from + 1);
  if (opts.engine == PnEngine::kConvolve) {
    oracle::ConvolutionSweep sweep;
    for (std::uint64_t n = from; n <= to; ++n) {
      if (n == 0) {
        rows.push_back(make_record(0, DyadicProb::one(), opts));
        continue;
      }
      while (sweep.current().n() < n) sweep.advance();
      rows.push_back(make_record(n, oracle::central_prob_from(sweep.current(), opts.a), opts));
    }
  } else {
    for (std::uint64_t n = from; n <= to; ++n) rows.push_back(make_record(n, probability(n, opts), opts));
  }

  switch (opts.format) {
    case Format::kCsv:
      out << kTableCsvHeader << '\n';
      for (const auto& r : rows) write_csv_row(out, r);
      break;
    case Format::kJson: {
      json arr = json::array();
      for (const auto& r : rows) arr.push_back(record_json(r));
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::kText: write_text_rows(out, rows); break;
  }
  return kPass;
}

int cmd_envelopes(std::uint64_t max_k, const Options& opts, std::ostream& out) {
  if (max_k < 2) throw UsageError("envelopes: --max-k must be at least 2");
  const unsigned gap_digits = std::max(opts.digits, 10u);
  json arr = json::array();
  if (opts.format == Format::kCsv)
    out << "k,q_minus,q_plus,q_minus_decimal,q_plus_decimal,gap_minus,gap_plus\n";
  for (std::uint64_t k = 2; k <= max_k; ++k) {
    const auto [lo, hi] = envelope(k);
    const std::string gm = gap_to_normal_limit(lo, gap_digits);
    const std::string gp = gap_to_normal_limit(hi, gap_digits);
    switch (opts.format) {
      case Format::kCsv:
        out << k << ',' << lo.to_fraction_text() << ',' << hi.to_fraction_text() << ','
            << to_decimal_string(lo, opts.digits) << ',' << to_decimal_string(hi, opts.digits)
            << ',' << gm << ',' << gp << '\n';
        break;
      case Format::kJson:
        arr.push_back(json{{"k", k},
                           {"q_minus", lo.to_fraction_text()},
                           {"q_plus", hi.to_fraction_text()},
                           {"q_minus_decimal", to_decimal_string(lo, opts.digits)},
                           {"q_plus_decimal", to_decimal_string(hi, opts.digits)},
                           {"gap_minus", gm},
                           {"gap_plus", gp}});
        break;
      case Format::kText:
        out << "k=" << k << "  Q- = P_" << (k + 1) * (k + 1) - 2 << " ~ "
            << to_decimal_string(lo, opts.digits) << "  Q+ = P_" << k * k << " ~ "
            << to_decimal_string(hi, opts.digits) << "  gaps to " << kNormalOneSigmaText << ": "
            << gm << ", " << gp << '\n';
        break;
    }
  }
  if (opts.format == Format::kJson) out << arr.dump(2) << '\n';
  return kPass;
}

int cmd_deltas(std::uint64_t k, const Options& opts, std::ostream& out) {
  if (k < 2) throw UsageError("deltas: k must be at least 2");
  const DeltaSequence seq = delta_sequence(k);
  json arr = json::array();
  if (opts.format == Format::kCsv) out << "k,i,delta,delta_decimal\n";
  for (std::size_t i = 0; i < seq.deltas.size(); ++i) {
    const auto& d = seq.deltas[i];
    const std::string dec = to_decimal_string(d, opts.digits);
    switch (opts.format) {
      case Format::kCsv:
        out << k << ',' << i << ',' << d.to_fraction_text() << ',' << dec << '\n';
        break;
      case Format::kJson:
        arr.push_back(json{{"k", k}, {"i", i}, {"delta", d.to_fraction_text()}, {"delta_decimal", dec}});
        break;
      case Format::kText:
        out << "delta_" << i << " = " << d.to_fraction_text() << " ~ " << dec << '\n';
        break;
    }
  }
  if (opts.format == Format::kJson) out << arr.dump(2) << '\n';
  if (opts.format == Format::kText) out << "anchor P{S_" << k * k - 2 << "=" << k << "} + k*delta_0 = "
                                        << anchor_identity(k).to_fraction_text() << '\n';
  return kPass;
}

int cmd_verify(std::uint64_t max_n, std::uint64_t max_k, std::ostream& out) {
  if (max_n < 2) throw UsageError("verify: --max-n must be at least 2");
  if (max_k < 2) throw UsageError("verify: --max-k must be at least 2");
  const json report = run_verification({max_n, max_k});
  out << report.dump(2) << '\n';
  return report_passed(report) ? kPass : kVerificationFailure;
}

int cmd_compare(std::uint64_t n, const Options& opts, std::ostream& out) {
  if (n < 1) throw UsageError("compare: n must be at least 1");
  if (opts.a.p() == 0) throw UsageError("compare: a must be positive");
  const DyadicProb exact = probability(n, opts);

  // Chebyshev: P{|S_n| <= a sqrt(n)} >= 1 - 1/a^2, vacuous for a <= 1.
  mpq_class cheb(mpz_class(static_cast<unsigned long>(opts.a.q())) * opts.a.q(),
                 mpz_class(static_cast<unsigned long>(opts.a.p())) * opts.a.p());
  cheb.canonicalize();
  cheb = 1 - cheb;
  const bool vacuous = sgn(cheb) <= 0;
  if (vacuous) cheb = 0;

  const double normal =
      opts.a.is_one() ? kNormalOneSigma : std::erf(opts.a.approx() / std::sqrt(2.0));
  mpq_class exact_q(exact.numerator().mpz());
  mpz_class denom;
  mpz_setbit(denom.get_mpz_t(), static_cast<mp_bitcnt_t>(exact.exponent()));
  exact_q /= denom;
  const double exact_val = exact_q.get_d();

  const unsigned digits = std::max(opts.digits, 10u);
  const std::string exact_dec = to_decimal_string(exact, digits);
  const std::string cheb_frac = cheb.get_str();
  const std::string cheb_dec = fixed10(cheb.get_d());
  const std::string normal_dec = fixed10(normal);
  const std::string minus_cheb = fixed10(exact_val - cheb.get_d());
  const std::string minus_normal = fixed10(exact_val - normal);

  switch (opts.format) {
    case Format::kJson:
      out << json{{"n", n},
                  {"a", opts.a.to_string()},
                  {"exact", exact.to_fraction_text()},
                  {"exact_decimal", exact_dec},
                  {"chebyshev", cheb_frac},
                  {"chebyshev_decimal", cheb_dec},
                  {"chebyshev_vacuous", vacuous},
                  {"normal", normal_dec},
                  {"exact_minus_chebyshev", minus_cheb},
                  {"exact_minus_normal", minus_normal}}
                 .dump(2)
          << '\n';
      break;
    case Format::kCsv:
      out << "n,a,exact,exact_decimal,chebyshev,chebyshev_decimal,chebyshev_vacuous,normal,"
             "exact_minus_chebyshev,exact_minus_normal\n"
          << n << ',' << opts.a.to_string() << ',' << exact.to_fraction_text() << ',' << exact_dec
          << ',' << cheb_frac << ',' << cheb_dec << ',' << (vacuous ? "true" : "false") << ','
          << normal_dec << ',' << minus_cheb << ',' << minus_normal << '\n';
      break;
    case Format::kText:
      out << "exact      P{|S_" << n << "| <= " << opts.a.to_string() << "*sqrt(" << n
          << ")} = " << exact.to_fraction_text() << " = " << exact_dec << '\n'
          << "chebyshev  max(0, 1 - 1/a^2)  = " << cheb_dec << (vacuous ? "  (vacuous)" : "")
          << '\n'
          << "normal     P{|Z| <= a}         = " << normal_dec << '\n'
          << "exact - chebyshev = " << minus_cheb << ", exact - normal = " << minus_normal << '\n';
      break;
  }
  return kPass;
}

std::vector<OutputRecord> parse_table_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kTableCsvHeader)
    throw std::invalid_argument("table CSV: missing or unexpected header");
  std::vector<OutputRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 6) throw std::invalid_argument("table CSV: expected 6 fields: " + line);
    OutputRecord r;
    r.n = std::stoull(f[0]);
    r.k = std::stoull(f[1]);
    r.side = f[2];
    r.increment = f[3];
    r.p_exact = f[4];
    r.p_decimal = f[5];
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<OutputRecord> parse_table_json(const std::string& text) {
  const auto arr = nlohmann::json::parse(text);
  std::vector<OutputRecord> rows;
  for (const auto& j : arr) {
    OutputRecord r;
    r.n = j.at("n").get<std::uint64_t>();
    r.k = j.at("k").get<std::uint64_t>();
    r.side = j.at("side").get<std::string>();
    r.increment = j.at("increment").get<std::string>();
    r.p_exact = j.at("p_exact").get<std::string>();
    r.p_decimal = j.at("p_decimal").get<std::string>();
    r.bound_class = j.at("bound_class").get<std::string>();
    rows.push_back(std::move(r));
  }
  return rows;
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact tail probabilities of Rademacher sums", "radtail"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string a_text = "1";
  std::string format_text = "text";
  std::string engine_text = "direct";
  unsigned digits = 4;
  bool digits_given = false;
  std::uint64_t max_n = 2000;
  std::uint64_t max_k = 100;

  app.add_option("--a", a_text, "number of standard deviations, as p/q");
  app.add_option("--format", format_text, "output format")
      ->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option_function<unsigned>(
         "--digits", [&](unsigned d) { digits = d; digits_given = true; },
         "decimal places (1-50)")
      ->check(CLI::Range(1u, kMaxDecimalDigits));
  app.add_option("--engine", engine_text, "how P_n is computed")
      ->check(CLI::IsMember({"direct", "recursive", "enumerate", "convolve"}));
  app.add_option("--max-n", max_n, "largest n for verify");
  auto* max_k_opt = app.add_option("--max-k", max_k, "largest block index");

  std::uint64_t n = 0;
  auto* pn = app.add_subcommand("pn", "central probability P{|S_n| <= a sqrt(n)}");
  pn->add_option("n", n)->required();

  std::uint64_t from = 0, to = 0;
  auto* table = app.add_subcommand("table", "P_n with step side and increment for a range of n");
  table->add_option("from", from)->required();
  table->add_option("to", to)->required();

  auto* envelopes = app.add_subcommand("envelopes", "block minima and maxima Q_k^-, Q_k^+");

  std::uint64_t delta_k = 0;
  auto* deltas = app.add_subcommand("deltas", "gain-minus-loss sequence of a block");
  deltas->add_option("k", delta_k)->required();

  auto* verify = app.add_subcommand("verify", "run every invariant check and emit a JSON report");

  std::uint64_t compare_n = 0;
  auto* compare = app.add_subcommand("compare", "exact value against Chebyshev and normal");
  compare->add_option("n", compare_n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kPass;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsageError;
  }

  try {
    Options opts;
    opts.a = SigmaThreshold::parse(a_text);
    opts.format = format_text == "csv"    ? Format::kCsv
                  : format_text == "json" ? Format::kJson
                                          : Format::kText;
    opts.engine = engine_text == "recursive"   ? PnEngine::kRecursive
                  : engine_text == "enumerate" ? PnEngine::kEnumerate
                  : engine_text == "convolve"  ? PnEngine::kConvolve
                                               : PnEngine::kDirect;
    opts.digits = digits;

    if (*pn) return cmd_pn(n, opts, out);
    if (*table) return cmd_table(from, to, opts, out);
    if (*envelopes) return cmd_envelopes(max_k_opt->count() ? max_k : 10, opts, out);
    if (*deltas) return cmd_deltas(delta_k, opts, out);
    if (*verify) return cmd_verify(max_n, max_k, out);
    if (*compare) {
      if (!digits_given) opts.digits = 10;
      return cmd_compare(compare_n, opts, out);
    }
  } catch (const UsageError& e) {
    err << "radtail: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "radtail: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "radtail: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace rademacher::cli
