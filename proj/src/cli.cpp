#include "zetareg/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <future>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zetareg/catalog.hpp"
#include "zetareg/pipeline.hpp"
#include "zetareg/zetafn.hpp"

namespace zetareg::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr int kErrorDigits = 6;

constexpr const char* kFooter =
    "Exit codes:\n"
    "  0  success\n"
    "  1  internal error (including a failed identity suite)\n"
    "  2  invalid input: bad flags, parse or analyticity errors, --exact-only violations\n"
    "  3  eval only: the series was classified SeriesDivergent (the partial sum is still printed)\n"
    "\n"
    "ZETAREG_TERMS sets the default of --terms; the flag wins.";

struct Options {
  std::string subcommand;
  std::string expression;
  RunConfig run;
  bool json = false;
};

std::size_t terms_from_env() {
  const char* raw = std::getenv("ZETAREG_TERMS");
  if (raw == nullptr || *raw == '\0') return kDefaultTerms;
  const std::string_view text(raw);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw PipelineError("config", "ZETAREG_TERMS is not a non-negative integer: '" +
                                      std::string(text) + "'");
  }
  return value;
}

std::string render_value(const Scalar& x, int digits) { return render_decimal(x, digits); }

std::string render_error(const std::optional<Scalar>& x) {
  return x ? render_scientific(*x, kErrorDigits) : "none";
}

json json_error(const std::optional<Scalar>& x) {
  return x ? json(render_scientific(*x, kErrorDigits)) : json(nullptr);
}

std::string cross_check_text(const CrossCheck& c) {
  if (c.exact && c.equal) return "exact-equal";
  if (c.exact) return "MISMATCH at k=" + std::to_string(c.first_mismatch.value_or(0));
  return "max_discrepancy " + render_scientific(c.max_discrepancy, kErrorDigits);
}

json cross_check_json(const CrossCheck& c) {
  if (c.exact && c.equal) return "exact-equal";
  json j;
  j["max_discrepancy"] = render_scientific(c.max_discrepancy, kErrorDigits);
  if (c.first_mismatch) j["first_mismatch"] = *c.first_mismatch;
  return j;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  const ExpressionReport report = regularize_expression(o.expression, o.run);
  const RegularizationResult& r = report.result;
  const int digits = o.run.precision.render_digits;
  const bool divergent = r.verdict == Verdict::SeriesDivergent;
  const std::string banner = "WARNING: summands grow without bound (SeriesDivergent); the value "
                             "below is the partial sum through k=" +
                             std::to_string(r.terms_used - 1) + ", not a regularized limit";

  if (o.json) {
    if (divergent) err << banner << '\n';
    json j;
    j["expression"] = report.expression;
    j["backend"] = to_string(r.backend);
    j["terms_used"] = r.terms_used;
    j["value"] = to_string(r.value, digits);
    j["value_decimal"] = render_value(r.value, digits);
    j["verdict"] = to_string(r.verdict);
    j["tail_bound"] = json_error(r.tail_bound);
    json terms = json::array();
    for (const TermRecord& t : r.terms) {
      json row;
      row["k"] = t.k;
      row["term"] = to_string(t.term, digits);
      row["partial_sum"] = to_string(t.partial_sum, digits);
      terms.push_back(std::move(row));
    }
    j["terms"] = std::move(terms);
    j["cross_check"] = cross_check_json(report.cross_check);
    out << j.dump(2) << '\n';
  } else {
    if (divergent) out << banner << '\n';
    out << "expression:  " << report.expression << '\n';
    out << "parsed:      " << render(*report.ast) << '\n';
    out << "backend:     " << to_string(r.backend) << '\n';
    out << "terms_used:  " << r.terms_used << '\n';
    out << "value:       " << render_value(r.value, digits) << '\n';
    if (r.value.is_exact()) out << "exact:       " << to_string(r.value, digits) << '\n';
    out << "verdict:     " << to_string(r.verdict) << " (" << r.convergence.rule << ")\n";
    out << "tail_bound:  " << render_error(r.tail_bound) << '\n';
    out << "cross_check: " << cross_check_text(report.cross_check) << '\n';
  }
  return divergent ? kExitDivergent : kExitOk;
}

int cmd_series(const Options& o, std::ostream& out) {
  const SeriesReport report = expand_expression(o.expression, o.run.terms, o.run);
  const PowerSeries& s = report.series;
  const int digits = o.run.precision.render_digits;
  const char* backend = to_string(s.exact() ? Backend::Exact : Backend::Float);
  if (o.json) {
    json j;
    j["expression"] = report.expression;
    j["backend"] = backend;
    j["order"] = s.order();
    json rows = json::array();
    for (std::size_t k = 0; k <= s.order(); ++k) {
      json row;
      row["k"] = k;
      row["c_k"] = to_string(s[k], digits);
      row["derivative"] = to_string(s.derivative(k), digits);
      rows.push_back(std::move(row));
    }
    j["coefficients"] = std::move(rows);
    out << j.dump(2) << '\n';
  } else {
    out << "expression: " << report.expression << '\n';
    out << "backend:    " << backend << '\n';
    out << "order:      " << s.order() << '\n';
    out << "k\tc_k\tf^(k)(0)\n";
    for (std::size_t k = 0; k <= s.order(); ++k) {
      out << k << '\t' << to_string(s[k], digits) << '\t' << to_string(s.derivative(k), digits)
          << '\n';
    }
  }
  return kExitOk;
}

int cmd_examples(const Options& o, std::ostream& out) {
  o.run.precision.validate();
  if (o.run.terms > kMaxTerms) {
    throw PipelineError("config", "terms must not exceed " + std::to_string(kMaxTerms));
  }
  const auto& entries = catalog_entries();
  std::vector<std::future<VerificationReport>> jobs;
  jobs.reserve(entries.size());
  for (const CatalogEntry& e : entries) {
    jobs.push_back(std::async(std::launch::async, [&e, &o] {
      return catalog_verify(e, o.run.terms, o.run.precision);
    }));
  }
  std::vector<VerificationReport> reports;
  reports.reserve(jobs.size());
  for (auto& job : jobs) reports.push_back(job.get());

  const int digits = o.run.precision.render_digits;
  if (o.json) {
    json rows = json::array();
    for (std::size_t i = 0; i < entries.size(); ++i) {
      const CatalogEntry& e = entries[i];
      const VerificationReport& r = reports[i];
      json row;
      row["id"] = e.id;
      row["expression"] = e.expression;
      row["K"] = r.terms;
      row["engine_value"] = render_value(r.engine.value, digits);
      row["verdict"] = to_string(r.engine.verdict);
      row["tail_bound"] = json_error(r.engine.tail_bound);
      row["closed_form"] = e.published_closed_form;
      row["reference"] = render_value(r.closed_form_value, digits);
      row["delta"] = render_scientific(r.delta, kErrorDigits);
      row["published_series"] = e.published_series;
      row["published_series_value"] = render_value(r.published_series_value, digits);
      row["engine_matches_closed_form"] = r.engine_matches_closed_form;
      row["engine_matches_published_series"] = r.engine_matches_published_series;
      row["published_series_matches_closed_form"] = r.published_series_matches_closed_form;
      row["derived_summands_match"] = r.derived_summands_match;
      row["status"] = to_string(r.status);
      if (!e.note.empty()) row["note"] = e.note;
      rows.push_back(std::move(row));
    }
    json j;
    j["entries"] = std::move(rows);
    out << j.dump(2) << '\n';
    return kExitOk;
  }

  std::vector<std::vector<std::string>> table;
  table.push_back({"id", "K", "engine value", "reference", "|delta|", "status"});
  for (const VerificationReport& r : reports) {
    table.push_back({r.id, std::to_string(r.terms), render_value(r.engine.value, digits),
                     render_value(r.closed_form_value, digits),
                     render_scientific(r.delta, kErrorDigits), to_string(r.status)});
  }
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : table) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    out << line << '\n';
  }
  return kExitOk;
}

int cmd_identities(const Options& o, std::ostream& out) {
  const std::vector<IdentityReport> suites = {
      check_binomial_shift_identity(50),
      check_bernoulli_sum_identity(60),
      check_zeta_trivial_zeros(25),
  };
  const bool all = std::all_of(suites.begin(), suites.end(),
                               [](const IdentityReport& r) { return r.passed(); });
  if (o.json) {
    json rows = json::array();
    for (const IdentityReport& r : suites) {
      json row;
      row["name"] = r.name;
      row["range"] = r.range;
      row["cases"] = r.cases;
      row["failures"] = r.failures;
      row["passed"] = r.passed();
      if (!r.passed()) row["first_failure"] = r.first_failure;
      rows.push_back(std::move(row));
    }
    json j;
    j["suites"] = std::move(rows);
    j["passed"] = all;
    out << j.dump(2) << '\n';
  } else {
    for (const IdentityReport& r : suites) {
      out << (r.passed() ? "PASS" : "FAIL") << "  " << r.name << "  [" << r.range << "]  "
          << r.cases << " cases";
      if (!r.passed()) out << ", " << r.failures << " failures, first: " << r.first_failure;
      out << '\n';
    }
  }
  return all ? kExitOk : kExitInternal;
}

void report_pipeline_error(const PipelineError& e, const Options& o, std::ostream& err) {
  err << "zetareg: error in stage '" << e.stage() << "'";
  if (e.position()) err << " at position " << *e.position();
  err << ": " << e.detail() << '\n';
  if (e.position()) {
    err << "  " << o.expression << '\n';
    err << "  " << std::string(*e.position(), ' ') << "^\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app("Zeta-regularized values of divergent integrals of f over [0, inf).", "zetareg");
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<std::size_t> terms;
  std::string format = "text";
  app.add_option("--terms", terms, "Last summand index K (default 64, at most 512)");
  app.add_option("--float-bits", o.run.precision.float_bits, "Float backend precision in bits (>= 53)")
      ->capture_default_str();
  app.add_option("--digits", o.run.precision.render_digits, "Significant digits in decimal output")
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--exact-only", o.run.exact_only,
               "Fail with exit 2 when an expression needs the float backend");

  CLI::App* eval = app.add_subcommand("eval", "Regularize the integral of an expression in x");
  eval->add_option("expression", o.expression, "Expression in x, e.g. \"sin(x)\"")->required();
  CLI::App* series = app.add_subcommand("series", "Print Maclaurin coefficients up to order K");
  series->add_option("expression", o.expression, "Expression in x")->required();
  app.add_subcommand("examples", "Run the example catalog against its reference values");
  app.add_subcommand("identities", "Run the exact binomial, Bernoulli and zeta identity suites");

  std::vector<const char*> argv{"zetareg"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "zetareg: error in stage 'config': " << e.what() << '\n';
    err << "Run 'zetareg --help' for usage.\n";
    return kExitUser;
  }
  o.subcommand = app.get_subcommands().front()->get_name();
  o.json = format == "json";

  try {
    o.run.terms = terms ? *terms : terms_from_env();
    if (o.subcommand == "eval") return cmd_eval(o, out, err);
    if (o.subcommand == "series") return cmd_series(o, out);
    if (o.subcommand == "examples") return cmd_examples(o, out);
    return cmd_identities(o, out);
  } catch (const PipelineError& e) {
    report_pipeline_error(e, o, err);
    return kExitUser;
  } catch (const DomainError& e) {
    err << "zetareg: error in stage 'config': " << e.what() << '\n';
    return kExitUser;
  } catch (const std::exception& e) {
    err << "zetareg: internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace zetareg::cli
