#include "zetareg/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "zetareg/expr.hpp"
#include "zetareg/pipeline.hpp"

namespace zetareg {

namespace {

mpz_class fact(std::size_t n) { return factorial_z(static_cast<unsigned long>(n)); }

mpz_class z(std::size_t n) { return mpz_class(static_cast<unsigned long>(n)); }

Scalar ratio(int sign, const mpz_class& den) {
  return Scalar(mpq_class(mpz_class(sign), den));
}

int alt(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

Scalar two_over_sqrt_pi(long bits) { return Scalar(2) / sqrt(pi(bits), bits); }

CatalogEntry make_entry(std::string id, std::string expression, std::string series,
                        std::string closed_form, Summand published, Summand derived) {
  CatalogEntry e;
  e.id = std::move(id);
  e.expression = std::move(expression);
  e.published_series = std::move(series);
  e.published_closed_form = std::move(closed_form);
  e.published_summand = std::move(published);
  e.derived_summand = std::move(derived);
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> entries;

  entries.push_back(make_entry(
      "sin", "sin(x)", "(-1)^(k+1)/(2k+3)!", "sin(1)-1",
      [](std::size_t k, long) { return ratio(-alt(k), fact(2 * k + 3)); },
      [](std::size_t k, long) {
        if (k % 2 == 0) return Scalar(0);
        const std::size_t j = (k - 1) / 2;
        return ratio(alt(j), fact(2 * j + 3));
      }));
  entries.back().note =
      "published summand uses f^(2k+1)(0) = -1 for every k; the true derivatives give 1-sin(1)";

  entries.push_back(make_entry(
      "cos", "cos(x)", "(-1)^(2k+1)/(2k+2)!", "cos(1)-1",
      [](std::size_t k, long) { return ratio(-1, fact(2 * k + 2)); },
      [](std::size_t k, long) {
        if (k % 2 == 1) return Scalar(0);
        return ratio(-alt(k / 2), fact(k + 2));
      }));
  entries.back().note = "published summand drops the alternating sign; closed form follows the formula";

  entries.push_back(make_entry(
      "sinh", "sinh(x)", "1/(2k+3)!", "sinh(1)-1",
      [](std::size_t k, long) { return ratio(1, fact(2 * k + 3)); },
      [](std::size_t k, long) { return k % 2 == 1 ? ratio(1, fact(k + 2)) : Scalar(0); }));

  entries.push_back(make_entry(
      "cosh", "cosh(x)", "(-1)^(2k+1)/(2k+2)!", "1-cosh(1)",
      [](std::size_t k, long) { return ratio(-1, fact(2 * k + 2)); },
      [](std::size_t k, long) { return k % 2 == 0 ? ratio(-1, fact(k + 2)) : Scalar(0); }));

  entries.push_back(make_entry(
      "exp", "e^x", "(-1)^(k+1)/(k+2)!", "-1/e",
      [](std::size_t k, long) { return ratio(-alt(k), fact(k + 2)); },
      [](std::size_t k, long) { return ratio(-alt(k), fact(k + 2)); }));

  entries.push_back(make_entry(
      "log1p", "log(1+x)", "1/(k(k+1)(k+2))", "1/4",
      [](std::size_t k, long) { return ratio(1, z(k) * z(k + 1) * z(k + 2)); },
      [](std::size_t k, long) {
        return k == 0 ? Scalar(0) : ratio(1, z(k) * z(k + 1) * z(k + 2));
      }));
  entries.back().published_series_start = 1;
  entries.back().note = "published series starts at k=0 where its summand is undefined; summed from k=1";

  entries.push_back(make_entry(
      "exp_x2", "e^(x^2)", "(-1)^(k+1)/(2(k+2)(k+1)k!)", "1/2-1/(2*e)-sqrt(pi)/e*erf(1)",
      [](std::size_t k, long) { return ratio(-alt(k), 2 * z(k + 2) * z(k + 1) * fact(k)); },
      [](std::size_t k, long) {
        if (k % 2 == 1) return Scalar(0);
        const std::size_t j = k / 2;
        return ratio(-1, 2 * z(2 * j + 1) * z(j + 1) * fact(j));
      }));

  entries.push_back(make_entry(
      "erf", "erf(x)", "2/sqrt(pi) * (-1)^k/(2(2k+1)(k+1)(2k+3)k!)",
      "3/2*erf(1)+1/(2*e*sqrt(pi))-1/sqrt(pi)",
      [](std::size_t k, long bits) {
        return two_over_sqrt_pi(bits) *
               ratio(alt(k), 2 * z(2 * k + 1) * z(k + 1) * z(2 * k + 3) * fact(k));
      },
      [](std::size_t k, long bits) {
        if (k % 2 == 0) return Scalar(0) * two_over_sqrt_pi(bits);
        const std::size_t j = (k - 1) / 2;
        return two_over_sqrt_pi(bits) *
               ratio(alt(j), 2 * z(2 * j + 1) * z(j + 1) * z(2 * j + 3) * fact(j));
      }));

  entries.push_back(make_entry(
      "exp_mx2", "e^(-x^2)", "2/sqrt(pi) * (-1)^(k+1)/(2(2k+1)(k+1)!)",
      "-sqrt(pi)/2*erf(1)+(1-e)/(2*e)",
      [](std::size_t k, long bits) {
        return two_over_sqrt_pi(bits) * ratio(-alt(k), 2 * z(2 * k + 1) * fact(k + 1));
      },
      [](std::size_t k, long) {
        if (k % 2 == 1) return Scalar(0);
        const std::size_t j = k / 2;
        return ratio(-alt(j), 2 * z(2 * j + 1) * fact(j + 1));
      }));
  entries.back().classically_convergent = true;
  entries.back().note = "the ordinary integral converges to sqrt(pi)/2; the regularized value differs";

  entries.push_back(make_entry(
      "xsin", "x*sin(x)", "1/(2(k+2)(2k+3)(1+2k)!)", "2+sinh(1)-2*cosh(1)",
      [](std::size_t k, long) { return ratio(1, 2 * z(k + 2) * z(2 * k + 3) * fact(2 * k + 1)); },
      [](std::size_t k, long) {
        if (k < 2 || k % 2 == 1) return Scalar(0);
        const std::size_t j = (k - 2) / 2;
        return ratio(-alt(j), 2 * z(j + 2) * z(2 * j + 3) * fact(2 * j + 1));
      }));
  entries.back().note = "published summand lacks the (-1)^(k+1) factor the formula produces";

  for (unsigned m = 0; m <= 4; ++m) entries.push_back(monomial_entry(m));
  return entries;
}

bool agree(const Scalar& a, const std::optional<Scalar>& tail_a, const Scalar& b,
           const std::optional<Scalar>& tail_b, long bits) {
  if (!tail_a || !tail_b) return false;
  const Scalar scale = std::max({Scalar(1), abs(a), abs(b)});
  Scalar slack = scale * Scalar(BigFloat(std::ldexp(1.0, -static_cast<int>(bits) + 8), bits));
  return compare(abs(a - b), *tail_a + *tail_b + slack) <= 0;
}

}  // namespace

const char* to_string(EntryStatus s) {
  return s == EntryStatus::Verified ? "verified" : "paper-discrepant";
}

CatalogEntry monomial_entry(unsigned m) {
  const std::string ms = std::to_string(m);
  const int sign = m % 2 == 0 ? -1 : 1;
  CatalogEntry e = make_entry(
      "xm" + ms, "x^" + ms, "(-1)^(m+1) m!/(m+2)! at k=m, 0 elsewhere",
      "(-1)^" + std::to_string(m + 1) + "/(" + std::to_string(m + 1) + "*" +
          std::to_string(m + 2) + ")",
      [m, sign](std::size_t k, long) {
        if (k != m) return Scalar(0);
        return Scalar(mpq_class(mpz_class(sign * fact(m)), fact(m + 2)));
      },
      [m, sign](std::size_t k, long) {
        if (k != m) return Scalar(0);
        return Scalar(mpq_class(mpz_class(sign), z(m + 1) * z(m + 2)));
      });
  e.published_series_length = m + 1;
  return e;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry* find_entry(std::string_view id) {
  const auto& entries = catalog_entries();
  const auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const CatalogEntry& e) { return e.id == id; });
  return it == entries.end() ? nullptr : &*it;
}

VerificationReport catalog_verify(const CatalogEntry& entry, std::size_t terms,
                                  const PrecisionConfig& config) {
  VerificationReport report;
  report.id = entry.id;
  report.terms = terms;

  RunConfig run;
  run.terms = terms;
  run.precision = config;
  ExpressionReport engine = regularize_expression(entry.expression, run);
  report.engine = std::move(engine.result);

  report.closed_form_value = eval_constant(*parse(entry.published_closed_form), config);

  // Published series, summed on its own.
  const long bits = config.float_bits;
  const std::size_t count = entry.published_series_length.value_or(kPublishedSeriesTerms);
  std::vector<Scalar> published;
  published.reserve(count);
  Scalar sum(0);
  for (std::size_t i = 0; i < count; ++i) {
    published.push_back(entry.published_summand(entry.published_series_start + i, bits));
    sum += published.back();
  }
  report.published_series_value = sum;
  if (entry.published_series_length) {
    report.published_series_tail = Scalar(0);
  } else {
    // Derivative-equivalents d_i = t_i (i+2)! make the ratio diagnostic act
    // directly on the published summands.
    std::vector<Scalar> equivalents;
    equivalents.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
      equivalents.push_back(published[i] * factorial(static_cast<unsigned long>(i + 2)));
    }
    const ConvergenceReport c = convergence_assess(published, equivalents, count);
    if (c.verdict == Verdict::Converged) report.published_series_tail = c.tail_bound;
  }

  const std::optional<Scalar> exact_zero = Scalar(0);
  report.delta = abs(report.engine.value - report.closed_form_value);
  report.engine_matches_closed_form =
      agree(report.engine.value, report.engine.tail_bound, report.closed_form_value, exact_zero, bits);
  report.engine_matches_published_series =
      agree(report.engine.value, report.engine.tail_bound, report.published_series_value,
            report.published_series_tail, bits);
  report.published_series_matches_closed_form =
      agree(report.published_series_value, report.published_series_tail, report.closed_form_value,
            exact_zero, bits);

  report.derived_summands_match = true;
  const Scalar rel = Scalar(BigFloat(std::ldexp(1.0, -static_cast<int>(bits) + 8), bits));
  for (std::size_t k = 0; k <= std::min<std::size_t>(20, terms); ++k) {
    const Scalar& engine_term = report.engine.terms[k].term;
    const Scalar derived = entry.derived_summand(k, bits);
    bool same = false;
    if (engine_term.is_exact() && derived.is_exact()) {
      same = engine_term == derived;
    } else {
      same = compare(abs(engine_term - derived), rel * abs(derived)) <= 0;
    }
    if (!same) {
      report.derived_summands_match = false;
      break;
    }
  }

  report.status =
      report.engine_matches_closed_form ? EntryStatus::Verified : EntryStatus::PaperDiscrepant;
  return report;
}

}  // namespace zetareg
