#include "zetareg/pipeline.hpp"

#include <utility>

namespace zetareg {

PipelineError::PipelineError(std::string stage, const std::string& message,
                             std::optional<std::size_t> position)
    : Error(stage + ": " + message), stage_(std::move(stage)), detail_(message), position_(position) {}

CrossCheck cross_check(const PowerSeries& series, RegularizationResult& result) {
  CrossCheck check;
  check.exact = series.exact();
  check.max_discrepancy = Scalar(0);
  for (auto& record : result.terms) {
    const Scalar other = series.derivative(record.k) * Scalar(bernoulli_path_weight(record.k));
    const Scalar gap = abs(record.term - other);
    if (compare(gap, check.max_discrepancy) > 0) check.max_discrepancy = gap;
    if (check.exact && !gap.is_zero()) {
      check.equal = false;
      if (!check.first_mismatch) check.first_mismatch = record.k;
    }
    record.cross_term = other;
  }
  if (!check.exact) check.equal = false;
  return check;
}

namespace {

template <typename Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const ParseError& e) {
    throw PipelineError(name, std::string(to_string(e.kind())) + ": " + e.detail(), e.position());
  } catch (const Error& e) {
    throw PipelineError(name, e.what());
  }
}

void check_config(const RunConfig& config) {
  stage("config", [&] {
    config.precision.validate();
    if (config.terms > kMaxTerms) {
      throw DomainError("terms must not exceed " + std::to_string(kMaxTerms));
    }
    return 0;
  });
}

}  // namespace

SeriesReport expand_expression(std::string_view text, std::size_t order, const RunConfig& config) {
  check_config(config);
  ExprPtr ast = stage("parse", [&] { return parse(text); });
  stage("analyticity", [&] {
    validate_analytic_at_zero(*ast, config.precision);
    return 0;
  });
  PowerSeries series = stage("series", [&] { return maclaurin(*ast, order, config.precision); });
  if (config.exact_only && !series.exact()) {
    throw PipelineError("backend",
                        "expression requires the float backend but --exact-only was given");
  }
  return SeriesReport{std::string(text), std::move(ast), std::move(series)};
}

ExpressionReport regularize_expression(std::string_view text, const RunConfig& config) {
  SeriesReport expanded = expand_expression(text, config.terms + kLookahead, config);
  const PowerSeries& series = expanded.series;
  RegularizationResult result =
      stage("regularize", [&] { return regularize_direct(series, config.terms, config.convergence); });
  CrossCheck check = stage("regularize", [&] { return cross_check(series, result); });

  return ExpressionReport{std::move(expanded.expression), std::move(expanded.ast),
                          std::move(expanded.series), std::move(result), std::move(check)};
}

}  // namespace zetareg
