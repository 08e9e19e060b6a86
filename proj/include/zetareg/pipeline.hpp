#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "zetareg/error.hpp"
#include "zetareg/expr.hpp"
#include "zetareg/regularize.hpp"
#include "zetareg/series.hpp"

namespace zetareg {

inline constexpr std::size_t kDefaultTerms = 64;
inline constexpr std::size_t kMaxTerms = 512;
/// Extra series coefficients computed past K to tighten tail bounds.
inline constexpr std::size_t kLookahead = 4;

struct RunConfig {
  std::size_t terms = kDefaultTerms;  // K, the last summand index
  PrecisionConfig precision;
  bool exact_only = false;
  ConvergenceOptions convergence;
};

/// Failure of one pipeline stage ("config", "parse", "analyticity",
/// "series", "backend", "regularize").
class PipelineError : public Error {
 public:
  PipelineError(std::string stage, const std::string& message,
                std::optional<std::size_t> position = std::nullopt);

  const std::string& stage() const { return stage_; }
  /// The message without the stage prefix.
  const std::string& detail() const { return detail_; }
  /// Character offset for parse failures.
  std::optional<std::size_t> position() const { return position_; }

 private:
  std::string stage_;
  std::string detail_;
  std::optional<std::size_t> position_;
};

struct CrossCheck {
  bool exact = true;   // both paths computed in exact arithmetic
  bool equal = true;   // every term agreed exactly (exact only)
  std::optional<std::size_t> first_mismatch;
  Scalar max_discrepancy;
};

struct ExpressionReport {
  std::string expression;
  ExprPtr ast;
  PowerSeries series;
  RegularizationResult result;
  CrossCheck cross_check;
};

struct SeriesReport {
  std::string expression;
  ExprPtr ast;
  PowerSeries series;
};

/// parse -> validate -> expand to `order`. Same stage names and exact-only
/// rule as regularize_expression.
SeriesReport expand_expression(std::string_view text, std::size_t order, const RunConfig& config = {});

/// parse -> validate -> expand -> direct sum -> Bernoulli cross-check.
/// Every failure is reported as a PipelineError naming its stage.
ExpressionReport regularize_expression(std::string_view text, const RunConfig& config = {});

/// Compares the direct summands of `result` against the Bernoulli-path
/// summands for `series`, filling each record's cross_term.
CrossCheck cross_check(const PowerSeries& series, RegularizationResult& result);

}  // namespace zetareg
