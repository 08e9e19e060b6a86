#include "zetareg/error.hpp"

namespace zetareg {

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnexpectedToken: return "unexpected token";
    case ParseErrorKind::UnknownFunction: return "unknown function";
    case ParseErrorKind::BadExponent: return "bad exponent";
    case ParseErrorKind::UnbalancedParenthesis: return "unbalanced parenthesis";
  }
  return "parse error";
}

ParseError::ParseError(ParseErrorKind kind, std::size_t position, const std::string& message)
    : Error(std::string(to_string(kind)) + " at position " + std::to_string(position) + ": " +
            message),
      kind_(kind),
      position_(position),
      detail_(message) {}

const char* to_string(AnalyticityRule rule) {
  switch (rule) {
    case AnalyticityRule::DivisorConstantTermZero:
      return "division by series with zero constant term";
    case AnalyticityRule::LogConstantTermNotPositive:
      return "log constant term not positive";
    case AnalyticityRule::SqrtOfNonConstant:
      return "sqrt argument depends on x";
    case AnalyticityRule::SqrtOfNonPositive:
      return "sqrt argument not a positive constant";
    case AnalyticityRule::ErfConstantTermNonZero:
      return "erf argument has nonzero constant term";
  }
  return "not analytic at 0";
}

ValidationError::ValidationError(AnalyticityRule rule, std::string subtree)
    : Error(std::string(to_string(rule)) + " in '" + subtree + "'"),
      rule_(rule),
      subtree_(std::move(subtree)) {}

}  // namespace zetareg
