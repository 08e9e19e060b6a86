#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace zetareg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arithmetic or domain violation: division by zero, log of a nonpositive
/// constant, mismatched series orders and similar.
class DomainError : public Error {
 public:
  using Error::Error;
};

enum class ParseErrorKind {
  UnexpectedToken,
  UnknownFunction,
  BadExponent,
  UnbalancedParenthesis,
};

const char* to_string(ParseErrorKind kind);

/// Lexical or syntactic error. `position()` is a character offset in
/// [0, input.size()]; input.size() denotes the end of input.
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t position, const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  std::size_t position() const { return position_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  std::size_t position_;
  std::string detail_;
};

enum class AnalyticityRule {
  DivisorConstantTermZero,
  LogConstantTermNotPositive,
  SqrtOfNonConstant,
  SqrtOfNonPositive,
  ErfConstantTermNonZero,
};

const char* to_string(AnalyticityRule rule);

/// The expression has no Maclaurin expansion the series engine can build.
class ValidationError : public Error {
 public:
  ValidationError(AnalyticityRule rule, std::string subtree);

  AnalyticityRule rule() const { return rule_; }
  /// Rendered text of the offending subexpression.
  const std::string& subtree() const { return subtree_; }

 private:
  AnalyticityRule rule_;
  std::string subtree_;
};

}  // namespace zetareg
