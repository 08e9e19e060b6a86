#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "zetareg/numerics.hpp"

namespace zetareg {

enum class Function { Sin, Cos, Sinh, Cosh, Exp, Log, Erf, Sqrt };

const char* to_string(Function f);
std::optional<Function> function_from_name(std::string_view name);

enum class ExprKind {
  Rational,
  Pi,
  E,
  Variable,
  Negate,
  Add,
  Sub,
  Mul,
  Div,
  PowInt,
  Apply,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable AST node for an elementary function of x. Unary nodes
/// (Negate, PowInt, Apply) keep their operand in `left`.
struct Expr {
  ExprKind kind = ExprKind::Rational;
  mpq_class value;              // Rational
  Function function = Function::Sin;  // Apply
  unsigned long exponent = 0;   // PowInt
  ExprPtr left;
  ExprPtr right;
};

namespace ast {

ExprPtr rational(mpq_class value);
ExprPtr integer(long n);
ExprPtr pi();
ExprPtr e();
ExprPtr variable();
ExprPtr negate(ExprPtr operand);
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr pow(ExprPtr base, unsigned long exponent);
ExprPtr apply(Function f, ExprPtr argument);

}  // namespace ast

/// Largest exponent accepted after `^`.
inline constexpr unsigned long kMaxExponent = 100000;

/// Parses an expression in x. Throws ParseError.
///
/// Grammar (whitespace ignored):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := '-' unary | power
///   power   := primary ('^' exponent)?
///   primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
///
/// `e^u` with a non-integer exponent u becomes exp(u). An integer literal
/// followed by `/` and another integer literal is read as one rational
/// literal unless it is itself a divisor or the denominator carries `^`.
ExprPtr parse(std::string_view text);

/// Text that parse() maps back to a structurally equal tree.
std::string render(const Expr& e);

bool structurally_equal(const Expr& a, const Expr& b);
bool contains_variable(const Expr& e);

/// Accepts `e` iff the series engine can expand it at 0; throws
/// ValidationError naming the rule and offending subtree otherwise.
void validate_analytic_at_zero(const Expr& e, const PrecisionConfig& config = {});

/// Value of a constant expression. Exact when only rational literals and
/// + - * / ^ occur; Float otherwise. Throws DomainError for domain
/// violations or when `e` contains x.
Scalar eval_constant(const Expr& e, const PrecisionConfig& config = {});

}  // namespace zetareg
