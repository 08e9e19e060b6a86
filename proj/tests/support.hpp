#pragma once

// Test-only oracles. Nothing here calls into the series or regularize
// modules; they only borrow the parser and Scalar.

#include <cstddef>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "zetareg/expr.hpp"
#include "zetareg/numerics.hpp"
#include "zetareg/series.hpp"

namespace testing {

using zetareg::Scalar;

inline constexpr std::uint32_t kSeed = 20240917;

// Random exact values.
mpq_class random_rational(std::mt19937& rng, int num_max = 20, int den_max = 12);
zetareg::PowerSeries random_series(std::mt19937& rng, std::size_t order, double zero_chance = 0.2);
/// Random polynomial expression in x built from + - * ^ and small rationals.
zetareg::ExprPtr random_polynomial_expr(std::mt19937& rng, int depth);

// Symbolic differentiation on a private tree type.
namespace sym {

enum class Op { Const, X, Pi, E, Neg, Add, Mul, Div, Pow, Sin, Cos, Sinh, Cosh, Exp, Log, Erf, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::Const;
  mpq_class c;
  unsigned long n = 0;
  NodePtr a;
  NodePtr b;
};

NodePtr from_expr(const zetareg::Expr& e);

/// f, f', f'', ... with simplification and node sharing.
std::vector<NodePtr> derivatives(NodePtr f, std::size_t count);

/// Value at x = 0. Exact when every step is exact.
Scalar at_zero(const NodePtr& f, long bits);

}  // namespace sym

/// f^(k)(0) for k = 0..max_k by symbolic differentiation.
std::vector<Scalar> symbolic_derivatives(const std::string& expression, std::size_t max_k,
                                         long bits = 160);

/// Double-precision evaluation of `e` at x.
long double eval_at(const zetareg::Expr& e, long double x);

/// Regularized value as the integral -int_0^1 (1-t) f(-t) dt, by tanh-sinh
/// quadrature in long double.
long double quadrature_value(const std::string& expression);

/// Bernoulli numbers by the Akiyama-Tanigawa algorithm, B_1 = -1/2.
std::vector<mpq_class> akiyama_tanigawa(std::size_t n_max);

/// |a - b| <= tol * max(1, |a|, |b|).
bool close(const Scalar& a, const Scalar& b, const Scalar& tol);

Scalar tiny(long exponent10);  // 10^exponent10, exact

}  // namespace testing
