#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "zetareg/expr.hpp"
#include "zetareg/numerics.hpp"

namespace zetareg {

/// Truncated Maclaurin series: coefficient k holds c_k = f^(k)(0) / k!.
class PowerSeries {
 public:
  /// `coeffs` must be nonempty; order() is coeffs.size() - 1.
  /// `degree_bound`, when set, asserts every coefficient past that index is
  /// zero (also beyond the truncation order).
  explicit PowerSeries(std::vector<Scalar> coeffs,
                       std::optional<std::size_t> degree_bound = std::nullopt);

  static PowerSeries zero(std::size_t order);
  static PowerSeries one(std::size_t order);
  static PowerSeries constant(const Scalar& c, std::size_t order);
  /// The identity series x.
  static PowerSeries variable(std::size_t order);
  /// Series with f^(k)(0) = derivatives[k]; useful for injecting patterns
  /// the expression grammar cannot produce.
  static PowerSeries from_derivatives(std::span<const Scalar> derivatives);

  std::size_t order() const { return coeffs_.size() - 1; }
  bool exact() const { return exact_; }
  const Scalar& operator[](std::size_t k) const { return coeffs_[k]; }
  std::span<const Scalar> coefficients() const { return coeffs_; }
  std::optional<std::size_t> degree_bound() const { return degree_bound_; }

  /// f^(k)(0) = k! * c_k.
  Scalar derivative(std::size_t k) const;

  /// Requires m <= order().
  PowerSeries truncated(std::size_t m) const;

 private:
  std::vector<Scalar> coeffs_;
  std::optional<std::size_t> degree_bound_;
  bool exact_ = true;
};

/// Elementary series with exact rational coefficients. `ErfCore` is the
/// series of the Gaussian integral G(x) = integral_0^x exp(-t^2) dt, so
/// erf = (2/sqrt(pi)) * G.
enum class ElementaryFunction { Exp, Sin, Cos, Sinh, Cosh, Log1p, ErfCore };

PowerSeries elementary_series(ElementaryFunction f, std::size_t order);

// Ring operations. Operands must have equal order (DomainError otherwise).
PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator-(const PowerSeries& a);
PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
PowerSeries operator*(const Scalar& s, const PowerSeries& a);
/// Throws DomainError when b has a zero constant term.
PowerSeries operator/(const PowerSeries& a, const PowerSeries& b);

PowerSeries pow(const PowerSeries& base, unsigned long exponent);
/// d/dx, order drops by one (order 0 yields the zero series of order 0).
PowerSeries differentiate(const PowerSeries& a);
/// integral_0^x, order rises by one.
PowerSeries integrate(const PowerSeries& a);

/// outer(inner) for an arbitrary outer series. Requires inner[0] == 0.
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner);

/// f(inner) for an elementary function. For inner[0] == 0 every function is
/// allowed; a nonzero constant term is shifted out for exp, sin, cos, sinh,
/// cosh and log (log needs it positive). Throws DomainError otherwise.
/// Shift constants are Float at config.float_bits unless trivially exact.
PowerSeries compose(Function f, const PowerSeries& inner, const PrecisionConfig& config = {});

/// Maclaurin expansion of `e` to exactly `order`. Throws ValidationError
/// when the expression is not expandable at 0.
PowerSeries maclaurin(const Expr& e, std::size_t order, const PrecisionConfig& config = {});

}  // namespace zetareg
