#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>
#include <variant>

namespace zetareg {

/// Precision settings shared by every stage that touches the float backend.
struct PrecisionConfig {
  long float_bits = 128;   // >= 53
  int render_digits = 30;  // >= 1

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// RAII owner of an MPFR value with a fixed binary precision.
class BigFloat {
 public:
  explicit BigFloat(long bits);
  BigFloat(const mpq_class& q, long bits);
  BigFloat(double d, long bits);

  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  void release() noexcept;

  mpfr_t value_;
  bool owns_ = false;
};

/// A number in one of two backends: an exact reduced rational, or a
/// big-float at some binary precision. Exact op Exact stays Exact; anything
/// touching a Float becomes a Float at the larger of the operand precisions.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(long n) : value_(mpq_class(n)) {}  // NOLINT(google-explicit-constructor)
  Scalar(const mpz_class& n) : value_(mpq_class(n)) {}  // NOLINT
  Scalar(mpq_class q);  // NOLINT
  Scalar(BigFloat f) : value_(std::move(f)) {}  // NOLINT

  static Scalar rational(long num, long den);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }

  /// Requires is_exact().
  const mpq_class& rational() const;
  /// Requires !is_exact().
  const BigFloat& big_float() const;

  /// Float view of this value. Exact values are rounded at `bits`; Float
  /// values are returned at their own precision.
  BigFloat to_float(long bits) const;

  /// Precision of a Float value, 0 for Exact.
  long precision() const;

  int sign() const;
  bool is_zero() const { return sign() == 0; }

  /// Natural log of |x| as a double (exponent range safe). Requires x != 0.
  double log_abs() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  /// Throws DomainError on a zero divisor.
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a);

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  /// Numeric comparison; mixed operands compare at the float precision.
  friend std::strong_ordering compare(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) { return compare(a, b); }

  /// Structural identity: same backend, same value, same precision.
  bool identical(const Scalar& other) const;

 private:
  std::variant<mpq_class, BigFloat> value_;
};

std::strong_ordering compare(const Scalar& a, const Scalar& b);

Scalar abs(const Scalar& x);
Scalar pow_int(const Scalar& base, unsigned long exponent);
/// Exact n!.
Scalar factorial(unsigned long n);
mpz_class factorial_z(unsigned long n);

// Elementary functions. Results are Float at `bits` (or at the operand's
// precision when that is larger); MPFR rounds each one correctly.
Scalar pi(long bits);
Scalar euler_e(long bits);
Scalar sin(const Scalar& x, long bits);
Scalar cos(const Scalar& x, long bits);
Scalar sinh(const Scalar& x, long bits);
Scalar cosh(const Scalar& x, long bits);
Scalar exp(const Scalar& x, long bits);
/// Throws DomainError for x <= 0.
Scalar log(const Scalar& x, long bits);
Scalar erf(const Scalar& x, long bits);
/// Throws DomainError for x < 0.
Scalar sqrt(const Scalar& x, long bits);

/// "p/q" (or "n") for Exact values; positional decimal for Float values.
std::string to_string(const Scalar& x, int digits);

/// Positional decimal rendering with `digits` significant digits, rounded
/// half-to-even; trailing fractional zeros are dropped. Exact values are
/// rounded exactly, Float values by MPFR.
std::string render_decimal(const Scalar& x, int digits);

/// Scientific rendering "d.ddde-N" with `digits` significant digits,
/// trailing zeros dropped. Used for error magnitudes.
std::string render_scientific(const Scalar& x, int digits);

}  // namespace zetareg
