#include "zetareg/numerics.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>

#include "zetareg/error.hpp"

namespace zetareg {

void PrecisionConfig::validate() const {
  if (float_bits < 53) {
    throw DomainError("float_bits must be at least 53, got " + std::to_string(float_bits));
  }
  if (float_bits > MPFR_PREC_MAX / 2) {
    throw DomainError("float_bits is too large");
  }
  if (render_digits < 1) {
    throw DomainError("render_digits must be at least 1, got " + std::to_string(render_digits));
  }
}

// BigFloat

BigFloat::BigFloat(long bits) : owns_(true) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(std::max<long>(bits, MPFR_PREC_MIN)));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const mpq_class& q, long bits) : BigFloat(bits) {
  mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(double d, long bits) : BigFloat(bits) {
  mpfr_set_d(value_, d, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) : owns_(true) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept : owns_(true) {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { release(); }

void BigFloat::release() noexcept {
  if (owns_) {
    mpfr_clear(value_);
    owns_ = false;
  }
}

// Scalar

Scalar::Scalar(mpq_class q) : value_(std::move(q)) {
  std::get<mpq_class>(value_).canonicalize();
}

Scalar Scalar::rational(long num, long den) {
  if (den == 0) throw DomainError("division by zero");
  mpq_class q(num, den);
  return Scalar(std::move(q));
}

const mpq_class& Scalar::rational() const { return std::get<mpq_class>(value_); }

const BigFloat& Scalar::big_float() const { return std::get<BigFloat>(value_); }

BigFloat Scalar::to_float(long bits) const {
  if (is_exact()) return BigFloat(rational(), bits);
  return big_float();
}

long Scalar::precision() const { return is_exact() ? 0 : big_float().precision(); }

int Scalar::sign() const {
  if (is_exact()) return sgn(rational());
  return mpfr_sgn(big_float().get());
}

double Scalar::log_abs() const {
  BigFloat f = to_float(64);
  BigFloat r(64);
  mpfr_abs(r.get(), f.get(), MPFR_RNDN);
  mpfr_log(r.get(), r.get(), MPFR_RNDN);
  return r.to_double();
}

namespace {

using MpfrBinary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

Scalar float_binary(const Scalar& a, const Scalar& b, MpfrBinary op) {
  const long bits = std::max(a.precision(), b.precision());
  const BigFloat fa = a.to_float(bits);
  const BigFloat fb = b.to_float(bits);
  BigFloat r(bits);
  op(r.get(), fa.get(), fb.get(), MPFR_RNDN);
  return Scalar(std::move(r));
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.rational() + b.rational()));
  return float_binary(a, b, mpfr_add);
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.rational() - b.rational()));
  return float_binary(a, b, mpfr_sub);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.rational() * b.rational()));
  return float_binary(a, b, mpfr_mul);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.rational() / b.rational()));
  return float_binary(a, b, mpfr_div);
}

Scalar operator-(const Scalar& a) {
  if (a.is_exact()) return Scalar(mpq_class(-a.rational()));
  BigFloat r(a.precision());
  mpfr_neg(r.get(), a.big_float().get(), MPFR_RNDN);
  return Scalar(std::move(r));
}

std::strong_ordering compare(const Scalar& a, const Scalar& b) {
  int c = 0;
  if (a.is_exact() && b.is_exact()) {
    c = cmp(a.rational(), b.rational());
  } else {
    const long bits = std::max(a.precision(), b.precision());
    c = mpfr_cmp(a.to_float(bits).get(), b.to_float(bits).get());
  }
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool Scalar::identical(const Scalar& other) const {
  if (is_exact() != other.is_exact()) return false;
  if (is_exact()) return rational() == other.rational();
  return precision() == other.precision() &&
         mpfr_equal_p(big_float().get(), other.big_float().get()) != 0;
}

Scalar abs(const Scalar& x) { return x.sign() < 0 ? -x : x; }

Scalar pow_int(const Scalar& base, unsigned long exponent) {
  if (base.is_exact()) {
    mpz_class num;
    mpz_class den;
    mpz_pow_ui(num.get_mpz_t(), base.rational().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.rational().get_den_mpz_t(), exponent);
    return Scalar(mpq_class(num, den));
  }
  BigFloat r(base.precision());
  mpfr_pow_ui(r.get(), base.big_float().get(), exponent, MPFR_RNDN);
  return Scalar(std::move(r));
}

mpz_class factorial_z(unsigned long n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Scalar factorial(unsigned long n) { return Scalar(factorial_z(n)); }

namespace {

using MpfrUnary = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);

Scalar float_unary(const Scalar& x, long bits, MpfrUnary op) {
  const long prec = std::max(bits, x.precision());
  const BigFloat fx = x.to_float(prec);
  BigFloat r(prec);
  op(r.get(), fx.get(), MPFR_RNDN);
  return Scalar(std::move(r));
}

}  // namespace

Scalar pi(long bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return Scalar(std::move(r));
}

Scalar euler_e(long bits) {
  BigFloat one(mpq_class(1), bits);
  BigFloat r(bits);
  mpfr_exp(r.get(), one.get(), MPFR_RNDN);
  return Scalar(std::move(r));
}

Scalar sin(const Scalar& x, long bits) { return float_unary(x, bits, mpfr_sin); }
Scalar cos(const Scalar& x, long bits) { return float_unary(x, bits, mpfr_cos); }
Scalar sinh(const Scalar& x, long bits) { return float_unary(x, bits, mpfr_sinh); }
Scalar cosh(const Scalar& x, long bits) { return float_unary(x, bits, mpfr_cosh); }
Scalar exp(const Scalar& x, long bits) { return float_unary(x, bits, mpfr_exp); }
Scalar erf(const Scalar& x, long bits) { return float_unary(x, bits, mpfr_erf); }

Scalar log(const Scalar& x, long bits) {
  if (x.sign() <= 0) throw DomainError("log of a nonpositive value");
  return float_unary(x, bits, mpfr_log);
}

Scalar sqrt(const Scalar& x, long bits) {
  if (x.sign() < 0) throw DomainError("sqrt of a negative value");
  return float_unary(x, bits, mpfr_sqrt);
}

// Rendering

namespace {

// value = sign * 0.<digits> * 10^exponent
struct DecimalDigits {
  bool negative = false;
  std::string digits;
  long exponent = 0;
};

mpq_class pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? mpq_class(mpz_class(1), p) : mpq_class(p);
}

DecimalDigits exact_digits(const mpq_class& q, int digits) {
  DecimalDigits out;
  out.negative = sgn(q) < 0;
  const mpq_class a = abs(q);
  // Find E with 10^(E-1) <= a < 10^E.
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  while (a >= pow10(e)) ++e;
  while (a < pow10(e - 1)) --e;

  const mpq_class scaled = a * pow10(digits - e);
  mpz_class n;
  mpz_class r;
  mpz_fdiv_qr(n.get_mpz_t(), r.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  // Round half to even on the remainder r / den.
  const mpz_class twice = 2 * r;
  const int half = mpz_cmp(twice.get_mpz_t(), scaled.get_den_mpz_t());
  if (half > 0 || (half == 0 && mpz_odd_p(n.get_mpz_t()) != 0)) ++n;
  std::string s = n.get_str();
  if (static_cast<int>(s.size()) > digits) {
    ++e;
    s.pop_back();
  }
  out.digits = std::move(s);
  out.exponent = e;
  return out;
}

DecimalDigits float_digits(const BigFloat& f, int digits) {
  DecimalDigits out;
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, static_cast<std::size_t>(digits), f.get(), MPFR_RNDN);
  std::string s(raw);
  mpfr_free_str(raw);
  if (!s.empty() && s.front() == '-') {
    out.negative = true;
    s.erase(0, 1);
  }
  out.digits = std::move(s);
  out.exponent = static_cast<long>(e);
  return out;
}

std::string positional(const DecimalDigits& d) {
  const long n = static_cast<long>(d.digits.size());
  std::string s;
  if (d.exponent <= 0) {
    s = "0." + std::string(static_cast<std::size_t>(-d.exponent), '0') + d.digits;
  } else if (d.exponent >= n) {
    s = d.digits + std::string(static_cast<std::size_t>(d.exponent - n), '0');
  } else {
    s = d.digits.substr(0, static_cast<std::size_t>(d.exponent)) + "." +
        d.digits.substr(static_cast<std::size_t>(d.exponent));
  }
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "0") return s;
  return d.negative ? "-" + s : s;
}

}  // namespace

std::string render_decimal(const Scalar& x, int digits) {
  if (digits < 1) throw DomainError("render digits must be at least 1");
  if (x.is_zero()) return "0";
  if (x.is_exact()) return positional(exact_digits(x.rational(), digits));
  const mpfr_srcptr v = x.big_float().get();
  if (mpfr_nan_p(v) != 0) return "nan";
  if (mpfr_inf_p(v) != 0) return mpfr_sgn(v) < 0 ? "-inf" : "inf";
  return positional(float_digits(x.big_float(), digits));
}

std::string render_scientific(const Scalar& x, int digits) {
  if (digits < 1) throw DomainError("render digits must be at least 1");
  if (x.is_zero()) return "0";
  if (!x.is_exact() && mpfr_number_p(x.big_float().get()) == 0) return render_decimal(x, digits);
  const DecimalDigits d =
      x.is_exact() ? exact_digits(x.rational(), digits) : float_digits(x.big_float(), digits);
  std::string mantissa = d.digits.substr(0, 1);
  std::string rest = d.digits.substr(1);
  while (!rest.empty() && rest.back() == '0') rest.pop_back();
  if (!rest.empty()) mantissa += "." + rest;
  return (d.negative ? "-" : "") + mantissa + "e" + std::to_string(d.exponent - 1);
}

std::string to_string(const Scalar& x, int digits) {
  if (x.is_exact()) return x.rational().get_str();
  return render_decimal(x, digits);
}

}  // namespace zetareg
