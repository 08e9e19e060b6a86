#include "zetareg/series.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "zetareg/error.hpp"

namespace zetareg {

namespace {

Scalar integer(std::size_t n) { return Scalar(static_cast<long>(n)); }

Scalar inverse(std::size_t n) { return Scalar(mpq_class(1, static_cast<unsigned long>(n))); }

void require_same_order(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order()) {
    throw DomainError("series order mismatch: " + std::to_string(a.order()) + " vs " +
                      std::to_string(b.order()));
  }
}

std::optional<std::size_t> max_bound(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

std::optional<std::size_t> sum_bound(std::optional<std::size_t> a, std::optional<std::size_t> b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

// The series with its constant term removed.
PowerSeries without_constant(const PowerSeries& g) {
  std::vector<Scalar> c(g.coefficients().begin(), g.coefficients().end());
  c[0] = Scalar(0);
  return PowerSeries(std::move(c), g.degree_bound());
}

bool is_identity(const PowerSeries& u) {
  if (u.order() == 0) return u[0].is_zero();
  for (std::size_t k = 0; k <= u.order(); ++k) {
    const Scalar& c = u[k];
    if (!c.is_exact()) return false;
    if (k == 1 ? c.rational() != 1 : !c.is_zero()) return false;
  }
  return true;
}

// exp(u) for u[0] == 0: h' = u' h.
PowerSeries exp_series(const PowerSeries& u) {
  const std::size_t n = u.order();
  std::vector<Scalar> weighted(n + 1);
  for (std::size_t k = 1; k <= n; ++k) weighted[k] = integer(k) * u[k];
  std::vector<Scalar> h(n + 1);
  h[0] = Scalar(1);
  for (std::size_t m = 1; m <= n; ++m) {
    Scalar acc(0);
    for (std::size_t k = 1; k <= m; ++k) {
      if (weighted[k].is_zero() || h[m - k].is_zero()) continue;
      acc += weighted[k] * h[m - k];
    }
    h[m] = acc * inverse(m);
  }
  return PowerSeries(std::move(h));
}

// (odd, even) pair with odd' = u' even and even' = sign * u' odd; sign = -1
// gives (sin u, cos u), sign = +1 gives (sinh u, cosh u).
std::pair<PowerSeries, PowerSeries> trig_pair(const PowerSeries& u, int sign) {
  const std::size_t n = u.order();
  std::vector<Scalar> weighted(n + 1);
  for (std::size_t k = 1; k <= n; ++k) weighted[k] = integer(k) * u[k];
  std::vector<Scalar> odd(n + 1);
  std::vector<Scalar> even(n + 1);
  even[0] = Scalar(1);
  for (std::size_t m = 1; m <= n; ++m) {
    Scalar s(0);
    Scalar c(0);
    for (std::size_t k = 1; k <= m; ++k) {
      if (weighted[k].is_zero()) continue;
      if (!even[m - k].is_zero()) s += weighted[k] * even[m - k];
      if (!odd[m - k].is_zero()) c += weighted[k] * odd[m - k];
    }
    odd[m] = s * inverse(m);
    even[m] = (sign < 0 ? -c : c) * inverse(m);
  }
  return {PowerSeries(std::move(odd)), PowerSeries(std::move(even))};
}

// log(1 + v) for v[0] == 0.
PowerSeries log1p_series(const PowerSeries& v) {
  if (v.order() == 0) return PowerSeries::zero(0);
  const PowerSeries dv = differentiate(v);
  const PowerSeries denom = PowerSeries::one(dv.order()) + v.truncated(dv.order());
  return integrate(dv / denom);
}

// integral_0^u exp(-t^2) dt for u[0] == 0.
PowerSeries erf_core_series(const PowerSeries& u) {
  if (u.order() == 0) return PowerSeries::zero(0);
  const PowerSeries du = differentiate(u);
  const PowerSeries low = u.truncated(du.order());
  return integrate(exp_series(-(low * low)) * du);
}

Scalar constant_value(Function f, const Scalar& g0, long bits) {
  const bool zero = g0.is_zero() && g0.is_exact();
  switch (f) {
    case Function::Sin: return zero ? Scalar(0) : sin(g0, bits);
    case Function::Cos: return zero ? Scalar(1) : cos(g0, bits);
    case Function::Sinh: return zero ? Scalar(0) : sinh(g0, bits);
    case Function::Cosh: return zero ? Scalar(1) : cosh(g0, bits);
    case Function::Exp: return zero ? Scalar(1) : exp(g0, bits);
    case Function::Erf: return zero ? Scalar(0) : erf(g0, bits);
    case Function::Log:
      if (g0.sign() <= 0) throw DomainError("log of nonpositive constant term");
      if (g0.is_exact() && g0.rational() == 1) return Scalar(0);
      return log(g0, bits);
    case Function::Sqrt:
      if (g0.sign() <= 0) throw DomainError("sqrt of nonpositive constant");
      return sqrt(g0, bits);
  }
  throw DomainError("unknown function");
}

PowerSeries series_from_elementary(ElementaryFunction f, const PowerSeries& u) {
  if (is_identity(u)) return elementary_series(f, u.order());
  switch (f) {
    case ElementaryFunction::Exp: return exp_series(u);
    case ElementaryFunction::Sin: return trig_pair(u, -1).first;
    case ElementaryFunction::Cos: return trig_pair(u, -1).second;
    case ElementaryFunction::Sinh: return trig_pair(u, +1).first;
    case ElementaryFunction::Cosh: return trig_pair(u, +1).second;
    case ElementaryFunction::Log1p: return log1p_series(u);
    case ElementaryFunction::ErfCore: return erf_core_series(u);
  }
  throw DomainError("unknown elementary function");
}

}  // namespace

// PowerSeries

PowerSeries::PowerSeries(std::vector<Scalar> coeffs, std::optional<std::size_t> degree_bound)
    : coeffs_(std::move(coeffs)), degree_bound_(degree_bound) {
  if (coeffs_.empty()) throw DomainError("power series needs at least one coefficient");
  exact_ = std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_exact(); });
}

PowerSeries PowerSeries::zero(std::size_t order) {
  return PowerSeries(std::vector<Scalar>(order + 1), 0);
}

PowerSeries PowerSeries::one(std::size_t order) { return constant(Scalar(1), order); }

PowerSeries PowerSeries::constant(const Scalar& c, std::size_t order) {
  std::vector<Scalar> coeffs(order + 1);
  if (!c.is_exact()) {
    // Keep the backend uniform: every coefficient of a Float series is Float.
    for (auto& z : coeffs) z = Scalar(0) * c;
  }
  coeffs[0] = c;
  return PowerSeries(std::move(coeffs), 0);
}

PowerSeries PowerSeries::variable(std::size_t order) {
  std::vector<Scalar> coeffs(order + 1);
  if (order >= 1) coeffs[1] = Scalar(1);
  return PowerSeries(std::move(coeffs), 1);
}

PowerSeries PowerSeries::from_derivatives(std::span<const Scalar> derivatives) {
  std::vector<Scalar> coeffs;
  coeffs.reserve(derivatives.size());
  mpz_class fact = 1;
  for (std::size_t k = 0; k < derivatives.size(); ++k) {
    if (k > 0) fact *= static_cast<unsigned long>(k);
    coeffs.push_back(derivatives[k] / Scalar(fact));
  }
  return PowerSeries(std::move(coeffs));
}

Scalar PowerSeries::derivative(std::size_t k) const {
  return Scalar(factorial_z(static_cast<unsigned long>(k))) * coeffs_.at(k);
}

PowerSeries PowerSeries::truncated(std::size_t m) const {
  if (m > order()) throw DomainError("cannot truncate to a higher order");
  return PowerSeries(std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(m) + 1),
                     degree_bound_);
}

// Elementary series

PowerSeries elementary_series(ElementaryFunction f, std::size_t order) {
  std::vector<Scalar> c(order + 1);
  mpz_class fact = 1;  // k!
  for (std::size_t k = 0; k <= order; ++k) {
    if (k > 0) fact *= static_cast<unsigned long>(k);
    const bool odd = (k % 2) == 1;
    const mpq_class inv_fact(mpz_class(1), fact);
    switch (f) {
      case ElementaryFunction::Exp:
        c[k] = Scalar(inv_fact);
        break;
      case ElementaryFunction::Sin:
        if (odd) c[k] = Scalar(((k / 2) % 2 == 0) ? inv_fact : mpq_class(-inv_fact));
        break;
      case ElementaryFunction::Cos:
        if (!odd) c[k] = Scalar(((k / 2) % 2 == 0) ? inv_fact : mpq_class(-inv_fact));
        break;
      case ElementaryFunction::Sinh:
        if (odd) c[k] = Scalar(inv_fact);
        break;
      case ElementaryFunction::Cosh:
        if (!odd) c[k] = Scalar(inv_fact);
        break;
      case ElementaryFunction::Log1p:
        if (k > 0) c[k] = Scalar(mpq_class(odd ? 1 : -1, static_cast<unsigned long>(k)));
        break;
      case ElementaryFunction::ErfCore:
        // x^(2j+1) carries (-1)^j / (j! (2j+1)).
        if (odd) {
          const unsigned long j = static_cast<unsigned long>(k / 2);
          mpq_class q(mpz_class(j % 2 == 0 ? 1 : -1), factorial_z(j) * (2 * j + 1));
          c[k] = Scalar(std::move(q));
        }
        break;
    }
  }
  return PowerSeries(std::move(c));
}

// Ring operations

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
  require_same_order(a, b);
  std::vector<Scalar> c(a.order() + 1);
  for (std::size_t k = 0; k <= a.order(); ++k) c[k] = a[k] + b[k];
  return PowerSeries(std::move(c), max_bound(a.degree_bound(), b.degree_bound()));
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
  require_same_order(a, b);
  std::vector<Scalar> c(a.order() + 1);
  for (std::size_t k = 0; k <= a.order(); ++k) c[k] = a[k] - b[k];
  return PowerSeries(std::move(c), max_bound(a.degree_bound(), b.degree_bound()));
}

PowerSeries operator-(const PowerSeries& a) {
  std::vector<Scalar> c(a.order() + 1);
  for (std::size_t k = 0; k <= a.order(); ++k) c[k] = -a[k];
  return PowerSeries(std::move(c), a.degree_bound());
}

PowerSeries operator*(const Scalar& s, const PowerSeries& a) {
  std::vector<Scalar> c(a.order() + 1);
  for (std::size_t k = 0; k <= a.order(); ++k) c[k] = s * a[k];
  return PowerSeries(std::move(c), a.degree_bound());
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
  require_same_order(a, b);
  const std::size_t n = a.order();
  const bool floating = !a.exact() || !b.exact();
  std::vector<Scalar> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Scalar acc(0);
    for (std::size_t i = 0; i <= k; ++i) {
      if (a[i].is_zero() || b[k - i].is_zero()) continue;
      acc += a[i] * b[k - i];
    }
    c[k] = std::move(acc);
  }
  if (floating) {
    // Skipped zero products must not leave Exact zeros in a Float result.
    const Scalar zero = a.exact() ? Scalar(0) * b[0] : Scalar(0) * a[0];
    for (auto& x : c) {
      if (x.is_exact()) x = x + zero;
    }
  }
  return PowerSeries(std::move(c), sum_bound(a.degree_bound(), b.degree_bound()));
}

PowerSeries operator/(const PowerSeries& a, const PowerSeries& b) {
  require_same_order(a, b);
  if (b[0].is_zero()) throw DomainError("division by series with zero constant term");
  const std::size_t n = a.order();
  std::vector<Scalar> q(n + 1);
  for (std::size_t m = 0; m <= n; ++m) {
    Scalar acc = a[m];
    for (std::size_t k = 1; k <= m; ++k) {
      if (b[k].is_zero() || q[m - k].is_zero()) continue;
      acc -= b[k] * q[m - k];
    }
    q[m] = acc / b[0];
  }
  std::optional<std::size_t> bound;
  if (b.degree_bound() == std::size_t{0}) bound = a.degree_bound();
  return PowerSeries(std::move(q), bound);
}

PowerSeries pow(const PowerSeries& base, unsigned long exponent) {
  PowerSeries result = PowerSeries::one(base.order());
  PowerSeries square = base;
  while (exponent > 0) {
    if ((exponent & 1UL) != 0) result = result * square;
    exponent >>= 1;
    if (exponent > 0) square = square * square;
  }
  return result;
}

PowerSeries differentiate(const PowerSeries& a) {
  if (a.order() == 0) return PowerSeries(std::vector<Scalar>{Scalar(0) * a[0]}, 0);
  std::vector<Scalar> c(a.order());
  for (std::size_t k = 0; k < a.order(); ++k) c[k] = integer(k + 1) * a[k + 1];
  std::optional<std::size_t> bound;
  if (a.degree_bound()) bound = *a.degree_bound() > 0 ? *a.degree_bound() - 1 : 0;
  return PowerSeries(std::move(c), bound);
}

PowerSeries integrate(const PowerSeries& a) {
  std::vector<Scalar> c(a.order() + 2);
  c[0] = Scalar(0) * a[0];
  for (std::size_t k = 0; k <= a.order(); ++k) c[k + 1] = a[k] * inverse(k + 1);
  std::optional<std::size_t> bound;
  if (a.degree_bound()) bound = *a.degree_bound() + 1;
  return PowerSeries(std::move(c), bound);
}

PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner) {
  require_same_order(outer, inner);
  if (!inner[0].is_zero()) {
    throw DomainError("series composition needs an inner series with zero constant term");
  }
  const std::size_t n = outer.order();
  PowerSeries result = PowerSeries::constant(outer[n], n);
  for (std::size_t j = n; j-- > 0;) {
    result = result * inner + PowerSeries::constant(outer[j], n);
  }
  std::optional<std::size_t> bound;
  if (outer.degree_bound() && inner.degree_bound()) {
    bound = *outer.degree_bound() * *inner.degree_bound();
  }
  return PowerSeries(std::vector<Scalar>(result.coefficients().begin(), result.coefficients().end()),
                     bound);
}

PowerSeries compose(Function f, const PowerSeries& inner, const PrecisionConfig& config) {
  const std::size_t n = inner.order();
  const long bits = config.float_bits;
  const Scalar& g0 = inner[0];

  if (inner.degree_bound() == std::size_t{0}) {
    if (f == Function::Log && g0.sign() <= 0) {
      throw DomainError("log of nonpositive constant term");
    }
    return PowerSeries::constant(constant_value(f, g0, bits), n);
  }

  const PowerSeries u = without_constant(inner);
  const bool shifted = !g0.is_zero();
  switch (f) {
    case Function::Exp: {
      const PowerSeries h = series_from_elementary(ElementaryFunction::Exp, u);
      return shifted ? constant_value(f, g0, bits) * h : h;
    }
    case Function::Sin:
    case Function::Cos:
    case Function::Sinh:
    case Function::Cosh: {
      const bool hyperbolic = f == Function::Sinh || f == Function::Cosh;
      const PowerSeries odd = series_from_elementary(
          hyperbolic ? ElementaryFunction::Sinh : ElementaryFunction::Sin, u);
      const PowerSeries even = series_from_elementary(
          hyperbolic ? ElementaryFunction::Cosh : ElementaryFunction::Cos, u);
      const bool want_odd = f == Function::Sin || f == Function::Sinh;
      if (!shifted) return want_odd ? odd : even;
      const Scalar s0 = constant_value(hyperbolic ? Function::Sinh : Function::Sin, g0, bits);
      const Scalar c0 = constant_value(hyperbolic ? Function::Cosh : Function::Cos, g0, bits);
      if (want_odd) return s0 * even + c0 * odd;
      // cos(a+u) = cos a cos u - sin a sin u; cosh(a+u) = cosh a cosh u + sinh a sinh u.
      return hyperbolic ? c0 * even + s0 * odd : c0 * even - s0 * odd;
    }
    case Function::Log: {
      if (g0.sign() <= 0) throw DomainError("log of series with nonpositive constant term");
      const PowerSeries l = series_from_elementary(ElementaryFunction::Log1p, (Scalar(1) / g0) * u);
      return PowerSeries::constant(constant_value(f, g0, bits), n) + l;
    }
    case Function::Erf: {
      if (shifted) throw DomainError("erf of series with nonzero constant term");
      const Scalar prefactor = Scalar(2) / sqrt(pi(bits), bits);
      return prefactor * series_from_elementary(ElementaryFunction::ErfCore, u);
    }
    case Function::Sqrt:
      throw DomainError("sqrt of a non-constant series");
  }
  throw DomainError("unknown function");
}

// Expression expansion

namespace {

PowerSeries expand(const Expr& e, std::size_t order, const PrecisionConfig& config) {
  const long bits = config.float_bits;
  switch (e.kind) {
    case ExprKind::Rational:
      return PowerSeries::constant(Scalar(e.value), order);
    case ExprKind::Pi:
      return PowerSeries::constant(pi(bits), order);
    case ExprKind::E:
      return PowerSeries::constant(euler_e(bits), order);
    case ExprKind::Variable:
      return PowerSeries::variable(order);
    case ExprKind::Negate:
      return -expand(*e.left, order, config);
    case ExprKind::Add:
      return expand(*e.left, order, config) + expand(*e.right, order, config);
    case ExprKind::Sub:
      return expand(*e.left, order, config) - expand(*e.right, order, config);
    case ExprKind::Mul:
      return expand(*e.left, order, config) * expand(*e.right, order, config);
    case ExprKind::Div: {
      const PowerSeries num = expand(*e.left, order, config);
      const PowerSeries den = expand(*e.right, order, config);
      if (den[0].is_zero()) {
        throw ValidationError(AnalyticityRule::DivisorConstantTermZero, render(e));
      }
      return num / den;
    }
    case ExprKind::PowInt:
      return pow(expand(*e.left, order, config), e.exponent);
    case ExprKind::Apply: {
      if (e.function == Function::Sqrt && contains_variable(*e.left)) {
        throw ValidationError(AnalyticityRule::SqrtOfNonConstant, render(e));
      }
      const PowerSeries g = expand(*e.left, order, config);
      const Scalar& g0 = g[0];
      switch (e.function) {
        case Function::Log:
          if (g0.sign() <= 0) {
            throw ValidationError(AnalyticityRule::LogConstantTermNotPositive, render(e));
          }
          break;
        case Function::Sqrt:
          if (g0.sign() <= 0) throw ValidationError(AnalyticityRule::SqrtOfNonPositive, render(e));
          break;
        case Function::Erf:
          if (g.degree_bound() != std::size_t{0} && !g0.is_zero()) {
            throw ValidationError(AnalyticityRule::ErfConstantTermNonZero, render(e));
          }
          break;
        default:
          break;
      }
      return compose(e.function, g, config);
    }
  }
  throw DomainError("malformed expression");
}

}  // namespace

PowerSeries maclaurin(const Expr& e, std::size_t order, const PrecisionConfig& config) {
  config.validate();
  return expand(e, order, config);
}

void validate_analytic_at_zero(const Expr& e, const PrecisionConfig& config) {
  // Every rule is decided by constant terms, which do not depend on the order.
  (void)maclaurin(e, 0, config);
}

}  // namespace zetareg
