#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "support.hpp"
#include "zetareg/error.hpp"
#include "zetareg/expr.hpp"
#include "zetareg/series.hpp"

using namespace zetareg;

namespace {

PowerSeries exact(std::vector<mpq_class> c) {
  std::vector<Scalar> s;
  for (auto& q : c) s.emplace_back(q);
  return PowerSeries(std::move(s));
}

bool identical(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order()) return false;
  for (std::size_t k = 0; k <= a.order(); ++k) {
    if (!a[k].identical(b[k])) return false;
  }
  return true;
}

PowerSeries mac(const std::string& text, std::size_t order) { return maclaurin(*parse(text), order); }

mpq_class q(long p, long r = 1) { return mpq_class(p, r); }

// Polynomial substitution outer(inner) with full expansion, then truncation.
PowerSeries substitute(const std::vector<mpq_class>& outer, const std::vector<mpq_class>& inner,
                       std::size_t order) {
  std::vector<mpq_class> result(1, 0);
  std::vector<mpq_class> power(1, 1);
  for (std::size_t i = 0; i < outer.size(); ++i) {
    if (result.size() < power.size()) result.resize(power.size(), 0);
    for (std::size_t k = 0; k < power.size(); ++k) result[k] += outer[i] * power[k];
    std::vector<mpq_class> next(power.size() + inner.size() - 1, 0);
    for (std::size_t a = 0; a < power.size(); ++a) {
      for (std::size_t b = 0; b < inner.size(); ++b) next[a + b] += power[a] * inner[b];
    }
    power = std::move(next);
  }
  result.resize(order + 1, 0);
  return exact(result);
}

}  // namespace

TEST_CASE("elementary series") {
  CHECK(identical(elementary_series(ElementaryFunction::Exp, 4),
                  exact({q(1), q(1), q(1, 2), q(1, 6), q(1, 24)})));
  CHECK(identical(elementary_series(ElementaryFunction::Sin, 5),
                  exact({q(0), q(1), q(0), q(-1, 6), q(0), q(1, 120)})));
  CHECK(identical(elementary_series(ElementaryFunction::Log1p, 4),
                  exact({q(0), q(1), q(-1, 2), q(1, 3), q(-1, 4)})));
  CHECK(identical(elementary_series(ElementaryFunction::Cos, 4),
                  exact({q(1), q(0), q(-1, 2), q(0), q(1, 24)})));
  CHECK(identical(elementary_series(ElementaryFunction::Sinh, 3), exact({q(0), q(1), q(0), q(1, 6)})));
  CHECK(identical(elementary_series(ElementaryFunction::Cosh, 2), exact({q(1), q(0), q(1, 2)})));
  CHECK(identical(elementary_series(ElementaryFunction::ErfCore, 5),
                  exact({q(0), q(1), q(0), q(-1, 3), q(0), q(1, 10)})));
  CHECK(elementary_series(ElementaryFunction::Exp, 0).order() == 0);
}

TEST_CASE("ring operations") {
  CHECK(identical(exact({q(0), q(1), q(0)}) + exact({q(1), q(0), q(0)}), exact({q(1), q(1), q(0)})));
  const PowerSeries s = exact({q(3), q(1, 2), q(-7, 3)});
  CHECK(identical(s - s, PowerSeries::zero(2)));
  CHECK(identical(Scalar(2) * exact({q(0), q(1, 2), q(1, 6)}), exact({q(0), q(1), q(1, 3)})));
  CHECK(identical(exact({q(1), q(1), q(0)}) * exact({q(1), q(-1), q(0)}), exact({q(1), q(0), q(-1)})));
  CHECK(identical(s * PowerSeries::one(2), s));
  CHECK(identical(s / s, PowerSeries::one(2)));
  CHECK(identical(PowerSeries::one(3) / exact({q(1), q(1), q(0), q(0)}),
                  exact({q(1), q(-1), q(1), q(-1)})));
  CHECK_THROWS_AS(s + PowerSeries::zero(3), DomainError);
  CHECK_THROWS_AS(s * PowerSeries::zero(3), DomainError);
  CHECK_THROWS_AS(s / PowerSeries::variable(2), DomainError);
  CHECK(identical(pow(exact({q(1), q(1), q(0), q(0)}), 3), exact({q(1), q(3), q(3), q(1)})));
  CHECK(identical(differentiate(s), exact({q(1, 2), q(-14, 3)})));
  CHECK(identical(integrate(exact({q(1), q(1)})), exact({q(0), q(1), q(1, 2)})));
}

TEST_CASE("composition") {
  CHECK(identical(compose(Function::Exp, mac("x^2", 6)), exact({q(1), q(0), q(1), q(0), q(1, 2), q(0), q(1, 6)})));
  CHECK(identical(compose(Function::Log, mac("1+x", 5)), elementary_series(ElementaryFunction::Log1p, 5)));
  CHECK(identical(compose(Function::Sin, PowerSeries::zero(4)), PowerSeries::zero(4)));
  CHECK_THROWS_AS(compose(Function::Erf, mac("1+x", 4)), DomainError);
  CHECK_THROWS_AS(compose(Function::Log, mac("-1+x", 4)), DomainError);
  CHECK_THROWS_AS(compose(mac("1+x", 3), mac("1+x", 3)), DomainError);

  // Shifted arguments agree with the symbolic oracle.
  for (const char* text : {"exp(1+x)", "sin(2+x)", "cos(1/2-x)", "sinh(1+x^2)", "cosh(-1+x)", "log(3+x)"}) {
    const PowerSeries s = mac(text, 10);
    CHECK_FALSE(s.exact());
    const auto ref = testing::symbolic_derivatives(text, 10);
    for (std::size_t k = 0; k <= 10; ++k) {
      CHECK_MESSAGE(testing::close(s.derivative(k), ref[k], testing::tiny(-32)), text << " k=" << k);
    }
  }
}

TEST_CASE("maclaurin examples") {
  CHECK(identical(mac("e^x", 3), exact({q(1), q(1), q(1, 2), q(1, 6)})));
  CHECK(identical(mac("x*sin(x)", 4), exact({q(0), q(0), q(1), q(0), q(-1, 6)})));
  CHECK(identical(mac("x^3", 5), exact({q(0), q(0), q(0), q(1), q(0), q(0)})));
  CHECK(mac("x^3", 5).degree_bound() == 3u);
  CHECK(identical(mac("1/(1+x)", 3), exact({q(1), q(-1), q(1), q(-1)})));
  CHECK(mac("(1+x)/(1-x)", 0).order() == 0);

  const PowerSeries erf = mac("erf(x)", 5);
  CHECK_FALSE(erf.exact());
  const Scalar two_over_sqrt_pi = Scalar(2) / sqrt(pi(128), 128);
  CHECK(testing::close(erf[1], two_over_sqrt_pi, testing::tiny(-36)));
  CHECK(testing::close(erf[3], two_over_sqrt_pi * Scalar::rational(-1, 3), testing::tiny(-36)));
  CHECK(erf[2].is_zero());

  CHECK_THROWS_AS(mac("sin(x)/x", 5), ValidationError);
  CHECK_THROWS_AS(mac("log(x)", 5), ValidationError);
  CHECK(mac("sin(x)", 512).order() == 512);
}

TEST_CASE("coefficients match symbolic differentiation for k <= 12") {
  const std::vector<std::string> cases = {
      "sin(x)",       "cos(x)",          "sinh(x)",          "cosh(x)",       "e^x",
      "exp(2*x)",     "log(1+x)",        "log(2-3*x)",       "erf(x)",        "erf(x/2-x^2)",
      "sqrt(2)*x",    "sqrt(pi)*e^x",    "x*sin(x)",         "e^(x^2)",       "e^(-x^2)",
      "1/(1+x)",      "(1+x)^3/(2-x)",   "sinh(x)*cosh(x)",  "log(1+sin(x))", "e^(sin(x))",
      "cos(x^2)-x",   "erf(x)^2",        "sin(1+x)",         "1/(3+cos(x))",  "pi*x^2-e",
      "(x-1/2)^5",    "log(e+x)",        "cosh(sinh(x))",    "-x/(2+x^2)",    "e^(1/2)",
  };
  for (const auto& text : cases) {
    const PowerSeries s = mac(text, 12);
    const auto ref = testing::symbolic_derivatives(text, 12);
    for (std::size_t k = 0; k <= 12; ++k) {
      const Scalar got = s.derivative(k);
      if (got.is_exact() && ref[k].is_exact()) {
        CHECK_MESSAGE(got == ref[k], text << " k=" << k);
      } else {
        CHECK_MESSAGE(testing::close(got, ref[k], testing::tiny(-30)), text << " k=" << k);
      }
    }
  }
}

TEST_CASE("ring laws on random exact series") {
  std::mt19937 rng(testing::kSeed + 20);
  std::uniform_int_distribution<std::size_t> order_dist(0, 16);
  for (int i = 0; i < 250; ++i) {
    const std::size_t n = order_dist(rng);
    const PowerSeries a = testing::random_series(rng, n);
    const PowerSeries b = testing::random_series(rng, n);
    const PowerSeries c = testing::random_series(rng, n);
    CHECK(identical(a * b, b * a));
    CHECK(identical((a * b) * c, a * (b * c)));
    CHECK(identical(a * (b + c), a * b + a * c));
    CHECK(identical((a + b) - b, a));
    if (!b[0].is_zero()) CHECK(identical((a / b) * b, a));
  }
}

TEST_CASE("compose agrees with polynomial substitution") {
  std::mt19937 rng(testing::kSeed + 21);
  std::uniform_int_distribution<int> deg(0, 6);
  std::uniform_int_distribution<std::size_t> order_dist(0, 16);
  for (int i = 0; i < 250; ++i) {
    std::vector<mpq_class> outer(static_cast<std::size_t>(deg(rng)) + 1);
    std::vector<mpq_class> inner(static_cast<std::size_t>(deg(rng)) + 1);
    for (auto& c : outer) c = testing::random_rational(rng, 9, 4);
    for (auto& c : inner) c = testing::random_rational(rng, 9, 4);
    inner[0] = 0;
    const std::size_t n = order_dist(rng);
    std::vector<mpq_class> o = outer;
    std::vector<mpq_class> in = inner;
    o.resize(n + 1);
    in.resize(n + 1);
    CHECK(identical(compose(exact(o), exact(in)), substitute(outer, inner, n)));
  }
}

TEST_CASE("truncation consistency") {
  for (const char* text : {"sin(x)", "e^(-x^2)", "log(1+x)/(2-x)", "x*sin(x)", "erf(x)", "cos(1+x)"}) {
    const PowerSeries big = mac(text, 30);
    for (std::size_t m : {0u, 1u, 5u, 17u, 29u}) {
      CHECK_MESSAGE(identical(big.truncated(m), mac(text, m)), text << " m=" << m);
    }
  }
}

TEST_CASE("catalog derivative patterns") {
  const PowerSeries s = mac("sin(x)", 41);
  for (std::size_t k = 0; k <= 20; ++k) {
    CHECK(s.derivative(2 * k + 1) == Scalar(k % 2 == 0 ? 1 : -1));
    CHECK(s.derivative(2 * k).is_zero());
  }
  const PowerSeries e = mac("e^x", 30);
  for (std::size_t k = 0; k <= 30; ++k) CHECK(e.derivative(k) == Scalar(1));
  const PowerSeries l = mac("log(1+x)", 30);
  for (std::size_t k = 1; k <= 30; ++k) {
    const Scalar expected = Scalar(k % 2 == 1 ? 1 : -1) * factorial(k - 1);
    CHECK(l.derivative(k) == expected);
  }
}

TEST_CASE("exact flag tracks the coefficients") {
  CHECK(mac("sin(x)*x^2", 8).exact());
  CHECK_FALSE(mac("pi*x", 8).exact());
  CHECK_FALSE(mac("erf(x)", 8).exact());
  const PowerSeries f = mac("e*x", 3);
  for (std::size_t k = 0; k <= 3; ++k) CHECK_FALSE(f[k].is_exact());
}

TEST_CASE("from_derivatives") {
  std::vector<Scalar> d;
  for (unsigned long k = 0; k <= 10; ++k) d.push_back(factorial(k) * factorial(k));
  const PowerSeries s = PowerSeries::from_derivatives(d);
  for (unsigned long k = 0; k <= 10; ++k) {
    CHECK(s[k] == factorial(k));
    CHECK(s.derivative(k) == d[k]);
  }
}
