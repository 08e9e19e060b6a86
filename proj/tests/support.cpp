#include "support.hpp"

#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace testing {

using zetareg::Expr;
using zetareg::ExprKind;
using zetareg::ExprPtr;
using zetareg::Function;

mpq_class random_rational(std::mt19937& rng, int num_max, int den_max) {
  std::uniform_int_distribution<int> num(-num_max, num_max);
  std::uniform_int_distribution<int> den(1, den_max);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

zetareg::PowerSeries random_series(std::mt19937& rng, std::size_t order, double zero_chance) {
  std::bernoulli_distribution zero(zero_chance);
  std::vector<Scalar> c;
  for (std::size_t k = 0; k <= order; ++k) {
    c.emplace_back(zero(rng) ? mpq_class(0) : random_rational(rng));
  }
  return zetareg::PowerSeries(std::move(c));
}

ExprPtr random_polynomial_expr(std::mt19937& rng, int depth) {
  namespace ast = zetareg::ast;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 6);
  switch (pick(rng)) {
    case 0:
      return ast::variable();
    case 1:
      return ast::rational(random_rational(rng, 9, 5));
    case 2:
      return ast::add(random_polynomial_expr(rng, depth - 1), random_polynomial_expr(rng, depth - 1));
    case 3:
      return ast::sub(random_polynomial_expr(rng, depth - 1), random_polynomial_expr(rng, depth - 1));
    case 4:
      return ast::mul(random_polynomial_expr(rng, depth - 1), random_polynomial_expr(rng, depth - 1));
    case 5:
      return ast::negate(random_polynomial_expr(rng, depth - 1));
    default: {
      std::uniform_int_distribution<int> n(0, 4);
      return ast::pow(random_polynomial_expr(rng, depth - 1), static_cast<unsigned long>(n(rng)));
    }
  }
}

namespace sym {

namespace {

NodePtr make(Op op, NodePtr a = nullptr, NodePtr b = nullptr) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

NodePtr konst(const mpq_class& c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Const;
  n->c = c;
  return n;
}

bool is_const(const NodePtr& n, long v) { return n->op == Op::Const && n->c == v; }

NodePtr neg(NodePtr a) {
  if (a->op == Op::Const) return konst(-a->c);
  if (a->op == Op::Neg) return a->a;
  return make(Op::Neg, std::move(a));
}

NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  if (a->op == Op::Const && b->op == Op::Const) return konst(a->c + b->c);
  return make(Op::Add, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0) || is_const(b, 0)) return konst(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  if (a->op == Op::Const && b->op == Op::Const) return konst(a->c * b->c);
  return make(Op::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_const(a, 0)) return konst(0);
  if (is_const(b, 1)) return a;
  return make(Op::Div, std::move(a), std::move(b));
}

NodePtr pw(NodePtr a, unsigned long n) {
  if (n == 0) return konst(1);
  if (n == 1) return a;
  auto p = std::make_shared<Node>();
  p->op = Op::Pow;
  p->n = n;
  p->a = std::move(a);
  return p;
}

NodePtr fn(Op op, NodePtr a) { return make(op, std::move(a)); }

using Memo = std::unordered_map<const Node*, NodePtr>;

NodePtr d(const NodePtr& f, Memo& memo) {
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  NodePtr r;
  switch (f->op) {
    case Op::Const:
    case Op::Pi:
    case Op::E:
    case Op::Sqrt:
      r = konst(0);
      break;
    case Op::X:
      r = konst(1);
      break;
    case Op::Neg:
      r = neg(d(f->a, memo));
      break;
    case Op::Add:
      r = add(d(f->a, memo), d(f->b, memo));
      break;
    case Op::Mul:
      r = add(mul(d(f->a, memo), f->b), mul(f->a, d(f->b, memo)));
      break;
    case Op::Div:
      r = div(add(mul(d(f->a, memo), f->b), neg(mul(f->a, d(f->b, memo)))), pw(f->b, 2));
      break;
    case Op::Pow:
      r = mul(mul(konst(mpq_class(f->n)), pw(f->a, f->n - 1)), d(f->a, memo));
      break;
    case Op::Sin:
      r = mul(fn(Op::Cos, f->a), d(f->a, memo));
      break;
    case Op::Cos:
      r = neg(mul(fn(Op::Sin, f->a), d(f->a, memo)));
      break;
    case Op::Sinh:
      r = mul(fn(Op::Cosh, f->a), d(f->a, memo));
      break;
    case Op::Cosh:
      r = mul(fn(Op::Sinh, f->a), d(f->a, memo));
      break;
    case Op::Exp:
      r = mul(f, d(f->a, memo));
      break;
    case Op::Log:
      r = div(d(f->a, memo), f->a);
      break;
    case Op::Erf: {
      NodePtr prefactor = div(konst(2), fn(Op::Sqrt, make(Op::Pi)));
      r = mul(mul(prefactor, fn(Op::Exp, neg(pw(f->a, 2)))), d(f->a, memo));
      break;
    }
  }
  memo.emplace(f.get(), r);
  return r;
}

Op op_of(Function f) {
  switch (f) {
    case Function::Sin: return Op::Sin;
    case Function::Cos: return Op::Cos;
    case Function::Sinh: return Op::Sinh;
    case Function::Cosh: return Op::Cosh;
    case Function::Exp: return Op::Exp;
    case Function::Log: return Op::Log;
    case Function::Erf: return Op::Erf;
    case Function::Sqrt: return Op::Sqrt;
  }
  throw std::logic_error("bad function");
}

}  // namespace

NodePtr from_expr(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Rational: return konst(e.value);
    case ExprKind::Pi: return make(Op::Pi);
    case ExprKind::E: return make(Op::E);
    case ExprKind::Variable: return make(Op::X);
    case ExprKind::Negate: return make(Op::Neg, from_expr(*e.left));
    case ExprKind::Add: return make(Op::Add, from_expr(*e.left), from_expr(*e.right));
    case ExprKind::Sub:
      return make(Op::Add, from_expr(*e.left), make(Op::Neg, from_expr(*e.right)));
    case ExprKind::Mul: return make(Op::Mul, from_expr(*e.left), from_expr(*e.right));
    case ExprKind::Div: return make(Op::Div, from_expr(*e.left), from_expr(*e.right));
    case ExprKind::PowInt: {
      auto p = std::make_shared<Node>();
      p->op = Op::Pow;
      p->n = e.exponent;
      p->a = from_expr(*e.left);
      return p;
    }
    case ExprKind::Apply: return make(op_of(e.function), from_expr(*e.left));
  }
  throw std::logic_error("bad expression");
}

std::vector<NodePtr> derivatives(NodePtr f, std::size_t count) {
  std::vector<NodePtr> out{f};
  for (std::size_t k = 1; k < count; ++k) {
    Memo memo;
    out.push_back(d(out.back(), memo));
  }
  return out;
}

namespace {

using ValueMemo = std::unordered_map<const Node*, Scalar>;

Scalar eval0(const NodePtr& f, long bits, ValueMemo& memo) {
  if (auto it = memo.find(f.get()); it != memo.end()) return it->second;
  Scalar r;
  const auto arg = [&] { return eval0(f->a, bits, memo); };
  switch (f->op) {
    case Op::Const: r = Scalar(f->c); break;
    case Op::X: r = Scalar(0); break;
    case Op::Pi: r = zetareg::pi(bits); break;
    case Op::E: r = zetareg::euler_e(bits); break;
    case Op::Neg: r = -arg(); break;
    case Op::Add: r = arg() + eval0(f->b, bits, memo); break;
    case Op::Mul: r = arg() * eval0(f->b, bits, memo); break;
    case Op::Div: r = arg() / eval0(f->b, bits, memo); break;
    case Op::Pow: r = zetareg::pow_int(arg(), f->n); break;
    case Op::Sin: {
      const Scalar a = arg();
      r = a.is_exact() && a.is_zero() ? Scalar(0) : zetareg::sin(a, bits);
      break;
    }
    case Op::Cos: {
      const Scalar a = arg();
      r = a.is_exact() && a.is_zero() ? Scalar(1) : zetareg::cos(a, bits);
      break;
    }
    case Op::Sinh: {
      const Scalar a = arg();
      r = a.is_exact() && a.is_zero() ? Scalar(0) : zetareg::sinh(a, bits);
      break;
    }
    case Op::Cosh: {
      const Scalar a = arg();
      r = a.is_exact() && a.is_zero() ? Scalar(1) : zetareg::cosh(a, bits);
      break;
    }
    case Op::Exp: {
      const Scalar a = arg();
      r = a.is_exact() && a.is_zero() ? Scalar(1) : zetareg::exp(a, bits);
      break;
    }
    case Op::Log: {
      const Scalar a = arg();
      r = a.is_exact() && a == Scalar(1) ? Scalar(0) : zetareg::log(a, bits);
      break;
    }
    case Op::Erf: {
      const Scalar a = arg();
      r = a.is_exact() && a.is_zero() ? Scalar(0) : zetareg::erf(a, bits);
      break;
    }
    case Op::Sqrt: r = zetareg::sqrt(arg(), bits); break;
  }
  memo.emplace(f.get(), r);
  return r;
}

}  // namespace

Scalar at_zero(const NodePtr& f, long bits) {
  ValueMemo memo;
  return eval0(f, bits, memo);
}

}  // namespace sym

std::vector<Scalar> symbolic_derivatives(const std::string& expression, std::size_t max_k,
                                         long bits) {
  const auto nodes = sym::derivatives(sym::from_expr(*zetareg::parse(expression)), max_k + 1);
  std::vector<Scalar> out;
  for (const auto& n : nodes) out.push_back(sym::at_zero(n, bits));
  return out;
}

long double eval_at(const Expr& e, long double x) {
  switch (e.kind) {
    case ExprKind::Rational: return static_cast<long double>(e.value.get_d());
    case ExprKind::Pi: return 3.141592653589793238462643383279502884L;
    case ExprKind::E: return 2.718281828459045235360287471352662498L;
    case ExprKind::Variable: return x;
    case ExprKind::Negate: return -eval_at(*e.left, x);
    case ExprKind::Add: return eval_at(*e.left, x) + eval_at(*e.right, x);
    case ExprKind::Sub: return eval_at(*e.left, x) - eval_at(*e.right, x);
    case ExprKind::Mul: return eval_at(*e.left, x) * eval_at(*e.right, x);
    case ExprKind::Div: return eval_at(*e.left, x) / eval_at(*e.right, x);
    case ExprKind::PowInt:
      return std::pow(eval_at(*e.left, x), static_cast<long double>(e.exponent));
    case ExprKind::Apply: {
      const long double a = eval_at(*e.left, x);
      switch (e.function) {
        case Function::Sin: return std::sin(a);
        case Function::Cos: return std::cos(a);
        case Function::Sinh: return std::sinh(a);
        case Function::Cosh: return std::cosh(a);
        case Function::Exp: return std::exp(a);
        case Function::Log: return std::log(a);
        case Function::Erf: return std::erf(a);
        case Function::Sqrt: return std::sqrt(a);
      }
    }
  }
  throw std::logic_error("bad expression");
}

long double quadrature_value(const std::string& expression) {
  const ExprPtr f = zetareg::parse(expression);
  // tanh-sinh on [0, 1]: t = (1 + tanh(pi/2 sinh u)) / 2.
  const long double half_pi = 1.570796326794896619231321691639751442L;
  const long double h = 1.0L / 64;
  long double sum = 0;
  for (int i = -64 * 6; i <= 64 * 6; ++i) {
    const long double u = h * i;
    const long double s = half_pi * std::sinh(u);
    const long double ch = std::cosh(s);
    const long double w = half_pi * std::cosh(u) / (ch * ch) / 2;
    // 1 - t computed without cancellation.
    const long double one_minus_t = std::exp(-s) / (2 * ch);
    const long double t = std::exp(s) / (2 * ch);
    if (one_minus_t == 0 || t == 0) continue;
    const long double v = eval_at(*f, -t);
    if (!std::isfinite(v)) continue;
    sum += w * one_minus_t * v;
  }
  return -h * sum;
}

std::vector<mpq_class> akiyama_tanigawa(std::size_t n_max) {
  std::vector<mpq_class> out;
  std::vector<mpq_class> a(n_max + 1);
  for (std::size_t m = 0; m <= n_max; ++m) {
    a[m] = mpq_class(1, static_cast<unsigned long>(m + 1));
    for (std::size_t j = m; j >= 1; --j) {
      a[j - 1] = static_cast<long>(j) * (a[j - 1] - a[j]);
      a[j - 1].canonicalize();
    }
    out.push_back(a[0]);
  }
  if (n_max >= 1) out[1] = -out[1];
  return out;
}

bool close(const Scalar& a, const Scalar& b, const Scalar& tol) {
  const Scalar scale = std::max({Scalar(1), zetareg::abs(a), zetareg::abs(b)});
  return zetareg::compare(zetareg::abs(a - b), tol * scale) <= 0;
}

Scalar tiny(long exponent10) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent10 < 0 ? -exponent10 : exponent10));
  return exponent10 < 0 ? Scalar(mpq_class(mpz_class(1), p)) : Scalar(p);
}

}  // namespace testing
