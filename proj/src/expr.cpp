#include "zetareg/expr.hpp"

#include <array>
#include <utility>

#include "zetareg/error.hpp"

namespace zetareg {

namespace {

constexpr std::array<std::pair<const char*, Function>, 8> kFunctionNames{{
    {"sin", Function::Sin},
    {"cos", Function::Cos},
    {"sinh", Function::Sinh},
    {"cosh", Function::Cosh},
    {"exp", Function::Exp},
    {"log", Function::Log},
    {"erf", Function::Erf},
    {"sqrt", Function::Sqrt},
}};

ExprPtr make(Expr node) { return std::make_shared<const Expr>(std::move(node)); }

ExprPtr binary(ExprKind kind, ExprPtr a, ExprPtr b) {
  Expr node;
  node.kind = kind;
  node.left = std::move(a);
  node.right = std::move(b);
  return make(std::move(node));
}

}  // namespace

const char* to_string(Function f) {
  for (const auto& [name, fn] : kFunctionNames) {
    if (fn == f) return name;
  }
  return "?";
}

std::optional<Function> function_from_name(std::string_view name) {
  for (const auto& [n, fn] : kFunctionNames) {
    if (name == n) return fn;
  }
  return std::nullopt;
}

namespace ast {

ExprPtr rational(mpq_class value) {
  Expr node;
  node.kind = ExprKind::Rational;
  value.canonicalize();
  node.value = std::move(value);
  return make(std::move(node));
}

ExprPtr integer(long n) { return rational(mpq_class(n)); }

ExprPtr pi() {
  Expr node;
  node.kind = ExprKind::Pi;
  return make(std::move(node));
}

ExprPtr e() {
  Expr node;
  node.kind = ExprKind::E;
  return make(std::move(node));
}

ExprPtr variable() {
  Expr node;
  node.kind = ExprKind::Variable;
  return make(std::move(node));
}

ExprPtr negate(ExprPtr operand) {
  Expr node;
  node.kind = ExprKind::Negate;
  node.left = std::move(operand);
  return make(std::move(node));
}

ExprPtr add(ExprPtr a, ExprPtr b) { return binary(ExprKind::Add, std::move(a), std::move(b)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return binary(ExprKind::Sub, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return binary(ExprKind::Mul, std::move(a), std::move(b)); }
ExprPtr div(ExprPtr a, ExprPtr b) { return binary(ExprKind::Div, std::move(a), std::move(b)); }

ExprPtr pow(ExprPtr base, unsigned long exponent) {
  Expr node;
  node.kind = ExprKind::PowInt;
  node.left = std::move(base);
  node.exponent = exponent;
  return make(std::move(node));
}

ExprPtr apply(Function f, ExprPtr argument) {
  Expr node;
  node.kind = ExprKind::Apply;
  node.function = f;
  node.left = std::move(argument);
  return make(std::move(node));
}

}  // namespace ast

// Rendering

namespace {

// Binding strength of each node's textual form; a child is parenthesized
// when its level is below what the parent position requires.
int level(const Expr& e) {
  switch (e.kind) {
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    case ExprKind::Mul:
    case ExprKind::Div:
      return 2;
    case ExprKind::Negate:
      return 3;
    case ExprKind::PowInt:
      return 4;
    case ExprKind::Rational:
      if (sgn(e.value) < 0) return 0;
      return e.value.get_den() == 1 ? 5 : 2;
    default:
      return 5;
  }
}

bool is_integer_literal(const Expr& e) {
  return e.kind == ExprKind::Rational && e.value.get_den() == 1 && sgn(e.value) >= 0;
}

void render_into(const Expr& e, int required, bool divisor, std::string& out);

void render_child(const Expr& e, int required, bool divisor, std::string& out) {
  const bool fraction = e.kind == ExprKind::Rational && e.value.get_den() != 1;
  if (level(e) < required || (fraction && divisor)) {
    out += '(';
    render_into(e, 0, false, out);
    out += ')';
  } else {
    render_into(e, required, divisor, out);
  }
}

void render_into(const Expr& e, int /*required*/, bool divisor, std::string& out) {
  switch (e.kind) {
    case ExprKind::Rational:
      out += e.value.get_str();
      return;
    case ExprKind::Pi:
      out += "pi";
      return;
    case ExprKind::E:
      out += "e";
      return;
    case ExprKind::Variable:
      out += "x";
      return;
    case ExprKind::Negate:
      out += '-';
      render_child(*e.left, 3, divisor, out);
      return;
    case ExprKind::Add:
    case ExprKind::Sub:
      render_child(*e.left, 1, false, out);
      out += e.kind == ExprKind::Add ? '+' : '-';
      render_child(*e.right, 2, false, out);
      return;
    case ExprKind::Mul:
      render_child(*e.left, 2, false, out);
      out += '*';
      render_child(*e.right, 3, false, out);
      return;
    case ExprKind::Div: {
      // "p/q" between two integer literals would be re-read as one rational
      // literal; parenthesize a left side that ends in such a literal.
      std::string left;
      render_child(*e.left, 2, false, left);
      const bool merges = is_integer_literal(*e.right) && !left.empty() &&
                          left.back() >= '0' && left.back() <= '9' &&
                          e.left->kind != ExprKind::PowInt && e.left->kind != ExprKind::Div;
      if (merges) {
        out += '(' + left + ')';
      } else {
        out += left;
      }
      out += '/';
      render_child(*e.right, 3, true, out);
      return;
    }
    case ExprKind::PowInt:
      render_child(*e.left, 5, false, out);
      out += '^';
      out += std::to_string(e.exponent);
      return;
    case ExprKind::Apply:
      out += to_string(e.function);
      out += '(';
      render_into(*e.left, 0, false, out);
      out += ')';
      return;
  }
}

}  // namespace

std::string render(const Expr& e) {
  std::string out;
  render_child(e, 0, false, out);
  return out;
}

bool structurally_equal(const Expr& a, const Expr& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprKind::Rational:
      return a.value == b.value;
    case ExprKind::Pi:
    case ExprKind::E:
    case ExprKind::Variable:
      return true;
    case ExprKind::Negate:
      return structurally_equal(*a.left, *b.left);
    case ExprKind::PowInt:
      return a.exponent == b.exponent && structurally_equal(*a.left, *b.left);
    case ExprKind::Apply:
      return a.function == b.function && structurally_equal(*a.left, *b.left);
    default:
      return structurally_equal(*a.left, *b.left) && structurally_equal(*a.right, *b.right);
  }
}

bool contains_variable(const Expr& e) {
  if (e.kind == ExprKind::Variable) return true;
  if (e.left && contains_variable(*e.left)) return true;
  return e.right && contains_variable(*e.right);
}

// Constant evaluation

Scalar eval_constant(const Expr& e, const PrecisionConfig& config) {
  const long bits = config.float_bits;
  switch (e.kind) {
    case ExprKind::Rational:
      return Scalar(e.value);
    case ExprKind::Pi:
      return pi(bits);
    case ExprKind::E:
      return euler_e(bits);
    case ExprKind::Variable:
      throw DomainError("constant expression expected, found x");
    case ExprKind::Negate:
      return -eval_constant(*e.left, config);
    case ExprKind::Add:
      return eval_constant(*e.left, config) + eval_constant(*e.right, config);
    case ExprKind::Sub:
      return eval_constant(*e.left, config) - eval_constant(*e.right, config);
    case ExprKind::Mul:
      return eval_constant(*e.left, config) * eval_constant(*e.right, config);
    case ExprKind::Div: {
      const Scalar num = eval_constant(*e.left, config);
      const Scalar den = eval_constant(*e.right, config);
      if (den.is_zero()) throw DomainError("division by zero in '" + render(e) + "'");
      return num / den;
    }
    case ExprKind::PowInt:
      return pow_int(eval_constant(*e.left, config), e.exponent);
    case ExprKind::Apply: {
      const Scalar u = eval_constant(*e.left, config);
      switch (e.function) {
        case Function::Sin: return sin(u, bits);
        case Function::Cos: return cos(u, bits);
        case Function::Sinh: return sinh(u, bits);
        case Function::Cosh: return cosh(u, bits);
        case Function::Exp: return exp(u, bits);
        case Function::Erf: return erf(u, bits);
        case Function::Log:
          if (u.sign() <= 0) throw DomainError("log of nonpositive constant in '" + render(e) + "'");
          return log(u, bits);
        case Function::Sqrt:
          if (u.sign() < 0) throw DomainError("sqrt of negative constant in '" + render(e) + "'");
          return sqrt(u, bits);
      }
    }
  }
  throw DomainError("malformed expression");
}

}  // namespace zetareg
