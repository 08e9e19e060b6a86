#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "zetareg/error.hpp"
#include "zetareg/expr.hpp"

namespace zetareg {

namespace {

enum class TokenType { Number, Identifier, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  TokenType type = TokenType::End;
  std::size_t position = 0;
  std::string text;
  mpq_class value;          // Number
  bool integer = false;     // Number written without a decimal point
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  const auto digit = [&](std::size_t j) {
    return j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) != 0;
  };
  while (i < text.size()) {
    const auto c = static_cast<unsigned char>(text[i]);
    if (std::isspace(c) != 0) {
      ++i;
      continue;
    }
    Token t;
    t.position = i;
    if (std::isdigit(c) != 0) {
      std::size_t j = i;
      while (digit(j)) ++j;
      std::string whole(text.substr(i, j - i));
      t.integer = true;
      t.value = mpq_class(mpz_class(whole, 10));
      if (j < text.size() && text[j] == '.') {
        if (!digit(j + 1)) {
          throw ParseError(ParseErrorKind::UnexpectedToken, j, "expected digits after '.'");
        }
        std::size_t k = j + 1;
        while (digit(k)) ++k;
        const std::string frac(text.substr(j + 1, k - j - 1));
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        t.value = mpq_class(mpz_class(whole + frac, 10), scale);
        t.value.canonicalize();
        t.integer = false;
        j = k;
      }
      t.type = TokenType::Number;
      t.text = std::string(text.substr(i, j - i));
      i = j;
    } else if (std::isalpha(c) != 0 || c == '_') {
      std::size_t j = i;
      while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) != 0 ||
                                 text[j] == '_')) {
        ++j;
      }
      t.type = TokenType::Identifier;
      t.text = std::string(text.substr(i, j - i));
      i = j;
    } else {
      switch (c) {
        case '+': t.type = TokenType::Plus; break;
        case '-': t.type = TokenType::Minus; break;
        case '*': t.type = TokenType::Star; break;
        case '/': t.type = TokenType::Slash; break;
        case '^': t.type = TokenType::Caret; break;
        case '(': t.type = TokenType::LParen; break;
        case ')': t.type = TokenType::RParen; break;
        default:
          throw ParseError(ParseErrorKind::UnexpectedToken, i,
                           "unexpected character '" + std::string(1, static_cast<char>(c)) + "'");
      }
      t.text = std::string(1, static_cast<char>(c));
      ++i;
    }
    tokens.push_back(std::move(t));
  }
  Token end;
  end.type = TokenType::End;
  end.position = text.size();
  tokens.push_back(std::move(end));
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  ExprPtr parse_all() {
    ExprPtr e = expression();
    const Token& t = peek();
    if (t.type == TokenType::RParen) {
      throw ParseError(ParseErrorKind::UnbalancedParenthesis, t.position, "unmatched ')'");
    }
    if (t.type != TokenType::End) {
      throw ParseError(ParseErrorKind::UnexpectedToken, t.position, "unexpected '" + t.text + "'");
    }
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    const std::size_t i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
  }
  const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  bool at(TokenType type) const { return peek().type == type; }

  struct DepthGuard {
    explicit DepthGuard(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxDepth) {
        throw ParseError(ParseErrorKind::UnexpectedToken, parser.peek().position,
                         "expression nested too deeply");
      }
    }
    ~DepthGuard() { --parser.depth_; }
    Parser& parser;
  };

  ExprPtr expression() {
    const DepthGuard guard(*this);
    ExprPtr left = term();
    while (at(TokenType::Plus) || at(TokenType::Minus)) {
      const bool plus = advance().type == TokenType::Plus;
      ExprPtr right = term();
      left = plus ? ast::add(std::move(left), std::move(right))
                  : ast::sub(std::move(left), std::move(right));
    }
    return left;
  }

  ExprPtr term() {
    ExprPtr left = unary(true);
    while (at(TokenType::Star) || at(TokenType::Slash)) {
      const bool star = advance().type == TokenType::Star;
      // A divisor never absorbs a following "/q" into a rational literal.
      ExprPtr right = unary(star);
      left = star ? ast::mul(std::move(left), std::move(right))
                  : ast::div(std::move(left), std::move(right));
    }
    return left;
  }

  ExprPtr unary(bool fold) {
    const DepthGuard guard(*this);
    if (at(TokenType::Minus)) {
      advance();
      return ast::negate(unary(fold));
    }
    return power(fold);
  }

  ExprPtr power(bool fold) {
    ExprPtr base = primary(fold);
    if (!at(TokenType::Caret)) return base;
    advance();
    if (base->kind == ExprKind::E) {
      ExprPtr exponent = unary(false);
      if (exponent->kind == ExprKind::Rational && exponent->value.get_den() == 1 &&
          sgn(exponent->value) >= 0 && exponent->value <= kMaxExponent) {
        return ast::pow(std::move(base), exponent->value.get_num().get_ui());
      }
      return ast::apply(Function::Exp, std::move(exponent));
    }
    const unsigned long n = integer_exponent();
    if (at(TokenType::Caret)) {
      throw ParseError(ParseErrorKind::UnexpectedToken, peek().position,
                       "chained '^' is ambiguous; add parentheses");
    }
    return ast::pow(std::move(base), n);
  }

  unsigned long integer_exponent() {
    const bool paren = at(TokenType::LParen);
    if (paren) advance();
    const Token& t = peek();
    if (t.type != TokenType::Number || !t.integer) {
      throw ParseError(ParseErrorKind::BadExponent, t.position,
                       "exponent must be a nonnegative integer literal");
    }
    if (t.value > kMaxExponent) {
      throw ParseError(ParseErrorKind::BadExponent, t.position,
                       "exponent exceeds " + std::to_string(kMaxExponent));
    }
    const unsigned long n = t.value.get_num().get_ui();
    advance();
    if (paren) {
      if (!at(TokenType::RParen)) {
        throw ParseError(ParseErrorKind::BadExponent, peek().position,
                         "exponent must be a nonnegative integer literal");
      }
      advance();
    }
    return n;
  }

  bool folds_into_rational(const Token& numerator) const {
    if (!numerator.integer) return false;
    const Token& slash = peek(1);
    const Token& denominator = peek(2);
    return slash.type == TokenType::Slash && denominator.type == TokenType::Number &&
           denominator.integer && sgn(denominator.value) != 0 &&
           peek(3).type != TokenType::Caret;
  }

  ExprPtr primary(bool fold) {
    const Token& t = peek();
    switch (t.type) {
      case TokenType::Number: {
        if (fold && folds_into_rational(t)) {
          mpq_class q(t.value.get_num(), peek(2).value.get_num());
          q.canonicalize();
          advance();
          advance();
          advance();
          return ast::rational(std::move(q));
        }
        ExprPtr lit = ast::rational(t.value);
        advance();
        return lit;
      }
      case TokenType::Identifier:
        return identifier();
      case TokenType::LParen: {
        const std::size_t open = t.position;
        advance();
        ExprPtr inner = expression();
        if (!at(TokenType::RParen)) {
          const Token& bad = peek();
          if (bad.type == TokenType::End) {
            throw ParseError(ParseErrorKind::UnbalancedParenthesis, bad.position,
                             "missing ')' for '(' at position " + std::to_string(open));
          }
          throw ParseError(ParseErrorKind::UnexpectedToken, bad.position,
                           "unexpected '" + bad.text + "'");
        }
        advance();
        return inner;
      }
      case TokenType::RParen:
        throw ParseError(ParseErrorKind::UnbalancedParenthesis, t.position, "unmatched ')'");
      case TokenType::End:
        throw ParseError(ParseErrorKind::UnexpectedToken, t.position, "unexpected end of input");
      default:
        throw ParseError(ParseErrorKind::UnexpectedToken, t.position,
                         "unexpected '" + t.text + "'");
    }
  }

  ExprPtr identifier() {
    const Token& t = peek();
    if (t.text == "x") {
      advance();
      return ast::variable();
    }
    if (t.text == "pi") {
      advance();
      return ast::pi();
    }
    if (t.text == "e") {
      advance();
      return ast::e();
    }
    const auto f = function_from_name(t.text);
    if (!f) {
      throw ParseError(ParseErrorKind::UnknownFunction, t.position,
                       "unknown name '" + t.text + "'");
    }
    const std::string name = t.text;
    advance();
    if (!at(TokenType::LParen)) {
      throw ParseError(ParseErrorKind::UnexpectedToken, peek().position,
                       "expected '(' after " + name);
    }
    const std::size_t open = peek().position;
    advance();
    ExprPtr argument = expression();
    if (!at(TokenType::RParen)) {
      const Token& bad = peek();
      if (bad.type == TokenType::End) {
        throw ParseError(ParseErrorKind::UnbalancedParenthesis, bad.position,
                         "missing ')' for '(' at position " + std::to_string(open));
      }
      throw ParseError(ParseErrorKind::UnexpectedToken, bad.position,
                       "unexpected '" + bad.text + "'");
    }
    advance();
    return ast::apply(*f, std::move(argument));
  }

  static constexpr int kMaxDepth = 2000;

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
};

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(lex(text)).parse_all(); }

}  // namespace zetareg
