#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "modcoh/poly.hpp"

namespace modcoh {

/// Quotient of two polynomials, used as the parse result so that inputs
/// like "1/x^2" or "3/2*x" work uniformly. Collapses to a plain
/// polynomial whenever the denominator divides the numerator.
struct Frac {
  Poly num;
  Poly den;

  explicit Frac(Poly n) : num(std::move(n)), den(Poly::one(num.ring())) {}
  Frac(Poly n, Poly d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw input_error("division by zero");
    reduce();
  }

  void reduce() {
    if (den.is_one()) return;
    if (auto q = exact_divide(num, den)) {
      num = std::move(*q);
      den = Poly::one(num.ring());
    }
  }

  bool is_poly() const { return den.is_one() || den.is_unit(); }
  Poly to_poly() const {
    if (den.is_one()) return num;
    if (den.is_unit()) return num * den.unit_inverse();
    throw input_error("expression is not a polynomial: denominator " +
                      den.to_string() + " does not cancel");
  }

  friend Frac operator*(const Frac& a, const Frac& b) {
    return Frac(a.num * b.num, a.den * b.den);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.num.is_zero()) throw input_error("division by zero");
    return Frac(a.num * b.den, a.den * b.num);
  }
  friend Frac operator+(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  Frac operator-() const {
    Frac r = *this;
    r.num = -r.num;
    return r;
  }
  Frac pow(int n) const {
    if (n >= 0) return Frac(num.pow(n), den.pow(n));
    if (num.is_zero()) throw input_error("zero raised to a negative power");
    return Frac(den.pow(-n), num.pow(-n));
  }
};

namespace detail {

struct Token {
  enum Kind { Number, Name, Op, End } kind;
  std::string text;
  int column;  // 1-based
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    tok_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= src_.size()) {
      tok_ = {Token::End, "", tok_.column};
      return;
    }
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
      tok_ = {Token::Number, src_.substr(start, pos_ - start), tok_.column};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
              src_[pos_] == '_'))
        ++pos_;
      tok_ = {Token::Name, src_.substr(start, pos_ - start), tok_.column};
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      ++pos_;
      tok_ = {Token::Op, std::string(1, c), tok_.column};
      return;
    }
    throw input_error(std::string("unexpected character '") + c + "'", 1,
                      tok_.column);
  }

  const std::string& src_;
  std::size_t pos_ = 0;
  Token tok_{Token::End, "", 1};
};

class ExprParser {
 public:
  ExprParser(RingPtr ring, const std::string& src)
      : ring_(std::move(ring)), lex_(src) {}

  Frac parse() {
    Frac f = expr();
    expect_end();
    return f;
  }

  // Product-of-powers view of the input, for declared factorizations:
  // returns the constant in front plus (base, multiplicity) pairs with
  // the syntactic grouping preserved. "3/2*(x+1)^2*x" keeps x+1 intact.
  std::pair<Coeff, std::vector<std::pair<Poly, int>>> parse_factored() {
    Coeff unit(1);
    std::vector<std::pair<Poly, int>> factors;
    bool neg = false;
    while (lex_.peek().kind == Token::Op && lex_.peek().text == "-") {
      lex_.take();
      neg = !neg;
    }
    for (;;) {
      auto [base, col] = factored_atom();
      int exp = 1;
      if (lex_.peek().kind == Token::Op && lex_.peek().text == "^") {
        lex_.take();
        exp = take_int();
      }
      if (base.is_poly() && base.to_poly().is_constant()) {
        Frac c = base.pow(exp);
        if (!c.is_poly())
          throw input_error("constant factor does not invert", 1, col);
        unit *= c.to_poly().constant_value();
      } else {
        if (exp <= 0)
          throw input_error("factor multiplicity must be positive", 1, col);
        Poly b = base.to_poly();
        bool merged = false;
        for (auto& [p, e] : factors)
          if (p == b) {
            e += exp;
            merged = true;
            break;
          }
        if (!merged) factors.emplace_back(std::move(b), exp);
      }
      if (lex_.peek().kind == Token::Op && lex_.peek().text == "*") {
        lex_.take();
        continue;
      }
      if (lex_.peek().kind == Token::Op && lex_.peek().text == "/") {
        Token t = lex_.take();
        auto [d, dcol] = factored_atom();
        int dexp = 1;
        if (lex_.peek().kind == Token::Op && lex_.peek().text == "^") {
          lex_.take();
          dexp = take_int();
        }
        Frac dc = d.pow(dexp);
        if (!dc.is_poly() || !dc.to_poly().is_constant())
          throw input_error("only constants may be divided in a modulus", 1,
                            t.column);
        Coeff c = dc.to_poly().constant_value();
        if (!c.is_unit()) throw input_error("division by zero", 1, t.column);
        unit *= c.inverse();
        if (lex_.peek().kind == Token::Op && lex_.peek().text == "*") {
          lex_.take();
          continue;
        }
      }
      break;
    }
    expect_end();
    if (neg) unit = -unit;
    return {unit, std::move(factors)};
  }

 private:
  Frac expr() {
    bool neg = false;
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().text == "-" || lex_.peek().text == "+")) {
      if (lex_.take().text == "-") neg = !neg;
    }
    Frac acc = term();
    if (neg) acc = -acc;
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      std::string op = lex_.take().text;
      Frac rhs = term();
      acc = (op == "+") ? acc + rhs : acc - rhs;
    }
    return acc;
  }

  Frac term() {
    Frac acc = factor();
    while (lex_.peek().kind == Token::Op &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      std::string op = lex_.take().text;
      Frac rhs = factor();
      acc = (op == "*") ? acc * rhs : acc / rhs;
    }
    return acc;
  }

  Frac factor() {
    Frac base = atom();
    if (lex_.peek().kind == Token::Op && lex_.peek().text == "^") {
      lex_.take();
      return base.pow(take_int());
    }
    return base;
  }

  Frac atom() {
    Token t = lex_.take();
    if (t.kind == Token::Number)
      return Frac(Poly::constant(ring_, Coeff(Rational(mpz_class(t.text)))));
    if (t.kind == Token::Name) {
      if (t.text == "eps") {
        if (ring_->kind() != CoeffKind::DualNumbers)
          throw input_error("'eps' needs dual-number coefficients", 1,
                            t.column);
        return Frac(Poly::constant(ring_, Coeff::eps()));
      }
      if (!ring_->has_var(t.text))
        throw input_error("unknown variable '" + t.text + "'", 1, t.column);
      return Frac(Poly::variable(ring_, ring_->index_of(t.text)));
    }
    if (t.kind == Token::Op && t.text == "(") {
      Frac f = expr();
      Token close = lex_.take();
      if (close.kind != Token::Op || close.text != ")")
        throw input_error("expected ')'", 1, close.column);
      return f;
    }
    if (t.kind == Token::Op && t.text == "-") return -atom();
    throw input_error("expected a number, variable or '('", 1, t.column);
  }

  std::pair<Frac, int> factored_atom() {
    int col = lex_.peek().column;
    return {atom(), col};
  }

  int take_int() {
    bool neg = false;
    Token t = lex_.take();
    if (t.kind == Token::Op && (t.text == "-" || t.text == "+")) {
      neg = t.text == "-";
      t = lex_.take();
    }
    if (t.kind != Token::Number)
      throw input_error("expected an integer exponent", 1, t.column);
    int v = std::stoi(t.text);
    return neg ? -v : v;
  }

  void expect_end() {
    if (lex_.peek().kind != Token::End)
      throw input_error("unexpected trailing input", 1, lex_.peek().column);
  }

  RingPtr ring_;
  Lexer lex_;
};

}  // namespace detail

inline Frac parse_frac(const RingPtr& ring, const std::string& src) {
  return detail::ExprParser(ring, src).parse();
}

inline Poly parse_poly(const RingPtr& ring, const std::string& src) {
  return parse_frac(ring, src).to_poly();
}

/// Parses a declared factorization such as "x^3*y^2" or "3*(x+1)^2*x".
inline std::pair<Coeff, std::vector<std::pair<Poly, int>>> parse_factored(
    const RingPtr& ring, const std::string& src) {
  return detail::ExprParser(ring, src).parse_factored();
}

}  // namespace modcoh
