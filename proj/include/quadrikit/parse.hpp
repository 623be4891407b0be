#pragma once

// Recursive-descent expression parser shared by polynomials and Clifford
// elements.
//
//   expr    := term { ('+' | '-') term }
//   term    := unary { '*' unary }
//   unary   := ('-' | '+') unary | power
//   power   := primary [ '^' ['-'] integer ]
//   primary := rational | identifier | '(' expr ')'
//   rational:= digits [ '/' digits ]
//
// Whitespace is insignificant. The Algebra policy supplies the value type
// and decides which identifiers and exponents are legal:
//
//   typename Algebra::value_type
//   value_type Algebra::from_rational(const Rational&) const
//   value_type Algebra::atom(std::string_view name) const   // throws ParseError
//   value_type Algebra::power(const value_type&, long) const // throws ParseError
//
// and value_type must provide +, -, * and unary -.

#include <cctype>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "poly.hpp"
#include "rational.hpp"

namespace quadrikit {

template <class Algebra> class ExpressionParser {
public:
  using value_type = typename Algebra::value_type;

  ExpressionParser(std::string_view source, const Algebra &algebra)
      : src_(source), algebra_(algebra) {}

  value_type parse() {
    skip_ws();
    if (pos_ == src_.size())
      fail("empty expression");
    value_type v = expr();
    skip_ws();
    if (pos_ != src_.size())
      fail("unexpected '" + std::string(1, src_[pos_]) + "'");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw ParseError("syntax error at column " + std::to_string(pos_ + 1) + ": " + msg +
                     " in \"" + std::string(src_) + "\"");
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  value_type expr() {
    value_type v = term();
    for (;;) {
      if (accept('+'))
        v = v + term();
      else if (accept('-'))
        v = v - term();
      else
        return v;
    }
  }

  value_type term() {
    value_type v = unary();
    while (accept('*'))
      v = v * unary();
    return v;
  }

  value_type unary() {
    if (accept('-'))
      return -unary();
    if (accept('+'))
      return unary();
    return power();
  }

  value_type power() {
    value_type base = primary();
    if (!accept('^'))
      return base;
    skip_ws();
    bool negative = accept('-');
    skip_ws();
    if (pos_ == src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
      fail("exponent must be an integer");
    Rational e = number();
    if (e.get_den() != 1 || !e.get_num().fits_slong_p())
      fail("exponent not an integer");
    long k = e.get_num().get_si();
    if (pos_ < src_.size() && (src_[pos_] == '.' || std::isalpha(static_cast<unsigned char>(src_[pos_]))))
      fail("exponent not an integer");
    return algebra_.power(base, negative ? -k : k);
  }

  Rational number() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '/' && pos_ + 1 < src_.size() &&
        std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      ++pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        ++pos_;
    }
    if (pos_ < src_.size() && src_[pos_] == '.')
      fail("decimal literals are not supported");
    return parse_rational(src_.substr(start, pos_ - start));
  }

  value_type primary() {
    skip_ws();
    if (pos_ == src_.size())
      fail("unexpected end of input");
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      value_type v = expr();
      if (!accept(')'))
        fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return algebra_.from_rational(number());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      return algebra_.atom(src_.substr(start, pos_ - start));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  const Algebra &algebra_;
  std::size_t pos_ = 0;
};

struct PolyAlgebra {
  using value_type = Poly;
  RingPtr ring;

  Poly from_rational(const Rational &r) const { return Poly::constant(ring, r); }

  Poly atom(std::string_view name) const {
    auto idx = ring->index_of(name);
    if (!idx)
      throw ParseError("unknown identifier '" + std::string(name) + "' (ring " + ring->str() + ")");
    return Poly::variable(ring, *idx);
  }

  Poly power(const Poly &base, long e) const {
    if (e < 0)
      throw ParseError("exponent not a nonnegative integer: " + std::to_string(e));
    return base.pow(static_cast<unsigned>(e));
  }
};

inline Poly parse_poly(std::string_view source, const RingPtr &ring) {
  PolyAlgebra algebra{ring};
  return ExpressionParser<PolyAlgebra>(source, algebra).parse();
}

} // namespace quadrikit
