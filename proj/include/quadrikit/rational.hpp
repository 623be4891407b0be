#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace quadrikit {

// Exact rationals. mpq_class keeps numerator/denominator reduced with a
// positive denominator as long as every value passes through canonicalize().
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer &num, const Integer &den = 1) {
  if (den == 0)
    throw PreconditionError("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(long num, long den = 1) {
  return make_rational(Integer(num), Integer(den));
}

// Parses "12", "-3", "7/4". No whitespace, no decimal point.
inline Rational parse_rational(std::string_view text) {
  if (text.empty())
    throw ParseError("empty rational literal");
  std::string s(text);
  auto slash = s.find('/');
  auto valid_int = [](std::string_view t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size())
      return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9')
        return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s))
      throw ParseError("malformed rational literal '" + s + "'");
    return make_rational(Integer(s[0] == '+' ? s.substr(1) : s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational literal '" + s + "'");
  Integer d(den);
  if (d == 0)
    throw ParseError("zero denominator in '" + s + "'");
  return make_rational(Integer(num[0] == '+' ? num.substr(1) : num), d);
}

inline std::string to_string(const Rational &r) { return r.get_str(); }

inline Rational abs_value(const Rational &r) { return r < 0 ? Rational(-r) : r; }

// Returns s with s*s == r when r is the square of a rational.
inline std::optional<Rational> rational_sqrt(const Rational &r) {
  if (r < 0)
    return std::nullopt;
  Integer n = r.get_num(), d = r.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
    return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  return make_rational(sn, sd);
}

} // namespace quadrikit
