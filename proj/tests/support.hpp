#pragma once

#include <random>
#include <string>

#include <quadrikit/quadrikit.hpp>

namespace qktest {

using namespace quadrikit;

inline std::string data(const std::string &name) { return std::string(QK_DATA_DIR) + "/" + name; }

inline RingPtr abc() { return make_ring({"a", "b", "c"}); }

inline QuadraticForm binary_family() {
  return QuadraticForm::parse("x1*x2 + a*x3^2 + b*x3*x4 + c*x4^2", abc(), 4);
}

// Random polynomial with small rational coefficients, total degree <= deg.
inline Poly random_poly(const RingPtr &ring, std::mt19937_64 &rng, unsigned deg, std::size_t terms) {
  Poly p(ring);
  for (std::size_t t = 0; t < terms; ++t) {
    Exponents e(ring->arity(), 0);
    unsigned left = deg ? static_cast<unsigned>(rng() % (deg + 1)) : 0;
    while (left-- > 0 && ring->arity())
      ++e[rng() % ring->arity()];
    p += Poly::monomial(ring, e, make_rational(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1));
  }
  return p;
}

inline Rational random_rational(std::mt19937_64 &rng) {
  return make_rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1);
}

} // namespace qktest
