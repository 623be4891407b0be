#pragma once

// Rational sample points of the base and partial evaluation of polynomials.
//
// Draws go through std::mt19937_64 with a plain modulus mapping, so a seed
// produces the same points on every platform.

#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace quadrikit {

inline constexpr std::uint64_t generic_seed = 0x5EED;

struct Specialization {
  RingPtr base;
  std::vector<Rational> values; // one per base variable
  std::uint64_t seed = 0;
  std::size_t draw = 0;       // index of the accepted draw in the stream
  std::size_t rejections = 0; // draws rejected before this one

  // "(a=1, b=-2/3, c=0)"
  std::string str() const {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < values.size(); ++i)
      os << (i ? ", " : "") << base->variables()[i] << "=" << values[i].get_str();
    os << ")";
    return os.str();
  }
};

// Uniform-ish random rationals p/q with |p| <= 9, 1 <= q <= 4.
class RandomPoints {
public:
  RandomPoints(RingPtr base, std::uint64_t seed) : base_(std::move(base)), seed_(seed), rng_(seed) {}

  std::vector<Rational> operator()() {
    std::vector<Rational> v;
    v.reserve(base_->arity());
    for (std::size_t i = 0; i < base_->arity(); ++i)
      v.push_back(next());
    return v;
  }

  Rational next() {
    long p = static_cast<long>(rng_() % 19) - 9;
    long q = static_cast<long>(rng_() % 4) + 1;
    return make_rational(p, q);
  }

  long next_int(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  std::uint64_t seed() const noexcept { return seed_; }

private:
  RingPtr base_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
};

inline constexpr std::size_t max_sample_tries = 100;

// `count` points where `avoid` does not vanish, drawn from `candidates`.
// A base without variables has exactly one point; it is returned once,
// whatever `avoid` is, since there is nothing to resample.
template <class Candidates>
std::vector<Specialization> sample_off(const RingPtr &base, const Poly &avoid, std::size_t count,
                                       std::uint64_t seed, Candidates &&candidates) {
  if (base->arity() == 0)
    return {Specialization{base, {}, seed, 0, 0}};
  std::vector<Specialization> out;
  std::size_t draw = 0;
  while (out.size() < count) {
    std::size_t rejected = 0;
    for (;;) {
      std::vector<Rational> pt = candidates();
      if (pt.size() != base->arity())
        throw PreconditionError("sample point has the wrong arity");
      ++draw;
      if (avoid.evaluate(pt) != 0) {
        out.push_back({base, std::move(pt), seed, draw - 1, rejected});
        break;
      }
      if (++rejected >= max_sample_tries)
        throw VerificationError("no sample off the excluded locus after " + std::to_string(max_sample_tries) +
                                    " tries",
                                avoid.str());
    }
  }
  return out;
}

inline std::vector<Specialization> sample_off(const RingPtr &base, const Poly &avoid, std::size_t count,
                                              std::uint64_t seed) {
  return sample_off(base, avoid, count, seed, RandomPoints(base, seed));
}

// Substitute base values into a polynomial over base + extra variables,
// landing in `target` (the extra variables).
inline Poly specialize(const Poly &p, const Specialization &s, const RingPtr &target) {
  std::vector<Poly> images;
  images.reserve(p.ring()->arity());
  for (const auto &name : p.ring()->variables()) {
    if (auto i = s.base->index_of(name))
      images.push_back(Poly::constant(target, s.values[*i]));
    else
      images.push_back(Poly::variable(target, name));
  }
  return p.substitute(target, images);
}

inline Rational evaluate_at(const Poly &p, const Specialization &s) {
  if (!same_ring(p.ring(), s.base))
    throw PreconditionError("evaluation at a point of a different base");
  return p.evaluate(s.values);
}

inline RatMatrix evaluate_at(const PolyMatrix &m, const Specialization &s) {
  if (!same_ring(m.ring(), s.base))
    throw PreconditionError("evaluation at a point of a different base");
  return m.evaluate(s.values);
}

} // namespace quadrikit
