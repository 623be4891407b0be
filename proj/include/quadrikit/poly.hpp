#pragma once

// Exact multivariate polynomials over Q.
//
// A Poly is a value: a shared, immutable Ring plus a vector of terms kept
// strictly descending in the ring's monomial order, with no zero
// coefficients. Every arithmetic operation preserves that normal form, so
// equality is structural.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace quadrikit {

enum class MonomialOrder { grevlex, lex };

class Ring {
public:
  explicit Ring(std::vector<std::string> variables,
                MonomialOrder order = MonomialOrder::grevlex)
      : variables_(std::move(variables)), order_(order) {
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i].empty())
        throw PreconditionError("empty variable name");
      for (std::size_t j = 0; j < i; ++j)
        if (variables_[i] == variables_[j])
          throw PreconditionError("duplicate variable name '" + variables_[i] + "'");
    }
  }

  const std::vector<std::string> &variables() const noexcept { return variables_; }
  std::size_t arity() const noexcept { return variables_.size(); }
  MonomialOrder order() const noexcept { return order_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
      if (variables_[i] == name)
        return i;
    return std::nullopt;
  }

  bool operator==(const Ring &other) const {
    return order_ == other.order_ && variables_ == other.variables_;
  }

  // "Q[a,b,c]"
  std::string str() const {
    std::string s = "Q[";
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (i)
        s += ',';
      s += variables_[i];
    }
    return s + "]";
  }

private:
  std::vector<std::string> variables_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline RingPtr make_ring(std::vector<std::string> variables,
                         MonomialOrder order = MonomialOrder::grevlex) {
  return std::make_shared<const Ring>(std::move(variables), order);
}

inline bool same_ring(const RingPtr &a, const RingPtr &b) {
  return a == b || (a && b && *a == *b);
}

// Ring with the variables of `base` followed by `extra` (same order).
inline RingPtr extend_ring(const RingPtr &base, const std::vector<std::string> &extra) {
  auto vars = base->variables();
  vars.insert(vars.end(), extra.begin(), extra.end());
  return make_ring(std::move(vars), base->order());
}

using Exponents = std::vector<std::uint32_t>;

inline unsigned total_degree(const Exponents &e) {
  unsigned d = 0;
  for (auto x : e)
    d += x;
  return d;
}

// Three-way comparison; positive when a > b.
inline int compare_monomials(const Exponents &a, const Exponents &b, MonomialOrder order) {
  if (order == MonomialOrder::grevlex) {
    unsigned da = total_degree(a), db = total_degree(b);
    if (da != db)
      return da > db ? 1 : -1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i])
        return a[i] < b[i] ? 1 : -1;
    return 0;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i])
      return a[i] > b[i] ? 1 : -1;
  return 0;
}

inline bool divides(const Exponents &a, const Exponents &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i])
      return false;
  return true;
}

inline Exponents monomial_lcm(const Exponents &a, const Exponents &b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] = std::max(a[i], b[i]);
  return r;
}

struct Term {
  Exponents exponents;
  Rational coeff;
};

class Poly {
public:
  explicit Poly(RingPtr ring) : ring_(std::move(ring)) {
    if (!ring_)
      throw PreconditionError("polynomial without a ring");
  }

  static Poly constant(RingPtr ring, const Rational &c) {
    Poly p(std::move(ring));
    if (c != 0)
      p.terms_.push_back({Exponents(p.ring_->arity(), 0), c});
    return p;
  }

  static Poly monomial(RingPtr ring, Exponents e, const Rational &c = 1) {
    Poly p(std::move(ring));
    if (e.size() != p.ring_->arity())
      throw PreconditionError("exponent vector arity mismatch");
    if (c != 0)
      p.terms_.push_back({std::move(e), c});
    return p;
  }

  static Poly variable(RingPtr ring, std::size_t index) {
    if (index >= ring->arity())
      throw PreconditionError("variable index out of range");
    Exponents e(ring->arity(), 0);
    e[index] = 1;
    return monomial(std::move(ring), std::move(e));
  }

  static Poly variable(RingPtr ring, std::string_view name) {
    auto idx = ring->index_of(name);
    if (!idx)
      throw PreconditionError("unknown variable '" + std::string(name) + "'");
    return variable(std::move(ring), *idx);
  }

  const RingPtr &ring() const noexcept { return ring_; }
  const std::vector<Term> &terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && quadrikit::total_degree(terms_[0].exponents) == 0);
  }

  Rational constant_term() const {
    if (!terms_.empty() && quadrikit::total_degree(terms_.back().exponents) == 0)
      return terms_.back().coeff;
    return 0;
  }

  const Term &leading_term() const {
    if (terms_.empty())
      throw PreconditionError("leading term of zero polynomial");
    return terms_.front();
  }

  int total_degree() const {
    int d = -1;
    for (const auto &t : terms_)
      d = std::max<int>(d, static_cast<int>(quadrikit::total_degree(t.exponents)));
    return d;
  }

  int degree_in(std::size_t var) const {
    int d = -1;
    for (const auto &t : terms_)
      d = std::max<int>(d, static_cast<int>(t.exponents[var]));
    return d;
  }

  Rational coefficient(const Exponents &e) const {
    for (const auto &t : terms_)
      if (t.exponents == e)
        return t.coeff;
    return 0;
  }

  bool is_homogeneous() const {
    if (terms_.empty())
      return true;
    auto d = quadrikit::total_degree(terms_[0].exponents);
    for (const auto &t : terms_)
      if (quadrikit::total_degree(t.exponents) != d)
        return false;
    return true;
  }

  Poly homogeneous_part(unsigned degree) const {
    Poly r(ring_);
    for (const auto &t : terms_)
      if (quadrikit::total_degree(t.exponents) == degree)
        r.terms_.push_back(t);
    return r;
  }

  // Makes the leading coefficient 1 (zero stays zero).
  Poly monic() const {
    if (terms_.empty() || terms_[0].coeff == 1)
      return *this;
    Rational inv = 1 / terms_[0].coeff;
    return *this * inv;
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto &t : r.terms_)
      t.coeff = -t.coeff;
    return r;
  }

  friend Poly operator+(const Poly &a, const Poly &b) { return a.combine(b, false); }
  friend Poly operator-(const Poly &a, const Poly &b) { return a.combine(b, true); }

  friend Poly operator*(const Poly &a, const Rational &c) {
    Poly r(a.ring_);
    if (c == 0)
      return r;
    r.terms_ = a.terms_;
    for (auto &t : r.terms_)
      t.coeff *= c;
    return r;
  }
  friend Poly operator*(const Rational &c, const Poly &a) { return a * c; }

  friend Poly operator*(const Poly &a, const Poly &b) {
    a.check_ring(b);
    if (a.is_zero() || b.is_zero())
      return Poly(a.ring_);
    if (b.terms_.size() == 1)
      return a.mul_term(b.terms_[0]);
    if (a.terms_.size() == 1)
      return b.mul_term(a.terms_[0]);
    auto order = a.ring_->order();
    auto greater = [order](const Exponents &x, const Exponents &y) {
      return compare_monomials(x, y, order) > 0;
    };
    std::map<Exponents, Rational, decltype(greater)> acc(greater);
    Exponents e(a.ring_->arity());
    for (const auto &s : a.terms_)
      for (const auto &t : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i)
          e[i] = s.exponents[i] + t.exponents[i];
        auto [it, inserted] = acc.try_emplace(e, s.coeff * t.coeff);
        if (!inserted)
          it->second += s.coeff * t.coeff;
      }
    Poly r(a.ring_);
    r.terms_.reserve(acc.size());
    for (auto &[ex, c] : acc)
      if (c != 0)
        r.terms_.push_back({ex, c});
    return r;
  }

  Poly &operator+=(const Poly &o) { return *this = *this + o; }
  Poly &operator-=(const Poly &o) { return *this = *this - o; }
  Poly &operator*=(const Poly &o) { return *this = *this * o; }

  Poly pow(unsigned e) const {
    Poly result = constant(ring_, 1), base = *this;
    while (e) {
      if (e & 1u)
        result *= base;
      e >>= 1;
      if (e)
        base *= base;
    }
    return result;
  }

  // Multiply by c * x^e.
  Poly mul_term(const Term &m) const {
    Poly r(ring_);
    if (m.coeff == 0)
      return r;
    r.terms_.reserve(terms_.size());
    for (const auto &t : terms_) {
      Exponents e(t.exponents);
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] += m.exponents[i];
      r.terms_.push_back({std::move(e), t.coeff * m.coeff});
    }
    return r;
  }

  friend bool operator==(const Poly &a, const Poly &b) {
    if (!same_ring(a.ring_, b.ring_))
      return false;
    if (a.terms_.size() != b.terms_.size())
      return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (a.terms_[i].exponents != b.terms_[i].exponents || a.terms_[i].coeff != b.terms_[i].coeff)
        return false;
    return true;
  }
  friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

  Rational evaluate(std::span<const Rational> point) const {
    if (point.size() != ring_->arity())
      throw PreconditionError("evaluation point arity mismatch");
    Rational sum = 0;
    for (const auto &t : terms_) {
      Rational v = t.coeff;
      for (std::size_t i = 0; i < point.size(); ++i)
        for (std::uint32_t k = 0; k < t.exponents[i]; ++k)
          v *= point[i];
      sum += v;
    }
    return sum;
  }

  // Ring homomorphism sending variable i of this ring to images[i].
  Poly substitute(const RingPtr &target, std::span<const Poly> images) const {
    if (images.size() != ring_->arity())
      throw PreconditionError("substitution arity mismatch");
    for (const auto &img : images)
      if (!same_ring(img.ring(), target))
        throw PreconditionError("substitution image in the wrong ring");
    std::vector<std::vector<Poly>> powers(images.size());
    auto power_of = [&](std::size_t var, std::uint32_t k) -> const Poly & {
      auto &cache = powers[var];
      if (cache.empty())
        cache.push_back(constant(target, 1));
      while (cache.size() <= k)
        cache.push_back(cache.back() * images[var]);
      return cache[k];
    };
    Poly result(target);
    for (const auto &t : terms_) {
      Poly m = constant(target, t.coeff);
      for (std::size_t i = 0; i < t.exponents.size(); ++i)
        if (t.exponents[i])
          m *= power_of(i, t.exponents[i]);
      result += m;
    }
    return result;
  }

  // Re-express in `target`, matching variables by name. Variables that
  // occur with nonzero exponent must exist in the target.
  Poly embed(const RingPtr &target) const {
    if (same_ring(ring_, target)) {
      Poly r = *this;
      r.ring_ = target;
      return r;
    }
    std::vector<std::optional<std::size_t>> map(ring_->arity());
    for (std::size_t i = 0; i < ring_->arity(); ++i)
      map[i] = target->index_of(ring_->variables()[i]);
    auto order = target->order();
    auto greater = [order](const Exponents &x, const Exponents &y) {
      return compare_monomials(x, y, order) > 0;
    };
    std::map<Exponents, Rational, decltype(greater)> acc(greater);
    for (const auto &t : terms_) {
      Exponents e(target->arity(), 0);
      for (std::size_t i = 0; i < t.exponents.size(); ++i) {
        if (!t.exponents[i])
          continue;
        if (!map[i])
          throw PreconditionError("variable '" + ring_->variables()[i] + "' missing from target ring " +
                                  target->str());
        e[*map[i]] += t.exponents[i];
      }
      acc[e] += t.coeff;
    }
    Poly r(target);
    for (auto &[ex, c] : acc)
      if (c != 0)
        r.terms_.push_back({ex, c});
    return r;
  }

  std::string str() const {
    if (terms_.empty())
      return "0";
    std::string out;
    bool first = true;
    for (const auto &t : terms_) {
      Rational c = t.coeff;
      if (first) {
        if (c < 0) {
          out += "-";
          c = -c;
        }
      } else {
        out += c < 0 ? " - " : " + ";
        if (c < 0)
          c = -c;
      }
      first = false;
      std::string mono;
      for (std::size_t i = 0; i < t.exponents.size(); ++i) {
        if (!t.exponents[i])
          continue;
        if (!mono.empty())
          mono += "*";
        mono += ring_->variables()[i];
        if (t.exponents[i] > 1)
          mono += "^" + std::to_string(t.exponents[i]);
      }
      if (mono.empty())
        out += c.get_str();
      else if (c == 1)
        out += mono;
      else
        out += c.get_str() + "*" + mono;
    }
    return out;
  }

  friend std::ostream &operator<<(std::ostream &os, const Poly &p) { return os << p.str(); }

private:
  void check_ring(const Poly &o) const {
    if (!same_ring(ring_, o.ring_))
      throw PreconditionError("ring mismatch: " + ring_->str() + " vs " + o.ring_->str());
  }

  Poly combine(const Poly &b, bool subtract) const {
    check_ring(b);
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + b.terms_.size());
    auto order = ring_->order();
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < b.terms_.size()) {
      int cmp;
      if (i == terms_.size())
        cmp = -1;
      else if (j == b.terms_.size())
        cmp = 1;
      else
        cmp = compare_monomials(terms_[i].exponents, b.terms_[j].exponents, order);
      if (cmp > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        const auto &t = b.terms_[j++];
        r.terms_.push_back({t.exponents, subtract ? Rational(-t.coeff) : t.coeff});
      } else {
        Rational c = subtract ? Rational(terms_[i].coeff - b.terms_[j].coeff)
                              : Rational(terms_[i].coeff + b.terms_[j].coeff);
        if (c != 0)
          r.terms_.push_back({terms_[i].exponents, c});
        ++i;
        ++j;
      }
    }
    return r;
  }

  RingPtr ring_;
  std::vector<Term> terms_;
};

// Quotient f / g when g divides f exactly; nullopt otherwise.
inline std::optional<Poly> divide_exact(const Poly &f, const Poly &g) {
  if (g.is_zero())
    throw PreconditionError("division by zero polynomial");
  if (!same_ring(f.ring(), g.ring()))
    throw PreconditionError("ring mismatch in division");
  const Term &lg = g.leading_term();
  Poly quotient(f.ring()), rest = f;
  while (!rest.is_zero()) {
    const Term &lr = rest.leading_term();
    if (!divides(lg.exponents, lr.exponents))
      return std::nullopt;
    Exponents e(lr.exponents);
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] -= lg.exponents[i];
    Term q{std::move(e), lr.coeff / lg.coeff};
    quotient = quotient + Poly::monomial(f.ring(), q.exponents, q.coeff);
    rest = rest - g.mul_term(q);
  }
  return quotient;
}

} // namespace quadrikit
