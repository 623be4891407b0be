#pragma once

// Ideals of a polynomial ring and a Buchberger engine producing the unique
// reduced Groebner basis for the ring's monomial order.
//
// Sized for desk-scale work: a handful of variables, generators of low
// degree. Pair selection is the normal strategy (smallest lcm first) with
// the coprime and chain criteria.

#include <algorithm>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace quadrikit {

// Full reduction of f modulo `basis` (every term is reduced, not only the head).
inline Poly normal_form(const Poly &f, const std::vector<Poly> &basis) {
  Poly rest = f, remainder(f.ring());
  std::vector<Term> kept;
  while (!rest.is_zero()) {
    const Term &lt = rest.leading_term();
    const Poly *reducer = nullptr;
    for (const auto &g : basis)
      if (divides(g.leading_term().exponents, lt.exponents)) {
        reducer = &g;
        break;
      }
    if (!reducer) {
      kept.push_back(lt);
      rest = rest - Poly::monomial(f.ring(), lt.exponents, lt.coeff);
      continue;
    }
    const Term &lg = reducer->leading_term();
    Exponents e(lt.exponents);
    for (std::size_t i = 0; i < e.size(); ++i)
      e[i] -= lg.exponents[i];
    Term q{std::move(e), lt.coeff / lg.coeff};
    rest = rest - reducer->mul_term(q);
  }
  for (const auto &t : kept)
    remainder = remainder + Poly::monomial(f.ring(), t.exponents, t.coeff);
  return remainder;
}

namespace detail {

inline Poly s_polynomial(const Poly &f, const Poly &g) {
  const Term &lf = f.leading_term(), &lg = g.leading_term();
  Exponents l = monomial_lcm(lf.exponents, lg.exponents);
  Exponents uf(l), ug(l);
  for (std::size_t i = 0; i < l.size(); ++i) {
    uf[i] -= lf.exponents[i];
    ug[i] -= lg.exponents[i];
  }
  return f.mul_term({uf, 1 / lf.coeff}) - g.mul_term({ug, 1 / lg.coeff});
}

inline bool coprime(const Exponents &a, const Exponents &b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i])
      return false;
  return true;
}

inline std::vector<Poly> reduce_basis(std::vector<Poly> g) {
  // Drop elements whose leading monomial is divisible by another's.
  std::vector<Poly> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j)
        continue;
      const auto &ei = g[i].leading_term().exponents, &ej = g[j].leading_term().exponents;
      if (divides(ej, ei) && (ei != ej || j < i))
        redundant = true;
    }
    if (!redundant)
      minimal.push_back(g[i]);
  }
  std::vector<Poly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Poly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i)
        others.push_back(minimal[j]);
    const Term &lt = minimal[i].leading_term();
    Poly tail = minimal[i] - Poly::monomial(minimal[i].ring(), lt.exponents, lt.coeff);
    Poly r = Poly::monomial(minimal[i].ring(), lt.exponents, lt.coeff) + normal_form(tail, others);
    reduced.push_back(r.monic());
  }
  auto order = reduced.empty() ? MonomialOrder::grevlex : reduced.front().ring()->order();
  std::sort(reduced.begin(), reduced.end(), [order](const Poly &a, const Poly &b) {
    return compare_monomials(a.leading_term().exponents, b.leading_term().exponents, order) > 0;
  });
  return reduced;
}

} // namespace detail

// Reduced Groebner basis of the ideal generated by `generators`.
// The zero ideal has the empty basis; the unit ideal has basis {1}.
inline std::vector<Poly> buchberger(const RingPtr &ring, const std::vector<Poly> &generators) {
  std::vector<Poly> g;
  for (const auto &p : generators) {
    if (!same_ring(p.ring(), ring))
      throw PreconditionError("generator ring mismatch");
    if (p.is_zero())
      continue;
    if (p.is_constant())
      return {Poly::constant(ring, 1)};
    g.push_back(p.monic());
  }
  if (g.empty())
    return {};
  const auto order = ring->order();
  struct Pair {
    std::size_t i, j;
    Exponents lcm;
  };
  std::vector<Pair> pairs;
  auto add_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
      pairs.push_back({i, k, monomial_lcm(g[i].leading_term().exponents, g[k].leading_term().exponents)});
  };
  for (std::size_t k = 1; k < g.size(); ++k)
    add_pairs_for(k);
  auto pending = [&](std::size_t a, std::size_t b) {
    if (a > b)
      std::swap(a, b);
    return std::any_of(pairs.begin(), pairs.end(), [&](const Pair &p) { return p.i == a && p.j == b; });
  };
  while (!pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [order](const Pair &a, const Pair &b) {
      return compare_monomials(a.lcm, b.lcm, order) < 0;
    });
    Pair p = *best;
    pairs.erase(best);
    const auto &li = g[p.i].leading_term().exponents, &lj = g[p.j].leading_term().exponents;
    if (detail::coprime(li, lj))
      continue;
    bool chain = false;
    for (std::size_t k = 0; k < g.size() && !chain; ++k)
      if (k != p.i && k != p.j && divides(g[k].leading_term().exponents, p.lcm) && !pending(p.i, k) &&
          !pending(p.j, k))
        chain = true;
    if (chain)
      continue;
    Poly r = normal_form(detail::s_polynomial(g[p.i], g[p.j]), g);
    if (r.is_zero())
      continue;
    if (r.is_constant())
      return {Poly::constant(ring, 1)};
    g.push_back(r.monic());
    add_pairs_for(g.size() - 1);
  }
  return detail::reduce_basis(std::move(g));
}

class Ideal {
public:
  Ideal(RingPtr ring, std::vector<Poly> generators)
      : ring_(std::move(ring)), generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
    for (const auto &p : generators_)
      if (!same_ring(p.ring(), ring_))
        throw PreconditionError("ideal generator in the wrong ring");
  }

  const RingPtr &ring() const noexcept { return ring_; }
  const std::vector<Poly> &generators() const noexcept { return generators_; }

  // Computed on first use; concurrent callers block until the one fill completes.
  const std::vector<Poly> &groebner_basis() const {
    std::call_once(cache_->once, [this] { cache_->basis = buchberger(ring_, generators_); });
    return cache_->basis;
  }

  bool contains(const Poly &f) const {
    if (!same_ring(f.ring(), ring_))
      throw PreconditionError("ring mismatch in ideal membership");
    return normal_form(f, groebner_basis()).is_zero();
  }

  bool is_unit() const {
    const auto &gb = groebner_basis();
    return gb.size() == 1 && gb[0].is_constant();
  }

  bool is_zero() const { return groebner_basis().empty(); }

  // "(g1, g2, ...)" over the stated generators.
  std::string str() const { return format(generators_); }

  // "(g1, g2, ...)" over the reduced Groebner basis.
  std::string reduced_str() const { return format(groebner_basis()); }

  static std::string format(const std::vector<Poly> &gens) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < gens.size(); ++i)
      os << (i ? ", " : "") << gens[i].str();
    if (gens.empty())
      os << "0";
    os << ")";
    return os.str();
  }

private:
  struct Cache {
    std::once_flag once;
    std::vector<Poly> basis;
  };

  RingPtr ring_;
  std::vector<Poly> generators_;
  std::shared_ptr<Cache> cache_;
};

inline const std::vector<Poly> &groebner(const Ideal &i) { return i.groebner_basis(); }

inline bool ideal_membership(const Poly &f, const Ideal &i) { return i.contains(f); }

inline bool is_unit_ideal(const Ideal &i) { return i.is_unit(); }

// Every generator of a lies in b.
inline bool ideal_contained(const Ideal &a, const Ideal &b) {
  if (!same_ring(a.ring(), b.ring()))
    throw PreconditionError("ring mismatch in ideal comparison");
  return std::all_of(a.generators().begin(), a.generators().end(),
                     [&](const Poly &g) { return b.contains(g); });
}

inline bool ideals_equal(const Ideal &a, const Ideal &b) {
  return ideal_contained(a, b) && ideal_contained(b, a);
}

// Ideal generated by all nonzero k x k minors.
inline Ideal minors_ideal(const PolyMatrix &m, std::size_t k) {
  std::vector<Poly> gens;
  for (auto &p : minors(m, k))
    if (!p.is_zero())
      gens.push_back(std::move(p));
  return Ideal(m.ring(), std::move(gens));
}

} // namespace quadrikit
