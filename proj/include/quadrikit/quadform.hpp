#pragma once

// Quadratic forms q: E -> L over a polynomial base, with E free of rank n
// and L trivialized. The form is stored as its upper-triangular coefficient
// table c_ij (i <= j), q = sum_{i<=j} c_ij x_i x_j; the bilinear form
// b_q(v,w) = q(v+w) - q(v) - q(w) has matrix B with B_ii = 2 c_ii and
// B_ij = B_ji = c_ij.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "groebner.hpp"
#include "matrix.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "presentation.hpp"

namespace quadrikit {

// Coordinate vector of E with entries in the base ring.
using Vector = std::vector<Poly>;

inline Vector unit_vector(const RingPtr &base, std::size_t n, std::size_t i) {
  Vector v(n, Poly(base));
  v.at(i) = Poly::constant(base, 1);
  return v;
}

inline std::string vector_str(const Vector &v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i)
    s += (i ? ", " : "") + v[i].str();
  return s + ")";
}

inline std::vector<std::string> default_fiber_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back("x" + std::to_string(i));
  return names;
}

class QuadraticForm {
public:
  // Degree of the value line bundle in the Clifford grading.
  static constexpr int l_weight = 2;

  // `upper` holds c_ij for i <= j in row-major order of the upper triangle.
  QuadraticForm(RingPtr base, std::size_t rank, std::vector<Poly> upper,
                std::vector<std::string> fiber_names = {})
      : base_(std::move(base)), rank_(rank), coeff_(std::move(upper)), fiber_names_(std::move(fiber_names)) {
    if (coeff_.size() != rank_ * (rank_ + 1) / 2)
      throw PreconditionError("coefficient table has the wrong size for rank " + std::to_string(rank_));
    for (const auto &c : coeff_)
      if (!same_ring(c.ring(), base_))
        throw PreconditionError("coefficient outside the base ring");
    if (fiber_names_.empty())
      fiber_names_ = default_fiber_names(rank_);
    if (fiber_names_.size() != rank_)
      throw PreconditionError("need one fiber variable name per basis vector");
    for (const auto &name : fiber_names_)
      if (base_->index_of(name))
        throw PreconditionError("fiber variable '" + name + "' clashes with a base variable");
    fiber_ring_ = extend_ring(base_, fiber_names_);
  }

  static QuadraticForm zero(const RingPtr &base, std::size_t rank) {
    return QuadraticForm(base, rank, std::vector<Poly>(rank * (rank + 1) / 2, Poly(base)));
  }

  // From a polynomial in base + fiber variables, homogeneous of degree 2 in the fiber variables.
  static QuadraticForm from_polynomial(const RingPtr &base, std::size_t rank, const Poly &q,
                                       std::vector<std::string> fiber_names = {}) {
    if (fiber_names.empty())
      fiber_names = default_fiber_names(rank);
    QuadraticForm form = zero(base, rank);
    form.fiber_names_ = fiber_names;
    form.fiber_ring_ = extend_ring(base, fiber_names);
    Poly p = q.embed(form.fiber_ring_);
    const std::size_t nb = base->arity();
    for (const auto &t : p.terms()) {
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < rank; ++i)
        for (std::uint32_t k = 0; k < t.exponents[nb + i]; ++k)
          idx.push_back(i);
      if (idx.size() != 2)
        throw ParseError("term of fiber degree " + std::to_string(idx.size()) +
                         " in quadratic form (need every term quadratic in " + fiber_names.front() + ".." +
                         fiber_names.back() + ")");
      Exponents be(t.exponents.begin(), t.exponents.begin() + static_cast<std::ptrdiff_t>(nb));
      form.coeff_ref(idx[0], idx[1]) += Poly::monomial(base, be, t.coeff);
    }
    return form;
  }

  static QuadraticForm parse(std::string_view expr, const RingPtr &base, std::size_t rank) {
    auto names = default_fiber_names(rank);
    for (const auto &n : names)
      if (base->index_of(n))
        throw ParseError("base variable '" + n + "' clashes with a fiber variable");
    return from_polynomial(base, rank, parse_poly(expr, extend_ring(base, names)));
  }

  const RingPtr &base() const noexcept { return base_; }
  const RingPtr &fiber_ring() const noexcept { return fiber_ring_; }
  const std::vector<std::string> &fiber_names() const noexcept { return fiber_names_; }
  std::size_t rank() const noexcept { return rank_; }

  // c_ij, symmetric access.
  const Poly &coeff(std::size_t i, std::size_t j) const { return coeff_.at(index(i, j)); }

  bool is_zero() const {
    return std::all_of(coeff_.begin(), coeff_.end(), [](const Poly &p) { return p.is_zero(); });
  }

  PolyMatrix bilinear_matrix() const {
    PolyMatrix b(base_, rank_, rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
      b(i, i) = coeff(i, i) * Rational(2);
      for (std::size_t j = i + 1; j < rank_; ++j)
        b(i, j) = b(j, i) = coeff(i, j);
    }
    return b;
  }

  Poly value(std::span<const Poly> v) const {
    check_vector(v);
    Poly s(base_);
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = i; j < rank_; ++j)
        if (!coeff(i, j).is_zero() && !v[i].is_zero() && !v[j].is_zero())
          s += coeff(i, j) * v[i] * v[j];
    return s;
  }

  Poly bilinear(std::span<const Poly> v, std::span<const Poly> w) const {
    check_vector(v);
    check_vector(w);
    Poly s(base_);
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = 0; j < rank_; ++j) {
        const Poly &c = coeff(i, j);
        if (c.is_zero() || v[i].is_zero() || w[j].is_zero())
          continue;
        Poly term = c * v[i] * w[j];
        s += i == j ? term * Rational(2) : term;
      }
    return s;
  }

  // q as a polynomial in the fiber ring.
  Poly polynomial() const {
    Poly s(fiber_ring_);
    const std::size_t nb = base_->arity();
    for (std::size_t i = 0; i < rank_; ++i)
      for (std::size_t j = i; j < rank_; ++j) {
        if (coeff(i, j).is_zero())
          continue;
        Exponents e(fiber_ring_->arity(), 0);
        e[nb + i] += 1;
        e[nb + j] += 1;
        s += coeff(i, j).embed(fiber_ring_) * Poly::monomial(fiber_ring_, e);
      }
    return s;
  }

  std::string str() const { return polynomial().str(); }

  // Same form with every coefficient pushed through f into `target`.
  QuadraticForm map_base(const RingPtr &target, const std::function<Poly(const Poly &)> &f) const {
    std::vector<Poly> up;
    up.reserve(coeff_.size());
    for (const auto &c : coeff_)
      up.push_back(f(c));
    return QuadraticForm(target, rank_, std::move(up), fiber_names_);
  }

  friend bool operator==(const QuadraticForm &a, const QuadraticForm &b) {
    return a.rank_ == b.rank_ && same_ring(a.base_, b.base_) && a.coeff_ == b.coeff_;
  }

private:
  std::size_t index(std::size_t i, std::size_t j) const {
    if (i > j)
      std::swap(i, j);
    if (j >= rank_)
      throw PreconditionError("basis index out of range");
    return i * rank_ - i * (i - 1) / 2 + (j - i);
  }

  Poly &coeff_ref(std::size_t i, std::size_t j) { return coeff_.at(index(i, j)); }

  void check_vector(std::span<const Poly> v) const {
    if (v.size() != rank_)
      throw PreconditionError("vector of length " + std::to_string(v.size()) + " for a rank " +
                              std::to_string(rank_) + " form");
  }

  RingPtr base_;
  std::size_t rank_;
  std::vector<Poly> coeff_;
  std::vector<std::string> fiber_names_;
  RingPtr fiber_ring_;
};

// Free subbundle spanned by explicit vectors, independent over the fraction field.
class Subbundle {
public:
  Subbundle(const RingPtr &base, std::size_t ambient_rank, std::vector<Vector> vectors)
      : base_(base), n_(ambient_rank), vectors_(std::move(vectors)) {
    for (const auto &v : vectors_) {
      if (v.size() != n_)
        throw PreconditionError("subbundle vector " + vector_str(v) + " has length " + std::to_string(v.size()) +
                                ", expected " + std::to_string(n_));
      for (const auto &x : v)
        if (!same_ring(x.ring(), base_))
          throw PreconditionError("subbundle vector outside the base ring");
    }
    if (vectors_.size() > n_)
      throw PreconditionError("more subbundle vectors than the ambient rank");
    if (!vectors_.empty()) {
      auto m = matrix();
      auto ms = minors(m, vectors_.size());
      if (std::all_of(ms.begin(), ms.end(), [](const Poly &p) { return p.is_zero(); }))
        throw PreconditionError("subbundle vectors are linearly dependent");
    }
  }

  static Subbundle empty(const RingPtr &base, std::size_t n) { return Subbundle(base, n, {}); }

  // Span of standard basis vectors e_{i+1} for i in `indices` (0-based).
  static Subbundle standard(const RingPtr &base, std::size_t n, std::initializer_list<std::size_t> indices) {
    std::vector<Vector> vs;
    for (auto i : indices)
      vs.push_back(unit_vector(base, n, i));
    return Subbundle(base, n, std::move(vs));
  }

  const RingPtr &base() const noexcept { return base_; }
  std::size_t ambient_rank() const noexcept { return n_; }
  std::size_t rank() const noexcept { return vectors_.size(); }
  const std::vector<Vector> &vectors() const noexcept { return vectors_; }

  // First k vectors.
  Subbundle prefix(std::size_t k) const {
    return Subbundle(base_, n_, std::vector<Vector>(vectors_.begin(), vectors_.begin() + static_cast<std::ptrdiff_t>(k)));
  }

  // n x r matrix [w_1 | ... | w_r].
  PolyMatrix matrix() const {
    PolyMatrix m(base_, n_, vectors_.size());
    for (std::size_t j = 0; j < vectors_.size(); ++j)
      for (std::size_t i = 0; i < n_; ++i)
        m(i, j) = vectors_[j][i];
    return m;
  }

  std::string str() const {
    if (vectors_.empty())
      return "span()";
    std::string s = "span(";
    for (std::size_t i = 0; i < vectors_.size(); ++i)
      s += (i ? ", " : "") + vector_str(vectors_[i]);
    return s + ")";
  }

private:
  RingPtr base_;
  std::size_t n_;
  std::vector<Vector> vectors_;
};

inline PolyMatrix bilinear_matrix(const QuadraticForm &q) { return q.bilinear_matrix(); }

// Ideal of S_k, the locus where the fibers have corank >= k.
inline Ideal degeneration_locus(const QuadraticForm &q, std::size_t k) {
  if (k < 1 || k > q.rank())
    throw PreconditionError("corank k = " + std::to_string(k) + " out of range 1.." + std::to_string(q.rank()));
  return minors_ideal(q.bilinear_matrix(), q.rank() + 1 - k);
}

inline bool is_isotropic(const QuadraticForm &q, const Subbundle &w) {
  if (w.ambient_rank() != q.rank())
    throw PreconditionError("subbundle of a rank " + std::to_string(w.ambient_rank()) + " bundle used with a rank " +
                            std::to_string(q.rank()) + " form");
  const auto &vs = w.vectors();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!q.value(vs[i]).is_zero())
      return false;
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (!q.bilinear(vs[i], vs[j]).is_zero())
        return false;
  }
  return true;
}

// Full rank of b_q restricted to E x W at every geometric point, certified by
// the r x r minors of B * [w_1|...|w_r] generating the unit ideal.
inline bool is_regular_isotropic(const QuadraticForm &q, const Subbundle &w) {
  if (!is_isotropic(q, w))
    throw PreconditionError("subbundle " + w.str() + " is not isotropic");
  if (w.rank() == 0)
    return true;
  return minors_ideal(q.bilinear_matrix() * w.matrix(), w.rank()).is_unit();
}

// Isotropic w with b_q(v, w) = 1, found among constant vectors w0 solving
// b_q(v, w0) = 1 and corrected to w = w0 - q(w0) v.
inline Vector hyperbolic_pair(const QuadraticForm &q, const Vector &v) {
  const auto &base = q.base();
  const std::size_t n = q.rank();
  if (v.size() != n)
    throw PreconditionError("vector length does not match the form's rank");
  for (const auto &x : v)
    if (!x.is_constant())
      throw PreconditionError("hyperbolic_pair needs a vector with constant coordinates, got " + vector_str(v));
  if (!q.value(v).is_zero())
    throw PreconditionError("v = " + vector_str(v) + " is not isotropic: q(v) = " + q.value(v).str());
  std::vector<Poly> row(n, Poly(base));
  for (std::size_t j = 0; j < n; ++j)
    row[j] = q.bilinear(v, unit_vector(base, n, j));
  // One linear equation over Q per monomial occurring in the row.
  std::vector<Exponents> monos{Exponents(base->arity(), 0)};
  for (const auto &p : row)
    for (const auto &t : p.terms())
      if (std::find(monos.begin(), monos.end(), t.exponents) == monos.end())
        monos.push_back(t.exponents);
  RatMatrix a(monos.size(), n);
  std::vector<Rational> rhs(monos.size(), 0);
  rhs[0] = 1;
  for (std::size_t m = 0; m < monos.size(); ++m)
    for (std::size_t j = 0; j < n; ++j)
      a(m, j) = row[j].coefficient(monos[m]);
  auto sol = a.solve(rhs);
  if (!sol)
    throw PreconditionError("no constant w with b_q(v, w) = 1 for v = " + vector_str(v) + "; supply w explicitly");
  Vector w0(n, Poly(base));
  for (std::size_t j = 0; j < n; ++j)
    w0[j] = Poly::constant(base, (*sol)[j]);
  Poly qw0 = q.value(w0);
  Vector w(n, Poly(base));
  for (std::size_t j = 0; j < n; ++j)
    w[j] = w0[j] - qw0 * v[j];
  return w;
}

struct HyperbolicSplitting {
  Vector v, w;
  PolyMatrix transform;              // T = [v | w | u_k ...]
  QuadraticForm reduced;             // form on the complement, rank n - 2
  std::vector<std::size_t> kept;     // standard indices whose projections complete {v, w}
};

// Hyperbolic reduction along the hyperbolic plane spanned by v, w.
inline HyperbolicSplitting hyperbolic_reduce(const QuadraticForm &q, const Vector &v, const Vector &w) {
  const auto &base = q.base();
  const std::size_t n = q.rank();
  if (n < 2)
    throw PreconditionError("hyperbolic reduction needs rank >= 2");
  if (v.size() != n || w.size() != n)
    throw PreconditionError("vector length does not match the form's rank");
  if (!q.value(v).is_zero())
    throw PreconditionError("q(v) = " + q.value(v).str() + " is not identically zero");
  if (!q.value(w).is_zero())
    throw PreconditionError("q(w) = " + q.value(w).str() + " is not identically zero");
  if (q.bilinear(v, w) != Poly::constant(base, 1))
    throw PreconditionError("b_q(v, w) = " + q.bilinear(v, w).str() + ", expected 1");

  auto largest = [&](const Vector &x, std::optional<std::size_t> skip) {
    std::size_t best = skip == 0 ? 1 : 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (skip && i == *skip)
        continue;
      if (abs_value(x[i].constant_term()) > abs_value(x[best].constant_term()))
        best = i;
    }
    return best;
  };
  std::size_t iv = largest(v, std::nullopt);
  std::size_t iw = largest(w, iv);

  PolyMatrix t(base, n, n);
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < n; ++i)
    if (i != iv && i != iw)
      kept.push_back(i);
  for (std::size_t r = 0; r < n; ++r) {
    t(r, 0) = v[r];
    t(r, 1) = w[r];
  }
  for (std::size_t k = 0; k < kept.size(); ++k) {
    Vector e = unit_vector(base, n, kept[k]);
    Poly bw = q.bilinear(e, w), bv = q.bilinear(e, v);
    for (std::size_t r = 0; r < n; ++r)
      t(r, k + 2) = e[r] - bw * v[r] - bv * w[r];
  }
  Poly dt = det(t);
  if (!dt.is_constant() || dt.is_zero())
    throw PreconditionError("projected basis vectors are not independent (det T = " + dt.str() + ")");

  PolyMatrix block = t.transpose() * q.bilinear_matrix() * t;
  const Poly zero(base), one = Poly::constant(base, 1);
  if (block(0, 0) != zero || block(1, 1) != zero || block(0, 1) != one || block(1, 0) != one)
    throw VerificationError("T^t B T does not start with a hyperbolic block", block.str());
  for (std::size_t k = 2; k < n; ++k)
    if (!block(0, k).is_zero() || !block(1, k).is_zero())
      throw VerificationError("T^t B T is not block diagonal", block.str());

  std::vector<Poly> upper;
  std::vector<std::string> names;
  for (std::size_t i = 2; i < n; ++i) {
    names.push_back(q.fiber_names()[kept[i - 2]]);
    for (std::size_t j = i; j < n; ++j)
      upper.push_back(i == j ? block(i, i) * Rational(1, 2) : block(i, j));
  }
  QuadraticForm reduced(base, n - 2, std::move(upper), std::move(names));
  return {v, w, std::move(t), std::move(reduced), std::move(kept)};
}

// Z = {q_bar = 0}, cut out in the base plus the surviving fiber variables.
inline SchemePresentation reduction_presentation(const HyperbolicSplitting &split) {
  const auto &qbar = split.reduced;
  SchemePresentation p{qbar.fiber_ring(), {}, "hyperbolic reduction {q_bar = 0}"};
  if (qbar.rank() > 0 && !qbar.is_zero())
    p.generators.push_back(qbar.polynomial());
  return p;
}

} // namespace quadrikit
