#pragma once

// Generalized Clifford algebra B of a quadratic form q: E -> L.
//
// Generators e_1..e_n have degree 1 and the trivializer l of L is a central
// Laurent variable of degree 2, with
//
//   e_i e_i = c_ii l,   e_i e_j + e_j e_i = c_ij l   (i != j).
//
// An element is a finite map from a basis key (I, m), I a set of generator
// indices kept as a bitmask and m the l-exponent, to a coefficient in the
// base ring. Keys are ordered by |I|, then lexicographically on I, then m.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "matrix.hpp"
#include "parse.hpp"
#include "poly.hpp"
#include "quadform.hpp"
#include "sampling.hpp"

namespace quadrikit {

using Mask = std::uint32_t;

inline std::vector<std::size_t> mask_indices(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; m; ++i, m >>= 1)
    if (m & 1u)
      out.push_back(i);
  return out;
}

// |I| ascending, then lexicographic on the sorted index tuple.
inline bool mask_before(Mask a, Mask b) {
  int pa = std::popcount(a), pb = std::popcount(b);
  if (pa != pb)
    return pa < pb;
  if (a == b)
    return false;
  // Equal sizes: the tuple holding the lowest differing index is smaller.
  Mask diff = a ^ b;
  Mask low = diff & (~diff + 1);
  return (a & low) != 0;
}

struct BladeKey {
  Mask mask = 0;
  int lpow = 0;

  int degree() const { return std::popcount(mask) + 2 * lpow; }
  friend bool operator==(const BladeKey &, const BladeKey &) = default;
};

struct BladeLess {
  bool operator()(const BladeKey &a, const BladeKey &b) const {
    if (a.mask != b.mask)
      return mask_before(a.mask, b.mask);
    return a.lpow < b.lpow;
  }
};

// "e1*e3*l^-1", "1" for the unit.
inline std::string blade_str(const BladeKey &k) {
  std::string s;
  for (auto i : mask_indices(k.mask))
    s += (s.empty() ? "" : "*") + std::string("e") + std::to_string(i + 1);
  if (k.lpow != 0) {
    s += s.empty() ? "l" : "*l";
    if (k.lpow != 1)
      s += "^" + std::to_string(k.lpow);
  }
  return s.empty() ? "1" : s;
}

class CliffordContext;
using CliffordContextPtr = std::shared_ptr<const CliffordContext>;

class CliffordContext {
public:
  static constexpr std::size_t max_rank = 12;

  static CliffordContextPtr make(QuadraticForm q) {
    return std::shared_ptr<const CliffordContext>(new CliffordContext(std::move(q)));
  }

  const QuadraticForm &form() const noexcept { return q_; }
  const RingPtr &base() const noexcept { return q_.base(); }
  std::size_t rank() const noexcept { return q_.rank(); }

  // Normal form of e_I * e_J: mask -> coefficient. The l-shift of each
  // resulting key is (|I| + |J| - |K|) / 2.
  std::map<Mask, Poly> blade_product(Mask a, Mask b) const {
    if (!products_.empty())
      return products_[static_cast<std::size_t>(a) << rank() | b];
    return compute_product(a, b);
  }

  // Degree-n basis: all (I, m) with |I| + 2m = n, in basis order.
  std::vector<BladeKey> graded_basis(int n) const {
    std::vector<Mask> masks;
    for (Mask m = 0; m < (Mask{1} << rank()); ++m)
      if ((std::popcount(m) - n) % 2 == 0)
        masks.push_back(m);
    std::sort(masks.begin(), masks.end(), mask_before);
    std::vector<BladeKey> keys;
    keys.reserve(masks.size());
    for (auto m : masks)
      keys.push_back({m, (n - std::popcount(m)) / 2});
    return keys;
  }

private:
  struct Piece {
    Mask mask;
    Poly coeff;
  };

  explicit CliffordContext(QuadraticForm q) : q_(std::move(q)) {
    const std::size_t n = rank();
    if (n == 0 || n > max_rank)
      throw PreconditionError("Clifford algebra needs 1 <= rank <= " + std::to_string(max_rank));
    const Mask full = Mask{1} << n;
    // right_[I * n + j] = e_I * e_j. Built in increasing mask order: the
    // recursion only consults I minus its top index.
    right_.resize(static_cast<std::size_t>(full) * n);
    for (Mask m = 0; m < full; ++m)
      for (std::size_t j = 0; j < n; ++j)
        right_[m * n + j] = right_mul(m, j);
    if (n <= 6) {
      products_.reserve(static_cast<std::size_t>(full) * full);
      for (Mask a = 0; a < full; ++a)
        for (Mask b = 0; b < full; ++b)
          products_.push_back(compute_product(a, b));
    }
  }

  // e_I e_j = e_{I'} e_p e_j with p the top index of I; for p > j use
  // e_p e_j = -e_j e_p + c_jp l.
  std::vector<Piece> right_mul(Mask m, std::size_t j) const {
    const auto &base = q_.base();
    const Mask bj = Mask{1} << j;
    if (m == 0)
      return {{bj, Poly::constant(base, 1)}};
    std::size_t p = static_cast<std::size_t>(std::bit_width(m)) - 1;
    Mask rest = m & ~(Mask{1} << p);
    if (p < j)
      return {{m | bj, Poly::constant(base, 1)}};
    if (p == j) {
      const Poly &c = q_.coeff(j, j);
      if (c.is_zero())
        return {};
      return {{rest, c}};
    }
    std::vector<Piece> out;
    for (const auto &pc : right_[rest * rank() + j])
      out.push_back({pc.mask | (Mask{1} << p), -pc.coeff});
    const Poly &c = q_.coeff(j, p);
    if (!c.is_zero())
      out.push_back({rest, c});
    return out;
  }

  std::map<Mask, Poly> compute_product(Mask a, Mask b) const {
    std::map<Mask, Poly> cur{{a, Poly::constant(q_.base(), 1)}};
    for (auto j : mask_indices(b)) {
      std::map<Mask, Poly> next;
      for (const auto &[m, c] : cur)
        for (const auto &pc : right_[m * rank() + j]) {
          auto [it, fresh] = next.try_emplace(pc.mask, c * pc.coeff);
          if (!fresh)
            it->second += c * pc.coeff;
        }
      std::erase_if(next, [](const auto &kv) { return kv.second.is_zero(); });
      cur = std::move(next);
    }
    return cur;
  }

  QuadraticForm q_;
  std::vector<std::vector<Piece>> right_;
  std::vector<std::map<Mask, Poly>> products_;
};

class CliffordElement {
public:
  using Terms = std::map<BladeKey, Poly, BladeLess>;

  explicit CliffordElement(CliffordContextPtr ctx) : ctx_(std::move(ctx)) {}

  static CliffordElement scalar(const CliffordContextPtr &ctx, const Poly &c) { return monomial(ctx, {0, 0}, c); }
  static CliffordElement scalar(const CliffordContextPtr &ctx, const Rational &c) {
    return scalar(ctx, Poly::constant(ctx->base(), c));
  }

  static CliffordElement monomial(const CliffordContextPtr &ctx, BladeKey key, const Poly &c) {
    if (key.mask >> ctx->rank())
      throw PreconditionError("generator index out of range");
    if (!same_ring(c.ring(), ctx->base()))
      throw PreconditionError("Clifford coefficient outside the base ring");
    CliffordElement x(ctx);
    if (!c.is_zero())
      x.terms_.emplace(key, c);
    return x;
  }
  static CliffordElement monomial(const CliffordContextPtr &ctx, BladeKey key) {
    return monomial(ctx, key, Poly::constant(ctx->base(), 1));
  }

  // e_{i+1}
  static CliffordElement generator(const CliffordContextPtr &ctx, std::size_t i) {
    return monomial(ctx, {Mask{1} << i, 0});
  }

  static CliffordElement ell(const CliffordContextPtr &ctx, int k = 1) { return monomial(ctx, {0, k}); }

  // sum v_i e_i
  static CliffordElement from_vector(const CliffordContextPtr &ctx, const Vector &v) {
    if (v.size() != ctx->rank())
      throw PreconditionError("vector length does not match the Clifford rank");
    CliffordElement x(ctx);
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero())
        x.terms_.emplace(BladeKey{Mask{1} << i, 0}, v[i]);
    return x;
  }

  static CliffordElement from_coordinates(const CliffordContextPtr &ctx, int degree, const std::vector<Poly> &coords) {
    auto basis = ctx->graded_basis(degree);
    if (coords.size() != basis.size())
      throw PreconditionError("coordinate vector has the wrong length for degree " + std::to_string(degree));
    CliffordElement x(ctx);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (!coords[i].is_zero())
        x.terms_.emplace(basis[i], coords[i]);
    return x;
  }

  const CliffordContextPtr &context() const noexcept { return ctx_; }
  const Terms &terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  Poly coefficient(BladeKey key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Poly(ctx_->base()) : it->second;
  }

  // Common degree of all terms; nullopt for zero or mixed degrees.
  std::optional<int> degree() const {
    if (terms_.empty())
      return std::nullopt;
    int d = terms_.begin()->first.degree();
    for (const auto &[k, c] : terms_)
      if (k.degree() != d)
        return std::nullopt;
    return d;
  }

  bool is_homogeneous_of(int d) const {
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto &kv) { return kv.first.degree() == d; });
  }

  // Coordinates over graded_basis(d).
  std::vector<Poly> coordinates(int d) const {
    if (!is_homogeneous_of(d))
      throw PreconditionError("element " + str() + " is not homogeneous of degree " + std::to_string(d));
    auto basis = ctx_->graded_basis(d);
    std::vector<Poly> out;
    out.reserve(basis.size());
    for (const auto &k : basis)
      out.push_back(coefficient(k));
    return out;
  }

  CliffordElement shift_l(int k) const {
    CliffordElement r(ctx_);
    for (const auto &[key, c] : terms_)
      r.terms_.emplace(BladeKey{key.mask, key.lpow + k}, c);
    return r;
  }

  CliffordElement operator-() const {
    CliffordElement r(ctx_);
    for (const auto &[k, c] : terms_)
      r.terms_.emplace(k, -c);
    return r;
  }

  friend CliffordElement operator+(const CliffordElement &a, const CliffordElement &b) {
    a.check(b);
    CliffordElement r = a;
    for (const auto &[k, c] : b.terms_)
      r.accumulate(k, c);
    return r;
  }
  friend CliffordElement operator-(const CliffordElement &a, const CliffordElement &b) { return a + (-b); }

  friend CliffordElement operator*(const Poly &s, const CliffordElement &x) {
    if (!same_ring(s.ring(), x.ctx_->base()))
      throw PreconditionError("scalar outside the base ring");
    CliffordElement r(x.ctx_);
    if (s.is_zero())
      return r;
    for (const auto &[k, c] : x.terms_) {
      Poly p = s * c;
      if (!p.is_zero())
        r.terms_.emplace(k, std::move(p));
    }
    return r;
  }
  friend CliffordElement operator*(const Rational &s, const CliffordElement &x) {
    return Poly::constant(x.ctx_->base(), s) * x;
  }

  friend CliffordElement operator*(const CliffordElement &a, const CliffordElement &b) {
    a.check(b);
    CliffordElement r(a.ctx_);
    for (const auto &[ka, ca] : a.terms_)
      for (const auto &[kb, cb] : b.terms_) {
        Poly c = ca * cb;
        if (c.is_zero())
          continue;
        int size = std::popcount(ka.mask) + std::popcount(kb.mask);
        for (const auto &[m, pc] : a.ctx_->blade_product(ka.mask, kb.mask)) {
          int shift = (size - std::popcount(m)) / 2;
          r.accumulate({m, ka.lpow + kb.lpow + shift}, c * pc);
        }
      }
    return r;
  }

  CliffordElement &operator+=(const CliffordElement &o) { return *this = *this + o; }
  CliffordElement &operator*=(const CliffordElement &o) { return *this = *this * o; }

  friend bool operator==(const CliffordElement &a, const CliffordElement &b) {
    if (a.ctx_ != b.ctx_ || a.terms_.size() != b.terms_.size())
      return false;
    return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                      [](const auto &x, const auto &y) { return x.first == y.first && x.second == y.second; });
  }

  // "e1*e2*l^-1 - a*e3 + (b + c)*e1*e2*e3*e4*l^-2", terms in basis order.
  std::string str() const {
    if (terms_.empty())
      return "0";
    std::string out;
    bool first = true;
    for (const auto &[k, c] : terms_) {
      std::string blade = blade_str(k);
      bool unit = k.mask == 0 && k.lpow == 0;
      bool negative = c.size() == 1 && c.leading_term().coeff < 0;
      Poly shown = negative ? -c : c;
      std::string coeff = shown.str();
      if (shown.size() > 1 && !unit)
        coeff = "(" + coeff + ")";
      std::string body;
      if (unit)
        body = coeff;
      else if (shown == Poly::constant(c.ring(), 1))
        body = blade;
      else
        body = coeff + "*" + blade;
      if (first)
        out += (negative ? "-" : "") + body;
      else
        out += (negative ? " - " : " + ") + body;
      first = false;
    }
    return out;
  }

private:
  void check(const CliffordElement &o) const {
    if (ctx_ != o.ctx_)
      throw PreconditionError("Clifford elements from different contexts");
  }

  void accumulate(const BladeKey &k, const Poly &c) {
    auto [it, fresh] = terms_.try_emplace(k, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero())
        terms_.erase(it);
    } else if (c.is_zero()) {
      terms_.erase(it);
    }
  }

  CliffordContextPtr ctx_;
  Terms terms_;
};

inline CliffordElement cl_mul(const CliffordElement &x, const CliffordElement &y) { return x * y; }

inline std::vector<BladeKey> graded_basis(const CliffordContext &ctx, int n) { return ctx.graded_basis(n); }

inline CliffordElement commutator(const CliffordElement &x, const CliffordElement &y) { return x * y - y * x; }

// Parser policy: base variables, generators e<i>, and l (any integer power).
struct CliffordAlgebraParser {
  using value_type = CliffordElement;
  CliffordContextPtr ctx;

  CliffordElement from_rational(const Rational &r) const { return CliffordElement::scalar(ctx, r); }

  CliffordElement atom(std::string_view name) const {
    if (name == "l")
      return CliffordElement::ell(ctx);
    if (name.size() > 1 && name[0] == 'e' &&
        std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      std::size_t i = std::stoul(std::string(name.substr(1)));
      if (i < 1 || i > ctx->rank())
        throw ParseError("generator '" + std::string(name) + "' out of range e1..e" + std::to_string(ctx->rank()));
      return CliffordElement::generator(ctx, i - 1);
    }
    if (auto idx = ctx->base()->index_of(name))
      return CliffordElement::scalar(ctx, Poly::variable(ctx->base(), *idx));
    throw ParseError("unknown identifier '" + std::string(name) + "'");
  }

  CliffordElement power(const CliffordElement &x, long e) const {
    if (e < 0) {
      if (x.terms().size() == 1 && x.terms().begin()->first.mask == 0 &&
          x.terms().begin()->second == Poly::constant(ctx->base(), 1))
        return CliffordElement::ell(ctx, static_cast<int>(x.terms().begin()->first.lpow * e));
      throw ParseError("negative exponent is only allowed on l");
    }
    CliffordElement r = CliffordElement::scalar(ctx, Rational(1));
    for (long i = 0; i < e; ++i)
      r = r * x;
    return r;
  }
};

inline CliffordElement parse_element(std::string_view source, const CliffordContextPtr &ctx) {
  CliffordAlgebraParser algebra{ctx};
  return ExpressionParser<CliffordAlgebraParser>(source, algebra).parse();
}

// Coefficient of the top monomial e_1...e_2m l^-m of a degree-0 element.
inline Poly trace(const CliffordElement &x) {
  const auto &ctx = *x.context();
  if (ctx.rank() % 2)
    throw PreconditionError("trace needs even rank, got " + std::to_string(ctx.rank()));
  if (!x.is_homogeneous_of(0))
    throw PreconditionError("trace needs a degree-0 element, got " + x.str());
  Mask full = (Mask{1} << ctx.rank()) - 1;
  return x.coefficient({full, -static_cast<int>(ctx.rank() / 2)});
}

// Center of B_0 for even rank: omega with omega^2 + alpha*omega + beta = 0.
struct CenterResult {
  CliffordElement omega;
  Poly alpha, beta;
  bool constant_coordinates = false;

  Poly discriminant() const { return alpha * alpha - Rational(4) * beta; }

  // "omega^2 + alpha*omega + beta = 0" with the coefficients spelled out.
  std::string relation_str() const {
    std::string s = "w^2";
    auto add = [&](const Poly &c, const std::string &suffix) {
      if (c.is_zero())
        return;
      bool neg = c.size() == 1 && c.leading_term().coeff < 0;
      Poly shown = neg ? -c : c;
      std::string cs = shown.str();
      if (shown.size() > 1 && !suffix.empty())
        cs = "(" + cs + ")";
      if (!suffix.empty() && shown == Poly::constant(c.ring(), 1))
        cs = suffix.substr(1);
      else
        cs += suffix;
      s += (neg ? " - " : " + ") + cs;
    };
    add(alpha, "*w");
    add(beta, "");
    return s + " = 0";
  }
};

namespace detail {

// Columns: degree-0 basis elements b_k; rows: coordinates of [b_k, beta]
// for each non-unit degree-0 basis monomial beta.
inline PolyMatrix center_system(const CliffordContextPtr &ctx) {
  auto basis = ctx->graded_basis(0);
  const std::size_t n = basis.size();
  std::vector<CliffordElement> elems;
  for (const auto &k : basis)
    elems.push_back(CliffordElement::monomial(ctx, k));
  PolyMatrix m(ctx->base(), (n - 1) * n, n);
  for (std::size_t b = 1; b < n; ++b)
    for (std::size_t k = 0; k < n; ++k) {
      auto coords = commutator(elems[k], elems[b]).coordinates(0);
      for (std::size_t r = 0; r < n; ++r)
        m((b - 1) * n + r, k) = coords[r];
    }
  return m;
}

// Rational kernel vectors of a polynomial matrix, one linear equation per
// (entry row, monomial).
inline std::vector<std::vector<Rational>> constant_kernel(const PolyMatrix &m) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::map<Exponents, std::vector<Rational>> by_mono;
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (const auto &t : m(i, j).terms()) {
        auto &row = by_mono[t.exponents];
        row.resize(m.cols(), 0);
        row[j] = t.coeff;
      }
    for (auto &[e, row] : by_mono)
      rows.push_back(std::move(row));
  }
  RatMatrix a(rows.size(), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      a(i, j) = rows[i][j];
  return a.nullspace();
}

// A kernel vector over the fraction field with polynomial entries, via
// Cramer's rule on a maximal nonsingular block found at a generic point.
// `free_col` must be a free column at that point.
inline std::vector<Poly> cramer_kernel(const PolyMatrix &m, const Specialization &generic,
                                       const std::vector<std::size_t> &pivots, std::size_t free_col) {
  RatMatrix e = evaluate_at(m, generic);
  RatMatrix ep(e.rows(), pivots.size());
  for (std::size_t i = 0; i < e.rows(); ++i)
    for (std::size_t j = 0; j < pivots.size(); ++j)
      ep(i, j) = e(i, pivots[j]);
  auto rows = ep.independent_rows();
  PolyMatrix a = m.submatrix(rows, pivots);
  std::vector<Poly> t(m.cols(), Poly(m.ring()));
  t[free_col] = det(a);
  for (std::size_t j = 0; j < pivots.size(); ++j) {
    PolyMatrix aj = a;
    for (std::size_t i = 0; i < rows.size(); ++i)
      aj(i, j) = m(rows[i], free_col);
    t[pivots[j]] = -det(aj);
  }
  return t;
}

} // namespace detail

inline CenterResult center_element(const CliffordContextPtr &ctx) {
  if (ctx->rank() % 2)
    throw PreconditionError("center_element needs even rank, got " + std::to_string(ctx->rank()));
  const auto &base = ctx->base();
  auto basis = ctx->graded_basis(0);
  const std::size_t n = basis.size();
  PolyMatrix system = detail::center_system(ctx);

  std::vector<Poly> coords;
  bool constant = false;
  for (const auto &v : detail::constant_kernel(system)) {
    if (std::all_of(v.begin() + 1, v.end(), [](const Rational &x) { return x == 0; }))
      continue;
    coords.assign(n, Poly(base));
    for (std::size_t i = 1; i < n; ++i)
      coords[i] = Poly::constant(base, v[i]);
    constant = true;
  }
  if (!constant) {
    Poly d = det(ctx->form().bilinear_matrix());
    auto generic = sample_off(base, d.is_zero() ? Poly::constant(base, 1) : d, 1, generic_seed).front();
    RatMatrix e = evaluate_at(system, generic);
    auto pivots = e.rref();
    std::optional<std::size_t> free_col;
    for (std::size_t j = n; j-- > 1;)
      if (std::find(pivots.begin(), pivots.end(), j) == pivots.end()) {
        free_col = j;
        break;
      }
    if (!free_col)
      throw VerificationError("no non-scalar central element in B_0", "generic point " + generic.str());
    coords = detail::cramer_kernel(system, generic, pivots, *free_col);
    coords[0] = Poly(base);
  }
  // Leading coordinate, scanning from the top monomial down, becomes 1 when
  // it divides every coordinate; otherwise it is only made monic.
  std::size_t lead = n;
  while (lead-- > 0 && coords[lead].is_zero()) {
  }
  const Poly u = coords[lead];
  bool exact = true;
  std::vector<Poly> divided;
  for (const auto &c : coords) {
    auto qt = divide_exact(c, u);
    if (!qt) {
      exact = false;
      break;
    }
    divided.push_back(*qt);
  }
  if (exact)
    coords = std::move(divided);
  else
    for (auto &c : coords)
      c = c * (1 / u.leading_term().coeff);

  CliffordElement omega = CliffordElement::from_coordinates(ctx, 0, coords);
  for (const auto &k : basis) {
    auto m = CliffordElement::monomial(ctx, k);
    if (!commutator(omega, m).is_zero())
      throw VerificationError("candidate center element does not commute with " + blade_str(k), omega.str());
  }
  auto sq = (omega * omega).coordinates(0);
  auto t = divide_exact(sq[lead], coords[lead]);
  if (!t)
    throw VerificationError("omega^2 is not in the span of 1 and omega", omega.str());
  CliffordElement rest = omega * omega - *t * omega;
  Poly r = rest.coefficient({0, 0});
  if (!(rest - CliffordElement::scalar(ctx, r)).is_zero())
    throw VerificationError("omega^2 is not in the span of 1 and omega", rest.str());
  return {omega, -*t, -r, constant};
}

// mu with (mu (2 omega + alpha))^2 = target, when target / discriminant is a
// nonzero rational square.
inline std::optional<Rational> completing_square_scale(const CenterResult &c, const Poly &target) {
  Poly disc = c.discriminant();
  if (disc.is_zero() || target.is_zero())
    return std::nullopt;
  Rational ratio = target.leading_term().coeff / disc.leading_term().coeff;
  if (disc * ratio != target)
    return std::nullopt;
  return rational_sqrt(ratio);
}

// omega m + m omega + alpha m = 0 for odd m: conjugation by an odd element
// acts on the center as omega -> -alpha - omega.
inline bool twisted_commutes(const CenterResult &c, const CliffordElement &m) {
  return (c.omega * m + m * c.omega + c.alpha * m).is_zero();
}

// Rank bookkeeping for B_0(q) = B_0(h) B0(qbar) + B_1(h) B_1(qbar), h the
// hyperbolic plane span(v, w) and qbar on the projected complement.
struct OrthogonalSumRanks {
  std::size_t total = 0;
  std::size_t plane_even = 0, reduced_even = 0, plane_odd = 0, reduced_odd = 0;
  std::size_t span_rank = 0; // rank of the products inside B_0(q) at a generic point

  bool consistent() const {
    return total == plane_even * reduced_even + plane_odd * reduced_odd && span_rank == total;
  }

  std::string str() const {
    std::ostringstream os;
    os << "(" << total << "; " << plane_even << "," << reduced_even << "," << plane_odd << "," << reduced_odd
       << ")";
    return os.str();
  }
};

inline OrthogonalSumRanks orthogonal_sum_ranks(const CliffordContextPtr &ctx, const HyperbolicSplitting &split) {
  const std::size_t n = ctx->rank();
  if (split.transform.rows() != n)
    throw PreconditionError("splitting does not belong to this form");
  const auto &base = ctx->base();
  auto column = [&](std::size_t j) {
    Vector v(n, Poly(base));
    for (std::size_t i = 0; i < n; ++i)
      v[i] = split.transform(i, j);
    return CliffordElement::from_vector(ctx, v);
  };
  CliffordElement v = column(0), w = column(1);
  std::vector<CliffordElement> us;
  for (std::size_t j = 2; j < n; ++j)
    us.push_back(column(j));

  std::vector<CliffordElement> plane_even{CliffordElement::scalar(ctx, Rational(1)), (v * w).shift_l(-1)};
  std::vector<CliffordElement> plane_odd{v, w};
  std::vector<CliffordElement> bar_even, bar_odd;
  for (Mask m = 0; m < (Mask{1} << us.size()); ++m) {
    CliffordElement x = CliffordElement::scalar(ctx, Rational(1));
    for (auto i : mask_indices(m))
      x = x * us[i];
    int k = std::popcount(m);
    (k % 2 ? bar_odd : bar_even).push_back(x.shift_l(-(k / 2)));
  }
  std::vector<CliffordElement> products;
  for (const auto &h : plane_even)
    for (const auto &b : bar_even)
      products.push_back(h * b);
  for (const auto &h : plane_odd)
    for (const auto &b : bar_odd)
      products.push_back((h * b).shift_l(-1));

  OrthogonalSumRanks r;
  r.total = ctx->graded_basis(0).size();
  r.plane_even = plane_even.size();
  r.plane_odd = plane_odd.size();
  r.reduced_even = bar_even.size();
  r.reduced_odd = bar_odd.size();
  PolyMatrix coords(base, products.size(), r.total);
  for (std::size_t i = 0; i < products.size(); ++i) {
    auto c = products[i].coordinates(0);
    for (std::size_t j = 0; j < r.total; ++j)
      coords(i, j) = c[j];
  }
  Poly d = det(ctx->form().bilinear_matrix());
  auto generic = sample_off(base, d.is_zero() ? Poly::constant(base, 1) : d, 1, generic_seed).front();
  r.span_rank = evaluate_at(coords, generic).rank();
  return r;
}

} // namespace quadrikit
