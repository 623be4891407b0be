#pragma once

// Clifford ideals I_n^W = B_{n-r} w_1...w_r (left) and w_1...w_r B_{n-r}
// (right), spinor presentation matrices, and sample-based verifiers for the
// exact sequences relating them.
//
// Local freeness is certified at sample points: generators are chosen by a
// greedy row scan at one generic point and the rank is re-checked at further
// points off S_1, all drawn from a fixed seed.

#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "quadform.hpp"
#include "report.hpp"
#include "sampling.hpp"

namespace quadrikit {

enum class Side { left, right };

inline const char *side_name(Side s) { return s == Side::left ? "left" : "right"; }

struct SampleOptions {
  std::size_t count = 5;
  std::uint64_t seed = generic_seed;
  unsigned jobs = 1;
};

// Points off S_1 = {det b_q = 0}. When det b_q vanishes identically no such
// point exists; points are then drawn only where q is not the zero form.
struct SamplePlan {
  std::vector<Specialization> points;
  std::vector<std::string> notes;
};

inline SamplePlan off_s1_samples(const QuadraticForm &q, std::size_t count, std::uint64_t seed) {
  const auto &base = q.base();
  Poly d = det(q.bilinear_matrix());
  SamplePlan plan;
  if (!d.is_zero()) {
    plan.points = sample_off(base, d, count, seed);
  } else {
    plan.notes.push_back("det(b_q) vanishes identically, so no point lies off S_1; sampling where q != 0");
    Poly nonzero(base);
    for (std::size_t i = 0; i < q.rank(); ++i)
      for (std::size_t j = i; j < q.rank(); ++j)
        if (!q.coeff(i, j).is_zero() && nonzero.is_zero())
          nonzero = q.coeff(i, j);
    if (nonzero.is_zero())
      throw PreconditionError("q is the zero form");
    plan.points = sample_off(base, nonzero, count, seed);
  }
  if (base->arity() == 0)
    plan.notes.push_back("the base is a point; the single point is used");
  return plan;
}

// Coordinates of homogeneous elements of degree d, one row each, at a point.
inline RatMatrix evaluated_rows(const std::vector<CliffordElement> &elems, int d, const Specialization &s) {
  if (elems.empty())
    return RatMatrix(0, 0);
  std::size_t width = elems.front().context()->graded_basis(d).size();
  RatMatrix m(elems.size(), width);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    auto c = elems[i].coordinates(d);
    for (std::size_t j = 0; j < width; ++j)
      m(i, j) = evaluate_at(c[j], s);
  }
  return m;
}

inline std::size_t rank_at(const std::vector<CliffordElement> &elems, int d, const Specialization &s) {
  return elems.empty() ? 0 : evaluated_rows(elems, d, s).rank();
}

inline std::vector<CliffordElement> concat(std::vector<CliffordElement> a, const std::vector<CliffordElement> &b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Runs `check` on every point, at most `jobs` at a time; results keep point order.
template <class Check>
std::vector<SampleCheck> run_samples(const std::vector<Specialization> &points, unsigned jobs, Check check) {
  std::vector<SampleCheck> out(points.size());
  if (jobs <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i)
      out[i] = check(points[i]);
    return out;
  }
  for (std::size_t start = 0; start < points.size(); start += jobs) {
    std::vector<std::future<SampleCheck>> batch;
    for (std::size_t i = start; i < std::min(points.size(), start + jobs); ++i)
      batch.push_back(std::async(std::launch::async, [&, i] { return check(points[i]); }));
    for (std::size_t i = 0; i < batch.size(); ++i)
      out[start + i] = batch[i].get();
  }
  return out;
}

inline SampleCheck sample_header(const Specialization &s) {
  SampleCheck c;
  c.point = s.str();
  c.rejections = s.rejections;
  return c;
}

inline CliffordElement subbundle_product(const CliffordContextPtr &ctx, const Subbundle &w) {
  CliffordElement x = CliffordElement::scalar(ctx, Rational(1));
  for (const auto &v : w.vectors())
    x = x * CliffordElement::from_vector(ctx, v);
  return x;
}

struct IdealBasis {
  CliffordContextPtr ctx;
  Subbundle W;
  int degree = 0;
  Side side = Side::left;
  CliffordElement omega_w;                // w_1 ... w_r
  std::vector<BladeKey> multipliers;      // selected m in graded_basis(degree - r)
  std::vector<CliffordElement> generators;
  PolyMatrix coord_matrix;                // generators x graded_basis(degree)
  std::size_t spanning_count = 0;
  std::vector<Specialization> certified_at;

  std::size_t expected_rank() const { return std::size_t{1} << (ctx->rank() - W.rank() - 1); }

  std::string str() const {
    std::ostringstream os;
    os << "I_" << degree << "^W (" << side_name(side) << "), W = " << W.str() << ", rank " << generators.size()
       << " from " << spanning_count << " spanning elements\n";
    for (std::size_t i = 0; i < generators.size(); ++i)
      os << "  g" << i + 1 << " = " << generators[i].str() << "\n";
    return os.str();
  }
};

inline IdealBasis clifford_ideal(const CliffordContextPtr &ctx, const Subbundle &w, int n, Side side,
                                 std::uint64_t seed = generic_seed, std::size_t extra_samples = 5) {
  const auto &q = ctx->form();
  if (w.ambient_rank() != q.rank())
    throw PreconditionError("subbundle ambient rank does not match the form");
  if (!is_isotropic(q, w))
    throw PreconditionError("W = " + w.str() + " is not isotropic for q = " + q.str());
  const std::size_t r = w.rank();
  if (r >= q.rank())
    throw PreconditionError("rank(W) must be smaller than rank(E)");
  CliffordElement omega = subbundle_product(ctx, w);
  const int d0 = n - static_cast<int>(r);
  auto basis = ctx->graded_basis(d0);
  std::vector<CliffordElement> spanning;
  for (const auto &k : basis) {
    auto m = CliffordElement::monomial(ctx, k);
    spanning.push_back(side == Side::left ? m * omega : omega * m);
  }
  auto plan = off_s1_samples(q, 1 + extra_samples, seed);
  const auto &generic = plan.points.front();
  auto rows = evaluated_rows(spanning, n, generic).independent_rows();
  const std::size_t expected = std::size_t{1} << (q.rank() - r - 1);
  if (rows.size() != expected)
    throw VerificationError("Clifford ideal has rank " + std::to_string(rows.size()) + ", expected " +
                                std::to_string(expected),
                            "generic point " + generic.str());
  std::vector<BladeKey> mult;
  std::vector<CliffordElement> gens;
  for (auto i : rows) {
    mult.push_back(basis[i]);
    gens.push_back(spanning[i]);
  }
  for (std::size_t s = 1; s < plan.points.size(); ++s)
    if (rank_at(gens, n, plan.points[s]) != expected)
      throw VerificationError("Clifford ideal generators lose rank", "point " + plan.points[s].str());
  const std::size_t width = ctx->graded_basis(n).size();
  PolyMatrix cm(ctx->base(), gens.size(), width);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto c = gens[i].coordinates(n);
    for (std::size_t j = 0; j < width; ++j)
      cm(i, j) = c[j];
  }
  return IdealBasis{ctx, w, n, side, omega, std::move(mult), std::move(gens), std::move(cm), spanning.size(),
                    plan.points};
}

// Lemma-level verifiers. Each draws `opts.count` points off S_1.

inline VerificationReport verify_periodicity(const CliffordContextPtr &ctx, const Subbundle &w, int n, Side side) {
  VerificationReport rep{"l-periodicity", "W = " + w.str() + ", n = " + std::to_string(n) + ", " + side_name(side)};
  auto a = clifford_ideal(ctx, w, n, side), b = clifford_ideal(ctx, w, n + 2, side);
  bool same = a.generators.size() == b.generators.size();
  for (std::size_t i = 0; same && i < a.generators.size(); ++i)
    same = a.generators[i].shift_l(1) == b.generators[i];
  rep.exact.push_back({"I_{n+2} = l * I_n", same && a.coord_matrix == b.coord_matrix, ""});
  return rep;
}

inline VerificationReport verify_multiplication_iso(const CliffordContextPtr &ctx, const Subbundle &w, int m, int n,
                                                    const SampleOptions &opts = {}) {
  VerificationReport rep{"mulisolem", "W = " + w.str() + ", m = " + std::to_string(m) + ", n = " + std::to_string(n)};
  auto in = clifford_ideal(ctx, w, n, Side::left);
  auto imn = clifford_ideal(ctx, w, m + n, Side::left);
  std::vector<CliffordElement> products;
  for (const auto &k : ctx->graded_basis(m))
    for (const auto &g : in.generators)
      products.push_back(CliffordElement::monomial(ctx, k) * g);
  const long long expected = static_cast<long long>(in.expected_rank());
  auto plan = off_s1_samples(ctx->form(), opts.count, opts.seed);
  rep.notes = plan.notes;
  rep.samples = run_samples(plan.points, opts.jobs, [&](const Specialization &s) {
    SampleCheck c = sample_header(s);
    long long rp = static_cast<long long>(rank_at(products, m + n, s));
    long long rt = static_cast<long long>(rank_at(imn.generators, m + n, s));
    long long ru = static_cast<long long>(rank_at(concat(products, imn.generators), m + n, s));
    c.values = {{"products", rp}, {"target", rt}, {"union", ru}, {"expected", expected}};
    c.pass = rp == expected && rt == expected && ru == expected;
    return c;
  });
  auto per = verify_periodicity(ctx, w, n, Side::left);
  rep.exact.insert(rep.exact.end(), per.exact.begin(), per.exact.end());
  return rep;
}

inline VerificationReport verify_cokernel_sequence(const CliffordContextPtr &ctx, const Subbundle &w, int n,
                                                   const SampleOptions &opts = {}) {
  VerificationReport rep{"coklem", "W = " + w.str() + ", n = " + std::to_string(n)};
  const int r = static_cast<int>(w.rank());
  CliffordElement omega = subbundle_product(ctx, w);
  std::vector<CliffordElement> image, quotient;
  for (const auto &k : ctx->graded_basis(n - 1))
    for (const auto &v : w.vectors())
      image.push_back(CliffordElement::monomial(ctx, k) * CliffordElement::from_vector(ctx, v));
  for (const auto &k : ctx->graded_basis(n))
    quotient.push_back(CliffordElement::monomial(ctx, k) * omega);
  bool composite_zero = true;
  for (const auto &x : image)
    composite_zero = composite_zero && (x * omega).is_zero();
  rep.exact.push_back({"(B_{n-1} W) w_1...w_r = 0", composite_zero, ""});
  const long long dim = static_cast<long long>(ctx->graded_basis(n).size());
  const long long expected = 1LL << (ctx->rank() - w.rank() - 1);
  auto plan = off_s1_samples(ctx->form(), opts.count, opts.seed);
  rep.notes = plan.notes;
  rep.samples = run_samples(plan.points, opts.jobs, [&](const Specialization &s) {
    SampleCheck c = sample_header(s);
    long long img = static_cast<long long>(rank_at(image, n, s));
    long long quo = static_cast<long long>(rank_at(quotient, n + r, s));
    c.values = {{"dim_B", dim}, {"image", img}, {"cokernel", dim - img}, {"quotient", quo}, {"expected", expected}};
    c.pass = dim - img == expected && quo == expected;
    return c;
  });
  return rep;
}

inline VerificationReport verify_flag_sequence(const CliffordContextPtr &ctx, const Subbundle &w, int n,
                                               const SampleOptions &opts = {}) {
  if (w.rank() == 0)
    throw PreconditionError("flag sequence needs rank(W) >= 1");
  Subbundle wp = w.prefix(w.rank() - 1);
  VerificationReport rep{"2clideal", "W' = " + wp.str() + " in W = " + w.str() + ", n = " + std::to_string(n)};
  auto iw = clifford_ideal(ctx, w, n, Side::left);
  auto iwp = clifford_ideal(ctx, wp, n, Side::left);
  auto next = clifford_ideal(ctx, w, n + 1, Side::left);
  auto last = CliffordElement::from_vector(ctx, w.vectors().back());
  std::vector<CliffordElement> mapped;
  for (const auto &g : iwp.generators)
    mapped.push_back(g * last);
  bool kills = true;
  for (const auto &g : iw.generators)
    kills = kills && (g * last).is_zero();
  rep.exact.push_back({"I_n^W w_r = 0", kills, ""});
  auto plan = off_s1_samples(ctx->form(), opts.count, opts.seed);
  rep.notes = plan.notes;
  rep.samples = run_samples(plan.points, opts.jobs, [&](const Specialization &s) {
    SampleCheck c = sample_header(s);
    long long ri = static_cast<long long>(rank_at(iw.generators, n, s));
    long long rp = static_cast<long long>(rank_at(iwp.generators, n, s));
    long long ru = static_cast<long long>(rank_at(concat(iw.generators, iwp.generators), n, s));
    long long rq = static_cast<long long>(rank_at(mapped, n + 1, s));
    long long rj = static_cast<long long>(rank_at(next.generators, n + 1, s));
    long long rjq = static_cast<long long>(rank_at(concat(mapped, next.generators), n + 1, s));
    c.values = {{"sub", ri}, {"ambient", rp}, {"quotient", rp - ri}, {"image", rq}, {"next", rj}};
    c.pass = ru == rp && rp - ri == rj && rq == rj && rjq == rj;
    if (ru != rp)
      c.detail = "I_n^W not contained in I_n^W'";
    return c;
  });
  return rep;
}

struct DualityPairing {
  IdealBasis left;  // I_k^W
  IdealBasis right; // I_{r-k}^{oW}; its multipliers xi_i lie in B_{-k}
  PolyMatrix matrix; // [tr(xi_i g_j)]
};

inline DualityPairing duality_pairing(const CliffordContextPtr &ctx, const Subbundle &w, int k) {
  if (ctx->rank() % 2)
    throw PreconditionError("duality pairing needs even rank");
  auto left = clifford_ideal(ctx, w, k, Side::left);
  auto right = clifford_ideal(ctx, w, static_cast<int>(w.rank()) - k, Side::right);
  if (left.generators.size() != right.generators.size())
    throw VerificationError("left and right Clifford ideals differ in rank", "");
  const std::size_t t = left.generators.size();
  PolyMatrix p(ctx->base(), t, t);
  for (std::size_t i = 0; i < t; ++i) {
    auto xi = CliffordElement::monomial(ctx, right.multipliers[i]);
    for (std::size_t j = 0; j < t; ++j)
      p(i, j) = trace(xi * left.generators[j]);
  }
  return {std::move(left), std::move(right), std::move(p)};
}

inline VerificationReport verify_duality(const CliffordContextPtr &ctx, const Subbundle &w, int k,
                                         const SampleOptions &opts = {}) {
  VerificationReport rep{"clidealdual", "W = " + w.str() + ", k = " + std::to_string(k)};
  auto pairing = duality_pairing(ctx, w, k);
  rep.exact.push_back({"rank(I_k^W) = rank(I_{r-k}^oW)",
                       pairing.left.generators.size() == pairing.right.generators.size(),
                       std::to_string(pairing.left.generators.size())});
  auto plan = off_s1_samples(ctx->form(), opts.count, opts.seed);
  rep.notes = plan.notes;
  rep.samples = run_samples(plan.points, opts.jobs, [&](const Specialization &s) {
    SampleCheck c = sample_header(s);
    Rational d = evaluate_at(pairing.matrix, s).det();
    c.pass = d != 0;
    c.detail = "det = " + d.get_str();
    return c;
  });
  return rep;
}

// phi_n: I_{n-1}^W -> I_n^W, xi -> x xi (left) or xi x (right), x = sum x_i e_i.
// Coordinates are taken against generators shifted back to degree 0 or 1,
// so for even n the matrix carries one factor l and phi_{n+1} phi_n = q l Id.
struct SpinorPresentation {
  CliffordContextPtr ctx;
  IdealBasis source, target;
  RingPtr ring; // base + x_1..x_n + l
  PolyMatrix phi;

  int degree() const { return target.degree; }
};

inline RingPtr phi_ring(const QuadraticForm &q) {
  if (q.base()->index_of("l"))
    throw PreconditionError("base variable 'l' clashes with the line bundle trivializer");
  auto names = q.fiber_names();
  names.push_back("l");
  return extend_ring(q.base(), names);
}

namespace detail {

// Columns J of G (t x D) with det G_J a nonzero constant when such exist,
// else the greedy choice at the generic point.
inline std::vector<std::size_t> solving_columns(const PolyMatrix &g, const Specialization &generic) {
  RatMatrix e = evaluate_at(g, generic).transpose();
  auto cols = e.independent_rows();
  if (cols.size() != g.rows())
    throw VerificationError("target generators are dependent at the generic point", generic.str());
  std::vector<std::size_t> all(g.rows());
  for (std::size_t i = 0; i < g.rows(); ++i)
    all[i] = i;
  Poly d = det(g.submatrix(all, cols));
  if (d.is_constant())
    return cols;
  auto combos = combinations(g.cols(), g.rows());
  std::size_t budget = 20000;
  for (const auto &c : combos) {
    if (!budget--)
      break;
    Poly dc = det(g.submatrix(all, c));
    if (dc.is_constant() && !dc.is_zero())
      return c;
  }
  return cols;
}

} // namespace detail

inline SpinorPresentation spinor_phi(const CliffordContextPtr &ctx, const Subbundle &w, int n, Side side = Side::left) {
  const auto &q = ctx->form();
  auto source = clifford_ideal(ctx, w, n - 1, side);
  auto target = clifford_ideal(ctx, w, n, side);
  RingPtr ring = phi_ring(q);
  const auto &base = ctx->base();
  const std::size_t t = target.generators.size();
  const auto &g = target.coord_matrix;
  auto cols = detail::solving_columns(g, target.certified_at.front());
  std::vector<std::size_t> all(t);
  for (std::size_t i = 0; i < t; ++i)
    all[i] = i;
  PolyMatrix gj = g.submatrix(all, cols);
  Poly dg = det(gj);

  PolyMatrix phi(ring, t, source.generators.size());
  const std::size_t nb = base->arity();
  Poly l = Poly::variable(ring, "l");
  for (std::size_t j = 0; j < source.generators.size(); ++j)
    for (std::size_t i = 0; i < q.rank(); ++i) {
      auto e = CliffordElement::generator(ctx, i);
      auto y = (side == Side::left ? e * source.generators[j] : source.generators[j] * e).coordinates(n);
      // Solve c G = y via Cramer on the columns J.
      std::vector<Poly> c(t, Poly(base));
      for (std::size_t k = 0; k < t; ++k) {
        PolyMatrix gk = gj;
        for (std::size_t col = 0; col < cols.size(); ++col)
          gk(k, col) = y[cols[col]];
        auto qt = divide_exact(det(gk), dg);
        if (!qt)
          throw VerificationError("x * xi is not a polynomial combination of the target generators",
                                  "generator " + std::to_string(j + 1) + ", e" + std::to_string(i + 1));
        c[k] = *qt;
      }
      for (std::size_t col = 0; col < g.cols(); ++col) {
        Poly s(base);
        for (std::size_t k = 0; k < t; ++k)
          s += c[k] * g(k, col);
        if (s != y[col])
          throw VerificationError("image of x * xi leaves the span of the target generators",
                                  "generator " + std::to_string(j + 1) + ", e" + std::to_string(i + 1));
      }
      Poly xi = Poly::variable(ring, nb + i);
      for (std::size_t k = 0; k < t; ++k)
        if (!c[k].is_zero())
          phi(k, j) += c[k].embed(ring) * xi;
    }
  if (n % 2 == 0)
    phi = l * phi;
  return {ctx, std::move(source), std::move(target), ring, std::move(phi)};
}

struct FactorizationCheck {
  bool ok = false;
  std::size_t row = 0, col = 0;
  std::string entry;    // offending entry of phi_{n+1} phi_n
  std::string expected; // expected entry

  std::string str() const {
    if (ok)
      return "PASS";
    return "FAIL at (" + std::to_string(row + 1) + "," + std::to_string(col + 1) + "): " + entry + " != " + expected;
  }
};

// Same check on raw matrices, for callers that perturb phi.
inline FactorizationCheck verify_matrix_factorization(const QuadraticForm &q, const RingPtr &ring,
                                                      const PolyMatrix &phi_n, const PolyMatrix &phi_next) {
  Poly ql = q.polynomial().embed(ring) * Poly::variable(ring, "l");
  PolyMatrix prod = phi_next * phi_n;
  FactorizationCheck r;
  for (std::size_t i = 0; i < prod.rows(); ++i)
    for (std::size_t j = 0; j < prod.cols(); ++j) {
      Poly want = i == j ? ql : Poly(ring);
      if (prod(i, j) != want) {
        r.row = i;
        r.col = j;
        r.entry = prod(i, j).str();
        r.expected = want.str();
        return r;
      }
    }
  r.ok = true;
  return r;
}

// p2.phi * p1.phi == q l Id for consecutive degrees.
inline FactorizationCheck verify_matrix_factorization(const QuadraticForm &q, const SpinorPresentation &p1,
                                                      const SpinorPresentation &p2) {
  if (p2.degree() != p1.degree() + 1)
    throw PreconditionError("matrix factorization needs consecutive degrees");
  if (p1.target.side != p2.target.side || p1.phi.rows() != p2.phi.cols())
    throw PreconditionError("spinor presentations are not composable");
  if (!same_ring(p1.ring, p2.ring))
    throw PreconditionError("spinor presentations live over different rings");
  return verify_matrix_factorization(q, p1.ring, p1.phi, p2.phi);
}

// phi evaluated at points of P(E) off the quadric (q(x) != 0, l = 1) is invertible.
inline VerificationReport verify_off_quadric(const SpinorPresentation &p, const SampleOptions &opts = {}) {
  VerificationReport rep{"off-quadric", "phi_" + std::to_string(p.degree())};
  const auto &q = p.ctx->form();
  const auto &ring = p.ring;
  Poly qpoly = q.polynomial().embed(ring);
  RandomPoints draw(ring, opts.seed);
  const std::size_t nb = q.base()->arity();
  Poly det_b = det(q.bilinear_matrix());
  for (std::size_t s = 0; s < opts.count; ++s) {
    std::vector<Rational> pt;
    std::size_t rejected = 0;
    for (;;) {
      pt = draw();
      pt.back() = 1;
      std::vector<Rational> bp(pt.begin(), pt.begin() + static_cast<std::ptrdiff_t>(nb));
      if (qpoly.evaluate(pt) != 0 && (det_b.is_zero() || det_b.evaluate(bp) != 0))
        break;
      if (++rejected >= max_sample_tries)
        throw VerificationError("no point off the quadric found", "");
    }
    SampleCheck c;
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i + 1 < pt.size(); ++i)
      os << (i ? ", " : "") << ring->variables()[i] << "=" << pt[i].get_str();
    os << ")";
    c.point = os.str();
    c.rejections = rejected;
    RatMatrix m = p.phi.evaluate(pt);
    c.values = {{"rank", static_cast<long long>(m.rank())}, {"size", static_cast<long long>(m.rows())}};
    c.pass = m.rank() == m.rows();
    rep.samples.push_back(std::move(c));
  }
  return rep;
}

} // namespace quadrikit
