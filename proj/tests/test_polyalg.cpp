#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "support.hpp"

using namespace qktest;

TEST(Rational, ParsesAndNormalizes) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), Rational(-4));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_EQ(rational_sqrt(make_rational(9, 4)), make_rational(3, 2));
  EXPECT_FALSE(rational_sqrt(Rational(2)).has_value());
  EXPECT_FALSE(rational_sqrt(Rational(-1)).has_value());
}

TEST(Poly, ParseExpandsAndPrints) {
  auto r = make_ring({"x", "y"});
  Poly p = parse_poly("(x + y)^2 - 2*x*y", r);
  EXPECT_EQ(p.str(), "x^2 + y^2");
  EXPECT_EQ(parse_poly("1/2*x - 1/2*x", r), Poly(r));
  EXPECT_THROW(parse_poly("x/2", r), ParseError);
  EXPECT_EQ(parse_poly("-(x - 3)", r).str(), "-x + 3");
  EXPECT_THROW(parse_poly("x + z", r), ParseError);
  EXPECT_THROW(parse_poly("x^", r), ParseError);
  EXPECT_THROW(parse_poly("(x", r), ParseError);
}

TEST(Poly, PrintParseRoundTrip) {
  auto r = make_ring({"a", "b", "c"});
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    Poly p = random_poly(r, rng, 4, 6);
    EXPECT_EQ(parse_poly(p.str(), r), p) << p.str();
  }
}

TEST(Poly, LeadingTermDependsOnOrder) {
  auto grevlex = make_ring({"x", "y", "z"});
  auto lex = make_ring({"x", "y", "z"}, MonomialOrder::lex);
  // x*z^2 vs y^3: grevlex prefers the smaller last exponent; lex prefers x.
  EXPECT_EQ(parse_poly("x*z^2 + y^3", grevlex).leading_term().exponents, (Exponents{0, 3, 0}));
  EXPECT_EQ(parse_poly("x*z^2 + y^3", lex).leading_term().exponents, (Exponents{1, 0, 2}));
}

// Ring axioms and the evaluation homomorphism on random inputs.
TEST(Poly, RingAxiomsOnRandomInputs) {
  auto r = make_ring({"a", "b", "c"});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    Poly f = random_poly(r, rng, 3, 4), g = random_poly(r, rng, 3, 4), h = random_poly(r, rng, 2, 3);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_EQ(f * (g + h), f * g + f * h);
    EXPECT_EQ(f * g, g * f);
    EXPECT_EQ(f - f, Poly(r));
    std::vector<Rational> pt{random_rational(rng), random_rational(rng), random_rational(rng)};
    EXPECT_EQ((f * g).evaluate(pt), f.evaluate(pt) * g.evaluate(pt));
    EXPECT_EQ((f + g).evaluate(pt), f.evaluate(pt) + g.evaluate(pt));
    auto q = divide_exact(f * g, g);
    if (!g.is_zero()) {
      ASSERT_TRUE(q.has_value());
      EXPECT_EQ(*q, f);
    }
  }
}

// Textbook reduced basis (graded order): (x^3 - 2xy, x^2 y - 2y^2 + x) -> {x^2, xy, y^2 - x/2}.
TEST(Groebner, TextbookReducedBasis) {
  auto r = make_ring({"x", "y"});
  Ideal i(r, {parse_poly("x^3 - 2*x*y", r), parse_poly("x^2*y - 2*y^2 + x", r)});
  std::vector<Poly> expected{parse_poly("x^2", r), parse_poly("x*y", r), parse_poly("y^2 - 1/2*x", r)};
  auto gb = i.groebner_basis();
  ASSERT_EQ(gb.size(), expected.size());
  for (const auto &e : expected)
    EXPECT_NE(std::find(gb.begin(), gb.end(), e), gb.end()) << e.str();
}

TEST(Groebner, MembershipEqualityAndUnit) {
  auto r = make_ring({"x", "y"});
  auto x = Poly::variable(r, "x"), y = Poly::variable(r, "y");
  EXPECT_TRUE(ideals_equal(Ideal(r, {x, y}), Ideal(r, {x + y, x - y})));
  EXPECT_TRUE(ideal_contained(Ideal(r, {x * x}), Ideal(r, {x})));
  EXPECT_FALSE(ideal_contained(Ideal(r, {x}), Ideal(r, {x * x})));
  EXPECT_TRUE(Ideal(r, {x, x - Poly::constant(r, 1)}).is_unit());
  EXPECT_FALSE(Ideal(r, {x * y}).contains(x));
  EXPECT_TRUE(Ideal(r, {}).is_zero());
}

// Buchberger criterion: every S-polynomial of the output reduces to zero,
// and the input generators reduce to zero.
TEST(Groebner, BuchbergerCriterionOnRandomIdeals) {
  auto r = make_ring({"x", "y", "z"});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 12; ++i) {
    std::vector<Poly> gens{random_poly(r, rng, 2, 3), random_poly(r, rng, 2, 3), random_poly(r, rng, 2, 2)};
    Ideal id(r, gens);
    const auto &gb = id.groebner_basis();
    for (const auto &g : gens)
      EXPECT_TRUE(normal_form(g, gb).is_zero());
    for (std::size_t a = 0; a < gb.size(); ++a)
      for (std::size_t b = a + 1; b < gb.size(); ++b)
        EXPECT_TRUE(normal_form(detail::s_polynomial(gb[a], gb[b]), gb).is_zero());
  }
}

namespace {

// Leibniz expansion as an independent determinant oracle.
Poly leibniz(const PolyMatrix &m) {
  std::vector<std::size_t> perm(m.rows());
  std::iota(perm.begin(), perm.end(), 0);
  Poly sum(m.ring());
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        inversions += perm[i] > perm[j];
    Poly t = Poly::constant(m.ring(), inversions % 2 ? -1 : 1);
    for (std::size_t i = 0; i < perm.size(); ++i)
      t *= m(i, perm[i]);
    sum += t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return sum;
}

} // namespace

TEST(Matrix, DeterminantsAgreeWithLeibniz) {
  auto r = make_ring({"a", "b"});
  std::mt19937_64 rng(5);
  for (std::size_t n = 1; n <= 5; ++n)
    for (int trial = 0; trial < 3; ++trial) {
      PolyMatrix m(r, n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          m(i, j) = random_poly(r, rng, 1, 2);
      Poly expected = leibniz(m);
      EXPECT_EQ(detail::det_bareiss(m), expected);
      EXPECT_EQ(det(m), expected);
      if (n <= 4)
        EXPECT_EQ(detail::det_cofactor(m), expected);
    }
}

TEST(Matrix, RationalRankNullspaceSolve) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::size_t rows = 2 + rng() % 4, cols = 2 + rng() % 4;
    RatMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j)
        m(i, j) = rng() % 3 ? random_rational(rng) : Rational(0);
    if (rows > 2) // force a dependent row
      for (std::size_t j = 0; j < cols; ++j)
        m(rows - 1, j) = m(0, j) - 2 * m(1, j);
    auto ns = m.nullspace();
    EXPECT_EQ(m.rank() + ns.size(), cols);
    for (const auto &v : ns)
      for (std::size_t i = 0; i < rows; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < cols; ++j)
          s += m(i, j) * v[j];
        EXPECT_EQ(s, 0);
      }
    EXPECT_EQ(m.independent_rows().size(), m.rank());
    EXPECT_EQ(m.transpose().rank(), m.rank());
  }
}

TEST(Matrix, MinorsIdealOfGenericMatrix) {
  auto r = make_ring({"p", "q", "s", "t"});
  PolyMatrix m(r, 2, 2, {Poly::variable(r, 0), Poly::variable(r, 1), Poly::variable(r, 2), Poly::variable(r, 3)});
  EXPECT_EQ(minors(m, 1).size(), 4u);
  EXPECT_EQ(minors(m, 2).size(), 1u);
  EXPECT_EQ(minors_ideal(m, 2).reduced_str(), "(q*s - p*t)");
  EXPECT_EQ(combinations(5, 2).size(), 10u);
}
