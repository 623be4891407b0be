#include <gtest/gtest.h>

#include "support.hpp"

using namespace qktest;

TEST(QuadraticForm, BilinearMatrixConvention) {
  auto q = binary_family();
  auto b = q.bilinear_matrix();
  auto r = q.base();
  EXPECT_EQ(b(0, 1), Poly::constant(r, 1));
  EXPECT_EQ(b(0, 0), Poly(r));
  EXPECT_EQ(b(2, 2), parse_poly("2*a", r));
  EXPECT_EQ(b(2, 3), parse_poly("b", r));
  EXPECT_EQ(b(3, 3), parse_poly("2*c", r));
  EXPECT_TRUE(b.is_symmetric());
  // q(v) = b(v, v) / 2 and polarization b(v, w) = q(v + w) - q(v) - q(w).
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    Vector v, w, s;
    for (int k = 0; k < 4; ++k) {
      v.push_back(random_poly(r, rng, 1, 2));
      w.push_back(random_poly(r, rng, 1, 2));
      s.push_back(v.back() + w.back());
    }
    EXPECT_EQ(q.bilinear(v, v), Rational(2) * q.value(v));
    EXPECT_EQ(q.bilinear(v, w), q.value(s) - q.value(v) - q.value(w));
  }
}

TEST(QuadraticForm, PolynomialRoundTrip) {
  auto q = binary_family();
  EXPECT_EQ(QuadraticForm::from_polynomial(q.base(), 4, q.polynomial()), q);
  auto r = abc();
  EXPECT_THROW(QuadraticForm::parse("x1*x2 + x3", r, 3), ParseError);
  EXPECT_THROW(QuadraticForm::parse("x1*x5", r, 4), ParseError);
}

TEST(Degeneration, BinaryFamilyLoci) {
  auto q = binary_family();
  auto r = q.base();
  Poly d = parse_poly("b^2 - 4*a*c", r);
  EXPECT_EQ(det(q.bilinear_matrix()), d); // -(4ac - b^2) from the block form
  EXPECT_EQ(degeneration_locus(q, 1).reduced_str(), "(b^2 - 4*a*c)");
  auto abc_ideal = Ideal(r, {Poly::variable(r, "a"), Poly::variable(r, "b"), Poly::variable(r, "c")});
  EXPECT_TRUE(ideals_equal(degeneration_locus(q, 2), abc_ideal));
  // The 2x2 minors of b_q include the unit entry b_12 = 1: S_3 and S_4 are empty.
  EXPECT_TRUE(degeneration_locus(q, 3).is_unit());
  EXPECT_TRUE(degeneration_locus(q, 4).is_unit());
  EXPECT_THROW(degeneration_locus(q, 0), PreconditionError);
  EXPECT_THROW(degeneration_locus(q, 5), PreconditionError);
}

// Corank at a point >= k exactly when the point lies on S_k.
TEST(Degeneration, MatchesPointwiseCorank) {
  auto r = make_ring({"s", "t"});
  auto q = QuadraticForm::parse("s*x1^2 + t*x2^2 + (s - t)*x3^2 + s*x1*x3", r, 3);
  std::mt19937_64 rng(17);
  std::vector<std::vector<Rational>> points{{0, 0}, {1, 1}, {0, 1}, {1, 0}, {4, 4}};
  for (int i = 0; i < 20; ++i)
    points.push_back({random_rational(rng), random_rational(rng)});
  for (std::size_t k = 1; k <= 3; ++k) {
    auto ideal = degeneration_locus(q, k);
    for (const auto &p : points) {
      std::size_t corank = 3 - q.bilinear_matrix().evaluate(p).rank();
      bool on = std::all_of(ideal.generators().begin(), ideal.generators().end(),
                            [&](const Poly &g) { return g.evaluate(p) == 0; });
      EXPECT_EQ(on, corank >= k) << "k=" << k << " point " << p[0] << "," << p[1];
    }
  }
}

TEST(Isotropy, SubbundlesAndRegularity) {
  auto q = binary_family();
  auto r = q.base();
  EXPECT_TRUE(is_isotropic(q, Subbundle::standard(r, 4, {0})));
  EXPECT_TRUE(is_isotropic(q, Subbundle::standard(r, 4, {1})));
  EXPECT_FALSE(is_isotropic(q, Subbundle::standard(r, 4, {0, 1})));
  EXPECT_FALSE(is_isotropic(q, Subbundle::standard(r, 4, {2})));
  EXPECT_TRUE(is_regular_isotropic(q, Subbundle::standard(r, 4, {0})));
  EXPECT_THROW(Subbundle(r, 4, {unit_vector(r, 4, 0), unit_vector(r, 4, 0)}), PreconditionError);
  EXPECT_THROW(Subbundle(r, 4, {Vector(3, Poly(r))}), PreconditionError);
}

TEST(HyperbolicReduction, BinaryFamily) {
  auto q = binary_family();
  auto r = q.base();
  auto v = unit_vector(r, 4, 0);
  auto w = hyperbolic_pair(q, v);
  EXPECT_EQ(w, unit_vector(r, 4, 1));
  auto split = hyperbolic_reduce(q, v, w);
  EXPECT_EQ(split.reduced.rank(), 2u);
  EXPECT_EQ(split.reduced.str(), "a*x3^2 + b*x3*x4 + c*x4^2");
  EXPECT_EQ(reduction_presentation(split).str(), "Ideal over Q[a,b,c,x3,x4]: a*x3^2 + b*x3*x4 + c*x4^2");
}

// T^t B T = hyperbolic plane (+) B(qbar), checked for an isotropic vector
// that is not a coordinate vector.
TEST(HyperbolicReduction, BlockFormForSkewVector) {
  auto r = make_ring({"u"});
  auto q = QuadraticForm::parse("x1^2 - x2^2 + u*x3^2 + x1*x3", r, 3);
  Vector v{Poly::constant(r, 1), Poly::constant(r, 1), Poly(r)};
  ASSERT_TRUE(q.value(v).is_zero());
  auto w = hyperbolic_pair(q, v);
  EXPECT_EQ(q.bilinear(v, w), Poly::constant(r, 1));
  EXPECT_TRUE(q.value(w).is_zero());
  auto split = hyperbolic_reduce(q, v, w);
  auto t = split.transform;
  auto m = t.transpose() * q.bilinear_matrix() * t;
  EXPECT_EQ(m(0, 0), Poly(r));
  EXPECT_EQ(m(0, 1), Poly::constant(r, 1));
  EXPECT_EQ(m(1, 1), Poly(r));
  for (std::size_t j = 2; j < 3; ++j) {
    EXPECT_EQ(m(0, j), Poly(r));
    EXPECT_EQ(m(1, j), Poly(r));
  }
  auto bbar = split.reduced.bilinear_matrix();
  EXPECT_EQ(m(2, 2), bbar(0, 0));
  // det(T)^2 det(b_q) = det(hyperbolic plane) det(b_qbar) = -det(b_qbar).
  Poly dt = det(t);
  EXPECT_EQ(dt * dt * det(q.bilinear_matrix()), -det(bbar));
}

TEST(HyperbolicReduction, RejectsBadInput) {
  auto q = binary_family();
  auto r = q.base();
  EXPECT_THROW(hyperbolic_pair(q, unit_vector(r, 4, 2)), PreconditionError);
  EXPECT_THROW(hyperbolic_reduce(q, unit_vector(r, 4, 0), unit_vector(r, 4, 2)), PreconditionError);
}

TEST(QfFile, ParsesAndRejects) {
  auto q = read_qf(data("example35.qf"));
  EXPECT_EQ(q, binary_family());
  auto point = parse_qf("base_vars = []\nfiber_rank = 2\nq = \"x1*x2\" # hyperbolic plane\n");
  EXPECT_EQ(point.base()->arity(), 0u);
  EXPECT_EQ(parse_qf("base_vars=[t]\nfiber_rank=1\nq=\"t*x1^2\"\norder = lex\n").base()->order(), MonomialOrder::lex);
  EXPECT_THROW(parse_qf("fiber_rank = 2\nq = \"x1*x2\"\n"), ParseError);
  EXPECT_THROW(parse_qf("base_vars = [a]\nfiber_rank = 2\nq = \"x1*x2\"\ncolor = red\n"), ParseError);
  EXPECT_THROW(parse_qf("base_vars = [a]\nfiber_rank = two\nq = \"x1*x2\"\n"), ParseError);
  EXPECT_THROW(parse_qf("base_vars = [1a]\nfiber_rank = 2\nq = \"x1*x2\"\n"), ParseError);
  EXPECT_THROW(parse_qf("base_vars = [a]\nfiber_rank = 2\nq = x1*x2\n"), ParseError);
  EXPECT_THROW(read_qf(data("missing.qf")), ParseError);
}
