#include <gtest/gtest.h>

#include "support.hpp"

using namespace qktest;

namespace {

CliffordElement random_element(const CliffordContextPtr &ctx, int degree, std::mt19937_64 &rng) {
  auto n = ctx->graded_basis(degree).size();
  std::vector<Poly> coords;
  for (std::size_t i = 0; i < n; ++i)
    coords.push_back(rng() % 3 ? random_poly(ctx->base(), rng, 1, 2) : Poly(ctx->base()));
  return CliffordElement::from_coordinates(ctx, degree, coords);
}

QuadraticForm generic_form(std::size_t n) {
  // Every coefficient its own base variable.
  std::vector<std::string> names;
  std::string expr;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) {
      std::string c = "c" + std::to_string(i) + std::to_string(j);
      names.push_back(c);
      expr += (expr.empty() ? "" : " + ") + c + "*x" + std::to_string(i) + "*x" + std::to_string(j);
    }
  return QuadraticForm::parse(expr, make_ring(names), n);
}

} // namespace

TEST(Clifford, GradedBasisRanks) {
  for (std::size_t n : {2, 3, 4}) {
    auto ctx = CliffordContext::make(QuadraticForm::zero(make_ring({}), n));
    for (int d = -4; d <= 4; ++d)
      EXPECT_EQ(ctx->graded_basis(d).size(), std::size_t{1} << (n - 1)) << "n=" << n << " d=" << d;
  }
  auto ctx = CliffordContext::make(binary_family());
  auto b0 = ctx->graded_basis(0);
  ASSERT_EQ(b0.size(), 8u);
  EXPECT_EQ(blade_str(b0.front()), "1");
  EXPECT_EQ(blade_str(b0[1]), "e1*e2*l^-1");
  EXPECT_EQ(blade_str(b0.back()), "e1*e2*e3*e4*l^-2");
}

TEST(Clifford, GeneratorRelations) {
  auto q = generic_form(4);
  auto ctx = CliffordContext::make(q);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      auto ei = CliffordElement::generator(ctx, i), ej = CliffordElement::generator(ctx, j);
      Poly c = i == j ? Rational(2) * q.coeff(i, i) : q.coeff(std::min(i, j), std::max(i, j));
      // e_i e_j + e_j e_i = b_q(e_i, e_j) l
      EXPECT_EQ(ei * ej + ej * ei, CliffordElement::monomial(ctx, {0, 1}, c));
    }
}

TEST(Clifford, SquareOfVectorIsQuadraticForm) {
  auto q = generic_form(4);
  auto ctx = CliffordContext::make(q);
  std::mt19937_64 rng(100);
  for (int t = 0; t < 100; ++t) {
    Vector v;
    for (int i = 0; i < 4; ++i)
      v.push_back(random_poly(q.base(), rng, 1, 2));
    auto x = CliffordElement::from_vector(ctx, v);
    EXPECT_EQ(x * x, CliffordElement::monomial(ctx, {0, 1}, q.value(v)));
  }
}

TEST(Clifford, Associativity) {
  auto ctx = CliffordContext::make(binary_family());
  std::mt19937_64 rng(50);
  for (int t = 0; t < 50; ++t) {
    auto x = random_element(ctx, static_cast<int>(rng() % 5) - 2, rng);
    auto y = random_element(ctx, static_cast<int>(rng() % 5) - 2, rng);
    auto z = random_element(ctx, static_cast<int>(rng() % 5) - 2, rng);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
  }
}

TEST(Clifford, OddRankGeneric) {
  auto q = generic_form(3);
  auto ctx = CliffordContext::make(q);
  std::mt19937_64 rng(2);
  for (int t = 0; t < 10; ++t) {
    auto x = random_element(ctx, 1, rng), y = random_element(ctx, 0, rng), z = random_element(ctx, -1, rng);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_TRUE((x * y).is_homogeneous_of(1) || (x * y).is_zero());
  }
}

TEST(Clifford, ParseAndPrint) {
  auto ctx = CliffordContext::make(binary_family());
  auto x = parse_element("e2*e1*l^-1 + b", ctx);
  // e2 e1 = -e1 e2 + b_q(e1, e2) l = -e1 e2 + l
  EXPECT_EQ(x.str(), "b + 1 - e1*e2*l^-1");
  EXPECT_EQ(parse_element(x.str(), ctx), x);
  EXPECT_THROW(parse_element("e5", ctx), ParseError);
  EXPECT_THROW(parse_element("e1^-1", ctx), ParseError);
  EXPECT_FALSE(parse_element("e1 + 1", ctx).degree().has_value()); // mixed degrees
}

TEST(Center, BinaryFamily) {
  auto ctx = CliffordContext::make(binary_family());
  auto c = center_element(ctx);
  EXPECT_EQ(c.omega.str(), "-1/2*b*e1*e2*l^-1 - 1/2*e3*e4*l^-1 + e1*e2*e3*e4*l^-2");
  EXPECT_EQ(c.relation_str(), "w^2 + 1/2*b*w + 1/4*a*c = 0");
  auto r = ctx->base();
  EXPECT_TRUE((c.omega * c.omega + c.alpha * c.omega + CliffordElement::scalar(ctx, c.beta)).is_zero());
  // d = 2 (2 omega + alpha) has d^2 = b^2 - 4ac.
  auto mu = completing_square_scale(c, parse_poly("b^2 - 4*a*c", r));
  ASSERT_TRUE(mu.has_value());
  EXPECT_EQ(*mu, 2);
  auto d = Rational(*mu) * (Rational(2) * c.omega + CliffordElement::scalar(ctx, c.alpha));
  EXPECT_EQ(d * d, CliffordElement::scalar(ctx, parse_poly("b^2 - 4*a*c", r)));
  for (const auto &k : ctx->graded_basis(0))
    EXPECT_TRUE(commutator(c.omega, CliffordElement::monomial(ctx, k)).is_zero()) << blade_str(k);
  for (const auto &k : ctx->graded_basis(1))
    EXPECT_TRUE(twisted_commutes(c, CliffordElement::monomial(ctx, k))) << blade_str(k);
}

TEST(Center, DiagonalSquareIsDeterminantOver16) {
  auto r = make_ring({"a1", "a2", "a3", "a4"});
  auto q = QuadraticForm::parse("a1*x1^2 + a2*x2^2 + a3*x3^2 + a4*x4^2", r, 4);
  auto ctx = CliffordContext::make(q);
  auto c = center_element(ctx);
  EXPECT_EQ(c.omega.str(), "e1*e2*e3*e4*l^-2");
  Poly detb = det(q.bilinear_matrix());
  EXPECT_EQ(detb, parse_poly("16*a1*a2*a3*a4", r));
  EXPECT_EQ(c.omega * c.omega, CliffordElement::scalar(ctx, Rational(1, 16) * detb));
  for (const auto &k : ctx->graded_basis(0))
    EXPECT_TRUE(commutator(c.omega, CliffordElement::monomial(ctx, k)).is_zero());
  for (const auto &k : ctx->graded_basis(1))
    EXPECT_TRUE(twisted_commutes(c, CliffordElement::monomial(ctx, k)));
}

TEST(Center, GenericRank4AndHyperbolicPlane) {
  auto ctx = CliffordContext::make(generic_form(4));
  auto c = center_element(ctx);
  EXPECT_TRUE((c.omega * c.omega + c.alpha * c.omega + CliffordElement::scalar(ctx, c.beta)).is_zero());
  for (const auto &k : ctx->graded_basis(0))
    EXPECT_TRUE(commutator(c.omega, CliffordElement::monomial(ctx, k)).is_zero());
  // The discriminant cover is branched exactly over S_1: disc = det(b_q) up to a unit.
  auto mu = completing_square_scale(c, det(ctx->form().bilinear_matrix()));
  auto mu_neg = completing_square_scale(c, -det(ctx->form().bilinear_matrix()));
  EXPECT_TRUE(mu.has_value() || mu_neg.has_value());

  auto plane = CliffordContext::make(QuadraticForm::parse("x1*x2", make_ring({}), 2));
  auto cp = center_element(plane);
  EXPECT_EQ(cp.omega.str(), "e1*e2*l^-1");
  EXPECT_EQ(cp.relation_str(), "w^2 - w = 0");
  EXPECT_THROW(center_element(CliffordContext::make(generic_form(3))), PreconditionError);
}

TEST(Trace, TopCoefficient) {
  auto ctx = CliffordContext::make(binary_family());
  EXPECT_EQ(trace(CliffordElement::scalar(ctx, Rational(1))), Poly(ctx->base()));
  EXPECT_EQ(trace(parse_element("e1*e2*e3*e4*l^-2", ctx)), Poly::constant(ctx->base(), 1));
  EXPECT_EQ(trace(parse_element("e4*e3*e2*e1*l^-2", ctx)), Poly::constant(ctx->base(), 1));
  EXPECT_THROW(trace(parse_element("e1", ctx)), PreconditionError);
}

TEST(OrthogonalSum, RanksMultiply) {
  auto q = binary_family();
  auto ctx = CliffordContext::make(q);
  auto v = unit_vector(q.base(), 4, 0);
  auto r = orthogonal_sum_ranks(ctx, hyperbolic_reduce(q, v, hyperbolic_pair(q, v)));
  EXPECT_EQ(r.str(), "(8; 2,2,2,2)");
  EXPECT_TRUE(r.consistent());

  auto plane = QuadraticForm::parse("x1*x2", make_ring({}), 2);
  auto pctx = CliffordContext::make(plane);
  auto pv = unit_vector(plane.base(), 2, 0);
  auto pr = orthogonal_sum_ranks(pctx, hyperbolic_reduce(plane, pv, hyperbolic_pair(plane, pv)));
  EXPECT_EQ(pr.str(), "(2; 2,1,2,0)");
  EXPECT_TRUE(pr.consistent());
}
