#pragma once

// Scheme-level outputs: the Hilbert scheme of lines in the Pluecker chart
// y12 = 1, the node criterion at corank-2 points, fiber classification, and
// nets of quadrics.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "groebner.hpp"
#include "matrix.hpp"
#include "poly.hpp"
#include "presentation.hpp"
#include "quadform.hpp"
#include "sampling.hpp"

namespace quadrikit {

inline const std::vector<std::string> &chart_variables() {
  static const std::vector<std::string> names{"y13", "y14", "y23", "y24"};
  return names;
}

// Lines spanned by r1 = e1 + y13 e3 + y14 e4 and r2 = e2 + y23 e3 + y24 e4
// lie on {q = 0} iff q(r1) = b_q(r1, r2) = q(r2) = 0.
inline SchemePresentation lines_chart(const QuadraticForm &q) {
  if (q.rank() != 4)
    throw PreconditionError("lines_chart needs a rank 4 form, got rank " + std::to_string(q.rank()));
  for (const auto &y : chart_variables())
    if (q.base()->index_of(y))
      throw PreconditionError("base variable '" + y + "' clashes with a chart variable");
  RingPtr ring = extend_ring(q.base(), chart_variables());
  QuadraticForm qc = q.map_base(ring, [&](const Poly &p) { return p.embed(ring); });
  auto y = [&](const char *name) { return Poly::variable(ring, name); };
  Poly one = Poly::constant(ring, 1), zero(ring);
  Vector r1{one, zero, y("y13"), y("y14")};
  Vector r2{zero, one, y("y23"), y("y24")};
  return {ring, {qc.value(r1), qc.bilinear(r1, r2), qc.value(r2)}, "lines on {q = 0} in the chart y12 = 1"};
}

// Reference equations of the chart for q = a x1^2 + b x1x2 + c x2^2 + x3^2 + x4^2
// in the normalization of the node computation:
//   y23^2 + y24^2 = -2a,  y13 y23 + y14 y24 = b,  y13^2 + y14^2 = -2c.
inline SchemePresentation node_reference_equations(const RingPtr &ring) {
  auto v = [&](const char *name) { return Poly::variable(ring, name); };
  Rational two(2);
  return {ring,
          {v("y23") * v("y23") + v("y24") * v("y24") + two * v("a"), v("y13") * v("y23") + v("y14") * v("y24") - v("b"),
           v("y13") * v("y13") + v("y14") * v("y14") + two * v("c")},
          "reference chart equations"};
}

// The base substitution (a, b, c) -> (2c, -2b, 2a) carrying lines_chart's
// ideal onto the reference equations' ideal.
inline SchemePresentation rescale_to_reference(const SchemePresentation &chart) {
  const auto &ring = chart.ring;
  std::vector<Poly> images;
  for (const auto &name : ring->variables()) {
    Poly x = Poly::variable(ring, name);
    if (name == "a")
      x = Rational(2) * Poly::variable(ring, "c");
    else if (name == "b")
      x = Rational(-2) * Poly::variable(ring, "b");
    else if (name == "c")
      x = Rational(2) * Poly::variable(ring, "a");
    images.push_back(x);
  }
  SchemePresentation out{ring, {}, chart.label + ", base rescaled (a,b,c) -> (2c,-2b,2a)"};
  for (const auto &g : chart.generators)
    out.generators.push_back(g.substitute(ring, images));
  return out;
}

struct NodeRank {
  std::size_t rank = 0;
  Poly reduced;         // equation 2 after eliminating t1, t2
  RatMatrix quadratic;  // symmetric matrix of its degree-2 part (y13, y14, y23, y24)
};

// With a = t1, c = t2, b = lambda t1 + mu t2 in the chart of
// a x1^2 + b x1x2 + c x2^2 + x3^2 + x4^2: equations 1 and 3 are linear in
// t1, t2; eliminate and read off the rank of the quadratic part of equation 2.
inline NodeRank node_rank(const Rational &lambda, const Rational &mu) {
  RingPtr base = make_ring({"a", "b", "c"});
  auto q = QuadraticForm::parse("a*x1^2 + b*x1*x2 + c*x2^2 + x3^2 + x4^2", base, 4);
  auto chart = lines_chart(q);
  std::vector<std::string> names{"t1", "t2"};
  for (const auto &y : chart_variables())
    names.push_back(y);
  RingPtr ring = make_ring(names);
  Poly t1 = Poly::variable(ring, "t1"), t2 = Poly::variable(ring, "t2");
  std::vector<Poly> images{t1, lambda * t1 + mu * t2, t2};
  for (const auto &y : chart_variables())
    images.push_back(Poly::variable(ring, y));
  std::vector<Poly> eq;
  for (const auto &g : chart.generators)
    eq.push_back(g.substitute(ring, images));
  // eq[0], eq[2] = A (t1, t2)^T + rest, A constant.
  auto coeff_of = [&](const Poly &p, std::size_t var) {
    Exponents e(ring->arity(), 0);
    e[var] = 1;
    return p.coefficient(e);
  };
  RatMatrix a(2, 2);
  std::vector<Poly> rest;
  for (int k : {0, 2}) {
    Rational c1 = coeff_of(eq[k], 0), c2 = coeff_of(eq[k], 1);
    Poly r = eq[k] - c1 * t1 - c2 * t2;
    if (r.degree_in(0) > 0 || r.degree_in(1) > 0)
      throw VerificationError("chart equation is not linear in t1, t2", eq[k].str());
    a(k / 2, 0) = c1;
    a(k / 2, 1) = c2;
    rest.push_back(r);
  }
  Rational d = a.det();
  if (d == 0)
    throw VerificationError("equations 1 and 3 do not determine t1, t2", a.str());
  // Cramer: t = -A^{-1} rest.
  Poly s1 = (-(a(1, 1) * rest[0]) + a(0, 1) * rest[1]) * (1 / d);
  Poly s2 = (a(1, 0) * rest[0] - a(0, 0) * rest[1]) * (1 / d);
  std::vector<Poly> solve{s1, s2};
  for (const auto &y : chart_variables())
    solve.push_back(Poly::variable(ring, y));
  Poly reduced = eq[1].substitute(ring, solve);
  Poly quad = reduced.homogeneous_part(2);
  RatMatrix m(4, 4);
  for (const auto &t : quad.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 2; i < ring->arity(); ++i)
      for (std::uint32_t k = 0; k < t.exponents[i]; ++k)
        idx.push_back(i - 2);
    if (idx[0] == idx[1])
      m(idx[0], idx[0]) += t.coeff;
    else {
      m(idx[0], idx[1]) += t.coeff / 2;
      m(idx[1], idx[0]) += t.coeff / 2;
    }
  }
  RingPtr yring = make_ring(chart_variables());
  std::vector<Poly> ys;
  ys.push_back(Poly(yring));
  ys.push_back(Poly(yring));
  for (const auto &y : chart_variables())
    ys.push_back(Poly::variable(yring, y));
  return {m.rank(), reduced.substitute(yring, ys), m};
}

struct PlaneWitness {
  std::vector<Rational> equation; // linear form on E vanishing on the plane
  std::vector<std::vector<Rational>> basis;
  bool isotropic = false;

  std::string equation_str(const std::vector<std::string> &names) const {
    std::string s;
    for (std::size_t i = 0; i < equation.size(); ++i) {
      const Rational &c = equation[i];
      if (c == 0)
        continue;
      std::string term = abs_value(c) == 1 ? names[i] : abs_value(c).get_str() + "*" + names[i];
      if (s.empty())
        s = (c < 0 ? "-" : "") + term;
      else
        s += (c < 0 ? " - " : " + ") + term;
    }
    return s + " = 0";
  }
};

struct FiberReport {
  std::string point;
  std::size_t corank = 0;
  std::string label;
  std::optional<bool> splits;   // corank 2 only
  std::vector<PlaneWitness> planes;
  std::string note;
};

inline std::string fiber_label(std::size_t corank) {
  switch (corank) {
  case 0:
    return "smooth quadric: lines form two disjoint smooth conics";
  case 1:
    return "quadric cone: lines form a smooth conic over the dual numbers";
  case 2:
    return "two planes: lines form two planes meeting in a point";
  default:
    return "corank " + std::to_string(corank) + ": outside simple corank <= 2 degeneration";
  }
}

inline FiberReport fiber_report(const QuadraticForm &q, const Specialization &point) {
  if (q.rank() != 4)
    throw PreconditionError("fiber_report needs a rank 4 form");
  RatMatrix b = evaluate_at(q.bilinear_matrix(), point);
  FiberReport rep;
  rep.point = point.str();
  rep.corank = 4 - b.rank();
  rep.label = fiber_label(rep.corank);
  if (rep.corank != 2)
    return rep;

  // Basis [c1 c2 k1 k2]: kernel vectors k, completed by standard vectors.
  auto kernel = b.nullspace();
  std::vector<std::vector<Rational>> chosen(kernel.begin(), kernel.end());
  std::vector<std::vector<Rational>> complement;
  for (std::size_t e = 0; e < 4 && complement.size() < 2; ++e) {
    std::vector<Rational> v(4, 0);
    v[e] = 1;
    chosen.push_back(v);
    RatMatrix m(chosen.size(), 4);
    for (std::size_t i = 0; i < chosen.size(); ++i)
      for (std::size_t j = 0; j < 4; ++j)
        m(i, j) = chosen[i][j];
    if (m.rank() == chosen.size())
      complement.push_back(v);
    else
      chosen.pop_back();
  }
  RatMatrix p(4, 4);
  for (std::size_t i = 0; i < 4; ++i) {
    p(i, 0) = complement[0][i];
    p(i, 1) = complement[1][i];
    p(i, 2) = kernel[0][i];
    p(i, 3) = kernel[1][i];
  }
  // Residual binary form on span(c1, c2): alpha s^2 + beta s t + gamma t^2.
  auto col = [&](std::size_t j) {
    std::vector<Rational> v(4);
    for (std::size_t i = 0; i < 4; ++i)
      v[i] = p(i, j);
    return v;
  };
  auto bil = [&](const std::vector<Rational> &x, const std::vector<Rational> &y) {
    Rational s = 0;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j)
        s += x[i] * b(i, j) * y[j];
    return s;
  };
  auto c1 = col(0), c2 = col(1);
  Rational alpha = bil(c1, c1) / 2, beta = bil(c1, c2), gamma = bil(c2, c2) / 2;
  Rational disc = beta * beta - 4 * alpha * gamma;
  auto root = rational_sqrt(disc);
  rep.splits = root.has_value();
  if (!root) {
    rep.note = "residual form splits over a quadratic extension (discriminant " + disc.get_str() + ")";
    return rep;
  }
  // Linear forms in (s, t) whose product is the residual form up to a constant.
  std::vector<std::pair<Rational, Rational>> factors;
  if (alpha != 0) {
    for (int sign : {1, -1}) {
      Rational r = (-beta + sign * *root) / (2 * alpha);
      factors.push_back({1, -r});
    }
  } else {
    factors.push_back({0, 1});
    factors.push_back({beta, gamma});
  }
  // (s, t) = first two rows of P^{-1}.
  RatMatrix aug(4, 8);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j)
      aug(i, j) = p(i, j);
    aug(i, 4 + i) = 1;
  }
  aug.rref();
  for (const auto &[fs, ft] : factors) {
    PlaneWitness w;
    w.equation.resize(4);
    for (std::size_t j = 0; j < 4; ++j)
      w.equation[j] = fs * aug(0, 4 + j) + ft * aug(1, 4 + j);
    auto lead = std::find_if(w.equation.begin(), w.equation.end(), [](const Rational &x) { return x != 0; });
    Rational scale = 1 / *lead;
    for (auto &x : w.equation)
      x *= scale;
    RatMatrix row(1, 4);
    for (std::size_t j = 0; j < 4; ++j)
      row(0, j) = w.equation[j];
    w.basis = row.nullspace();
    w.isotropic = true;
    for (const auto &u : w.basis)
      for (const auto &v : w.basis)
        if (bil(u, v) != 0)
          w.isotropic = false;
    rep.planes.push_back(std::move(w));
  }
  return rep;
}

struct NetOfQuadrics {
  std::vector<QuadraticForm> inputs;
  QuadraticForm net; // sum a_i q_i over Q[a1..ak]

  Poly discriminant() const { return det(net.bilinear_matrix()); }
};

inline NetOfQuadrics net_of_quadrics(const std::vector<QuadraticForm> &forms) {
  if (forms.empty())
    throw PreconditionError("a net needs at least one form");
  const std::size_t n = forms.front().rank();
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= forms.size(); ++i)
    names.push_back("a" + std::to_string(i));
  RingPtr ring = make_ring(names);
  std::vector<Poly> upper(n * (n + 1) / 2, Poly(ring));
  for (std::size_t k = 0; k < forms.size(); ++k) {
    const auto &f = forms[k];
    if (f.rank() != n)
      throw PreconditionError("form " + std::to_string(k + 1) + " has rank " + std::to_string(f.rank()) +
                              ", expected " + std::to_string(n));
    Poly ak = Poly::variable(ring, k);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j, ++idx) {
        const Poly &c = f.coeff(i, j);
        if (!c.is_constant())
          throw PreconditionError("net inputs must have constant coefficients");
        upper[idx] += c.constant_term() * ak;
      }
  }
  return {forms, QuadraticForm(ring, n, std::move(upper))};
}

} // namespace quadrikit
