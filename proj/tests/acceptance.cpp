// Acceptance criteria 1-8: one line per criterion, exit 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <quadrikit/quadrikit.hpp>

using namespace quadrikit;

namespace {

std::string data(const std::string &name) { return std::string(QK_DATA_DIR) + "/" + name; }

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string &what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

QuadraticForm binary_family() { return read_qf(data("example35.qf")); }

Outcome criterion1() {
  Outcome o;
  auto q = binary_family();
  auto r = q.base();
  o.require(degeneration_locus(q, 1).reduced_str() == "(b^2 - 4*a*c)", "S1");
  Ideal abc(r, {Poly::variable(r, "a"), Poly::variable(r, "b"), Poly::variable(r, "c")});
  o.require(ideals_equal(degeneration_locus(q, 2), abc), "S2");
  auto v = unit_vector(r, 4, 0);
  auto split = hyperbolic_reduce(q, v, hyperbolic_pair(q, v));
  o.require(split.reduced.str() == "a*x3^2 + b*x3*x4 + c*x4^2", "q_bar");
  o.require(reduction_presentation(split).str() == "Ideal over Q[a,b,c,x3,x4]: a*x3^2 + b*x3*x4 + c*x4^2", "Z");
  auto ctx = CliffordContext::make(q);
  auto c = center_element(ctx);
  Poly target = parse_poly("b^2 - 4*a*c", r);
  auto mu = completing_square_scale(c, target);
  o.require(mu.has_value(), "completing the square");
  if (mu) {
    auto d = Rational(*mu) * (Rational(2) * c.omega + CliffordElement::scalar(ctx, c.alpha));
    o.require(d * d == CliffordElement::scalar(ctx, target), "d^2 = b^2 - 4ac");
  }
  return o;
}

Outcome criterion2() {
  Outcome o;
  auto q = binary_family();
  auto ctx = CliffordContext::make(q);
  auto check = [&](const CliffordContextPtr &cx, const Subbundle &w, std::size_t size, std::vector<int> ns,
                   const std::string &tag) {
    for (int n : ns) {
      auto p = spinor_phi(cx, w, n), next = spinor_phi(cx, w, n + 1);
      auto f = verify_matrix_factorization(cx->form(), p, next);
      o.require(p.phi.rows() == size && p.phi.cols() == size, tag + " size at n=" + std::to_string(n));
      o.require(f.ok, tag + " n=" + std::to_string(n) + ": " + f.str());
    }
  };
  check(ctx, Subbundle::standard(q.base(), 4, {0}), 4, {0, 1, 2}, "(a)");
  check(ctx, Subbundle::empty(q.base(), 4), 8, {0, 1}, "(b)");
  auto q0 = read_qf(data("corank2.qf"));
  check(CliffordContext::make(q0), Subbundle::standard(q0.base(), 4, {0, 2}), 2, {0, 1}, "(c)");
  return o;
}

Outcome criterion3() {
  Outcome o;
  for (std::size_t n : {2, 4}) {
    auto cx = CliffordContext::make(QuadraticForm::zero(make_ring({}), n));
    for (int d = -4; d <= 4; ++d)
      o.require(cx->graded_basis(d).size() == (std::size_t{1} << (n - 1)), "basis rank");
  }
  auto q = binary_family();
  auto ctx = CliffordContext::make(q);
  const auto &base = q.base();
  std::mt19937_64 rng(24237);
  auto rnd = [&] { return make_rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1); };
  auto rpoly = [&] {
    Poly p = Poly::constant(base, rnd());
    for (std::size_t i = 0; i < base->arity(); ++i)
      p += rnd() * Poly::variable(base, i);
    return p;
  };
  for (int t = 0; t < 100; ++t) {
    Vector v;
    for (int i = 0; i < 4; ++i)
      v.push_back(rpoly());
    auto x = CliffordElement::from_vector(ctx, v);
    o.require(x * x == CliffordElement::monomial(ctx, {0, 1}, q.value(v)), "v.v = q(v) l");
  }
  auto element = [&](int d) {
    std::vector<Poly> coords;
    for (std::size_t i = 0; i < ctx->graded_basis(d).size(); ++i)
      coords.push_back(rpoly());
    return CliffordElement::from_coordinates(ctx, d, coords);
  };
  for (int t = 0; t < 50; ++t) {
    auto x = element(static_cast<int>(rng() % 5) - 2), y = element(static_cast<int>(rng() % 5) - 2),
         z = element(static_cast<int>(rng() % 5) - 2);
    o.require((x * y) * z == x * (y * z), "associativity");
  }
  auto bq = q.bilinear_matrix();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      auto ei = CliffordElement::generator(ctx, i), ej = CliffordElement::generator(ctx, j);
      o.require(ei * ej + ej * ei == CliffordElement::monomial(ctx, {0, 1}, bq(i, j)), "anticommutator");
    }
  auto c = center_element(ctx);
  for (const auto &k : ctx->graded_basis(0))
    o.require(commutator(c.omega, CliffordElement::monomial(ctx, k)).is_zero(), "omega central in B_0");
  // Odd monomials move omega to its conjugate -alpha - omega.
  for (const auto &k : ctx->graded_basis(1))
    o.require(twisted_commutes(c, CliffordElement::monomial(ctx, k)), "omega vs degree-1 monomials");
  auto dr = make_ring({"a1", "a2", "a3", "a4"});
  auto dq = QuadraticForm::parse("a1*x1^2 + a2*x2^2 + a3*x3^2 + a4*x4^2", dr, 4);
  auto dctx = CliffordContext::make(dq);
  auto dc = center_element(dctx);
  o.require(dc.omega * dc.omega == CliffordElement::scalar(dctx, Rational(1, 16) * det(dq.bilinear_matrix())),
            "diagonal omega^2 = det/16");
  return o;
}

Outcome criterion4() {
  Outcome o;
  SampleOptions opts{5, 24237, 1};
  auto q = binary_family();
  auto ctx = CliffordContext::make(q);
  auto q0 = read_qf(data("corank2.qf"));
  auto ctx0 = CliffordContext::make(q0);
  struct Cfg {
    CliffordContextPtr ctx;
    Subbundle w;
  };
  std::vector<Cfg> cfgs{{ctx, Subbundle::standard(q.base(), 4, {0})},
                        {ctx, Subbundle::empty(q.base(), 4)},
                        {ctx0, Subbundle::standard(q0.base(), 4, {0, 2})}};
  for (const auto &cfg : cfgs) {
    std::string tag = "W = " + cfg.w.str();
    for (int n = -1; n <= 3; ++n) {
      auto b = clifford_ideal(cfg.ctx, cfg.w, n, Side::left);
      o.require(b.generators.size() == (std::size_t{1} << (4 - cfg.w.rank() - 1)), tag + " rank law");
    }
  }
  // The constant corank-2 form has no point off S_1: its base is a point,
  // which is checked once; the sample-count bound applies to the family.
  for (const auto &cfg : cfgs) {
    const auto &w = cfg.w;
    const auto &cx = cfg.ctx;
    bool family = cx->base()->arity() > 0;
    std::string tag = "W = " + w.str();
    std::vector<VerificationReport> reps;
    for (auto [m, n] : {std::pair{1, 0}, {1, 1}, {2, 0}})
      reps.push_back(verify_multiplication_iso(cx, w, m, n, opts));
    for (int n : {0, 1})
      reps.push_back(verify_cokernel_sequence(cx, w, n, opts));
    if (w.rank() >= 1)
      reps.push_back(verify_flag_sequence(cx, w, 0, opts));
    for (int k : {0, 1})
      reps.push_back(verify_duality(cx, w, k, opts));
    for (const auto &r : reps) {
      o.require(r.pass(), tag + " " + r.operation);
      if (family)
        o.require(r.samples.size() >= 5, tag + " " + r.operation + " sample count");
    }
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  auto chart = lines_chart(read_qf(data("lines_node.qf")));
  o.require(ideals_equal(rescale_to_reference(chart).ideal(), node_reference_equations(chart.ring).ideal()),
            "chart vs reference");
  std::mt19937_64 rng(24237);
  std::vector<std::pair<Rational, Rational>> pairs{{1, 1}, {-2, make_rational(-1, 2)}, {make_rational(3, 4), make_rational(4, 3)}};
  while (pairs.size() < 20)
    pairs.emplace_back(make_rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1),
                       make_rational(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 4) + 1));
  for (const auto &[l, m] : pairs) {
    bool full = node_rank(l, m).rank == 4;
    o.require(full == (l * m != 1), "node rank at (" + l.get_str() + ", " + m.get_str() + ")");
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::vector<QuadraticForm> forms;
  for (int i = 1; i <= 3; ++i)
    forms.push_back(read_qf(data("net" + std::to_string(i) + ".qf")));
  Poly d = net_of_quadrics(forms).discriminant();
  o.require(d.is_homogeneous() && d.total_degree() == 6, "det(b) homogeneous of degree 6, got " + d.str());
  return o;
}

Outcome criterion7() {
  Outcome o;
  auto q = binary_family();
  auto ctx = CliffordContext::make(q);
  auto w = Subbundle::standard(q.base(), 4, {0});
  auto p = spinor_phi(ctx, w, 1), next = spinor_phi(ctx, w, 2);
  PolyMatrix bad = p.phi;
  bad(0, 0) += Poly::variable(p.ring, "x1");
  auto f = verify_matrix_factorization(q, p.ring, bad, next.phi);
  o.require(!f.ok && !f.entry.empty(), "perturbed phi not caught");
  bool rejected = false;
  try {
    clifford_ideal(ctx, Subbundle::standard(q.base(), 4, {2}), 0, Side::left);
  } catch (const PreconditionError &) {
    rejected = true;
  }
  o.require(rejected, "non-isotropic W accepted");
  std::vector<std::vector<Rational>> script{{1, 2, 1}, {2, 1, 3}};
  std::size_t k = 0;
  auto pts = sample_off(q.base(), det(q.bilinear_matrix()), 1, 0, [&] { return script.at(k++); });
  o.require(pts.size() == 1 && pts[0].rejections == 1 && pts[0].values == script[1], "S1 sample not resampled");
  return o;
}

Outcome criterion8() {
  Outcome o;
  std::string cmd = std::string(QK_CLI) + " verify " + data("example35.qf") + " --suite all";
  FILE *pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    o.require(false, "cannot run " + cmd);
    return o;
  }
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
    out.append(buf, n);
  int status = pclose(pipe);
  o.require(status == 0, "exit status " + std::to_string(status));
  o.require(out.find("verify all: PASS") != std::string::npos, "no PASS summary");
  return o;
}

} // namespace

int main() {
  struct Criterion {
    int id;
    double limit;
    std::string name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> all{
      {1, 5, "binary family reproduction", criterion1},  {2, 10, "matrix factorizations", criterion2},
      {3, 10, "Clifford algebra suite", criterion3}, {4, 20, "Clifford ideal suite", criterion4},
      {5, 5, "lines scheme and node rank", criterion5}, {6, 5, "net of quadrics", criterion6},
      {7, 0, "negative controls", criterion7},       {8, 60, "verify --suite all", criterion8},
  };
  int failures = 0;
  for (const auto &c : all) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit <= 0 || secs < c.limit;
    bool pass = o.ok && in_time;
    failures += !pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << c.id << ": " << (pass ? "PASS" : "FAIL") << "  " << c.name << "  (" << secs << " s";
    if (c.limit > 0)
      line << ", limit " << c.limit << " s";
    line << ")";
    if (!in_time)
      line << "  over time limit";
    if (!o.ok)
      line << "  " << o.detail;
    std::cout << line.str() << std::endl;
  }
  return failures ? 1 : 0;
}
