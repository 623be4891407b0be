#pragma once

// Command-line front end. run_cli() is the whole program; tools/quadrikit.cpp
// only forwards argv and the standard streams.

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "clifford.hpp"
#include "cliffmod.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "parse.hpp"
#include "qffile.hpp"
#include "report.hpp"
#include "suites.hpp"

namespace quadrikit {

inline constexpr std::uint64_t default_cli_seed = 24237;

enum ExitCode : int { exit_ok = 0, exit_parse = 2, exit_precondition = 3, exit_verification = 4 };

namespace cli {

using Json = nlohmann::ordered_json;

inline std::string split_comma_list(const std::string &s, std::vector<std::string> &out, char sep) {
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(detail::trim(cur));
  return s;
}

// "(1, 0, b, 0)" or "1,0,b,0"
inline Vector parse_vector(const std::string &text, const QuadraticForm &q) {
  std::string t = detail::trim(text);
  if (!t.empty() && t.front() == '(' && t.back() == ')')
    t = t.substr(1, t.size() - 2);
  std::vector<std::string> parts;
  split_comma_list(t, parts, ',');
  if (parts.size() != q.rank())
    throw ParseError("vector '" + text + "' has " + std::to_string(parts.size()) + " entries, expected " +
                     std::to_string(q.rank()));
  Vector v;
  for (const auto &p : parts)
    v.push_back(parse_poly(p, q.base()));
  return v;
}

// "" or "0": zero subbundle; "e1,e3": standard span; "1,0,0,0;0,0,1,0": explicit vectors.
inline Subbundle parse_subbundle(const std::string &text, const QuadraticForm &q) {
  std::string t = detail::trim(text);
  if (t.empty() || t == "0")
    return Subbundle::empty(q.base(), q.rank());
  static const std::regex standard(R"(\s*e\d+\s*(,\s*e\d+\s*)*)");
  std::vector<Vector> vs;
  if (std::regex_match(t, standard)) {
    std::vector<std::string> parts;
    split_comma_list(t, parts, ',');
    for (const auto &p : parts) {
      std::size_t i = std::stoul(p.substr(1));
      if (i == 0 || i > q.rank())
        throw ParseError("generator '" + p + "' out of range");
      vs.push_back(unit_vector(q.base(), q.rank(), i - 1));
    }
  } else {
    std::vector<std::string> parts;
    split_comma_list(t, parts, ';');
    for (const auto &p : parts)
      vs.push_back(parse_vector(p, q));
  }
  return Subbundle(q.base(), q.rank(), std::move(vs));
}

inline Side parse_side(const std::string &s) {
  if (s == "left")
    return Side::left;
  if (s == "right")
    return Side::right;
  throw ParseError("side must be left or right");
}

inline Json strings(const std::vector<Poly> &ps) {
  Json a = Json::array();
  for (const auto &p : ps)
    a.push_back(p.str());
  return a;
}

inline Json matrix_json(const PolyMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json r = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      r.push_back(m(i, j).str());
    rows.push_back(r);
  }
  return rows;
}

inline Json report_list(const std::vector<VerificationReport> &reps) {
  Json a = Json::array();
  for (const auto &r : reps)
    a.push_back(r.to_json());
  return a;
}

struct Options {
  bool json = false;
  std::uint64_t seed = default_cli_seed;
  std::size_t samples = 5;
  unsigned jobs = 1;

  SampleOptions sample_options() const { return {samples, seed, jobs}; }
};

// Every command returns its JSON document plus the human text.
struct Output {
  Json doc;
  std::string text;
  int code = exit_ok;
};

inline Json envelope(const std::string &command) {
  Json j;
  j["command"] = command;
  return j;
}

inline Output cmd_degeneration(const std::string &input, std::size_t k) {
  auto q = read_qf(input);
  if (k == 0 || k > q.rank())
    throw PreconditionError("--k must satisfy 1 <= k <= " + std::to_string(q.rank()));
  auto ideal = degeneration_locus(q, k);
  Output o{envelope("degeneration")};
  o.doc["input"] = input;
  o.doc["form"] = q.str();
  o.doc["k"] = k;
  o.doc["generators"] = strings(ideal.generators());
  o.doc["groebner_basis"] = strings(ideal.groebner_basis());
  o.doc["ideal"] = ideal.reduced_str();
  o.doc["unit"] = ideal.is_unit();
  o.text = ideal.reduced_str() + "\n";
  return o;
}

inline Output cmd_reduce(const std::string &input, const std::string &v_text, const std::string &w_text) {
  auto q = read_qf(input);
  Vector v = parse_vector(v_text, q);
  Vector w = w_text.empty() ? hyperbolic_pair(q, v) : parse_vector(w_text, q);
  auto split = hyperbolic_reduce(q, v, w);
  auto pres = reduction_presentation(split);
  Output o{envelope("reduce")};
  o.doc["input"] = input;
  o.doc["form"] = q.str();
  o.doc["v"] = vector_str(split.v);
  o.doc["w"] = vector_str(split.w);
  o.doc["transform"] = matrix_json(split.transform);
  o.doc["reduced_form"] = split.reduced.str();
  o.doc["reduced_rank"] = split.reduced.rank();
  o.doc["presentation"] = pres.str();
  std::ostringstream os;
  os << "q = " << q.str() << "\n"
     << "v = " << vector_str(split.v) << "\n"
     << "w = " << vector_str(split.w) << "\n"
     << "T =\n"
     << split.transform.str() << "\n"
     << "q_bar = " << split.reduced.str() << "\n"
     << "Z: " << pres.str() << "\n";
  o.text = os.str();
  return o;
}

inline Output cmd_clifford(const std::string &input, std::optional<int> table, bool center,
                           const std::string &trace_expr) {
  auto q = read_qf(input);
  auto ctx = CliffordContext::make(q);
  int modes = (table ? 1 : 0) + (center ? 1 : 0) + (trace_expr.empty() ? 0 : 1);
  if (modes != 1)
    throw PreconditionError("clifford needs exactly one of --table, --center, --trace");
  Output o{envelope("clifford")};
  o.doc["input"] = input;
  o.doc["form"] = q.str();
  std::ostringstream os;
  if (table) {
    auto basis = ctx->graded_basis(*table);
    Json list = Json::array();
    os << "B_" << *table << ": " << basis.size() << " basis monomials\n";
    for (const auto &k : basis) {
      list.push_back(blade_str(k));
      os << "  " << blade_str(k) << "\n";
    }
    o.doc["mode"] = "table";
    o.doc["degree"] = *table;
    o.doc["rank"] = basis.size();
    o.doc["basis"] = list;
  } else if (center) {
    auto c = center_element(ctx);
    Poly detb = det(q.bilinear_matrix());
    o.doc["mode"] = "center";
    o.doc["omega"] = c.omega.str();
    o.doc["alpha"] = c.alpha.str();
    o.doc["beta"] = c.beta.str();
    o.doc["relation"] = c.relation_str();
    o.doc["discriminant"] = c.discriminant().str();
    o.doc["det_bilinear"] = detb.str();
    os << "omega = " << c.omega.str() << "\n"
       << "relation: " << c.relation_str() << "\n"
       << "discriminant: " << c.discriminant().str() << "\n";
    // d = mu (2 omega + alpha) squares to +-det(b_q) when the ratio is a rational square.
    std::optional<Rational> mu;
    Poly target = detb;
    for (const Poly &t : {detb, -detb})
      if ((mu = completing_square_scale(c, t))) {
        target = t;
        break;
      }
    if (mu) {
      std::string d = "d = " + Rational(*mu).get_str() + "*(2w + alpha)";
      o.doc["completed_square"] = {{"scale", Rational(*mu).get_str()}, {"d_squared", target.str()}};
      os << "completed square: " << d << ", d^2 = " << target.str() << "\n";
    } else {
      o.doc["completed_square"] = nullptr;
      os << "completed square: discriminant is not a rational square multiple of det(b_q) = " << detb.str()
         << "\n";
    }
  } else {
    auto x = parse_element(trace_expr, ctx);
    Poly t = trace(x);
    o.doc["mode"] = "trace";
    o.doc["element"] = x.str();
    o.doc["trace"] = t.str();
    os << "tr(" << x.str() << ") = " << t.str() << "\n";
  }
  o.text = os.str();
  return o;
}

inline Json ideal_json(const IdealBasis &b) {
  Json j;
  j["W"] = b.W.str();
  j["degree"] = b.degree;
  j["side"] = side_name(b.side);
  j["rank"] = b.generators.size();
  j["expected_rank"] = b.expected_rank();
  Json gens = Json::array();
  for (const auto &g : b.generators)
    gens.push_back(g.str());
  j["generators"] = gens;
  Json pts = Json::array();
  for (const auto &s : b.certified_at)
    pts.push_back(s.str());
  j["certified_at"] = pts;
  return j;
}

inline Output cmd_ideal(const std::string &input, const std::string &w_text, int n, const std::string &side,
                        const Options &opt) {
  auto q = read_qf(input);
  auto ctx = CliffordContext::make(q);
  auto b = clifford_ideal(ctx, parse_subbundle(w_text, q), n, parse_side(side), generic_seed, opt.samples);
  Output o{envelope("ideal")};
  o.doc["input"] = input;
  o.doc["form"] = q.str();
  o.doc["ideal"] = ideal_json(b);
  o.text = b.str();
  return o;
}

inline Output cmd_spinor(const std::string &input, const std::string &w_text, int n, const std::string &side) {
  auto q = read_qf(input);
  auto ctx = CliffordContext::make(q);
  auto w = parse_subbundle(w_text, q);
  Side s = parse_side(side);
  auto p = spinor_phi(ctx, w, n, s);
  auto next = spinor_phi(ctx, w, n + 1, s);
  auto check = verify_matrix_factorization(q, p, next);
  Output o{envelope("spinor")};
  o.doc["input"] = input;
  o.doc["form"] = q.str();
  o.doc["W"] = w.str();
  o.doc["n"] = n;
  o.doc["side"] = side_name(s);
  o.doc["ring"] = p.ring->variables();
  o.doc["rows"] = p.phi.rows();
  o.doc["cols"] = p.phi.cols();
  o.doc["phi"] = matrix_json(p.phi);
  o.doc["factorization"] = {{"pass", check.ok}, {"detail", check.ok ? "" : check.str()}};
  std::ostringstream os;
  os << "phi_" << n << " (" << side_name(s) << ", W = " << w.str() << "), " << p.phi.rows() << "x" << p.phi.cols()
     << ":\n"
     << p.phi.str() << "\n"
     << "phi_" << n + 1 << " phi_" << n << " = q l Id: " << (check.ok ? "PASS" : "FAIL " + check.str()) << "\n";
  o.text = os.str();
  o.code = check.ok ? exit_ok : exit_verification;
  return o;
}

inline Output cmd_lines(const std::string &input) {
  auto q = read_qf(input);
  auto chart = lines_chart(q);
  Output o{envelope("lines")};
  o.doc["input"] = input;
  o.doc["form"] = q.str();
  o.doc["ring"] = chart.ring->variables();
  o.doc["generators"] = strings(chart.generators);
  o.doc["presentation"] = chart.str();
  o.text = chart.serialize() + "\n";
  return o;
}

inline Output cmd_node_rank(const std::string &lambda_text, const std::string &mu_text) {
  Rational lambda = parse_rational(lambda_text), mu = parse_rational(mu_text);
  auto r = node_rank(lambda, mu);
  bool degenerate = lambda * mu == 1;
  Output o{envelope("node-rank")};
  o.doc["lambda"] = lambda.get_str();
  o.doc["mu"] = mu.get_str();
  o.doc["rank"] = r.rank;
  o.doc["degenerate"] = degenerate;
  o.doc["reduced_equation"] = r.reduced.str();
  o.text = "rank " + std::to_string(r.rank) + (degenerate ? " (degenerate: 1 - lambda*mu = 0)" : "") + "\n";
  return o;
}

inline Output cmd_net(const std::vector<std::string> &inputs) {
  std::vector<QuadraticForm> forms;
  for (const auto &f : inputs)
    forms.push_back(read_qf(f));
  auto net = net_of_quadrics(forms);
  Poly d = net.discriminant();
  bool homogeneous = d.is_homogeneous();
  Output o{envelope("net")};
  o.doc["inputs"] = inputs;
  o.doc["net"] = net.net.str();
  o.doc["discriminant"] = d.str();
  o.doc["degree"] = d.is_zero() ? -1 : d.total_degree();
  o.doc["homogeneous"] = homogeneous;
  std::ostringstream os;
  os << "net = " << net.net.str() << "\n"
     << "det(b) = " << d.str() << "\n"
     << "degree " << (d.is_zero() ? std::string("-inf") : std::to_string(d.total_degree()))
     << (homogeneous ? ", homogeneous" : ", not homogeneous") << "\n";
  o.text = os.str();
  return o;
}

inline Output cmd_fiber(const std::string &input, const std::string &point_text) {
  auto q = read_qf(input);
  std::vector<std::string> parts;
  std::string t = detail::trim(point_text);
  if (!t.empty() && t.front() == '(' && t.back() == ')')
    t = t.substr(1, t.size() - 2);
  if (!t.empty())
    split_comma_list(t, parts, ',');
  if (parts.size() != q.base()->arity())
    throw ParseError("point needs " + std::to_string(q.base()->arity()) + " coordinates");
  Specialization s{q.base(), {}};
  for (const auto &p : parts)
    s.values.push_back(parse_rational(p));
  auto rep = fiber_report(q, s);
  Output o{envelope("fiber")};
  o.doc["input"] = input;
  o.doc["point"] = rep.point;
  o.doc["corank"] = rep.corank;
  o.doc["label"] = rep.label;
  o.doc["splits"] = rep.splits ? Json(*rep.splits) : Json(nullptr);
  Json planes = Json::array();
  std::ostringstream os;
  os << rep.point << ": corank " << rep.corank << ", " << rep.label << "\n";
  for (const auto &p : rep.planes) {
    planes.push_back({{"equation", p.equation_str(q.fiber_names())}, {"isotropic", p.isotropic}});
    os << "  plane " << p.equation_str(q.fiber_names()) << (p.isotropic ? " (isotropic)" : "") << "\n";
  }
  o.doc["planes"] = planes;
  o.doc["note"] = rep.note;
  if (!rep.note.empty())
    os << "  " << rep.note << "\n";
  o.text = os.str();
  return o;
}

inline Output cmd_verify(const std::string &input, const std::string &suite, const std::vector<std::string> &ws,
                         const Options &opt) {
  auto q = read_qf(input);
  auto ctx = CliffordContext::make(q);
  SuiteOptions so{opt.sample_options(), {}};
  for (const auto &w : ws)
    so.subbundles.push_back(parse_subbundle(w, q));
  auto reps = run_suite(suite, ctx, so);
  std::size_t failed = 0;
  for (const auto &r : reps)
    failed += r.pass() ? 0 : 1;
  bool pass = failed == 0;
  Output o{envelope("verify")};
  o.doc["input"] = input;
  o.doc["form"] = q.str();
  o.doc["suite"] = suite;
  o.doc["seed"] = opt.seed;
  o.doc["samples"] = opt.samples;
  o.doc["pass"] = pass;
  o.doc["reports"] = report_list(reps);
  std::ostringstream os;
  for (const auto &r : reps)
    os << r.str() << "\n";
  os << "verify " << suite << ": " << (pass ? "PASS" : "FAIL") << " (" << reps.size() - failed << "/" << reps.size()
     << " reports)\n";
  o.text = os.str();
  o.code = pass ? exit_ok : exit_verification;
  return o;
}

} // namespace cli

inline int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  using namespace cli;
  CLI::App app{"quadrikit: quadric bundles, Clifford algebras and spinor matrix factorizations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "quadrikit 0.1.0");

  Options opt;
  auto common = [&opt](CLI::App *sub) {
    sub->add_flag("--json", opt.json, "Emit JSON instead of text");
    sub->add_option("--seed", opt.seed, "Sampling seed")->capture_default_str();
    sub->add_option("--samples", opt.samples, "Number of off-S1 samples")->capture_default_str()->check(
        CLI::Range(1, 1000));
    sub->add_option("--jobs", opt.jobs, "Threads for sample verification")->capture_default_str()->check(
        CLI::Range(1, 256));
  };

  std::function<Output()> action;
  std::string input, v_text, w_text, trace_expr, side = "left", suite = "all", point, lambda, mu;
  std::size_t k = 0;
  int n = 0;
  std::optional<int> table;
  bool center = false;
  std::vector<std::string> inputs, ws;

  auto *deg = app.add_subcommand("degeneration", "Degeneration locus S_k (corank >= k)");
  deg->add_option("input", input, ".qf file")->required();
  deg->add_option("--k", k, "Corank")->required();
  common(deg);
  deg->callback([&] { action = [&] { return cmd_degeneration(input, k); }; });

  auto *red = app.add_subcommand("reduce", "Hyperbolic reduction along an isotropic vector");
  red->add_option("input", input, ".qf file")->required();
  red->add_option("--v", v_text, "Isotropic vector, e.g. 1,0,0,0")->required();
  red->add_option("--w", w_text, "Partner vector with b(v,w) = 1 (default: solved)");
  common(red);
  red->callback([&] { action = [&] { return cmd_reduce(input, v_text, w_text); }; });

  auto *cl = app.add_subcommand("clifford", "Generalized Clifford algebra");
  cl->add_option("input", input, ".qf file")->required();
  cl->add_option("--table", table, "List the monomial basis of B_n");
  cl->add_flag("--center", center, "Center of B_0 (even rank)");
  cl->add_option("--trace", trace_expr, "Trace of an element of B_0, e.g. \"e1*e2*l^-1\"");
  common(cl);
  cl->callback([&] { action = [&] { return cmd_clifford(input, table, center, trace_expr); }; });

  auto *id = app.add_subcommand("ideal", "Clifford ideal I_n^W");
  id->add_option("input", input, ".qf file")->required();
  id->add_option("--W", w_text, "Subbundle: e1,e3 or 1,0,0,0;0,0,1,0 (default 0)");
  id->add_option("--n", n, "Degree")->required();
  id->add_option("--side", side, "left | right")->capture_default_str();
  common(id);
  id->callback([&] { action = [&] { return cmd_ideal(input, w_text, n, side, opt); }; });

  auto *sp = app.add_subcommand("spinor", "Spinor presentation phi_n: I_{n-1}^W(-1) -> I_n^W");
  sp->add_option("input", input, ".qf file")->required();
  sp->add_option("--W", w_text, "Subbundle (default 0)");
  sp->add_option("--n", n, "Degree")->required();
  sp->add_option("--side", side, "left | right")->capture_default_str();
  common(sp);
  sp->callback([&] { action = [&] { return cmd_spinor(input, w_text, n, side); }; });

  auto *li = app.add_subcommand("lines", "Chart of the relative Hilbert scheme of lines (rank 4)");
  li->add_option("input", input, ".qf file")->required();
  common(li);
  li->callback([&] { action = [&] { return cmd_lines(input); }; });

  auto *nr = app.add_subcommand("node-rank", "Rank of the node of M over b = lambda a + mu c");
  nr->add_option("lambda", lambda, "Rational")->required();
  nr->add_option("mu", mu, "Rational")->required();
  common(nr);
  nr->callback([&] { action = [&] { return cmd_node_rank(lambda, mu); }; });

  auto *ne = app.add_subcommand("net", "Net of quadrics sum a_i q_i and its discriminant");
  ne->add_option("inputs", inputs, ".qf files with constant coefficients")->required();
  common(ne);
  ne->callback([&] { action = [&] { return cmd_net(inputs); }; });

  auto *fi = app.add_subcommand("fiber", "Fiber type at a rational point of the base (rank 4)");
  fi->add_option("input", input, ".qf file")->required();
  fi->add_option("--point", point, "Base coordinates, e.g. 0,0,0")->required();
  common(fi);
  fi->callback([&] { action = [&] { return cmd_fiber(input, point); }; });

  auto *ve = app.add_subcommand("verify", "Run a verification suite");
  ve->add_option("input", input, ".qf file")->required();
  ve->add_option("--suite", suite, "mulisolem | coklem | flag | duality | matrix-factorization | all")
      ->capture_default_str()
      ->check(CLI::IsMember(suite_names()));
  ve->add_option("--W", ws, "Subbundles to test (repeatable; default: 0, isotropic e_i and isotropic pairs)");
  common(ve);
  ve->callback([&] { action = [&] { return cmd_verify(input, suite, ws, opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError &e) {
    app.exit(e, out, err);
    return exit_parse;
  }

  try {
    Output o = action();
    if (opt.json) {
      o.doc["exit_code"] = o.code;
      out << o.doc.dump(2) << "\n";
    } else {
      out << o.text;
    }
    return o.code;
  } catch (const ParseError &e) {
    err << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const PreconditionError &e) {
    err << "precondition failed: " << e.what() << "\n";
    return exit_precondition;
  } catch (const VerificationError &e) {
    err << "verification failed: " << e.what() << "\n";
    if (!e.witness().empty())
      err << "witness: " << e.witness() << "\n";
    return exit_verification;
  }
}

} // namespace quadrikit
