#pragma once

// Named verification suites over a quadratic form, shared by the command
// line tool and the tests.

#include <string>
#include <vector>

#include "cliffmod.hpp"
#include "report.hpp"

namespace quadrikit {

inline const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names{"mulisolem", "coklem", "flag", "duality", "matrix-factorization", "all"};
  return names;
}

// W = 0, every span(e_i) with q(e_i) = 0, and every isotropic span(e_i, e_j).
inline std::vector<Subbundle> default_subbundles(const QuadraticForm &q) {
  const auto &base = q.base();
  const std::size_t n = q.rank();
  std::vector<Subbundle> out{Subbundle::empty(base, n)};
  for (std::size_t i = 0; i < n; ++i)
    if (q.coeff(i, i).is_zero() && n >= 2)
      out.push_back(Subbundle::standard(base, n, {i}));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (q.coeff(i, i).is_zero() && q.coeff(j, j).is_zero() && q.coeff(i, j).is_zero() && n >= 3)
        out.push_back(Subbundle::standard(base, n, {i, j}));
  return out;
}

struct SuiteOptions {
  SampleOptions samples;
  std::vector<Subbundle> subbundles; // empty: default_subbundles
};

inline VerificationReport matrix_factorization_report(const CliffordContextPtr &ctx, const Subbundle &w,
                                                      const SampleOptions &opts) {
  VerificationReport rep{"matrix-factorization", "W = " + w.str()};
  std::vector<SpinorPresentation> phis;
  for (int n = 0; n <= 3; ++n)
    phis.push_back(spinor_phi(ctx, w, n));
  for (int n = 0; n <= 2; ++n) {
    auto check = verify_matrix_factorization(ctx->form(), phis[n], phis[n + 1]);
    std::string size = std::to_string(phis[n].phi.rows()) + "x" + std::to_string(phis[n].phi.cols());
    rep.exact.push_back({"phi_" + std::to_string(n + 1) + " phi_" + std::to_string(n) + " = q l Id (" + size + ")",
                         check.ok, check.ok ? "" : check.str()});
  }
  auto off = verify_off_quadric(phis[1], opts);
  rep.samples = off.samples;
  return rep;
}

inline std::vector<VerificationReport> run_suite(const std::string &name, const CliffordContextPtr &ctx,
                                                 const SuiteOptions &opts) {
  auto subs = opts.subbundles.empty() ? default_subbundles(ctx->form()) : opts.subbundles;
  const auto &so = opts.samples;
  std::vector<VerificationReport> out;
  bool all = name == "all";
  bool known = false;
  if (all || name == "mulisolem") {
    known = true;
    for (const auto &w : subs)
      for (auto [m, n] : {std::pair{0, 0}, {1, 0}, {1, 1}, {2, 0}})
        out.push_back(verify_multiplication_iso(ctx, w, m, n, so));
  }
  if (all || name == "coklem") {
    known = true;
    for (const auto &w : subs)
      for (int n : {0, 1})
        out.push_back(verify_cokernel_sequence(ctx, w, n, so));
  }
  if (all || name == "flag") {
    known = true;
    for (const auto &w : subs)
      if (w.rank() >= 1)
        for (int n : {0, 1})
          out.push_back(verify_flag_sequence(ctx, w, n, so));
  }
  if (all || name == "duality") {
    known = true;
    if (ctx->rank() % 2 == 0)
      for (const auto &w : subs)
        for (int k : {0, 1})
          out.push_back(verify_duality(ctx, w, k, so));
  }
  if (all || name == "matrix-factorization") {
    known = true;
    for (const auto &w : subs)
      out.push_back(matrix_factorization_report(ctx, w, so));
  }
  if (!known)
    throw PreconditionError("unknown suite '" + name + "'");
  return out;
}

} // namespace quadrikit
