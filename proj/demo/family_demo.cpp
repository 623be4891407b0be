// Walk through the rank 4 family x1*x2 + a*x3^2 + b*x3*x4 + c*x4^2 over Q[a,b,c].

#include <iostream>

#include <quadrikit/quadrikit.hpp>

int main() {
  using namespace quadrikit;
  RingPtr base = make_ring({"a", "b", "c"});
  auto q = QuadraticForm::parse("x1*x2 + a*x3^2 + b*x3*x4 + c*x4^2", base, 4);
  std::cout << "q = " << q.str() << "\n";
  for (std::size_t k = 1; k <= 2; ++k)
    std::cout << "S_" << k << " = " << degeneration_locus(q, k).reduced_str() << "\n";

  auto v = unit_vector(base, 4, 0);
  auto split = hyperbolic_reduce(q, v, hyperbolic_pair(q, v));
  std::cout << "q_bar = " << split.reduced.str() << "\n";
  std::cout << "Z: " << reduction_presentation(split).str() << "\n";

  auto ctx = CliffordContext::make(q);
  auto c = center_element(ctx);
  std::cout << "omega = " << c.omega.str() << "\n" << "relation: " << c.relation_str() << "\n";

  auto w = Subbundle::standard(base, 4, {0});
  auto phi1 = spinor_phi(ctx, w, 1), phi2 = spinor_phi(ctx, w, 2);
  std::cout << "phi_1 =\n" << phi1.phi.str() << "\n";
  std::cout << "phi_2 phi_1 = q l Id: " << (verify_matrix_factorization(q, phi1, phi2).ok ? "yes" : "no") << "\n";
}
