// Walk through one structure: sample an element, check it, split it into
// its orthogonal and unipotent parts and factor the latter into generators.
#include <iostream>

#include "isotropy/all.hpp"

using namespace isotropy;

int main() {
  const SegreStructure s(parse_scalar("1 + i"), {{3, 2}, {1, 1}});
  std::cout << "structure " << s.to_string() << " at " << format_scalar(s.lambda()) << ", n = " << s.size() << "\n";
  std::cout << "dim Sigma_S = " << solution_dimension(s) << ", codim Orb(S) = " << codim_formula(s) << "\n";

  Rng rng(7);
  const FreeParams fp = random_free_params(s, rng);
  const ExactMatrix q = sample_isotropy_element(s, fp);
  const MembershipReport rep = verify_isotropy(s, q);
  std::cout << "sampled Q: Q^T Q = I " << (rep.orthogonal ? "yes" : "no") << ", Q^T S Q = S "
            << (rep.preserves_s ? "yes" : "no") << "\n";
  std::cout << "Q(1,1) = " << format_scalar(q(0, 0)) << "\n";

  const ToeplitzForm x = form_from_q(s, q);
  const Factorization fz = factor_unipotent(unipotent_part(x), identity_blocks(s));
  std::cout << "unipotent part = V * " << fz.chain.size() << " two-block generators, V from " << fz.v_skews.size()
            << " skew coefficients\n";
  for (const auto& g : fz.chain)
    std::cout << "  G^" << g.k << "_{" << g.p + 1 << "," << g.t + 1 << "}  F = " << format_scalar(g.f(0, 0)) << " ...\n";
  return rep.member ? 0 : 1;
}
