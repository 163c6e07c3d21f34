#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/congruence_solver.hpp"
#include "isotropy/errors.hpp"
#include "isotropy/exact_matrix.hpp"
#include "isotropy/toeplitz_form.hpp"

namespace isotropy {

/// One family of free data in a generator recipe (0-based indices).
struct GeneratorRecipe {
  enum class Kind { diagonal_W, two_block_G };
  Kind kind;
  std::size_t r = 0;  ///< W: part
  std::size_t j = 0;  ///< W: coefficient index of Z_j
  std::size_t p = 0, t = 0;
  std::size_t k_max = 0;  ///< G: k ranges over 0..k_max
  std::size_t rows = 0, cols = 0;  ///< shape of Z or F
};

struct IsotropyDescription {
  SegreStructure structure;
  std::size_t dimension = 0;
  std::vector<std::size_t> reductive_part;  ///< O_{m_r} factor sizes
  std::size_t unipotent_order_bound = 0;    ///< alpha_1 - 1
  std::size_t nilpotency_class_bound = 0;   ///< alpha_1
  std::size_t nilpotency_index_bound = 0;   ///< (U - I)^{2 alpha_1 - 1} = 0 for every U in the unipotent part
  bool full_orthogonal = false;             ///< alpha_1 = 1: the group is O_{m_1}
  std::vector<GeneratorRecipe> generator_recipes;
};

struct MultiIsotropyDescription {
  std::vector<IsotropyDescription> parts;
  std::size_t total_dimension = 0;
};

inline IsotropyDescription describe_isotropy(const SegreStructure& s) {
  IsotropyDescription d{s, 0, {}, 0, 0, 0, false, {}};
  d.dimension = solution_dimension(s);
  for (const auto& b : s.blocks()) d.reductive_part.push_back(b.m);
  d.unipotent_order_bound = s.max_alpha() - 1;
  d.nilpotency_class_bound = s.max_alpha();
  d.nilpotency_index_bound = 2 * s.max_alpha() - 1;
  d.full_orthogonal = s.max_alpha() == 1;
  for (std::size_t r = 0; r < s.parts(); ++r)
    for (std::size_t j = 1; j < s.alpha(r); ++j)
      if (s.m(r) > 1) d.generator_recipes.push_back({GeneratorRecipe::Kind::diagonal_W, r, j, 0, 0, 0, s.m(r), s.m(r)});
  for (std::size_t p = 0; p < s.parts(); ++p)
    for (std::size_t t = p + 1; t < s.parts(); ++t)
      d.generator_recipes.push_back({GeneratorRecipe::Kind::two_block_G, 0, 0, p, t, s.alpha(t) - 1, s.m(t), s.m(p)});
  return d;
}

inline MultiIsotropyDescription describe_isotropy(const MultiSegreStructure& ms) {
  MultiIsotropyDescription out;
  for (const auto& part : ms.parts()) {
    out.parts.push_back(describe_isotropy(part));
    out.total_dimension += out.parts.back().dimension;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

struct MembershipReport {
  bool member = false;
  bool orthogonal = false;
  bool preserves_s = false;
  std::string detail;
};

inline MembershipReport verify_membership(const ExactMatrix& s, const ExactMatrix& q) {
  MembershipReport rep;
  if (q.rows() != s.rows() || q.cols() != s.cols()) {
    rep.detail = "Q is " + q.shape() + " but S is " + s.shape();
    return rep;
  }
  const ExactMatrix qt = q.transpose();
  rep.orthogonal = (qt * q).is_identity();
  rep.preserves_s = qt * s * q == s;
  rep.member = rep.orthogonal && rep.preserves_s;
  if (!rep.orthogonal)
    rep.detail = "Q^T Q != I";
  else if (!rep.preserves_s)
    rep.detail = "Q^T S Q != S";
  return rep;
}

inline MembershipReport verify_isotropy(const SegreStructure& s, const ExactMatrix& q) { return verify_membership(build_S(s), q); }
inline MembershipReport verify_isotropy(const MultiSegreStructure& ms, const ExactMatrix& q) {
  return verify_membership(build_S(ms), q);
}

// ---------------------------------------------------------------------------
// Passing between Q (S coordinates) and the Toeplitz form of Omega^T P^{-1} Q P Omega
// ---------------------------------------------------------------------------

inline ExactMatrix q_from_form(const ToeplitzForm& x) {
  const SegreStructure& s = x.structure();
  const ExactMatrix dense = conjugate_by_omega(assemble(x), s, OmegaDirection::to_dense);
  return build_P(s) * dense * build_P_inverse(s);
}

inline ToeplitzForm form_from_q(const SegreStructure& s, const ExactMatrix& q) {
  if (q.rows() != s.size() || q.cols() != s.size())
    throw InputError("Q is " + q.shape() + " but the structure has size " + std::to_string(s.size()));
  const ExactMatrix x = build_P_inverse(s) * q * build_P(s);
  return toeplitz_extract(conjugate_by_omega(x, s, OmegaDirection::to_toeplitz), s);
}

/// Sample Q in the isotropy group: solve F X^T F X = I for the given free
/// data, then map back through Omega and P.
inline ExactMatrix sample_isotropy_element(const SegreStructure& s, const FreeParams& params) {
  const ToeplitzForm x = solve_congruence(CongruenceData::identity(s), params);
  ExactMatrix q = q_from_form(x);
  const MembershipReport rep = verify_isotropy(s, q);
  if (!rep.member) throw IntegrityError("sampled element fails membership: " + rep.detail);
  return q;
}

/// Block-diagonal sample across parts with distinct eigenvalues.
inline ExactMatrix sample_isotropy_element(const MultiSegreStructure& ms, const std::vector<FreeParams>& params) {
  if (params.size() != ms.parts().size()) throw InputError("need one parameter set per part");
  std::vector<ExactMatrix> blocks;
  for (std::size_t i = 0; i < params.size(); ++i) blocks.push_back(sample_isotropy_element(ms.parts()[i], params[i]));
  ExactMatrix q = direct_sum(blocks);
  const MembershipReport rep = verify_isotropy(ms, q);
  if (!rep.member) throw IntegrityError("sampled element fails membership: " + rep.detail);
  return q;
}

// ---------------------------------------------------------------------------
// Group operations on Q-level elements
// ---------------------------------------------------------------------------

inline void require_member(const SegreStructure& s, const ExactMatrix& q, const char* what) {
  const MembershipReport rep = verify_isotropy(s, q);
  if (!rep.member) throw InputError(std::string(what) + " is not in the isotropy group: " + rep.detail);
}

inline ExactMatrix group_mul(const SegreStructure& s, const std::vector<ExactMatrix>& elems) {
  ExactMatrix acc = ExactMatrix::identity(s.size());
  for (const auto& q : elems) {
    require_member(s, q, "factor");
    acc = acc * q;
  }
  if (!verify_isotropy(s, acc).member) throw IntegrityError("product left the isotropy group");
  return acc;
}

inline ExactMatrix group_inverse(const SegreStructure& s, const ExactMatrix& q) {
  require_member(s, q, "argument");
  ExactMatrix inv = q.transpose();
  if (!(inv * q).is_identity() || !verify_isotropy(s, inv).member) throw IntegrityError("inverse left the isotropy group");
  return inv;
}

/// Leading diagonal coefficients A_0^{rr}: the image in (+)_r O_{m_r}.
inline std::vector<ExactMatrix> orthogonal_part(const ToeplitzForm& x) {
  std::vector<ExactMatrix> out;
  for (std::size_t r = 0; r < x.parts(); ++r) out.push_back(x.coeff(r, r, 0));
  return out;
}

inline std::vector<ExactMatrix> orthogonal_part(const SegreStructure& s, const ExactMatrix& q) {
  return orthogonal_part(form_from_q(s, q));
}

/// Element of the reductive factor with the given orthogonal blocks.
inline ToeplitzForm orthogonal_form(const SegreStructure& s, const std::vector<ExactMatrix>& seeds) {
  if (seeds.size() != s.parts()) throw InputError("need one orthogonal block per part");
  ToeplitzForm x(s);
  for (std::size_t r = 0; r < s.parts(); ++r) {
    if (!is_orthogonal(seeds[r]) || seeds[r].rows() != s.m(r))
      throw InputError("block " + std::to_string(r + 1) + " is not an orthogonal " + std::to_string(s.m(r)) + "x" +
                       std::to_string(s.m(r)) + " matrix");
    x.set(r, r, 0, seeds[r]);
  }
  return x;
}

/// Unipotent factor V of X = O V with O the reductive part of X.
inline ToeplitzForm unipotent_part(const ToeplitzForm& x) {
  const SegreStructure& s = x.structure();
  std::vector<ExactMatrix> inv;
  for (const auto& o : orthogonal_part(x)) inv.push_back(o.transpose());
  return orthogonal_form(s, inv) * x;
}

/// O V O^{-1}; stays unipotent.
inline ToeplitzForm conjugate_unipotent(const ToeplitzForm& v, const std::vector<ExactMatrix>& seeds) {
  if (!v.is_unipotent()) throw InputError("conjugate_unipotent expects identity diagonal seeds");
  const SegreStructure& s = v.structure();
  std::vector<ExactMatrix> inv;
  for (const auto& o : seeds) inv.push_back(o.transpose());
  ToeplitzForm out = orthogonal_form(s, seeds) * v * orthogonal_form(s, inv);
  if (!out.is_unipotent()) throw IntegrityError("conjugate of a unipotent element is not unipotent");
  return out;
}

}  // namespace isotropy
