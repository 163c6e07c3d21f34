#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/congruence_solver.hpp"
#include "isotropy/exact_matrix.hpp"

namespace isotropy {

/// sum_r alpha_r m_r ((m_r + 1)/2 + sum_{s<r} m_s).
inline std::size_t codim_formula(const SegreStructure& s) {
  std::size_t total = 0;
  for (std::size_t r = 0; r < s.parts(); ++r) {
    std::size_t below = 0;
    for (std::size_t c = 0; c < r; ++c) below += s.m(c);
    total += s.alpha(r) * (s.m(r) * (s.m(r) + 1) / 2 + s.m(r) * below);
  }
  return total;
}

inline std::size_t codim_formula(const MultiSegreStructure& ms) {
  std::size_t total = 0;
  for (const auto& p : ms.parts()) total += codim_formula(p);
  return total;
}

inline std::size_t solution_dimension(const MultiSegreStructure& ms) {
  std::size_t total = 0;
  for (const auto& p : ms.parts()) total += solution_dimension(p);
  return total;
}

struct TangentData {
  std::size_t tangent_dim = 0;
  std::size_t oracle_codim = 0;
  std::size_t kernel_dim = 0;
};

/// Rank of X -> X^T S + S X from skew matrices (strictly upper coordinates)
/// to symmetric ones (upper-triangular coordinates).
inline TangentData tangent_oracle(const ExactMatrix& s) {
  if (!s.is_symmetric()) throw InputError("tangent oracle needs a symmetric matrix");
  const std::size_t n = s.rows();
  const std::size_t skew_dim = n * (n - 1) / 2, sym_dim = n * (n + 1) / 2;
  ExactMatrix op(sym_dim, skew_dim);
  std::size_t col = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++col) {
      ExactMatrix x(n, n);
      x(i, j) = ExactScalar(1);
      x(j, i) = ExactScalar(-1);
      const ExactMatrix image = x.transpose() * s + s * x;
      std::size_t row = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b, ++row) op(row, col) = image(a, b);
    }
  TangentData out;
  out.kernel_dim = skew_dim - rank(op);
  out.tangent_dim = skew_dim - out.kernel_dim;
  out.oracle_codim = sym_dim - out.tangent_dim;
  return out;
}

struct OrbitReport {
  std::string structure;
  std::size_t n = 0;
  std::size_t codim_formula = 0;
  std::size_t isotropy_dim = 0;
  std::size_t tangent_dim = 0;
  std::size_t oracle_codim = 0;
  std::size_t kernel_dim = 0;
  bool consistent = false;
  std::vector<std::string> failures;
};

namespace detail {

inline OrbitReport orbit_report(std::string label, std::size_t n, std::size_t codim, std::size_t dim, const ExactMatrix& s) {
  OrbitReport rep;
  rep.structure = std::move(label);
  rep.n = n;
  rep.codim_formula = codim;
  rep.isotropy_dim = dim;
  const TangentData t = tangent_oracle(s);
  rep.tangent_dim = t.tangent_dim;
  rep.oracle_codim = t.oracle_codim;
  rep.kernel_dim = t.kernel_dim;
  if (codim != n + dim)
    rep.failures.push_back("codim formula " + std::to_string(codim) + " != n + dim = " + std::to_string(n + dim));
  if (codim != t.oracle_codim)
    rep.failures.push_back("codim formula " + std::to_string(codim) + " != tangent codim " + std::to_string(t.oracle_codim));
  if (t.kernel_dim != dim)
    rep.failures.push_back("kernel dim " + std::to_string(t.kernel_dim) + " != solution dimension " + std::to_string(dim));
  rep.consistent = rep.failures.empty();
  return rep;
}

}  // namespace detail

inline OrbitReport consistency_check(const SegreStructure& s) {
  return detail::orbit_report(s.to_string() + " at " + format_scalar(s.lambda()), s.size(), codim_formula(s),
                              solution_dimension(s), build_S(s));
}

inline OrbitReport consistency_check(const MultiSegreStructure& ms) {
  std::string label;
  for (const auto& p : ms.parts()) label += (label.empty() ? "" : " + ") + p.to_string() + " at " + format_scalar(p.lambda());
  return detail::orbit_report(label, ms.size(), codim_formula(ms), solution_dimension(ms), build_S(ms));
}

}  // namespace isotropy
