#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/errors.hpp"
#include "isotropy/exact_matrix.hpp"

namespace isotropy {

/// N x N block matrix whose (r, s) block is a rectangular block
/// upper-triangular Toeplitz matrix: [0 T] when alpha_r < alpha_s, [T; 0]
/// when alpha_r > alpha_s, T when equal, with T = T(A_0, ..., A_{b-1}),
/// b = min(alpha_r, alpha_s) and every A_j of size m_r x m_s.
///
/// Only the coefficient lists are stored. The dense embedding (in the
/// Omega-permuted coordinates, block row i of part r holding Jordan
/// position i of all m_r copies) is produced by assemble().
class ToeplitzForm {
 public:
  explicit ToeplitzForm(SegreStructure structure) : structure_(std::move(structure)) {
    const std::size_t n = structure_.parts();
    coeffs_.resize(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        coeffs_[r * n + s].assign(structure_.coeff_count(r, s), ExactMatrix(structure_.m(r), structure_.m(s)));
  }

  static ToeplitzForm identity(const SegreStructure& structure) {
    ToeplitzForm tf(structure);
    for (std::size_t r = 0; r < structure.parts(); ++r) tf.set(r, r, 0, ExactMatrix::identity(structure.m(r)));
    return tf;
  }

  const SegreStructure& structure() const { return structure_; }
  std::size_t parts() const { return structure_.parts(); }

  const std::vector<ExactMatrix>& coeffs(std::size_t r, std::size_t s) const { return coeffs_.at(index(r, s)); }

  const ExactMatrix& coeff(std::size_t r, std::size_t s, std::size_t j) const {
    const auto& list = coeffs(r, s);
    if (j >= list.size()) throw InputError(coeff_name(r, s, j) + " is outside the Toeplitz pattern");
    return list[j];
  }

  void set(std::size_t r, std::size_t s, std::size_t j, ExactMatrix value) {
    auto& list = coeffs_.at(index(r, s));
    if (j >= list.size()) throw InputError(coeff_name(r, s, j) + " is outside the Toeplitz pattern");
    if (value.rows() != structure_.m(r) || value.cols() != structure_.m(s))
      throw InputError(coeff_name(r, s, j) + " must be " + std::to_string(structure_.m(r)) + "x" +
                       std::to_string(structure_.m(s)) + ", got " + value.shape());
    list[j] = std::move(value);
  }

  /// Coefficient, or nullopt for indices outside [0, b_rs).
  const ExactMatrix* find(std::size_t r, std::size_t s, long j) const {
    const auto& list = coeffs(r, s);
    if (j < 0 || static_cast<std::size_t>(j) >= list.size()) return nullptr;
    return &list[static_cast<std::size_t>(j)];
  }

  bool is_block_diagonal() const {
    for (std::size_t r = 0; r < parts(); ++r)
      for (std::size_t s = 0; s < parts(); ++s)
        if (r != s)
          for (const auto& a : coeffs(r, s))
            if (!a.is_zero()) return false;
    return true;
  }

  /// Identity leading coefficient on every diagonal block.
  bool is_unipotent() const {
    for (std::size_t r = 0; r < parts(); ++r)
      if (!coeff(r, r, 0).is_identity()) return false;
    return true;
  }

  friend bool operator==(const ToeplitzForm& x, const ToeplitzForm& y) {
    return x.structure_.blocks() == y.structure_.blocks() && x.coeffs_ == y.coeffs_;
  }
  friend bool operator!=(const ToeplitzForm& x, const ToeplitzForm& y) { return !(x == y); }

  static std::string coeff_name(std::size_t r, std::size_t s, std::size_t j) {
    return "A_" + std::to_string(j) + "^(" + std::to_string(r + 1) + "," + std::to_string(s + 1) + ")";
  }

 private:
  std::size_t index(std::size_t r, std::size_t s) const {
    if (r >= parts() || s >= parts()) throw InputError("block index out of range");
    return r * parts() + s;
  }

  SegreStructure structure_;
  std::vector<std::vector<ExactMatrix>> coeffs_;
};

inline void require_same_blocks(const ToeplitzForm& a, const ToeplitzForm& b) {
  if (a.structure().blocks() != b.structure().blocks())
    throw InputError("Toeplitz forms have different structures " + a.structure().to_string() + " vs " +
                     b.structure().to_string());
}

// ---------------------------------------------------------------------------
// Dense embedding
// ---------------------------------------------------------------------------

inline ExactMatrix assemble(const ToeplitzForm& tf) {
  const SegreStructure& s = tf.structure();
  ExactMatrix out(s.size(), s.size());
  for (std::size_t r = 0; r < s.parts(); ++r)
    for (std::size_t c = 0; c < s.parts(); ++c) {
      const std::size_t shift = s.column_offset(r, c);
      const auto& list = tf.coeffs(r, c);
      for (std::size_t i = 0; i < s.alpha(r); ++i)
        for (std::size_t j = 0; j < list.size(); ++j) {
          const std::size_t col_block = i + j + shift;
          if (col_block >= s.alpha(c)) break;
          out.set_block(s.offset(r) + i * s.m(r), s.offset(c) + col_block * s.m(c), list[j]);
        }
    }
  return out;
}

/// Read the coefficients back from a dense matrix; every entry is checked
/// against the pattern and the first offending one is reported.
inline ToeplitzForm toeplitz_extract(const ExactMatrix& m, const SegreStructure& s) {
  if (m.rows() != s.size() || m.cols() != s.size())
    throw InputError("matrix " + m.shape() + " does not match structure size " + std::to_string(s.size()));
  ToeplitzForm tf(s);
  for (std::size_t r = 0; r < s.parts(); ++r)
    for (std::size_t c = 0; c < s.parts(); ++c) {
      const std::size_t shift = s.column_offset(r, c);
      const std::size_t b = s.coeff_count(r, c);
      for (std::size_t j = 0; j < b; ++j)
        tf.set(r, c, j, m.block(s.offset(r), s.offset(c) + (j + shift) * s.m(c), s.m(r), s.m(c)));
    }
  ExactMatrix rebuilt = assemble(tf);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (rebuilt(i, j) != m(i, j))
        throw ShapeViolation("entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                             ") = " + format_scalar(m(i, j)) + " violates the block Toeplitz pattern (expected " +
                             format_scalar(rebuilt(i, j)) + ")");
  return tf;
}

enum class OmegaDirection { to_toeplitz, to_dense };

/// to_toeplitz: Omega^T X Omega ; to_dense: Omega X Omega^T.
inline ExactMatrix conjugate_by_omega(const ExactMatrix& x, const SegreStructure& s, OmegaDirection dir) {
  if (x.rows() != s.size() || x.cols() != s.size())
    throw InputError("matrix " + x.shape() + " does not match structure size " + std::to_string(s.size()));
  // Permutation as an index map: Omega column p holds e_{perm[p]}.
  std::vector<std::size_t> perm(s.size());
  for (std::size_t r = 0; r < s.parts(); ++r)
    for (std::size_t i = 0; i < s.alpha(r); ++i)
      for (std::size_t j = 0; j < s.m(r); ++j)
        perm[s.offset(r) + i * s.m(r) + j] = s.offset(r) + j * s.alpha(r) + i;
  ExactMatrix out(s.size(), s.size());
  for (std::size_t p = 0; p < s.size(); ++p)
    for (std::size_t q = 0; q < s.size(); ++q) {
      if (dir == OmegaDirection::to_toeplitz)
        out(p, q) = x(perm[p], perm[q]);
      else
        out(perm[p], perm[q]) = x(p, q);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra on coefficient lists
// ---------------------------------------------------------------------------

/// Shift sigma(r,k,s) = off(r,k) + off(k,s) - off(r,s) >= 0 with which
/// products of block (r,k) and block (k,s) land in block (r,s).
inline std::size_t product_shift(const SegreStructure& s, std::size_t r, std::size_t k, std::size_t c) {
  return s.column_offset(r, k) + s.column_offset(k, c) - s.column_offset(r, c);
}

inline ToeplitzForm toeplitz_mul(const ToeplitzForm& a, const ToeplitzForm& b) {
  require_same_blocks(a, b);
  const SegreStructure& s = a.structure();
  const std::size_t n = s.parts();
  ToeplitzForm out(s);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < s.coeff_count(r, c); ++d) {
        ExactMatrix acc(s.m(r), s.m(c));
        for (std::size_t k = 0; k < n; ++k) {
          const long top = static_cast<long>(d) - static_cast<long>(product_shift(s, r, k, c));
          for (long j = 0; j <= top; ++j) {
            const ExactMatrix* x = a.find(r, k, j);
            const ExactMatrix* y = b.find(k, c, top - j);
            if (x && y && !x->is_zero() && !y->is_zero()) acc += *x * *y;
          }
        }
        out.set(r, c, d, std::move(acc));
      }
  return out;
}

inline ToeplitzForm operator*(const ToeplitzForm& a, const ToeplitzForm& b) { return toeplitz_mul(a, b); }

inline ToeplitzForm toeplitz_combine(const ToeplitzForm& a, const ToeplitzForm& b, int sign) {
  require_same_blocks(a, b);
  ToeplitzForm out = a;
  const std::size_t n = a.parts();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t j = 0; j < a.coeffs(r, c).size(); ++j)
        out.set(r, c, j, sign > 0 ? a.coeff(r, c, j) + b.coeff(r, c, j) : a.coeff(r, c, j) - b.coeff(r, c, j));
  return out;
}

inline ToeplitzForm operator+(const ToeplitzForm& a, const ToeplitzForm& b) { return toeplitz_combine(a, b, +1); }
inline ToeplitzForm operator-(const ToeplitzForm& a, const ToeplitzForm& b) { return toeplitz_combine(a, b, -1); }

/// F X^T F: block (r,s) gets the transposed coefficients of block (s,r).
inline ToeplitzForm flip_transpose(const ToeplitzForm& x) {
  ToeplitzForm out(x.structure());
  for (std::size_t r = 0; r < x.parts(); ++r)
    for (std::size_t s = 0; s < x.parts(); ++s)
      for (std::size_t j = 0; j < x.coeffs(s, r).size(); ++j) out.set(r, s, j, x.coeff(s, r, j).transpose());
  return out;
}

/// Twice the smallest weight j + |alpha_r - alpha_s| / 2 over the nonzero
/// coefficients A_j^{rs}; nullopt for the zero form. Weights add under
/// multiplication, every coefficient has weight at most alpha_1 - 1, and a
/// form with zero diagonal seeds has weight at least 1/2.
inline std::optional<std::size_t> doubled_weight(const ToeplitzForm& x) {
  std::optional<std::size_t> best;
  const SegreStructure& s = x.structure();
  for (std::size_t r = 0; r < x.parts(); ++r)
    for (std::size_t c = 0; c < x.parts(); ++c) {
      const std::size_t gap = s.alpha(r) > s.alpha(c) ? s.alpha(r) - s.alpha(c) : s.alpha(c) - s.alpha(r);
      for (std::size_t j = 0; j < x.coeffs(r, c).size(); ++j)
        if (!x.coeff(r, c, j).is_zero()) {
          const std::size_t w = 2 * j + gap;
          if (!best || w < *best) best = w;
          break;
        }
    }
  return best;
}

/// Inverse of I + N for a form with identity diagonal seeds, by the
/// terminating Neumann series I - N + N^2 - ... (N is nilpotent, N^{2 alpha_1 - 1} = 0).
inline ToeplitzForm unipotent_inverse(const ToeplitzForm& u) {
  if (!u.is_unipotent()) throw InputError("unipotent_inverse needs identity diagonal seeds");
  const ToeplitzForm id = ToeplitzForm::identity(u.structure());
  const ToeplitzForm nil = u - id;
  ToeplitzForm sum = id;
  ToeplitzForm term = id;
  const std::size_t bound = 2 * u.structure().max_alpha();
  for (std::size_t k = 1; k <= bound; ++k) {
    term = term * nil;
    if (!doubled_weight(term)) break;
    sum = (k % 2 == 1) ? sum - term : sum + term;
  }
  if (sum * u != id) throw IntegrityError("Neumann series failed to invert a unipotent form");
  return sum;
}

// ---------------------------------------------------------------------------
// Commutant of J = (+)(+) J_{alpha_r}(lambda)
// ---------------------------------------------------------------------------

/// Number of free Toeplitz coefficients: sum_{r,s} m_r m_s min(alpha_r, alpha_s).
inline std::size_t commutant_dimension(const SegreStructure& s) {
  std::size_t dim = 0;
  for (std::size_t r = 0; r < s.parts(); ++r)
    for (std::size_t c = 0; c < s.parts(); ++c) dim += s.m(r) * s.m(c) * s.coeff_count(r, c);
  return dim;
}

/// Dense matrix X (Jordan-block coordinates) commuting with J, built from
/// an arbitrary assignment of every Toeplitz coefficient.
inline ExactMatrix commutant_element(const ToeplitzForm& assignment) {
  return conjugate_by_omega(assemble(assignment), assignment.structure(), OmegaDirection::to_dense);
}

struct CommutantBasis {
  SegreStructure structure;
  std::size_t dimension = 0;

  ExactMatrix build(const ToeplitzForm& assignment) const {
    require_same_blocks(assignment, ToeplitzForm(structure));
    return commutant_element(assignment);
  }

  /// One dense element per scalar coefficient entry (unit assignment).
  std::vector<ExactMatrix> elements() const {
    std::vector<ExactMatrix> out;
    for (std::size_t r = 0; r < structure.parts(); ++r)
      for (std::size_t c = 0; c < structure.parts(); ++c)
        for (std::size_t j = 0; j < structure.coeff_count(r, c); ++j)
          for (std::size_t a = 0; a < structure.m(r); ++a)
            for (std::size_t b = 0; b < structure.m(c); ++b) {
              ToeplitzForm unit(structure);
              ExactMatrix e(structure.m(r), structure.m(c));
              e(a, b) = ExactScalar(1);
              unit.set(r, c, j, std::move(e));
              out.push_back(commutant_element(unit));
            }
    return out;
  }
};

inline CommutantBasis commutant_basis(const SegreStructure& s) { return {s, commutant_dimension(s)}; }

}  // namespace isotropy
