#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/errors.hpp"
#include "isotropy/exact_matrix.hpp"
#include "isotropy/toeplitz_form.hpp"

namespace isotropy {

/// Right-hand data of C = F X^T F B X: block-diagonal B and C whose r-th
/// diagonal block is T(B_0^r, ..., B_{alpha_r - 1}^r) with symmetric
/// coefficients and nonsingular leading ones.
class CongruenceData {
 public:
  CongruenceData(SegreStructure structure, std::vector<std::vector<ExactMatrix>> b,
                 std::vector<std::vector<ExactMatrix>> c)
      : structure_(std::move(structure)), b_(std::move(b)), c_(std::move(c)) {
    check(b_, "B");
    check(c_, "C");
  }

  /// B = C = I.
  static CongruenceData identity(const SegreStructure& s) {
    std::vector<ExactMatrix> diag;
    for (std::size_t r = 0; r < s.parts(); ++r) diag.push_back(ExactMatrix::identity(s.m(r)));
    return constant(s, diag);
  }

  /// B = C with B_0^r = b_diag[r] and all higher coefficients zero.
  static CongruenceData constant(const SegreStructure& s, const std::vector<ExactMatrix>& b_diag) {
    if (b_diag.size() != s.parts()) throw InputError("need one diagonal block per part");
    std::vector<std::vector<ExactMatrix>> coeffs(s.parts());
    for (std::size_t r = 0; r < s.parts(); ++r) {
      coeffs[r].assign(s.alpha(r), ExactMatrix(s.m(r), s.m(r)));
      coeffs[r][0] = b_diag[r];
    }
    return CongruenceData(s, coeffs, coeffs);
  }

  const SegreStructure& structure() const { return structure_; }
  const ExactMatrix& b(std::size_t r, std::size_t j) const { return b_.at(r).at(j); }
  const ExactMatrix& c(std::size_t r, std::size_t j) const { return c_.at(r).at(j); }
  const std::vector<std::vector<ExactMatrix>>& b_coeffs() const { return b_; }
  const std::vector<std::vector<ExactMatrix>>& c_coeffs() const { return c_; }
  bool b_equals_c() const { return b_ == c_; }

  ToeplitzForm b_form() const { return as_form(b_); }
  ToeplitzForm c_form() const { return as_form(c_); }

 private:
  void check(const std::vector<std::vector<ExactMatrix>>& coeffs, const std::string& name) const {
    if (coeffs.size() != structure_.parts())
      throw InputError(name + " needs " + std::to_string(structure_.parts()) + " diagonal blocks");
    for (std::size_t r = 0; r < coeffs.size(); ++r) {
      if (coeffs[r].size() != structure_.alpha(r))
        throw InputError(name + " block " + std::to_string(r + 1) + " needs " + std::to_string(structure_.alpha(r)) +
                         " coefficients");
      for (std::size_t j = 0; j < coeffs[r].size(); ++j) {
        const ExactMatrix& x = coeffs[r][j];
        const std::string label = name + "_" + std::to_string(j) + "^" + std::to_string(r + 1);
        if (x.rows() != structure_.m(r) || x.cols() != structure_.m(r))
          throw InputError(label + " must be " + std::to_string(structure_.m(r)) + "x" + std::to_string(structure_.m(r)));
        if (!x.is_symmetric()) throw InputError(label + " is not symmetric");
      }
      if (!is_nonsingular(coeffs[r][0])) throw InputError(name + "_0^" + std::to_string(r + 1) + " is singular");
    }
  }

  ToeplitzForm as_form(const std::vector<std::vector<ExactMatrix>>& coeffs) const {
    ToeplitzForm tf(structure_);
    for (std::size_t r = 0; r < structure_.parts(); ++r)
      for (std::size_t j = 0; j < coeffs[r].size(); ++j) tf.set(r, r, j, coeffs[r][j]);
    return tf;
  }

  SegreStructure structure_;
  std::vector<std::vector<ExactMatrix>> b_, c_;
};

/// Free data of the general solution (0-based indices):
///   sub    (r, s, j), r > s, 0 <= j < alpha_r : A_j^{rs}
///   seeds  r                                 : A_0^{rr}
///   skews  (r, j), 1 <= j < alpha_r           : Z_j^r
/// Missing sub-blocks and skews read as zero, missing seeds as the identity.
struct FreeParams {
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, ExactMatrix> sub;
  std::map<std::size_t, ExactMatrix> seeds;
  std::map<std::pair<std::size_t, std::size_t>, ExactMatrix> skews;

  ExactMatrix sub_block(const SegreStructure& s, std::size_t r, std::size_t c, std::size_t j) const {
    auto it = sub.find({r, c, j});
    return it == sub.end() ? ExactMatrix(s.m(r), s.m(c)) : it->second;
  }
  ExactMatrix seed(const SegreStructure& s, std::size_t r) const {
    auto it = seeds.find(r);
    return it == seeds.end() ? ExactMatrix::identity(s.m(r)) : it->second;
  }
  ExactMatrix skew(const SegreStructure& s, std::size_t r, std::size_t j) const {
    auto it = skews.find({r, j});
    return it == skews.end() ? ExactMatrix(s.m(r), s.m(r)) : it->second;
  }

  /// Shapes, index ranges and skew-symmetry.
  void validate(const SegreStructure& s) const {
    auto dims = [](const ExactMatrix& x, std::size_t rows, std::size_t cols, const std::string& what) {
      if (x.rows() != rows || x.cols() != cols)
        throw InputError(what + " must be " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " + x.shape());
    };
    for (const auto& [key, x] : sub) {
      const auto [r, c, j] = key;
      const std::string what = "sub-block " + ToeplitzForm::coeff_name(r, c, j);
      if (r >= s.parts() || c >= r) throw InputError(what + " is not below the block diagonal");
      if (j >= s.coeff_count(r, c)) throw InputError(what + " exceeds the Toeplitz length");
      dims(x, s.m(r), s.m(c), what);
    }
    for (const auto& [r, x] : seeds) {
      if (r >= s.parts()) throw InputError("seed for nonexistent part " + std::to_string(r + 1));
      dims(x, s.m(r), s.m(r), "seed " + std::to_string(r + 1));
    }
    for (const auto& [key, x] : skews) {
      const auto [r, j] = key;
      const std::string what = "skew Z_" + std::to_string(j) + "^" + std::to_string(r + 1);
      if (r >= s.parts() || j == 0 || j >= s.alpha(r)) throw InputError(what + " is out of range");
      dims(x, s.m(r), s.m(r), what);
      if (!x.is_skew()) throw InputError(what + " is not skew-symmetric");
    }
  }
};

/// Solution under construction: coefficients are filled in sweep order and
/// reading one that is not yet determined is a sequencing error.
class PartialSolution {
 public:
  explicit PartialSolution(const SegreStructure& s) : form_(s) {
    const std::size_t n = s.parts();
    known_.resize(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) known_[r * n + c].assign(s.coeff_count(r, c), false);
  }

  static PartialSolution complete(const ToeplitzForm& tf) {
    PartialSolution p(tf.structure());
    p.form_ = tf;
    for (auto& row : p.known_) row.assign(row.size(), true);
    return p;
  }

  const SegreStructure& structure() const { return form_.structure(); }

  void set(std::size_t r, std::size_t s, std::size_t j, ExactMatrix value) {
    form_.set(r, s, j, std::move(value));
    known_[r * form_.parts() + s][j] = true;
  }

  bool known(std::size_t r, std::size_t s, std::size_t j) const { return known_.at(r * form_.parts() + s).at(j); }

  /// Coefficient A_j^{rs}; nullptr when j lies outside the pattern.
  const ExactMatrix* get(std::size_t r, std::size_t s, long j) const {
    if (j < 0 || static_cast<std::size_t>(j) >= form_.structure().coeff_count(r, s)) return nullptr;
    if (!known(r, s, static_cast<std::size_t>(j)))
      throw SequencingError(ToeplitzForm::coeff_name(r, s, static_cast<std::size_t>(j)) + " read before it was determined");
    return &form_.coeff(r, s, static_cast<std::size_t>(j));
  }

  ToeplitzForm finish() const {
    for (std::size_t r = 0; r < form_.parts(); ++r)
      for (std::size_t s = 0; s < form_.parts(); ++s)
        for (std::size_t j = 0; j < form_.coeffs(r, s).size(); ++j)
          if (!known(r, s, j)) throw SequencingError(ToeplitzForm::coeff_name(r, s, j) + " never determined");
    return form_;
  }

 private:
  ToeplitzForm form_;
  std::vector<std::vector<bool>> known_;
};

// ---------------------------------------------------------------------------
// Accumulators
// ---------------------------------------------------------------------------

/// Phi_n^{ks} = sum_{j=0}^{n} B_{n-j}^k A_j^{ks}; zero outside 0 <= n < b_ks.
inline ExactMatrix accum_phi(const CongruenceData& data, const PartialSolution& x, long n, std::size_t k, std::size_t s) {
  const SegreStructure& st = data.structure();
  ExactMatrix acc(st.m(k), st.m(s));
  if (n < 0 || static_cast<std::size_t>(n) >= st.coeff_count(k, s)) return acc;
  for (long j = 0; j <= n; ++j) {
    const ExactMatrix& b = data.b(k, static_cast<std::size_t>(n - j));
    if (b.is_zero()) continue;
    acc += b * *x.get(k, s, j);
  }
  return acc;
}

/// Psi_n^{krs} = sum_{j=0}^{n} (A_j^{kr})^T Phi_{n-j}^{ks}; zero for n < 0.
inline ExactMatrix accum_psi(const CongruenceData& data, const PartialSolution& x, long n, std::size_t k, std::size_t r,
                             std::size_t s) {
  const SegreStructure& st = data.structure();
  ExactMatrix acc(st.m(r), st.m(s));
  for (long j = 0; j <= n; ++j) {
    const ExactMatrix* a = x.get(k, r, j);
    if (!a) break;
    if (a->is_zero()) continue;
    acc += a->transpose() * accum_phi(data, x, n - j, k, s);
  }
  return acc;
}

/// The k = r contribution to coefficient n of block (r, s) with every term
/// containing the unknown A_n^{rs} (and, on the diagonal, its transpose) removed.
inline ExactMatrix accum_xi(const CongruenceData& data, const PartialSolution& x, long n, std::size_t r, std::size_t s) {
  const SegreStructure& st = data.structure();
  ExactMatrix acc(st.m(r), st.m(s));
  const long top = (r == s) ? n - 1 : n;
  for (long j = 1; j <= top; ++j) {
    const ExactMatrix* a = x.get(r, r, j);
    if (!a) break;
    acc += a->transpose() * accum_phi(data, x, n - j, r, s);
  }
  ExactMatrix tail(st.m(r), st.m(s));
  for (long l = 1; l <= n; ++l) {
    const ExactMatrix& b = data.b(r, static_cast<std::size_t>(l));
    if (!b.is_zero()) tail += b * *x.get(r, s, n - l);
  }
  if (!tail.is_zero()) acc += x.get(r, r, 0)->transpose() * tail;
  return acc;
}

/// Theta: parts k below r, each shifted by sigma(r, k, s).
inline ExactMatrix accum_theta(const CongruenceData& data, const PartialSolution& x, long n, std::size_t r, std::size_t s) {
  const SegreStructure& st = data.structure();
  ExactMatrix acc(st.m(r), st.m(s));
  for (std::size_t k = r + 1; k < st.parts(); ++k)
    acc += accum_psi(data, x, n - static_cast<long>(product_shift(st, r, k, s)), k, r, s);
  return acc;
}

/// Lambda: parts k above r (larger Jordan sizes), shifted by alpha_k - alpha_r.
inline ExactMatrix accum_lambda(const CongruenceData& data, const PartialSolution& x, long n, std::size_t r,
                                std::size_t s) {
  const SegreStructure& st = data.structure();
  ExactMatrix acc(st.m(r), st.m(s));
  for (std::size_t k = 0; k < r; ++k)
    acc += accum_psi(data, x, n - static_cast<long>(st.alpha(k) - st.alpha(r)), k, r, s);
  return acc;
}

inline ExactMatrix accum_d(const CongruenceData& data, const PartialSolution& x, long n, std::size_t r, std::size_t s) {
  return accum_xi(data, x, n, r, s) + accum_theta(data, x, n, r, s) + accum_lambda(data, x, n, r, s);
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct CongruenceReport {
  bool holds = false;
  std::string detail;  ///< first mismatching coefficient, empty when holds
};

/// Exact test of C = F X^T F B X, both coefficientwise and on the dense
/// assemblies.
inline CongruenceReport verify_congruence(const CongruenceData& data, const ToeplitzForm& x) {
  require_same_blocks(x, ToeplitzForm(data.structure()));
  const ToeplitzForm lhs = flip_transpose(x) * data.b_form() * x;
  const ToeplitzForm rhs = data.c_form();
  for (std::size_t r = 0; r < x.parts(); ++r)
    for (std::size_t s = 0; s < x.parts(); ++s)
      for (std::size_t j = 0; j < lhs.coeffs(r, s).size(); ++j)
        if (lhs.coeff(r, s, j) != rhs.coeff(r, s, j))
          return {false, "coefficient " + ToeplitzForm::coeff_name(r, s, j) + " of F X^T F B X differs from C"};
  const SegreStructure& st = data.structure();
  const ExactMatrix f = build_F(st);
  const ExactMatrix dense = assemble(x);
  if (f * dense.transpose() * f * assemble(data.b_form()) * dense != assemble(rhs))
    return {false, "dense product F X^T F B X differs from C"};
  return {true, ""};
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

/// Dimension of the solution space: sum_r alpha_r m_r ((m_r - 1)/2 + sum_{s<r} m_s).
inline std::size_t solution_dimension(const SegreStructure& s) {
  std::size_t dim = 0;
  for (std::size_t r = 0; r < s.parts(); ++r) {
    std::size_t below = 0;
    for (std::size_t c = 0; c < r; ++c) below += s.m(c);
    dim += s.alpha(r) * (s.m(r) * (s.m(r) - 1) / 2 + s.m(r) * below);
  }
  return dim;
}

/// Scalar coordinates carried by FreeParams excluding the seeds.
inline std::size_t free_parameter_count(const SegreStructure& s) {
  std::size_t count = 0;
  for (std::size_t r = 0; r < s.parts(); ++r) {
    for (std::size_t c = 0; c < r; ++c) count += s.alpha(r) * s.m(r) * s.m(c);
    count += (s.alpha(r) - 1) * s.m(r) * (s.m(r) - 1) / 2;
  }
  return count;
}

/// Dimension of the manifold the seeds range over when B = C.
inline std::size_t seed_dimension(const SegreStructure& s) {
  std::size_t d = 0;
  for (std::size_t r = 0; r < s.parts(); ++r) d += s.m(r) * (s.m(r) - 1) / 2;
  return d;
}

inline ToeplitzForm solve_congruence(const CongruenceData& data, const FreeParams& params) {
  const SegreStructure& st = data.structure();
  params.validate(st);
  const std::size_t parts = st.parts();
  if (!data.b_equals_c())
    for (std::size_t r = 0; r < parts; ++r)
      if (!params.seeds.count(r))
        throw InputError("seed " + std::to_string(r + 1) + " must be supplied when B differs from C");

  PartialSolution x(st);
  for (std::size_t r = 0; r < parts; ++r)
    for (std::size_t c = 0; c < r; ++c)
      for (std::size_t j = 0; j < st.coeff_count(r, c); ++j) x.set(r, c, j, params.sub_block(st, r, c, j));

  std::vector<ExactMatrix> m_inv(parts);
  for (std::size_t r = 0; r < parts; ++r) {
    ExactMatrix seed = params.seed(st, r);
    if (seed.transpose() * data.b(r, 0) * seed != data.c(r, 0))
      throw InputError("seed " + std::to_string(r + 1) + " violates C_0 = A_0^T B_0 A_0");
    // (A_0^T B_0)^{-1} = A_0 C_0^{-1}
    m_inv[r] = seed * inverse(data.c(r, 0));
    x.set(r, r, 0, std::move(seed));
  }

  const ExactScalar half(make_rational(1, 2));
  for (std::size_t n = 0; n < st.max_alpha(); ++n)
    for (std::size_t p = 0; p < parts; ++p)
      for (std::size_t r = 0; r + p < parts; ++r) {
        const std::size_t s = r + p;
        if (n >= st.alpha(s) || (n == 0 && p == 0)) continue;
        const long ln = static_cast<long>(n);
        const ExactMatrix d = accum_d(data, x, ln, r, s);
        if (p == 0) {
          ExactMatrix rhs = data.c(r, n) - d;
          if (!rhs.is_symmetric())
            throw IntegrityError("C_n - D_n is not symmetric at " + ToeplitzForm::coeff_name(r, r, n));
          x.set(r, r, n, m_inv[r] * (half * rhs + params.skew(st, r, n)));
        } else {
          x.set(r, s, n, m_inv[r] * (ExactMatrix(st.m(r), st.m(s)) - d));
        }
      }

  ToeplitzForm result = x.finish();
  CongruenceReport report = verify_congruence(data, result);
  if (!report.holds) throw IntegrityError("solver residual: " + report.detail);
  return result;
}

}  // namespace isotropy
