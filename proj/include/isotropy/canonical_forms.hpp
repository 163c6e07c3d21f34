#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "isotropy/errors.hpp"
#include "isotropy/exact_matrix.hpp"

namespace isotropy {

/// One Jordan size alpha occurring with multiplicity m.
struct SegreBlock {
  std::size_t alpha = 0;
  std::size_t m = 0;
  friend bool operator==(const SegreBlock&, const SegreBlock&) = default;
};

/// Eigenvalue lambda with Jordan sizes alpha_1 > ... > alpha_N and
/// multiplicities m_r; encodes S = (+)_r (+)_{j <= m_r} K_{alpha_r}(lambda).
///
/// The constructor normalises its input: duplicate sizes are merged (their
/// multiplicities add) and sizes are sorted descending. Zero sizes or
/// multiplicities are rejected. All indices below are 0-based.
class SegreStructure {
 public:
  SegreStructure(ExactScalar lambda, std::vector<SegreBlock> blocks) : lambda_(std::move(lambda)) {
    std::map<std::size_t, std::size_t, std::greater<>> merged;
    for (const auto& b : blocks) {
      if (b.alpha == 0) throw InputError("Jordan size alpha must be positive");
      if (b.m == 0) throw InputError("multiplicity m must be positive");
      merged[b.alpha] += b.m;
    }
    if (merged.empty()) throw InputError("a Segre structure needs at least one block");
    for (const auto& [alpha, m] : merged) blocks_.push_back({alpha, m});
    offsets_.push_back(0);
    for (const auto& b : blocks_) offsets_.push_back(offsets_.back() + b.alpha * b.m);
  }

  const ExactScalar& lambda() const { return lambda_; }
  const std::vector<SegreBlock>& blocks() const { return blocks_; }
  std::size_t parts() const { return blocks_.size(); }
  std::size_t alpha(std::size_t r) const { return blocks_.at(r).alpha; }
  std::size_t m(std::size_t r) const { return blocks_.at(r).m; }
  std::size_t max_alpha() const { return blocks_.front().alpha; }
  /// Ambient size n = sum alpha_r m_r.
  std::size_t size() const { return offsets_.back(); }
  /// First dense index of part r.
  std::size_t offset(std::size_t r) const { return offsets_.at(r); }
  /// Number of Toeplitz coefficients of block (r, s): min(alpha_r, alpha_s).
  std::size_t coeff_count(std::size_t r, std::size_t s) const { return std::min(alpha(r), alpha(s)); }
  /// Leading zero block columns of block (r, s) in the rectangular pattern.
  std::size_t column_offset(std::size_t r, std::size_t s) const {
    return alpha(s) > alpha(r) ? alpha(s) - alpha(r) : 0;
  }

  SegreStructure with_lambda(ExactScalar lambda) const {
    SegreStructure copy = *this;
    copy.lambda_ = std::move(lambda);
    return copy;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t r = 0; r < blocks_.size(); ++r)
      out += (r ? "," : "") + std::string("(") + std::to_string(alpha(r)) + "," + std::to_string(m(r)) + ")";
    return out + "]";
  }

  friend bool operator==(const SegreStructure& x, const SegreStructure& y) {
    return x.lambda_ == y.lambda_ && x.blocks_ == y.blocks_;
  }

 private:
  ExactScalar lambda_;
  std::vector<SegreBlock> blocks_;
  std::vector<std::size_t> offsets_;
};

/// Several Segre structures with pairwise distinct eigenvalues.
class MultiSegreStructure {
 public:
  explicit MultiSegreStructure(std::vector<SegreStructure> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InputError("a multi-structure needs at least one part");
    for (std::size_t i = 0; i < parts_.size(); ++i)
      for (std::size_t j = i + 1; j < parts_.size(); ++j)
        if (parts_[i].lambda() == parts_[j].lambda())
          throw InputError("duplicate eigenvalue " + format_scalar(parts_[i].lambda()) + " across parts");
  }

  const std::vector<SegreStructure>& parts() const { return parts_; }
  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& p : parts_) n += p.size();
    return n;
  }

 private:
  std::vector<SegreStructure> parts_;
};

// ---------------------------------------------------------------------------
// Elementary builders
// ---------------------------------------------------------------------------

inline ExactMatrix jordan_block(std::size_t n, const ExactScalar& lambda) {
  if (n == 0) throw InputError("Jordan block size must be positive");
  ExactMatrix j(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    j(k, k) = lambda;
    if (k + 1 < n) j(k, k + 1) = ExactScalar(1);
  }
  return j;
}

/// Backward identity E_n (ones on the anti-diagonal).
inline ExactMatrix backward_identity(std::size_t n) {
  ExactMatrix e(n, n);
  for (std::size_t k = 0; k < n; ++k) e(k, n - 1 - k) = ExactScalar(1);
  return e;
}

/// P_alpha = (I + i E) / sqrt(2). Satisfies P^2 = i E and P^{-1} = conj(P).
inline ExactMatrix transition_P(std::size_t alpha) {
  if (alpha == 0) throw InputError("alpha must be positive");
  ExactMatrix p = ExactMatrix::identity(alpha) + ExactScalar::i() * backward_identity(alpha);
  p *= ExactScalar::inv_sqrt2();
  if (p * p != ExactScalar::i() * backward_identity(alpha)) throw IntegrityError("P^2 != iE");
  return p;
}

inline ExactMatrix transition_P_inverse(std::size_t alpha) { return transition_P(alpha).conj(); }

/// Independent entrywise build of K_n(lambda):
/// lambda I + (N + N^T)/2 + (i/2) M, with M = -1 on the anti-diagonal just
/// above the main anti-diagonal and +1 just below it.
inline ExactMatrix symmetric_block_entrywise(std::size_t n, const ExactScalar& lambda) {
  if (n == 0) throw InputError("block size must be positive");
  const ExactScalar half(make_rational(1, 2));
  const ExactScalar half_i(Rational(0), make_rational(1, 2));
  ExactMatrix k(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      ExactScalar v;
      if (r == c) v += lambda;
      if (r + 1 == c || c + 1 == r) v += half;
      if (r + c + 2 == n) v -= half_i;
      if (r + c == n) v += half_i;
      k(r, c) = v;
    }
  return k;
}

/// K_n(lambda) = P_n J_n(lambda) P_n^{-1}; cross-checked against the
/// entrywise formula.
inline ExactMatrix symmetric_block(std::size_t n, const ExactScalar& lambda) {
  ExactMatrix k = transition_P(n) * jordan_block(n, lambda) * transition_P_inverse(n);
  if (!k.is_symmetric()) throw IntegrityError("K_n(lambda) is not symmetric");
  if (k != symmetric_block_entrywise(n, lambda)) throw IntegrityError("P J P^{-1} disagrees with the entrywise K_n");
  if (lambda.is_gaussian())
    for (const auto& x : k.entries())
      if (!x.is_gaussian()) throw IntegrityError("sqrt(2) failed to cancel in K_n(lambda)");
  return k;
}

/// Permutation Omega_{alpha,m}: column i*m + j is e_{j*alpha + i}. Right
/// multiplication gathers equal Jordan positions across the m copies.
inline ExactMatrix omega_perm(std::size_t alpha, std::size_t m) {
  if (alpha == 0 || m == 0) throw InputError("alpha and m must be positive");
  ExactMatrix w(alpha * m, alpha * m);
  for (std::size_t i = 0; i < alpha; ++i)
    for (std::size_t j = 0; j < m; ++j) w(j * alpha + i, i * m + j) = ExactScalar(1);
  return w;
}

// ---------------------------------------------------------------------------
// Structure-level builders (direct sums in structure order)
// ---------------------------------------------------------------------------

namespace detail {

template <class PerBlock>
ExactMatrix per_copy_sum(const SegreStructure& s, PerBlock&& make) {
  std::vector<ExactMatrix> parts;
  for (const auto& b : s.blocks())
    for (std::size_t j = 0; j < b.m; ++j) parts.push_back(make(b.alpha));
  return direct_sum(parts);
}

}  // namespace detail

inline ExactMatrix build_S(const SegreStructure& s) {
  std::vector<ExactMatrix> distinct;
  for (const auto& b : s.blocks()) distinct.push_back(symmetric_block(b.alpha, s.lambda()));
  std::vector<ExactMatrix> parts;
  for (std::size_t r = 0; r < s.parts(); ++r)
    for (std::size_t j = 0; j < s.m(r); ++j) parts.push_back(distinct[r]);
  return direct_sum(parts);
}

inline ExactMatrix build_J(const SegreStructure& s) {
  return detail::per_copy_sum(s, [&](std::size_t a) { return jordan_block(a, s.lambda()); });
}

/// E = (+)_r (+)_j E_{alpha_r}, in dense (Jordan-block) coordinates.
inline ExactMatrix build_E(const SegreStructure& s) {
  return detail::per_copy_sum(s, [](std::size_t a) { return backward_identity(a); });
}

inline ExactMatrix build_P(const SegreStructure& s) {
  return detail::per_copy_sum(s, [](std::size_t a) { return transition_P(a); });
}

inline ExactMatrix build_P_inverse(const SegreStructure& s) {
  return detail::per_copy_sum(s, [](std::size_t a) { return transition_P_inverse(a); });
}

inline ExactMatrix build_Omega(const SegreStructure& s) {
  std::vector<ExactMatrix> parts;
  for (const auto& b : s.blocks()) parts.push_back(omega_perm(b.alpha, b.m));
  return direct_sum(parts);
}

/// F = (+)_r E_{alpha_r}(I_{m_r}): alpha_r x alpha_r block anti-diagonal of
/// identities. Equals Omega^T E Omega.
inline ExactMatrix build_F(const SegreStructure& s) {
  std::vector<ExactMatrix> parts;
  for (const auto& b : s.blocks()) {
    ExactMatrix f(b.alpha * b.m, b.alpha * b.m);
    for (std::size_t i = 0; i < b.alpha; ++i)
      f.set_block(i * b.m, (b.alpha - 1 - i) * b.m, ExactMatrix::identity(b.m));
    parts.push_back(std::move(f));
  }
  return direct_sum(parts);
}

inline ExactMatrix build_S(const MultiSegreStructure& ms) {
  std::vector<ExactMatrix> parts;
  for (const auto& p : ms.parts()) parts.push_back(build_S(p));
  return direct_sum(parts);
}

}  // namespace isotropy
