#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/congruence_solver.hpp"
#include "isotropy/errors.hpp"
#include "isotropy/exact_matrix.hpp"
#include "isotropy/toeplitz_form.hpp"

namespace isotropy {

// ---------------------------------------------------------------------------
// Catalan coefficients a_n = -C(2n, n) / ((n + 1) 2^{2n+1})
// ---------------------------------------------------------------------------

inline Rational catalan_coeff(std::size_t n) {
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * n, n);
  mpz_class den = mpz_class(n + 1);
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 2 * n + 1);
  Rational q(-binom, den);
  q.canonicalize();
  return q;
}

/// a_0 = -1/2, a_n = -1/2 sum_{j<n} a_j a_{n-1-j}; returns a_0 .. a_n.
inline std::vector<Rational> catalan_recursive(std::size_t n) {
  std::vector<Rational> a{make_rational(-1, 2)};
  for (std::size_t k = 1; k <= n; ++k) {
    Rational sum = 0;
    for (std::size_t j = 0; j < k; ++j) sum += a[j] * a[k - 1 - j];
    a.push_back(Rational(-sum / 2));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Block-diagonal generators
// ---------------------------------------------------------------------------

using SkewMap = std::map<std::pair<std::size_t, std::size_t>, ExactMatrix>;

inline std::vector<ExactMatrix> identity_blocks(const SegreStructure& s) {
  std::vector<ExactMatrix> out;
  for (std::size_t r = 0; r < s.parts(); ++r) out.push_back(ExactMatrix::identity(s.m(r)));
  return out;
}

inline void check_b_diag(const SegreStructure& s, const std::vector<ExactMatrix>& b_diag) {
  if (b_diag.size() != s.parts()) throw InputError("need one B block per part");
  for (std::size_t r = 0; r < s.parts(); ++r) {
    if (b_diag[r].rows() != s.m(r) || !b_diag[r].is_square())
      throw InputError("B block " + std::to_string(r + 1) + " has the wrong size");
    if (!b_diag[r].is_symmetric()) throw InputError("B block " + std::to_string(r + 1) + " is not symmetric");
    if (!is_nonsingular(b_diag[r])) throw InputError("B block " + std::to_string(r + 1) + " is singular");
  }
}

inline bool satisfies_congruence(const ToeplitzForm& g, const std::vector<ExactMatrix>& b_diag) {
  return verify_congruence(CongruenceData::constant(g.structure(), b_diag), g).holds;
}

/// V with V_0 = I, V_1 = B^{-1} Z_1 / 2 and
/// V_{n+1} = B^{-1} (Z_{n+1} - sum_{j=1}^{n} V_j^T B V_{n+1-j}) / 2.
inline ToeplitzForm gen_V(const SegreStructure& s, const std::vector<ExactMatrix>& b_diag, const SkewMap& skews) {
  check_b_diag(s, b_diag);
  FreeParams check;
  check.skews = skews;
  check.validate(s);
  const ExactScalar half(make_rational(1, 2));
  ToeplitzForm v = ToeplitzForm::identity(s);
  for (std::size_t r = 0; r < s.parts(); ++r) {
    const ExactMatrix& b = b_diag[r];
    const ExactMatrix b_inv = inverse(b);
    for (std::size_t n = 1; n < s.alpha(r); ++n) {
      ExactMatrix acc = check.skew(s, r, n);
      for (std::size_t j = 1; j < n; ++j) acc -= v.coeff(r, r, j).transpose() * b * v.coeff(r, r, n - j);
      v.set(r, r, n, half * (b_inv * acc));
    }
  }
  if (!satisfies_congruence(v, b_diag)) throw IntegrityError("gen_V output violates its congruence");
  return v;
}

inline ToeplitzForm gen_W(const SegreStructure& s, const SkewMap& skews) { return gen_V(s, identity_blocks(s), skews); }

/// Inverse of the gen_V recursion: the skews that reproduce a block-diagonal
/// unipotent V, Z_{n+1} = 2 B V_{n+1} + sum_{j=1}^{n} V_j^T B V_{n+1-j}.
inline SkewMap skews_of(const ToeplitzForm& v, const std::vector<ExactMatrix>& b_diag) {
  const SegreStructure& s = v.structure();
  SkewMap out;
  for (std::size_t r = 0; r < s.parts(); ++r) {
    const ExactMatrix& b = b_diag[r];
    for (std::size_t n = 1; n < s.alpha(r); ++n) {
      ExactMatrix z = ExactScalar(2) * (b * v.coeff(r, r, n));
      for (std::size_t j = 1; j < n; ++j) z += v.coeff(r, r, j).transpose() * b * v.coeff(r, r, n - j);
      if (!z.is_skew()) throw InputError("diagonal coefficients do not come from skew-symmetric data");
      if (!z.is_zero()) out[{r, n}] = std::move(z);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Two-block generators
// ---------------------------------------------------------------------------

/// K^k_{p,t}(F) (0-based p < t): F (m_t x m_p) is coefficient k of block
/// (t, p), G = -B_p^{-1} F^T B_t coefficient k of block (p, t), and the
/// diagonal blocks carry a_{n-1} (B_p^{-1} F^T B_t F)^n and
/// a_{n-1} (F B_p^{-1} F^T B_t)^n at coefficient n (2k + alpha_p - alpha_t).
/// Its inverse is the same construction with -F.
inline ToeplitzForm gen_G(const SegreStructure& s, std::size_t p, std::size_t t, std::size_t k, const ExactMatrix& f,
                          const std::vector<ExactMatrix>& b_diag) {
  check_b_diag(s, b_diag);
  if (!(p < t && t < s.parts()))
    throw InputError("two-block generator needs 1 <= p < t <= " + std::to_string(s.parts()));
  if (k >= s.alpha(t)) throw InputError("k must satisfy 0 <= k <= alpha_t - 1 = " + std::to_string(s.alpha(t) - 1));
  if (f.rows() != s.m(t) || f.cols() != s.m(p))
    throw InputError("F must be " + std::to_string(s.m(t)) + "x" + std::to_string(s.m(p)) + ", got " + f.shape());
  ToeplitzForm g = ToeplitzForm::identity(s);
  if (f.is_zero()) return g;
  const ExactMatrix bp_inv = inverse(b_diag[p]);
  const ExactMatrix& bt = b_diag[t];
  const ExactMatrix g_coeff = -(bp_inv * f.transpose() * bt);
  g.set(t, p, k, f);
  g.set(p, t, k, g_coeff);
  const std::size_t step = 2 * k + s.alpha(p) - s.alpha(t);
  const ExactMatrix top = bp_inv * f.transpose() * bt * f;
  const ExactMatrix bottom = f * bp_inv * f.transpose() * bt;
  ExactMatrix top_pow = top, bottom_pow = bottom;
  for (std::size_t n = 1; n * step < s.alpha(p); ++n) {
    const ExactScalar a(catalan_coeff(n - 1));
    g.set(p, p, n * step, a * top_pow);
    if (n * step < s.alpha(t)) g.set(t, t, n * step, a * bottom_pow);
    top_pow = top_pow * top;
    bottom_pow = bottom_pow * bottom;
  }
  if (!satisfies_congruence(g, b_diag)) throw IntegrityError("two-block generator violates its congruence");
  return g;
}

struct TwoBlockPair {
  ExactMatrix d;
  ExactMatrix d_inverse;
};

/// Standalone D^k_{alpha,beta}(F) on two parts of sizes m_1 = B.rows(),
/// m_2 = C.rows(), with F of size m_2 x m_1, returned densely in
/// Toeplitz coordinates together with its inverse.
inline TwoBlockPair gen_two_block(std::size_t alpha, std::size_t beta, std::size_t k, const ExactMatrix& f,
                                  const ExactMatrix& b, const ExactMatrix& c) {
  if (!(alpha > beta && beta >= 1)) throw InputError("two-block generator needs alpha > beta >= 1");
  if (k >= beta) throw InputError("k must satisfy 0 <= k <= beta - 1");
  SegreStructure s(ExactScalar(0), {{alpha, b.rows()}, {beta, c.rows()}});
  const std::vector<ExactMatrix> bc{b, c};
  ToeplitzForm g = gen_G(s, 0, 1, k, f, bc);
  ToeplitzForm g_inv = gen_G(s, 0, 1, k, -f, bc);
  if (g * g_inv != ToeplitzForm::identity(s))
    throw IntegrityError("two-block inverse failed");
  // Cross-check the inverse against B^{-1} F D^T F B.
  const ExactMatrix bd = assemble(CongruenceData::constant(s, bc).b_form());
  const ExactMatrix ff = build_F(s);
  const ExactMatrix dense = assemble(g);
  if (inverse(bd) * ff * dense.transpose() * ff * bd != assemble(g_inv))
    throw IntegrityError("two-block inverse disagrees with B^{-1} F D^T F B");
  return {dense, assemble(g_inv)};
}

// ---------------------------------------------------------------------------
// Generator specs and unipotent factorisation
// ---------------------------------------------------------------------------

struct GeneratorSpec {
  enum class Kind { diagonal_W, two_block_G };
  Kind kind = Kind::diagonal_W;
  SkewMap skews;         // diagonal_W
  std::size_t p = 0;     // two_block_G, 0-based
  std::size_t t = 0;
  std::size_t k = 0;
  ExactMatrix f;

  static GeneratorSpec diagonal(SkewMap z) {
    GeneratorSpec g;
    g.skews = std::move(z);
    return g;
  }
  static GeneratorSpec two_block(std::size_t p, std::size_t t, std::size_t k, ExactMatrix f) {
    GeneratorSpec g;
    g.kind = Kind::two_block_G;
    g.p = p;
    g.t = t;
    g.k = k;
    g.f = std::move(f);
    return g;
  }

  friend bool operator==(const GeneratorSpec&, const GeneratorSpec&) = default;
};

/// gen_V for diagonal specs (so B = I gives gen_W), gen_G for two-block ones.
inline ToeplitzForm build_generator(const SegreStructure& s, const GeneratorSpec& spec,
                                    const std::vector<ExactMatrix>& b_diag) {
  if (spec.kind == GeneratorSpec::Kind::diagonal_W) return gen_V(s, b_diag, spec.skews);
  return gen_G(s, spec.p, spec.t, spec.k, spec.f, b_diag);
}

inline ToeplitzForm build_generator(const SegreStructure& s, const GeneratorSpec& spec) {
  return build_generator(s, spec, identity_blocks(s));
}

struct Factorization {
  ToeplitzForm v;                     ///< block-diagonal factor
  SkewMap v_skews;                    ///< data reproducing v through gen_V
  std::vector<GeneratorSpec> chain;   ///< Y = v * chain[0] * chain[1] * ...
};

inline ToeplitzForm multiply_out(const Factorization& fz, const std::vector<ExactMatrix>& b_diag) {
  ToeplitzForm y = fz.v;
  for (const auto& g : fz.chain) y = y * build_generator(fz.v.structure(), g, b_diag);
  return y;
}

/// Peel two-block generators off a unipotent solution Y of F Y^T F B Y = B.
/// Sub-diagonal coefficients are cleared column by column; inside a column
/// by dense column position, and at equal position from the bottom row up.
inline Factorization factor_unipotent(const ToeplitzForm& y, const std::vector<ExactMatrix>& b_diag) {
  const SegreStructure& s = y.structure();
  check_b_diag(s, b_diag);
  if (!y.is_unipotent()) throw InputError("factor_unipotent needs identity diagonal seeds");
  if (!satisfies_congruence(y, b_diag)) throw InputError("input does not satisfy the congruence F Y^T F B Y = B");

  ToeplitzForm work = y;
  std::vector<GeneratorSpec> peeled;
  const std::size_t parts = s.parts();
  for (std::size_t p = 0; p + 1 < parts; ++p)
    for (std::size_t c = s.alpha(p) - s.alpha(p + 1); c < s.alpha(p); ++c)
      for (std::size_t t = parts - 1; t > p; --t) {
        const std::size_t shift = s.alpha(p) - s.alpha(t);
        if (c < shift) continue;
        const std::size_t k = c - shift;
        const ExactMatrix f = work.coeff(t, p, k);
        if (f.is_zero()) continue;
        work = work * gen_G(s, p, t, k, -f, b_diag);
        if (!work.coeff(t, p, k).is_zero()) throw IntegrityError("elimination step left a nonzero coefficient");
        peeled.push_back(GeneratorSpec::two_block(p, t, k, f));
      }
  if (!work.is_block_diagonal()) throw IntegrityError("elimination did not reach a block-diagonal factor");

  Factorization fz{work, skews_of(work, b_diag), {peeled.rbegin(), peeled.rend()}};
  if (gen_V(s, b_diag, fz.v_skews) != fz.v) throw IntegrityError("block-diagonal factor is not of gen_V form");
  if (multiply_out(fz, b_diag) != y) throw IntegrityError("factorisation does not multiply back to the input");
  return fz;
}

}  // namespace isotropy
