#include <gtest/gtest.h>

#include <string>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/generators.hpp"
#include "isotropy/random.hpp"
#include "isotropy/toeplitz_form.hpp"

using namespace isotropy;

namespace {

ToeplitzForm random_form(const SegreStructure& s, Rng& rng, bool unipotent = false) {
  ToeplitzForm tf(s);
  for (std::size_t r = 0; r < s.parts(); ++r)
    for (std::size_t c = 0; c < s.parts(); ++c)
      for (std::size_t j = 0; j < s.coeff_count(r, c); ++j)
        tf.set(r, c, j, unipotent && r == c && j == 0 ? ExactMatrix::identity(s.m(r)) : rng.matrix(s.m(r), s.m(c)));
  return tf;
}

ExactScalar v(long x) { return ExactScalar(x); }

}  // namespace

TEST(ToeplitzForm, SingleCoefficientAssemblesToItself) {
  const SegreStructure s(ExactScalar(0), {{1, 2}});
  ToeplitzForm tf(s);
  const ExactMatrix a{{1, 2}, {3, 4}};
  tf.set(0, 0, 0, a);
  EXPECT_EQ(assemble(tf), a);
}

TEST(ToeplitzForm, AssembledUpperTriangularPattern) {
  const SegreStructure s(ExactScalar(0), {{3, 1}});
  ToeplitzForm tf(s);
  tf.set(0, 0, 0, ExactMatrix{{7}});
  tf.set(0, 0, 1, ExactMatrix{{8}});
  tf.set(0, 0, 2, ExactMatrix{{9}});
  EXPECT_EQ(assemble(tf), (ExactMatrix{{7, 8, 9}, {0, 7, 8}, {0, 0, 7}}));
}

TEST(ToeplitzForm, WorkedOmegaExample) {
  // alpha = (3, 2), m = (2, 3); only the off-diagonal block X_12 is nonzero.
  const SegreStructure s(ExactScalar(0), {{3, 2}, {2, 3}});
  ExactMatrix x(12, 12);
  const long a[6] = {1, 2, 3, 4, 5, 6}, b[6] = {11, 12, 13, 14, 15, 16};
  // 2 x 3 grid of 3 x 2 blocks [[a, b], [0, a], [0, 0]]
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t k = 3 * i + j, r0 = 3 * i, c0 = 6 + 2 * j;
      x(r0, c0) = v(a[k]);
      x(r0, c0 + 1) = v(b[k]);
      x(r0 + 1, c0 + 1) = v(a[k]);
    }
  const ExactMatrix y = conjugate_by_omega(x, s, OmegaDirection::to_toeplitz);
  const ExactMatrix want{{1, 2, 3, 11, 12, 13}, {4, 5, 6, 14, 15, 16}, {0, 0, 0, 1, 2, 3},
                         {0, 0, 0, 4, 5, 6},    {0, 0, 0, 0, 0, 0},    {0, 0, 0, 0, 0, 0}};
  EXPECT_EQ(y.block(0, 6, 6, 6), want);
  EXPECT_EQ(y, build_Omega(s).transpose() * x * build_Omega(s));
  const ToeplitzForm tf = toeplitz_extract(y, s);
  EXPECT_EQ(tf.coeff(0, 1, 0), (ExactMatrix{{1, 2, 3}, {4, 5, 6}}));
  EXPECT_EQ(tf.coeff(0, 1, 1), (ExactMatrix{{11, 12, 13}, {14, 15, 16}}));
  EXPECT_EQ(conjugate_by_omega(y, s, OmegaDirection::to_dense), x);
}

TEST(ToeplitzForm, OmegaIsIdentityForSingleCopy) {
  Rng rng(40);
  const SegreStructure s(ExactScalar(0), {{4, 1}});
  const ExactMatrix x = rng.matrix(4, 4);
  EXPECT_EQ(conjugate_by_omega(x, s, OmegaDirection::to_toeplitz), x);
  EXPECT_THROW(conjugate_by_omega(rng.matrix(3, 3), s, OmegaDirection::to_dense), InputError);
}

TEST(ToeplitzForm, ExtractAssembleRoundTrip) {
  Rng rng(41);
  for (int c = 0; c < 200; ++c) {
    const SegreStructure s = random_structure(rng, 8, 3, ExactScalar(0));
    const ToeplitzForm tf = random_form(s, rng);
    EXPECT_EQ(toeplitz_extract(assemble(tf), s), tf);
    const ExactMatrix x = rng.matrix(s.size(), s.size());
    EXPECT_EQ(conjugate_by_omega(conjugate_by_omega(x, s, OmegaDirection::to_toeplitz), s, OmegaDirection::to_dense), x);
  }
}

TEST(ToeplitzForm, ExtractNamesFirstOffendingEntry) {
  const SegreStructure s(ExactScalar(0), {{2, 1}});
  try {
    toeplitz_extract(ExactMatrix{{1, 2}, {5, 1}}, s);
    FAIL() << "expected ShapeViolation";
  } catch (const ShapeViolation& e) {
    EXPECT_NE(std::string(e.what()).find("entry (2,1)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(toeplitz_extract(ExactMatrix{{1, 2}, {0, 3}}, s), ShapeViolation);
}

TEST(ToeplitzForm, ProductMatchesDenseProduct) {
  Rng rng(42);
  for (int c = 0; c < 100; ++c) {
    const SegreStructure s = random_structure(rng, 9, 3, ExactScalar(0));
    const ToeplitzForm a = random_form(s, rng), b = random_form(s, rng);
    EXPECT_EQ(assemble(a * b), assemble(a) * assemble(b));
    EXPECT_EQ(a * ToeplitzForm::identity(s), a);
    EXPECT_EQ(assemble(flip_transpose(a)), build_F(s) * assemble(a).transpose() * build_F(s));
  }
}

TEST(ToeplitzForm, UnipotentInverse) {
  Rng rng(43);
  for (int c = 0; c < 40; ++c) {
    const SegreStructure s = random_structure(rng, 9, 3, ExactScalar(0));
    const ToeplitzForm u = random_form(s, rng, true);
    const ToeplitzForm inv = unipotent_inverse(u);
    EXPECT_EQ(u * inv, ToeplitzForm::identity(s));
    EXPECT_EQ(inv * u, ToeplitzForm::identity(s));
  }
}

// Nilpotent part of a unipotent form: doubled weights 2j + |alpha_r - alpha_s|
// are superadditive, so (U - I)^{2 alpha_1 - 1} = 0; block-diagonal ones
// already vanish at alpha_1.
TEST(ToeplitzForm, NilpotencyBounds) {
  Rng rng(44);
  for (int c = 0; c < 60; ++c) {
    const SegreStructure s = random_structure(rng, 9, 3, ExactScalar(0));
    const ToeplitzForm u = random_form(s, rng, true);
    const ExactMatrix n = assemble(u) - ExactMatrix::identity(s.size());
    EXPECT_TRUE(power(n, 2 * s.max_alpha() - 1).is_zero()) << s.to_string();
    ToeplitzForm d = ToeplitzForm::identity(s);
    for (std::size_t r = 0; r < s.parts(); ++r)
      for (std::size_t j = 1; j < s.alpha(r); ++j) d.set(r, r, j, rng.matrix(s.m(r), s.m(r)));
    EXPECT_TRUE(power(assemble(d) - ExactMatrix::identity(s.size()), s.max_alpha()).is_zero());
  }
}

TEST(ToeplitzForm, UnipotentFormWhoseNilpotentPartOutlivesAlpha1) {
  // alpha = (2, 1): U - I = [[0, -f^2/2, -f], [0, 0, 0], [0, f, 0]] squares to nonzero.
  const SegreStructure s(ExactScalar(0), {{2, 1}, {1, 1}});
  const ToeplitzForm g = gen_G(s, 0, 1, 0, ExactMatrix{{1}}, identity_blocks(s));
  const ExactMatrix n = assemble(g) - ExactMatrix::identity(3);
  EXPECT_FALSE(power(n, 2).is_zero());
  EXPECT_TRUE(power(n, 3).is_zero());
}

TEST(ToeplitzForm, OffDiagonalLeadingCoefficientsSurviveProducts) {
  // With alpha = (3, 2, 1), A_0^{12} A_0^{23} lands on A_0^{13}, so strictly
  // upper forms do not raise the leading index.
  const SegreStructure s(ExactScalar(0), {{3, 1}, {2, 1}, {1, 1}});
  ToeplitzForm a(s), b(s);
  a.set(0, 1, 0, ExactMatrix{{1}});
  b.set(1, 2, 0, ExactMatrix{{1}});
  EXPECT_EQ((a * b).coeff(0, 2, 0), (ExactMatrix{{1}}));
  EXPECT_EQ(doubled_weight(a * b), std::optional<std::size_t>(2));
}

TEST(ToeplitzForm, CommutantDimensions) {
  EXPECT_EQ(commutant_dimension(SegreStructure(ExactScalar(0), {{1, 4}})), 16u);
  EXPECT_EQ(commutant_dimension(SegreStructure(ExactScalar(0), {{2, 1}, {1, 1}})), 5u);
  EXPECT_EQ(commutant_dimension(SegreStructure(ExactScalar(0), {{3, 1}})), 3u);
}

TEST(ToeplitzForm, CommutantAgreesWithSylvesterNullity) {
  Rng rng(45);
  for (const auto& s : all_structures(6, ExactScalar(2))) {
    const CommutantBasis basis = commutant_basis(s);
    EXPECT_EQ(basis.dimension, nullspace(commutator_operator(build_J(s))).nullity) << s.to_string();
    const ExactMatrix x = basis.build(random_form(s, rng));
    EXPECT_EQ(build_J(s) * x, x * build_J(s));
    const auto elems = basis.elements();
    ASSERT_EQ(elems.size(), basis.dimension);
    std::vector<ExactScalar> flat;
    ExactMatrix stacked(s.size() * s.size(), elems.size());
    for (std::size_t c = 0; c < elems.size(); ++c)
      for (std::size_t k = 0; k < s.size() * s.size(); ++k) stacked(k, c) = elems[c].entries()[k];
    EXPECT_EQ(rank(stacked), basis.dimension);
  }
}
