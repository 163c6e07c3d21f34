#include <gtest/gtest.h>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/random.hpp"

using namespace isotropy;

namespace {
const ExactScalar half(make_rational(1, 2));
const ExactScalar half_i(Rational(0), make_rational(1, 2));
}  // namespace

TEST(CanonicalForms, JordanBlocks) {
  const ExactScalar l = parse_scalar("3 - 2 i");
  EXPECT_EQ(jordan_block(1, l), (ExactMatrix{{l}}));
  EXPECT_EQ(jordan_block(2, ExactScalar(0)), (ExactMatrix{{0, 1}, {0, 0}}));
  const ExactMatrix j3 = jordan_block(3, ExactScalar::i());
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c)
      EXPECT_EQ(j3(r, c), r == c ? ExactScalar::i() : (c == r + 1 ? ExactScalar(1) : ExactScalar(0)));
  EXPECT_THROW(jordan_block(0, l), InputError);
}

TEST(CanonicalForms, TransitionMatrix) {
  const ExactScalar p1 = ExactScalar::inv_sqrt2() * (ExactScalar(1) + ExactScalar::i());
  EXPECT_EQ(transition_P(1), (ExactMatrix{{p1}}));
  EXPECT_EQ(transition_P(2) * transition_P(2), ExactScalar::i() * backward_identity(2));
  for (std::size_t a = 1; a <= 5; ++a) EXPECT_TRUE((transition_P(a) * transition_P(a).conj()).is_identity());
}

TEST(CanonicalForms, SymmetricBlockSmall) {
  const ExactScalar l = parse_scalar("2/3 + 1/5 i");
  EXPECT_EQ(symmetric_block(1, l), (ExactMatrix{{l}}));
  EXPECT_EQ(symmetric_block(2, l), (ExactMatrix{{l - half_i, half}, {half, l + half_i}}));
}

TEST(CanonicalForms, SymmetricBlockProperties) {
  Rng rng(31);
  for (std::size_t n = 1; n <= 8; ++n) {
    const ExactScalar l = rng.scalar();
    const ExactMatrix k = symmetric_block(n, l);
    EXPECT_EQ(k, k.transpose());
    EXPECT_EQ(k, symmetric_block_entrywise(n, l));
    ExactScalar trace;
    for (std::size_t i = 0; i < n; ++i) trace += k(i, i);
    EXPECT_EQ(trace, ExactScalar(static_cast<long>(n)) * l);
  }
}

TEST(CanonicalForms, OmegaPermutation) {
  const ExactMatrix w = omega_perm(2, 3);
  // columns e1, e3, e5, e2, e4, e6 (1-based)
  const std::size_t expected[] = {0, 2, 4, 1, 3, 5};
  for (std::size_t c = 0; c < 6; ++c)
    for (std::size_t r = 0; r < 6; ++r) EXPECT_EQ(w(r, c), ExactScalar(r == expected[c] ? 1 : 0));
  EXPECT_TRUE(omega_perm(4, 1).is_identity());
  EXPECT_TRUE(omega_perm(1, 4).is_identity());
  for (std::size_t a = 1; a <= 4; ++a)
    for (std::size_t m = 1; m <= 3; ++m) {
      const ExactMatrix om = omega_perm(a, m);
      EXPECT_TRUE((om.transpose() * om).is_identity());
      for (std::size_t r = 0; r < om.rows(); ++r) {
        int ones = 0;
        for (std::size_t c = 0; c < om.cols(); ++c) {
          if (om(r, c).is_one()) ++ones;
          else EXPECT_TRUE(om(r, c).is_zero());
        }
        EXPECT_EQ(ones, 1);
      }
    }
}

TEST(CanonicalForms, StructureBuilders) {
  const ExactScalar l = parse_scalar("5");
  const SegreStructure scalar(l, {{1, 3}});
  EXPECT_EQ(build_S(scalar), l * ExactMatrix::identity(3));
  EXPECT_TRUE(build_F(scalar).is_identity());
  EXPECT_EQ(build_F(SegreStructure(l, {{2, 1}})), (ExactMatrix{{0, 1}, {1, 0}}));
}

TEST(CanonicalForms, OmegaConjugatesEIntoF) {
  const SegreStructure s(ExactScalar(0), {{4, 2}, {2, 3}, {1, 1}});
  const ExactMatrix om = build_Omega(s);
  EXPECT_EQ(om.transpose() * build_E(s) * om, build_F(s));
}

TEST(CanonicalForms, NilpotencyIndexMatchesLargestBlock) {
  for (const auto& s : all_structures(6, parse_scalar("1 + i"))) {
    const ExactMatrix n = build_S(s) - s.lambda() * ExactMatrix::identity(s.size());
    EXPECT_TRUE(power(n, s.max_alpha()).is_zero()) << s.to_string();
    EXPECT_FALSE(power(n, s.max_alpha() - 1).is_zero()) << s.to_string();
  }
}

TEST(CanonicalForms, StructureNormalisation) {
  const SegreStructure s(ExactScalar(0), {{1, 2}, {3, 1}, {1, 1}});
  ASSERT_EQ(s.parts(), 2u);
  EXPECT_EQ(s.alpha(0), 3u);
  EXPECT_EQ(s.m(1), 3u);
  EXPECT_EQ(s.size(), 6u);
  EXPECT_THROW(SegreStructure(ExactScalar(0), {{0, 1}}), InputError);
  EXPECT_THROW(SegreStructure(ExactScalar(0), {{2, 0}}), InputError);
  EXPECT_THROW(SegreStructure(ExactScalar(0), {}), InputError);
  EXPECT_THROW(MultiSegreStructure({s, s}), InputError);
}
