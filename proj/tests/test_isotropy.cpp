#include <gtest/gtest.h>

#include "isotropy/isotropy.hpp"
#include "isotropy/random.hpp"

using namespace isotropy;

namespace {
SegreStructure st(std::vector<SegreBlock> b, const char* lambda = "0") { return SegreStructure(parse_scalar(lambda), std::move(b)); }
ExactScalar c(long re, long im) { return ExactScalar(Rational(re), Rational(im)); }
}  // namespace

TEST(Isotropy, FrozenSampleForTwoParts) {
  const SegreStructure s = st({{2, 1}, {1, 1}});
  FreeParams fp;
  fp.sub[{1, 0, 0}] = ExactMatrix{{2}};
  const ExactMatrix q = sample_isotropy_element(s, fp);
  EXPECT_EQ(q, (ExactMatrix{{c(1, 1), c(-1, 0), c(-1, 1)}, {c(-1, 0), c(1, -1), c(-1, -1)}, {c(1, -1), c(1, 1), c(1, 0)}}));
  EXPECT_EQ(assemble(form_from_q(s, q)), (ExactMatrix{{1, -2, -2}, {0, 1, 0}, {0, 2, 1}}));
}

TEST(Isotropy, NilpotentJordanBlockHasOnlySigns) {
  const SegreStructure s = st({{3, 1}}, "1 + i");
  EXPECT_TRUE(sample_isotropy_element(s, FreeParams{}).is_identity());
  FreeParams neg;
  neg.seeds[0] = ExactMatrix{{-1}};
  EXPECT_EQ(sample_isotropy_element(s, neg), -ExactMatrix::identity(3));
  EXPECT_EQ(describe_isotropy(s).dimension, 0u);
}

TEST(Isotropy, MembershipReportsFailures) {
  const SegreStructure s = st({{2, 1}});
  const MembershipReport bad = verify_isotropy(s, ExactMatrix{{0, 1}, {1, 0}});
  EXPECT_TRUE(bad.orthogonal);
  EXPECT_FALSE(bad.preserves_s);
  EXPECT_FALSE(bad.member);
  const MembershipReport scaled = verify_isotropy(s, ExactScalar(2) * ExactMatrix::identity(2));
  EXPECT_FALSE(scaled.orthogonal);
  EXPECT_FALSE(verify_isotropy(s, ExactMatrix::identity(3)).member);
}

TEST(Isotropy, RoundTripThroughQ) {
  Rng rng(71);
  for (int k = 0; k < 40; ++k) {
    const SegreStructure s = random_structure(rng, 8, 3, rng.scalar());
    const FreeParams fp = random_free_params(s, rng);
    const ToeplitzForm x = solve_congruence(CongruenceData::identity(s), fp);
    const ExactMatrix qm = q_from_form(x);
    EXPECT_TRUE(verify_isotropy(s, qm).member) << s.to_string();
    EXPECT_EQ(form_from_q(s, qm), x);
  }
}

TEST(Isotropy, GroupClosureAndInverse) {
  Rng rng(72);
  for (int k = 0; k < 20; ++k) {
    const SegreStructure s = random_structure(rng, 7, 3, ExactScalar(0));
    const ExactMatrix a = sample_isotropy_element(s, random_free_params(s, rng));
    const ExactMatrix b = sample_isotropy_element(s, random_free_params(s, rng));
    const ExactMatrix ab = group_mul(s, {a, b});
    EXPECT_TRUE(verify_isotropy(s, ab).member);
    EXPECT_TRUE((group_mul(s, {a, group_inverse(s, a)})).is_identity());
    // Q -> X is a homomorphism onto Toeplitz forms.
    EXPECT_EQ(form_from_q(s, ab), form_from_q(s, a) * form_from_q(s, b));
    // leading blocks multiply, giving the projection onto the orthogonal factor
    const auto oa = orthogonal_part(s, a), ob = orthogonal_part(s, b), oab = orthogonal_part(s, ab);
    for (std::size_t r = 0; r < s.parts(); ++r) EXPECT_EQ(oab[r], oa[r] * ob[r]);
  }
  const SegreStructure s = st({{2, 1}});
  EXPECT_THROW(group_mul(s, {ExactMatrix{{0, 1}, {1, 0}}}), InputError);
}

TEST(Isotropy, ReductiveUnipotentSplitting) {
  Rng rng(73);
  for (int k = 0; k < 20; ++k) {
    const SegreStructure s = random_structure(rng, 8, 3, ExactScalar(0));
    const ToeplitzForm x = solve_congruence(CongruenceData::identity(s), random_free_params(s, rng));
    const ToeplitzForm v = unipotent_part(x);
    EXPECT_TRUE(v.is_unipotent());
    EXPECT_EQ(orthogonal_form(s, orthogonal_part(x)) * v, x);
    const ToeplitzForm w = conjugate_unipotent(v, orthogonal_part(x));
    EXPECT_TRUE(verify_congruence(CongruenceData::identity(s), w).holds);
  }
}

TEST(Isotropy, MultiEigenvalueSampleIsBlockDiagonal) {
  Rng rng(74);
  const MultiSegreStructure ms({st({{2, 1}, {1, 1}}, "0"), st({{1, 2}}, "3 + i")});
  std::vector<FreeParams> fps;
  for (const auto& p : ms.parts()) fps.push_back(random_free_params(p, rng));
  const ExactMatrix qm = sample_isotropy_element(ms, fps);
  EXPECT_TRUE(verify_isotropy(ms, qm).member);
  EXPECT_TRUE(qm.block(0, 3, 3, 2).is_zero());
  EXPECT_TRUE(qm.block(3, 0, 2, 3).is_zero());
  EXPECT_THROW(sample_isotropy_element(ms, {FreeParams{}}), InputError);
}

TEST(Isotropy, DescriptionFields) {
  const IsotropyDescription d = describe_isotropy(st({{3, 2}, {1, 1}}));
  EXPECT_EQ(d.dimension, 3u * 1u + 1u * 2u);
  EXPECT_EQ(d.reductive_part, (std::vector<std::size_t>{2, 1}));
  EXPECT_EQ(d.unipotent_order_bound, 2u);
  EXPECT_EQ(d.nilpotency_index_bound, 5u);
  EXPECT_FALSE(d.full_orthogonal);
  ASSERT_EQ(d.generator_recipes.size(), 3u);
  EXPECT_EQ(d.generator_recipes.back().kind, GeneratorRecipe::Kind::two_block_G);
  EXPECT_EQ(d.generator_recipes.back().rows, 1u);
  EXPECT_EQ(d.generator_recipes.back().cols, 2u);
  EXPECT_TRUE(describe_isotropy(st({{1, 4}})).full_orthogonal);
  const MultiIsotropyDescription md = describe_isotropy(MultiSegreStructure({st({{1, 3}}, "0"), st({{2, 2}}, "1")}));
  EXPECT_EQ(md.total_dimension, 3u + 2u);
}
