#include <gtest/gtest.h>

#include <vector>

#include "isotropy/canonical_forms.hpp"
#include "isotropy/exact_matrix.hpp"
#include "isotropy/random.hpp"

using namespace isotropy;

TEST(ExactLinalg, BackwardIdentity) {
  for (std::size_t a = 1; a <= 5; ++a) {
    const ExactMatrix e = backward_identity(a);
    EXPECT_EQ(e.transpose(), e);
    EXPECT_TRUE((e * e).is_identity());
  }
}

TEST(ExactLinalg, InverseOfTransitionMatrix) {
  const ExactMatrix p2 = transition_P(2);
  EXPECT_TRUE((inverse(p2) * p2).is_identity());
  EXPECT_EQ(inverse(p2), p2.conj());
}

TEST(ExactLinalg, NullspaceExamples) {
  EXPECT_EQ(nullspace(ExactMatrix(3, 3)).nullity, 3u);
  EXPECT_EQ(nullspace(ExactMatrix::identity(3)).nullity, 0u);
  const ExactMatrix s = direct_sum(symmetric_block(2, ExactScalar(0)), symmetric_block(1, ExactScalar(0)));
  EXPECT_EQ(nullspace(commutator_operator(s)).nullity, 5u);
}

TEST(ExactLinalg, RankNullityAndResiduals) {
  Rng rng(21);
  for (int c = 0; c < 60; ++c) {
    const std::size_t rows = static_cast<std::size_t>(rng.uniform(1, 8)), cols = static_cast<std::size_t>(rng.uniform(1, 8));
    ExactMatrix a = rng.matrix(rows, cols);
    if (rng.chance(50) && rows > 1)  // force a dependent row
      for (std::size_t j = 0; j < cols; ++j) a(rows - 1, j) = a(0, j) * ExactScalar(3) - a(1 % rows, j);
    const Nullspace ns = nullspace(a);
    EXPECT_EQ(rank(a) + ns.nullity, cols);
    for (const auto& v : ns.basis) EXPECT_TRUE((a * v).is_zero());
  }
}

TEST(ExactLinalg, ProductIsAssociative) {
  Rng rng(22);
  for (int c = 0; c < 40; ++c) {
    const std::size_t a = static_cast<std::size_t>(rng.uniform(1, 5)), b = static_cast<std::size_t>(rng.uniform(1, 5)),
                      d = static_cast<std::size_t>(rng.uniform(1, 5)), e = static_cast<std::size_t>(rng.uniform(1, 5));
    const ExactMatrix x = rng.matrix(a, b), y = rng.matrix(b, d), z = rng.matrix(d, e);
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ(x.transpose().transpose(), x);
  }
}

TEST(ExactLinalg, ErrorsOnMismatchAndSingular) {
  EXPECT_THROW(ExactMatrix(2, 3) * ExactMatrix(2, 3), InputError);
  EXPECT_THROW(ExactMatrix(2, 3) + ExactMatrix(3, 2), InputError);
  EXPECT_THROW(inverse(ExactMatrix(2, 2)), SingularMatrix);
  EXPECT_THROW(inverse(ExactMatrix(2, 3)), InputError);
}

TEST(ExactLinalg, DirectSumAndEmptyShapes) {
  const ExactMatrix a{{1, 2}, {3, 4}};
  const ExactMatrix b{{5}};
  const ExactMatrix s = direct_sum(a, b);
  EXPECT_EQ(s, (ExactMatrix{{1, 2, 0}, {3, 4, 0}, {0, 0, 5}}));
  const ExactMatrix empty(0, 3);
  EXPECT_EQ((empty * ExactMatrix(3, 2)).rows(), 0u);
  EXPECT_EQ(direct_sum(a, ExactMatrix(0, 0)), a);
  std::vector<ExactMatrix> none;
  EXPECT_EQ(direct_sum(none).rows(), 0u);
  EXPECT_EQ(block_assemble({{a, ExactMatrix(2, 1)}, {ExactMatrix(1, 2), b}}), s);
}

TEST(ExactLinalg, CayleyExamples) {
  EXPECT_TRUE(cayley_orthogonal(ExactMatrix(3, 3)).is_identity());
  const ExactMatrix z{{0, 1}, {-1, 0}};
  EXPECT_EQ(cayley_orthogonal(z, std::vector<int>{1, 1}), (ExactMatrix{{0, -1}, {1, 0}}));
  // I + Z singular for Z = [[0, i], [-i, 0]]
  const ExactMatrix bad{{ExactScalar(0), ExactScalar::i()}, {-ExactScalar::i(), ExactScalar(0)}};
  EXPECT_THROW(cayley_orthogonal(bad), SingularMatrix);
  EXPECT_THROW(cayley_orthogonal(ExactMatrix{{1, 0}, {0, 0}}), InputError);
}

TEST(ExactLinalg, CayleyOutputsAreOrthogonal) {
  Rng rng(23);
  for (int c = 0; c < 50; ++c) {
    const ExactMatrix q = rng.orthogonal(static_cast<std::size_t>(rng.uniform(1, 4)));
    EXPECT_TRUE((q.transpose() * q).is_identity());
  }
}
