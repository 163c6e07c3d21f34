#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "isotropy/exact_scalar.hpp"
#include "isotropy/random.hpp"

using namespace isotropy;

namespace {

ExactScalar q(long n, long d = 1) { return ExactScalar(make_rational(n, d)); }

bool reduced(const Rational& r) {
  Rational copy = r;
  copy.canonicalize();
  return copy.get_num() == r.get_num() && copy.get_den() == r.get_den() && sgn(r.get_den()) > 0;
}

bool all_reduced(const ExactScalar& x) { return reduced(x.a()) && reduced(x.b()) && reduced(x.c()) && reduced(x.d()); }

}  // namespace

TEST(ExactScalar, FieldRelations) {
  EXPECT_EQ(ExactScalar::sqrt2() * ExactScalar::sqrt2(), ExactScalar(2));
  EXPECT_EQ(ExactScalar::i() * ExactScalar::i(), ExactScalar(-1));
  EXPECT_EQ((ExactScalar(1) + ExactScalar::sqrt2()) * (ExactScalar(-1) + ExactScalar::sqrt2()), ExactScalar(1));
  EXPECT_EQ(ExactScalar::inv_sqrt2() * ExactScalar::sqrt2(), ExactScalar(1));
}

TEST(ExactScalar, DivisionByZeroThrows) {
  EXPECT_THROW(ExactScalar(1) / ExactScalar(0), DivisionByZero);
  EXPECT_THROW(ExactScalar().inverse(), DivisionByZero);
  EXPECT_THROW(make_rational(1, 0), DivisionByZero);
}

TEST(ExactScalar, ParseExamples) {
  ExactScalar x = parse_scalar("1/2 - 1/2 i");
  EXPECT_EQ(x.a(), make_rational(1, 2));
  EXPECT_EQ(x.b(), make_rational(-1, 2));
  EXPECT_EQ(sgn(x.c()), 0);
  EXPECT_EQ(sgn(x.d()), 0);
  ExactScalar y = parse_scalar("(1/2) r2");
  EXPECT_EQ(y.c(), make_rational(1, 2));
  EXPECT_TRUE(sgn(y.a()) == 0 && sgn(y.b()) == 0 && sgn(y.d()) == 0);
  EXPECT_EQ(parse_scalar("(1 - 2 i) r2"), ExactScalar(0, 0, 1, -2));
  EXPECT_EQ(parse_scalar("-3/6"), q(-1, 2));
  EXPECT_EQ(parse_scalar("  4 r2 + 2 i "), ExactScalar(0, 2, 4, 0));
}

TEST(ExactScalar, ParseErrorsCarryPosition) {
  try {
    parse_scalar("1/2 + x");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
  EXPECT_THROW(parse_scalar(""), ParseError);
  EXPECT_THROW(parse_scalar("1/0"), ParseError);
  EXPECT_THROW(parse_scalar("(1 + 2 i"), ParseError);
  EXPECT_THROW(parse_scalar("3 r"), ParseError);
}

TEST(ExactScalar, FormatIsCanonical) {
  EXPECT_EQ(format_scalar(ExactScalar()), "0");
  EXPECT_EQ(format_scalar(parse_scalar("1/2 - 1/2 i")), "1/2 - 1/2 i");
  EXPECT_EQ(format_scalar(ExactScalar(0, 0, 3, 0)), "3 r2");
  EXPECT_EQ(format_scalar(ExactScalar(1, 0, 1, -1)), "1 + (1 - 1 i) r2");
  EXPECT_EQ(format_scalar(ExactScalar(0, -2, 0, 0)), "-2 i");
}

TEST(ExactScalar, FormatParseRoundTripFuzzed) {
  Rng rng(11);
  const std::vector<std::string> atoms{"1", "2/3", "(-5/7)", "i", "r2", "3 i", "1/2 r2", "(1 - 1/3 i) r2", "(2/5)", "0"};
  for (int c = 0; c < 1000; ++c) {
    std::string text;
    const long terms = rng.uniform(1, 4);
    for (long t = 0; t < terms; ++t) {
      if (t) text += rng.chance(50) ? " + " : " - ";
      text += atoms[static_cast<std::size_t>(rng.uniform(0, static_cast<long>(atoms.size()) - 1))];
    }
    const ExactScalar x = parse_scalar(text);
    const std::string canonical = format_scalar(x);
    EXPECT_EQ(parse_scalar(canonical), x) << text;
    EXPECT_EQ(format_scalar(parse_scalar(canonical)), canonical) << text;
  }
}

TEST(ExactScalar, FieldAxiomsOnRandomTriples) {
  Rng rng(12);
  for (int c = 0; c < 300; ++c) {
    const ExactScalar x = rng.scalar(), y = rng.scalar(), z = rng.scalar();
    EXPECT_EQ((x * y) * z, x * (y * z));
    EXPECT_EQ((x + y) + z, x + (y + z));
    EXPECT_EQ(x * (y + z), x * y + x * z);
    EXPECT_EQ(x * y, y * x);
    if (!x.is_zero()) {
      EXPECT_EQ(x * x.inverse(), ExactScalar(1));
      EXPECT_EQ((y / x) * x, y);
    }
    EXPECT_TRUE(all_reduced(x * y + z));
    EXPECT_TRUE(all_reduced(x - y));
    if (!z.is_zero()) {
      EXPECT_TRUE(all_reduced(x / z));
    }
  }
}

TEST(ExactScalar, ConjugationsAreRingAutomorphisms) {
  Rng rng(13);
  for (int c = 0; c < 300; ++c) {
    const ExactScalar x = rng.scalar(), y = rng.scalar();
    EXPECT_EQ((x * y).conj(), x.conj() * y.conj());
    EXPECT_EQ((x + y).conj(), x.conj() + y.conj());
    EXPECT_EQ((x * y).sqrt2_conj(), x.sqrt2_conj() * y.sqrt2_conj());
    EXPECT_EQ((x + y).sqrt2_conj(), x.sqrt2_conj() + y.sqrt2_conj());
  }
  EXPECT_EQ(ExactScalar(1, 2, 3, 4).conj(), ExactScalar(1, -2, 3, -4));
  EXPECT_EQ(ExactScalar(1, 2, 3, 4).sqrt2_conj(), ExactScalar(1, 2, -3, -4));
}
