#include <gtest/gtest.h>

#include "lcx/unipoly.hpp"
#include "oracles.hpp"

using namespace lcx;

namespace {

Scalar s(const FieldPtr& f, std::int64_t v) { return Scalar::from_int(f, v); }

}  // namespace

TEST(ExactField, PrimeFieldArithmeticMatchesIntegerOracle) {
  const FieldPtr f = Field::prime(101);
  Rng rng(1);
  for (int i = 0; i < 2000; ++i) {
    const std::int64_t a = static_cast<std::int64_t>(rng() % 1000) - 500, b = static_cast<std::int64_t>(rng() % 1000) - 500;
    EXPECT_EQ((s(f, a) + s(f, b)).coeff(0), static_cast<std::uint64_t>(oracle::mod(a + b, 101)));
    EXPECT_EQ((s(f, a) * s(f, b)).coeff(0), static_cast<std::uint64_t>(oracle::mod(a * b, 101)));
    if (oracle::mod(b, 101) != 0) EXPECT_EQ((s(f, a) / s(f, b)).coeff(0), static_cast<std::uint64_t>(oracle::mod(a * oracle::inv(oracle::mod(b, 101), 101), 101)));
  }
}

TEST(ExactField, RationalArithmeticIsExact) {
  const FieldPtr q = Field::rationals();
  const Scalar third = Scalar::from_rational(q, Rational(1, 3)), sixth = Scalar::from_rational(q, Rational(1, 6));
  EXPECT_EQ(third + sixth, Scalar::from_rational(q, Rational(1, 2)));
  EXPECT_EQ((third * sixth).to_string(), "1/18");
  EXPECT_EQ(third.inverse(), s(q, 3));
  EXPECT_THROW(Scalar::zero(q).inverse(), PreconditionError);
}

TEST(ExactField, CharacteristicTwoAndHugeFieldsAreRejected) {
  EXPECT_THROW(Field::prime(2), PreconditionError);
  EXPECT_THROW(Field::prime(9), PreconditionError);
  EXPECT_THROW(Field::finite(2, 3), PreconditionError);
  EXPECT_THROW(Field::finite(1000003, 4), PreconditionError);
}

TEST(ExactField, SearchedModuliAreIrreducibleByTrialDivision) {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, int>>{{3, 2}, {3, 3}, {3, 4}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {11, 2}, {101, 2}}) {
    const FieldPtr f = Field::finite(p, k);
    std::vector<oracle::i64> m(f->modulus().begin(), f->modulus().end());
    EXPECT_TRUE(oracle::irreducible_brute(m, static_cast<oracle::i64>(p))) << f->describe();
    EXPECT_EQ(f->order(), static_cast<std::uint64_t>(std::pow(p, k) + 0.5));
  }
}

TEST(ExactField, ExplicitModulusIsCheckedForIrreducibility) {
  EXPECT_THROW(Field::with_modulus(5, {1, 0, 1}), PreconditionError);  // x^2+1 = (x-2)(x-3) over F_5
  EXPECT_NO_THROW(Field::with_modulus(7, {1, 0, 1}));
  EXPECT_THROW(Field::with_modulus(7, {1, 0, 2}), PreconditionError);  // not monic
}

TEST(ExactField, ExtensionFieldAxiomsAndFrobenius) {
  const FieldPtr f = Field::finite(7, 3);
  Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Scalar a = Scalar::random(f, rng), b = Scalar::random(f, rng), c = Scalar::random(f, rng);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b).pow(7), a.pow(7) + b.pow(7));
    EXPECT_EQ(a.pow(343), a);
    if (!a.is_zero()) {
      EXPECT_EQ(a * a.inverse(), Scalar::one(f));
      EXPECT_EQ(a.pow(342), Scalar::one(f));
    }
  }
}

TEST(ExactField, IndexNumberingIsABijection) {
  const FieldPtr f = Field::finite(3, 2);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < f->order(); ++i) {
    const Scalar x = Scalar::from_index(f, i);
    EXPECT_EQ(x.index(), i);
    seen.insert(x.index());
  }
  EXPECT_EQ(seen.size(), 9u);
}

TEST(ExactField, MixingFieldsNeedsAnEmbedding) {
  EXPECT_THROW(s(Field::prime(7), 1) + s(Field::prime(11), 1), PreconditionError);
}

TEST(ExactField, RootsInFieldMatchBruteForce) {
  const FieldPtr f = Field::prime(31);
  Rng rng(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<Scalar> c;
    for (int i = 0; i < 5; ++i) c.push_back(Scalar::random(f, rng));
    c.push_back(Scalar::one(f));
    const UniPoly poly(f, c);
    std::set<std::uint64_t> brute;
    for (std::uint64_t x = 0; x < 31; ++x)
      if (poly(Scalar::from_index(f, x)).is_zero()) brute.insert(x);
    std::set<std::uint64_t> got;
    for (const auto& r : roots_in_field(poly, rng)) got.insert(r.value.index());
    EXPECT_EQ(got, brute);
  }
}

TEST(ExactField, IrreducibleQuadraticSplitsInQuadraticExtension) {
  const FieldPtr f = Field::prime(7);
  Rng rng(7);
  const UniPoly poly = UniPoly::from_ints(f, {-3, 0, 1});  // 3 is not a square mod 7
  const RootSet rs = poly_roots(poly, true, rng);
  ASSERT_TRUE(rs.embedding.has_value());
  EXPECT_EQ(rs.field->order(), 49u);
  EXPECT_EQ(rs.total_multiplicity(), 2);
  for (const auto& r : rs.roots) EXPECT_TRUE((*rs.embedding)(poly)(r.value).is_zero());
}

TEST(ExactField, IrreducibleCubicSplitsInCubicExtension) {
  const FieldPtr f = Field::prime(7);
  Rng rng(8);
  const UniPoly poly = UniPoly::from_ints(f, {-2, 0, 0, 1});  // 2 is not a cube mod 7
  const RootSet rs = poly_roots(poly, true, rng);
  ASSERT_TRUE(rs.embedding.has_value());
  EXPECT_EQ(rs.field->order(), 343u);
  EXPECT_EQ(rs.roots.size(), 3u);
}

TEST(ExactField, EmbeddingsAreRingHomomorphismsWithPreimages) {
  const FieldPtr small = Field::finite(5, 2), big = Field::finite(5, 4);
  const Embedding e = Embedding::between(small, big);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const Scalar a = Scalar::random(small, rng), b = Scalar::random(small, rng);
    EXPECT_EQ(e(a * b), e(a) * e(b));
    EXPECT_EQ(e(a + b), e(a) + e(b));
    ASSERT_TRUE(e.preimage(e(a)).has_value());
    EXPECT_EQ(*e.preimage(e(a)), a);
  }
  int outside = 0;
  for (int i = 0; i < 50; ++i) outside += !e.preimage(Scalar::random(big, rng)).has_value();
  EXPECT_GT(outside, 0);
}
