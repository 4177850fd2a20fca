#include <gtest/gtest.h>

#include "lcx/complex.hpp"
#include "oracles.hpp"

using namespace lcx;

namespace {

int oracle_rank(const std::vector<std::vector<Scalar>>& rows, oracle::i64 p) {
  oracle::IntMatrix m;
  for (const auto& r : rows) {
    m.emplace_back();
    for (const auto& x : r) m.back().push_back(static_cast<oracle::i64>(x.coeff(0)));
  }
  return oracle::rank_mod(m, p);
}

std::vector<std::vector<Scalar>> rows_of(const ProjSubspace& s) { return s.basis().row_vectors(); }

}  // namespace

TEST(ProjectiveSpace, JoinAndMeetObeyGrassmannFormula) {
  const FieldPtr f = Field::prime(7);
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const int a = static_cast<int>(rng() % 4), b = static_cast<int>(rng() % 4);
    const auto s = ProjSubspace::random(f, 5, a, rng), u = ProjSubspace::random(f, 5, b, rng);
    auto all = rows_of(s);
    for (const auto& r : rows_of(u)) all.push_back(r);
    const int join_rank = oracle_rank(all, 7);
    EXPECT_EQ(join(s, u).dim(), join_rank - 1);
    EXPECT_EQ(meet(s, u).dim(), (a + 1) + (b + 1) - join_rank - 1);
    EXPECT_TRUE(join(s, u).contains(s));
    EXPECT_TRUE(s.contains(meet(s, u)));
    EXPECT_TRUE(u.contains(meet(s, u)));
  }
}

TEST(ProjectiveSpace, CoordinateSubspacesMeetAsExpected) {
  const FieldPtr q = Field::rationals();
  const auto a = ProjSubspace::coordinate(q, 5, {0, 1, 2}), b = ProjSubspace::coordinate(q, 5, {2, 3, 4});
  EXPECT_EQ(meet(a, b).dim(), 0);
  EXPECT_EQ(join(a, b).dim(), 4);
  EXPECT_TRUE(meet(ProjSubspace::coordinate(q, 5, {0, 1}), ProjSubspace::coordinate(q, 5, {2, 3})).empty());
}

TEST(ProjectiveSpace, PlueckerRoundTrip) {
  const FieldPtr f = Field::prime(11);
  Rng rng(22);
  for (int t = 0; t < 200; ++t) {
    const auto l = ProjSubspace::random(f, 5, 1, rng);
    const PlueckerPoint x = pluecker_of_line(l);
    EXPECT_TRUE(grassmannian_membership(x));
    EXPECT_TRUE(grassmannian_membership_by_rank(x));
    EXPECT_EQ(line_of_pluecker(x), l);
  }
}

TEST(ProjectiveSpace, PlueckerCoordinatesAreTwoByTwoMinors) {
  const FieldPtr f = Field::prime(13);
  Rng rng(23);
  for (int t = 0; t < 100; ++t) {
    const auto l = ProjSubspace::random(f, 5, 1, rng);
    const auto u = l.basis_vector(0), v = l.basis_vector(1);
    const auto w = wedge(u, v);
    for (int k = 0; k < 15; ++k) {
      const auto [i, j] = kPairs[k];
      const oracle::i64 minor = oracle::mod(static_cast<oracle::i64>(u[i].coeff(0) * v[j].coeff(0)) - static_cast<oracle::i64>(u[j].coeff(0) * v[i].coeff(0)), 13);
      EXPECT_EQ(w[k].coeff(0), static_cast<std::uint64_t>(minor));
    }
  }
}

TEST(ProjectiveSpace, RelationsAndRankAgreeOnRandomPoints) {
  const FieldPtr f = Field::prime(3);
  Rng rng(24);
  int inside = 0;
  for (int t = 0; t < 2000; ++t) {
    std::vector<Scalar> c;
    for (int k = 0; k < 15; ++k) c.push_back(Scalar::random(f, rng));
    if (std::all_of(c.begin(), c.end(), [](const Scalar& x) { return x.is_zero(); })) continue;
    // sparse points hit the Grassmannian often enough to test both branches
    if (t % 2)
      for (int k = 0; k < 15; ++k)
        if (rng() % 3) c[k] = Scalar::zero(f);
    if (std::all_of(c.begin(), c.end(), [](const Scalar& x) { return x.is_zero(); })) continue;
    const PlueckerPoint x(c);
    const bool by_rank = oracle::rank_mod(oracle::to_ints(SkewMatrix::from_coefficients(f, c).matrix()), 3) <= 2;
    EXPECT_EQ(grassmannian_membership(x), by_rank);
    EXPECT_EQ(grassmannian_membership_by_rank(x), by_rank);
    inside += by_rank;
  }
  EXPECT_GT(inside, 10);
}

TEST(ProjectiveSpace, PairingIsTheBilinearFormOfTheComplex) {
  const FieldPtr f = Field::prime(101);
  Rng rng(25);
  for (int t = 0; t < 100; ++t) {
    const SkewMatrix a = SkewMatrix::random(f, 6, rng);
    const auto l = ProjSubspace::random(f, 5, 1, rng);
    const auto u = l.basis_vector(0), v = l.basis_vector(1);
    // u^T A v summed by hand
    oracle::i64 s = 0;
    const auto m = oracle::to_ints(a.matrix());
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) s = oracle::mod(s + static_cast<oracle::i64>(u[i].coeff(0)) * m[i][j] % 101 * static_cast<oracle::i64>(v[j].coeff(0)), 101);
    EXPECT_EQ(bilinear(a, u, v).coeff(0), static_cast<std::uint64_t>(s));
    EXPECT_EQ(pairing(a.coefficients(), wedge(u, v)), bilinear(a, u, v));
  }
}

TEST(ProjectiveSpace, ZeroVectorIsNotAPoint) {
  const FieldPtr f = Field::prime(5);
  EXPECT_THROW(PlueckerPoint(std::vector<Scalar>(15, Scalar::zero(f))), PreconditionError);
  EXPECT_THROW(PlueckerPoint(std::vector<Scalar>(14, Scalar::one(f))), PreconditionError);
}
