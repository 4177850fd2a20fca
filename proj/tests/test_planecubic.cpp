#include <gtest/gtest.h>

#include <fstream>

#include "lcx/json_io.hpp"
#include "oracles.hpp"

using namespace lcx;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(LCX_SOURCE_DIR) + "/corpus/" + name);
  return json::parse(in);
}

/// y^2 z = x^3 - x z^2 with O = (0:1:0), read from the corpus.
PlaneCubic anchor(const FieldPtr& f) {
  const json j = load("anchor_cubic.json");
  return PlaneCubic(f, vector_from_json(f, j["coefficients"], 10), vector_from_json(f, j["base_point"], 3));
}

Point2 pt(const FieldPtr& f, std::int64_t x, std::int64_t y, std::int64_t z) { return {Scalar::from_int(f, x), Scalar::from_int(f, y), Scalar::from_int(f, z)}; }

std::vector<oracle::i64> int_coeffs(const PlaneCubic& c) {
  std::vector<oracle::i64> out;
  for (const auto& x : c.coefficients()) out.push_back(static_cast<oracle::i64>(x.coeff(0)));
  return out;
}

}  // namespace

TEST(PlaneCubic, AnchorCubicIsSmoothAndSingularCubicIsNot) {
  Rng rng(51);
  for (std::uint64_t p : {3, 5, 7, 11, 101}) EXPECT_TRUE(is_smooth(anchor(Field::prime(p)), rng).smooth) << p;
  EXPECT_TRUE(is_smooth(anchor(Field::rationals()), rng).smooth);
  // cuspidal y^2 z = x^3, singular at (0:0:1)
  const FieldPtr f = Field::prime(13);
  std::vector<Scalar> c(10, Scalar::zero(f));
  c[0] = Scalar::from_int(f, -1);
  c[7] = Scalar::one(f);
  const auto rep = is_smooth(PlaneCubic(f, c, pt(f, 0, 1, 0)), rng);
  EXPECT_FALSE(rep.smooth);
  ASSERT_TRUE(rep.singular_point.has_value());
  EXPECT_TRUE(PlaneCubic::same_point(*rep.singular_point, pt(f, 0, 0, 1)));
}

TEST(PlaneCubic, PointCountsMatchExhaustiveScan) {
  Rng rng(52);
  for (std::uint64_t p : {3, 5, 7, 11, 13, 31}) {
    const FieldPtr f = Field::prime(p);
    const PlaneCubic c = anchor(f);
    EXPECT_EQ(static_cast<oracle::i64>(rational_points(c, rng).size()), oracle::cubic_point_count(int_coeffs(c), static_cast<oracle::i64>(p)));
    for (int t = 0; t < 5; ++t) {
      std::vector<Scalar> r;
      std::vector<oracle::i64> ri;
      for (int i = 0; i < 10; ++i) {
        r.push_back(Scalar::random(f, rng));
        ri.push_back(static_cast<oracle::i64>(r.back().coeff(0)));
      }
      if (std::all_of(ri.begin(), ri.end(), [](oracle::i64 x) { return x == 0; })) continue;
      EXPECT_EQ(static_cast<oracle::i64>(rational_points(f, r, rng).size()), oracle::cubic_point_count(ri, static_cast<oracle::i64>(p)));
    }
  }
}

TEST(PlaneCubic, GroupLawAxioms) {
  const FieldPtr f = Field::prime(101);
  Rng rng(53);
  const PlaneCubic c = anchor(f);
  const auto pts = rational_points(c, rng);
  ASSERT_GT(pts.size(), 50u);
  const Point2& o = c.base_point();
  for (int t = 0; t < 200; ++t) {
    const Point2 &a = pts[rng() % pts.size()], &b = pts[rng() % pts.size()], &d = pts[rng() % pts.size()];
    EXPECT_TRUE(PlaneCubic::same_point(c.add(c.add(a, b), d), c.add(a, c.add(b, d))));
    EXPECT_TRUE(PlaneCubic::same_point(c.add(a, b), c.add(b, a)));
    EXPECT_TRUE(PlaneCubic::same_point(c.add(a, o), a));
    EXPECT_TRUE(PlaneCubic::same_point(c.add(a, c.neg(a)), o));
    EXPECT_TRUE(c(c.add(a, b)).is_zero());
  }
  // the order of every point divides the group order
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(PlaneCubic::same_point(c.mul(static_cast<std::int64_t>(pts.size()), pts[rng() % pts.size()]), o));
}

TEST(PlaneCubic, TwoTorsionOfTheAnchorIsFull) {
  Rng rng(54);
  const FieldPtr f = Field::prime(11);
  const PlaneCubic c = anchor(f);
  const TwoTorsion tt = two_torsion(c, rng);
  ASSERT_TRUE(tt.full());
  // O and the three roots of x^3 - x on y = 0
  for (const auto& want : {pt(f, 0, 1, 0), pt(f, 0, 0, 1), pt(f, 1, 0, 1), pt(f, -1, 0, 1)}) {
    bool found = false;
    for (const auto& k : tt.classes) found = found || PlaneCubic::same_point(k.point, want);
    EXPECT_TRUE(found);
  }
}

TEST(PlaneCubic, HalvingsMatchBruteForce) {
  Rng rng(55);
  const FieldPtr f = Field::prime(31);
  const PlaneCubic c = anchor(f);
  const auto pts = rational_points(c, rng);
  const HalvingTable table(c, rng);
  for (int t = 0; t < 30; ++t) {
    const Point2 target = c.dbl(pts[rng() % pts.size()]);
    std::size_t brute = 0;
    for (const auto& p : pts) brute += PlaneCubic::same_point(c.add(p, p), target);
    const auto h = halvings(c, {0, target}, rng);
    EXPECT_EQ(h.size(), brute);
    EXPECT_EQ(table.halvings(target).size(), brute);
    EXPECT_EQ(brute, 4u);  // full rational 2-torsion
    for (const auto& p : h) EXPECT_TRUE(PlaneCubic::same_point(c.dbl(p), target));
  }
  EXPECT_THROW(halvings(c, {1, c.base_point()}, rng), PreconditionError);
}

TEST(PlaneCubic, LineSectionsHaveTheHyperplaneClass) {
  Rng rng(56);
  const FieldPtr f = Field::prime(13);
  const PlaneCubic c = anchor(f);
  for (int t = 0; t < 40; ++t) {
    std::vector<Scalar> a{Scalar::random(f, rng), Scalar::random(f, rng), Scalar::random(f, rng)};
    if (a[0].is_zero() && a[1].is_zero() && a[2].is_zero()) continue;
    const LineSection ls = line_section(c, a, rng);
    EXPECT_EQ(ls.degree(), 3);
    const PlaneCubic big = ls.embedding ? c.embedded(*ls.embedding) : c;
    EXPECT_EQ(class_of_divisor(big, ls.points), hyperplane_class(big));
  }
}

TEST(PlaneCubic, PolarConicTouchesAtThePoleAndResidualTangentsPassThroughIt) {
  Rng rng(57);
  const FieldPtr f = Field::prime(101);
  const PlaneCubic c = anchor(f);
  const auto pts = rational_points(c, rng);
  int checked = 0;
  for (int t = 0; t < 20; ++t) {
    const Point2& k = pts[rng() % pts.size()];
    const PolarContact pc = polar_contact(c, k, rng);
    int deg = pc.irrational_degree;
    for (const auto& d : pc.divisor) deg += d.multiplicity;
    EXPECT_EQ(deg, 6);
    for (const auto& r : pc.residual) {
      // the tangent at r passes through k
      const auto g = c.gradient(r.point);
      EXPECT_TRUE((g[0] * k[0] + g[1] * k[1] + g[2] * k[2]).is_zero());
      ++checked;
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(PlaneCubic, BadInputsAreRejected) {
  const FieldPtr f = Field::prime(7);
  EXPECT_THROW(PlaneCubic(f, std::vector<Scalar>(10, Scalar::zero(f)), pt(f, 0, 1, 0)), PreconditionError);
  EXPECT_THROW(PlaneCubic(f, std::vector<Scalar>(9, Scalar::one(f)), pt(f, 0, 1, 0)), PreconditionError);
  EXPECT_THROW(anchor(f).with_base_point(pt(f, 1, 1, 1)), PreconditionError);
}
