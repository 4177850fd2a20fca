#include <gtest/gtest.h>

#include <fstream>

#include "lcx/json_io.hpp"
#include "oracles.hpp"

using namespace lcx;

namespace {

Net corpus_net(const std::string& name) {
  std::ifstream in(std::string(LCX_SOURCE_DIR) + "/corpus/" + name);
  const json j = json::parse(in);
  return net_from_json(parse_field(j["field"]), j["net"]);
}

/// |X(F_p)| by brute force: points x where the 6x3 matrix [A1 x | A2 x | A3 x] has rank < 3.
oracle::i64 scroll_points_oracle(const Net& d, oracle::i64 p) {
  std::vector<oracle::IntMatrix> ms;
  for (const auto& m : d.matrices()) ms.push_back(oracle::to_ints(m.matrix()));
  oracle::i64 count = 0;
  oracle::for_each_projective_point(5, p, [&](const std::vector<oracle::i64>& x) {
    oracle::IntMatrix cols(6, std::vector<oracle::i64>(3, 0));
    for (int k = 0; k < 3; ++k)
      for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) cols[r][k] = (cols[r][k] + ms[k][r][c] * x[c]) % p;
    count += oracle::rank_mod(cols, p) < 3;
  });
  return count;
}

std::vector<oracle::i64> int_coeffs(const std::vector<Scalar>& c) {
  std::vector<oracle::i64> out;
  for (const auto& x : c) out.push_back(static_cast<oracle::i64>(x.coeff(0)));
  return out;
}

}  // namespace

TEST(NetScroll, CubicCoefficientsMatchPointwisePfaffians) {
  const FieldPtr f = Field::prime(13);
  Rng rng(61);
  const Net d = Net::random(f, rng);
  const auto c = int_coeffs(net_cubic_coefficients(d));
  oracle::for_each_projective_point(2, 13, [&](const std::vector<oracle::i64>& l) {
    const oracle::i64 x = l[0], y = l[1], z = l[2];
    const oracle::i64 mons[10] = {x * x * x, x * x * y, x * x * z, x * y * y, x * y * z, x * z * z, y * y * y, y * y * z, y * z * z, z * z * z};
    oracle::i64 v = 0;
    for (int i = 0; i < 10; ++i) v = oracle::mod(v + c[i] * mons[i], 13);
    const auto m = d.member({Scalar::from_int(f, x), Scalar::from_int(f, y), Scalar::from_int(f, z)});
    EXPECT_EQ(v, oracle::pfaffian_matchings(oracle::to_ints(m.matrix()), 13));
  });
}

TEST(NetScroll, ScrollCountMatchesBruteForceF7) {
  Rng rng(62);
  const Net d = corpus_net("net_F7.json");
  const ScrollCount sc = count_scroll_points(d, rng);
  const oracle::i64 x = scroll_points_oracle(d, 7);
  const oracle::i64 c = oracle::cubic_point_count(int_coeffs(net_cubic_coefficients(d)), 7);
  EXPECT_EQ(static_cast<oracle::i64>(sc.x_count), x);
  EXPECT_EQ(static_cast<oracle::i64>(sc.c_count), c);
  EXPECT_EQ(x, 8 * c);
  EXPECT_TRUE(sc.fibered);
  EXPECT_TRUE(sc.all_rank_four);
  EXPECT_TRUE(sc.fibres_disjoint);
  EXPECT_EQ(sc.points_scanned, 19608u);  // (7^6 - 1) / 6
}

TEST(NetScroll, ScrollCountOverNonPrimeField) {
  Rng rng(63);
  const FieldPtr f = Field::finite(3, 2);
  Net d = Net::random(f, rng);
  while (net_type(d, rng).type != NetType::general) d = Net::random(f, rng);
  const ScrollCount sc = count_scroll_points(d, rng);
  EXPECT_TRUE(sc.fibered);
  EXPECT_EQ(sc.x_count, 10 * sc.c_count);
}

TEST(NetScroll, MembershipAgreesWithFibres) {
  Rng rng(64);
  const Net d = corpus_net("net_F101.json");
  const GenericMorphism phi = d.morphism();
  const auto pts = rational_points(d.field(), net_cubic_coefficients(d), rng);
  ASSERT_GT(pts.size(), 10u);
  for (int t = 0; t < 10; ++t) {
    const ProjSubspace fb = scroll_fiber(d, pts[t]);
    ASSERT_EQ(fb.dim(), 1);
    for (int s = 0; s < 5; ++s) EXPECT_TRUE(x_membership(phi, fb.random_point(rng)));
  }
  int outside = 0;
  for (int t = 0; t < 50; ++t) outside += !x_membership(phi, ProjSubspace::coordinate(d.field(), 5, {0, 1, 2, 3, 4, 5}).random_point(rng));
  EXPECT_GT(outside, 40);
  std::vector<Scalar> off{Scalar::one(d.field()), Scalar::zero(d.field()), Scalar::zero(d.field())};
  if (!pfaffian(d.member(off)).is_zero()) EXPECT_THROW(scroll_fiber(d, off), PreconditionError);
}

TEST(NetScroll, GenericMorphismValidation) {
  const FieldPtr f = Field::prime(7);
  Rng rng(65);
  const SkewMatrix a = SkewMatrix::random(f, 6, rng);
  EXPECT_THROW(GenericMorphism(5, {a, a}), PreconditionError);
  EXPECT_THROW(GenericMorphism(5, {SkewMatrix::random(f, 5, rng)}), PreconditionError);
  const GenericMorphism phi = GenericMorphism::random(f, 4, 2, rng);
  EXPECT_EQ(phi.m(), 2);
}

TEST(NetScroll, DegreeProbeStabilizesAtSix) {
  Rng rng(66);
  const Net d = corpus_net("net_F11.json");
  std::size_t mx = 0;
  for (const auto& t : degree_probe(d, 15, rng)) {
    if (!t.non_generic) EXPECT_LE(t.stabilized, 6u);
    mx = std::max(mx, t.stabilized);
  }
  EXPECT_EQ(mx, 6u);
}

TEST(NetScroll, DirectrixPlanesAreIsotropicAndUnisecant) {
  Rng rng(67);
  const Net d = corpus_net("net_F101.json");
  const DirectrixReport dr = directrix_planes(d, rng);
  ASSERT_EQ(dr.planes.size(), 2u);
  EXPECT_FALSE(dr.infinite_family);
  const Net big = dr.embedding ? d.embedded(*dr.embedding) : d;
  for (const auto& w : dr.planes) {
    EXPECT_EQ(w.dim(), 2);
    for (const auto& a : big.matrices())
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) EXPECT_TRUE(bilinear(a, w.basis_vector(i), w.basis_vector(j)).is_zero());
    for (const auto& [p, l] : rank_four_fibres(d, rng, 10)) EXPECT_TRUE(unisecant(w, dr.embedding ? l.embedded(*dr.embedding) : l));
  }
  EXPECT_TRUE(meet(dr.planes[0], dr.planes[1]).empty());
}

TEST(NetScroll, RestrictedFibreHasDimensionThree) {
  Rng rng(68);
  const Net d = corpus_net("net_F101.json");
  const DirectrixReport dr = directrix_planes(d, rng);
  ASSERT_EQ(dr.planes.size(), 2u);
  const Net big = dr.embedding ? d.embedded(*dr.embedding) : d;
  std::vector<ProjSubspace> lines;
  for (const auto& [p, l] : rank_four_fibres(d, rng, 30)) lines.push_back(dr.embedding ? l.embedded(*dr.embedding) : l);
  ASSERT_EQ(lines.size(), 30u);
  const std::vector<ProjSubspace> scroll(lines.begin() + 5, lines.end());
  for (int k = 0; k < 5; ++k) {
    const RestrictedFibre rf = restricted_fiber_dim(big, lines[k], dr.planes, scroll);
    EXPECT_EQ(rf.projective_dim, 3);
    EXPECT_FALSE(rf.common_member_for_lines);
    EXPECT_EQ(restricted_fiber_dim(big, lines[k], {}, {}).projective_dim, 5);
  }
}

TEST(NetScroll, NetTypeDetection) {
  Rng rng(69);
  EXPECT_EQ(net_type(corpus_net("net_F11.json"), rng).type, NetType::general);
  const Net t2 = corpus_net("net_type2_F7.json");
  const auto rep = net_type(t2, rng);
  EXPECT_EQ(rep.type, NetType::contains_second_type);
  ASSERT_TRUE(rep.witness.has_value());
  EXPECT_LE(rep.witness->rank(), 2);
  EXPECT_TRUE(has_rank2_point_by_scan(t2, rng));
  // the scan over F_7, F_49 and F_343 agrees with the conic test on random nets
  const FieldPtr f = Field::prime(7);
  for (int t = 0; t < 5; ++t) {
    const Net d = Net::random(f, rng);
    if (net_type(d, rng).type == NetType::general) EXPECT_FALSE(has_rank2_point_by_scan(d, rng));
  }
}

TEST(NetScroll, BlockDiagonalNetContainsSecondTypeMembers) {
  Rng rng(70);
  const FieldPtr f = Field::prime(11);
  const Net d(Complex(SkewMatrix::elementary(f, 6, 0, 1)), Complex(SkewMatrix::elementary(f, 6, 2, 3)), Complex(SkewMatrix::elementary(f, 6, 4, 5)));
  EXPECT_EQ(net_type(d, rng).type, NetType::contains_second_type);
}

TEST(NetScroll, TypeTwoSingularSpaceLiesOnX) {
  Rng rng(71);
  const Net d = corpus_net("net_type2_F7.json");
  const TypeTwoLocus r = type2_singular_locus_check(d, rng);
  EXPECT_EQ(r.space_points, 400u);
  EXPECT_EQ(r.space_points_in_x, 400u);
  EXPECT_EQ(static_cast<oracle::i64>(r.x_count), scroll_points_oracle(d, 7));
  EXPECT_TRUE(r.decomposition_holds);
}
