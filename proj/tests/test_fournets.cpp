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

/// Brute-force membership in X: [A1 x | A2 x | A3 x] has rank < 3, by the integer oracle.
bool on_scroll(const Net& d, const std::vector<Scalar>& x, oracle::i64 p) {
  oracle::IntMatrix cols(6, std::vector<oracle::i64>(3, 0));
  const auto ms = d.matrices();
  for (int k = 0; k < 3; ++k) {
    const auto m = oracle::to_ints(ms[k].matrix());
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) cols[r][k] = oracle::mod(cols[r][k] + m[r][c] * static_cast<oracle::i64>(x[c].coeff(0)), p);
  }
  return oracle::rank_mod(cols, p) < 3;
}

class FourNets : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    net_ = new Net(corpus_net("net_fournets_F11.json"));
    Rng rng(81);
    report_ = new FourNetsReport(companion_nets(*net_, rng));
  }
  static void TearDownTestSuite() {
    delete report_;
    delete net_;
  }
  static Net* net_;
  static FourNetsReport* report_;
};

Net* FourNets::net_ = nullptr;
FourNetsReport* FourNets::report_ = nullptr;

}  // namespace

TEST_F(FourNets, CorpusInstanceYieldsFourDistinctNets) {
  EXPECT_EQ(report_->torsion_classes_found, 4);
  ASSERT_EQ(report_->companion_nets.size(), 4u);
  EXPECT_TRUE(report_->self_recovered);
  EXPECT_TRUE(report_->pairwise_distinct);
  EXPECT_TRUE(report_->success());
  for (const auto& b : report_->branches) {
    EXPECT_TRUE(b.general);
    EXPECT_TRUE(b.cross.ok());
    EXPECT_EQ(b.span_rank, 3);
  }
}

TEST_F(FourNets, CompanionScrollsCoincidePointwise) {
  const oracle::i64 p = static_cast<oracle::i64>(net_->field()->order());
  Rng rng(82);
  const auto pts = rank_four_points(*net_, rng);
  const auto sample = sample_scroll_points(*net_, pts, 40, rng);
  ASSERT_EQ(sample.size(), 40u);
  for (const auto& cn : report_->companion_nets) {
    EXPECT_EQ(net_type(cn, rng).type, NetType::general);
    for (const auto& x : sample) EXPECT_TRUE(on_scroll(cn, x, p));
  }
  // a random net does not share the scroll
  const Net other = Net::random(net_->field(), rng);
  int shared = 0;
  for (const auto& x : sample) shared += on_scroll(other, x, p);
  EXPECT_LT(shared, 40);
}

TEST_F(FourNets, CompanionCubicsAreSmooth) {
  Rng rng(83);
  for (const auto& cn : report_->companion_nets) EXPECT_TRUE(is_smooth(net_pfaffian_cubic(cn), rng).smooth);
}

TEST_F(FourNets, GammaComplexesLieInTheFibreOfTheirLine) {
  Rng rng(84);
  const FourNetsContext ctx(*net_, rng);
  const auto tt = two_torsion(ctx.cubic(), rng);
  ASSERT_TRUE(tt.full());
  const Point2 sh = hyperplane_class(ctx.cubic()).point;
  int built = 0;
  for (const auto& cls : tt.classes)
    for (int a = 0; a < 6 && built < 8; ++a) {
      const auto& k = ctx.rank_four_points()[uniform_below(rng, ctx.rank_four_points().size())];
      const GammaResult g = gamma_k(ctx, ctx.cubic().add(sh, cls.point), k, rng);
      if (!g.gamma) continue;
      ++built;
      EXPECT_EQ(g.restricted_solution_dim, 1);
      EXPECT_EQ(g.full_fiber_solution_dim, 3);
      EXPECT_EQ(g.halving_points.size(), 4u);
      const ProjSubspace line = singular_space(net_->member(k));
      EXPECT_TRUE(classify_complex(*g.gamma).singular_space.contains(line));
    }
  EXPECT_GE(built, 4);
}

TEST_F(FourNets, SeriesIdentitiesHold) {
  Rng rng(85);
  const FourNetsContext ctx(*net_, rng);
  const SeriesIdentities s = series_identities(ctx, rng, 6);
  EXPECT_GT(s.subpfaffian_points, 0);
  EXPECT_EQ(s.subpfaffian_ok, s.subpfaffian_points);
  EXPECT_GT(s.sum_series_trials, 0);
  EXPECT_EQ(s.sum_series_ok, s.sum_series_trials);
  EXPECT_EQ(s.g23_ok, s.g23_trials);
  EXPECT_GT(s.polar_trials, 0);
  EXPECT_EQ(s.polar_ok, s.polar_trials);
}

TEST_F(FourNets, SetOfNetsIsClosed) {
  Rng rng(86);
  for (const auto& cn : report_->companion_nets) {
    if (cn.plane() == net_->plane()) continue;
    EXPECT_TRUE(same_net_set(companion_nets(cn, rng).companion_nets, report_->companion_nets));
    break;
  }
}

TEST(FourNetsSearch, InstanceSearchIsDeterministic) {
  const auto a = find_four_nets_instance(5, {11, 13}), b = find_four_nets_instance(5, {11, 13});
  ASSERT_TRUE(a.has_value());
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(a->q, b->q);
  EXPECT_TRUE(a->net.plane() == b->net.plane());
  Rng rng(87);
  EXPECT_TRUE(two_torsion(net_pfaffian_cubic(a->net), rng).full());
}

TEST(FourNetsSearch, NetsWithoutASmoothCubicAreRejected) {
  const FieldPtr f = Field::prime(11);
  Rng rng(88);
  const Net d(Complex(SkewMatrix::elementary(f, 6, 0, 1) + SkewMatrix::elementary(f, 6, 2, 3) + SkewMatrix::elementary(f, 6, 4, 5)),
              Complex(SkewMatrix::elementary(f, 6, 0, 1) + Scalar::from_int(f, 2) * SkewMatrix::elementary(f, 6, 2, 3) + Scalar::from_int(f, 3) * SkewMatrix::elementary(f, 6, 4, 5)),
              Complex(SkewMatrix::elementary(f, 6, 0, 1) + Scalar::from_int(f, 4) * SkewMatrix::elementary(f, 6, 2, 3) + Scalar::from_int(f, 9) * SkewMatrix::elementary(f, 6, 4, 5)));
  // the cubic of a block-diagonal net is a product of three linear forms
  EXPECT_FALSE(is_smooth(net_pfaffian_cubic(d), rng).smooth);
  EXPECT_THROW(FourNetsContext(d, rng), PreconditionError);
}
