#include <gtest/gtest.h>

#include <filesystem>

#include "generators.h"
#include "oracles.h"
#include "routeq/adversarial.h"
#include "routeq/classify.h"
#include "routeq/error.h"
#include "routeq/io.h"

namespace routeq {
namespace {

namespace fs = std::filesystem;

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidNetwork;
}

const std::vector<DemandClass> kHalves{{0, 0.5}, {2, 0.5}};
const std::vector<DemandClass> kSkewed{{0, 0.75}, {4, 0.25}};

double MaxEdgeFlow(const HurtCertificate& c, const std::vector<EdgeId>& es) {
  double worst = 0;
  for (const SolveResult* s : {&c.solved.heterogeneous, &c.solved.homogeneous}) {
    const Instance& inst =
        s == &c.solved.heterogeneous ? c.instance : c.solved.homogenized;
    EdgeFlows f = ComputeEdgeFlows(inst, s->flow);
    for (const EdgeId& e : es) worst = std::max(worst, f.at(e));
  }
  return worst;
}

// r0 must satisfy (mean - r0) / 2 + d0 (r_min - r0) > 0 with d0 the demand
// at or below r0.
bool R0Feasible(const std::vector<DemandClass>& cs, R0Choice c) {
  double d = 0, mean = 0, rmin = cs.front().r, d0 = 0;
  for (const DemandClass& k : cs) d += k.amount;
  for (const DemandClass& k : cs) {
    mean += k.r * k.amount / d;
    rmin = std::min(rmin, k.r);
    if (k.r <= c.r0) d0 += k.amount / d;
  }
  return c.r0 >= rmin && c.r0 < mean && std::abs(d0 - c.d0) < 1e-12 &&
         d0 > 0 && (mean - c.r0) / 2 + d0 * (rmin - c.r0) > 0;
}

TEST(ChooseR0, Halves) {
  R0Choice c = ChooseR0(kHalves);
  EXPECT_DOUBLE_EQ(c.r0, 0.25);
  EXPECT_DOUBLE_EQ(c.d0, 0.5);
}

TEST(ChooseR0, Skewed) {
  R0Choice c = ChooseR0(kSkewed);
  EXPECT_LT(c.r0, 0.4);
  EXPECT_DOUBLE_EQ(c.d0, 0.75);
  EXPECT_TRUE(R0Feasible(kSkewed, c));
}

TEST(ChooseR0, SingleClass) {
  EXPECT_EQ(CodeOf([] { ChooseR0({{1, 1}}); }),
            ErrorCode::kNotStrictlyHeterogeneous);
  EXPECT_EQ(CodeOf([] { ChooseR0({{1, 0.5}, {1, 0.5}}); }),
            ErrorCode::kNotStrictlyHeterogeneous);
}

TEST(ChooseR0, FeasibleOnRandomClasses) {
  testing::Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    auto cs = testing::RandomClasses(rng, 5);
    EXPECT_TRUE(R0Feasible(cs, ChooseR0(cs)));
  }
}

TEST(BraessHurt, HalvesTotals) {
  HurtCertificate c = BraessHurt(kHalves);
  EXPECT_NEAR(c.solved.homogeneous_cost, 3.625, 1e-6);
  EXPECT_NEAR(c.solved.heterogeneous_cost, 3.875, 1e-4);
  EXPECT_EQ(c.solved.verdict, Verdict::kHurts);
  EXPECT_EQ(c.instance.network, testing::BraessGraph());
  EXPECT_DOUBLE_EQ(c.trace.constants.at("r0"), 0.25);
}

TEST(BraessHurt, HomogeneousCostFormulaAtMinimalR0) {
  // With r0 at r_min the homogeneous cost is 3 + (mean + r_min) / 2.
  std::vector<DemandClass> cs{{1, 0.5}, {3, 0.25}, {5, 0.25}};
  HurtCertificate c = BraessHurt(cs);
  double r0 = c.trace.constants.at("r0");
  EXPECT_NEAR(c.solved.homogeneous_cost, 3 + (2.5 + r0) / 2, 1e-6);
  EXPECT_GE(c.solved.heterogeneous_cost,
            3 + 2.5 + c.trace.constants.at("d0") * (1 - r0) - 1e-4);
}

TEST(BraessHurt, NotStrictlyHeterogeneous) {
  EXPECT_EQ(CodeOf([] { BraessHurt({{1, 1}}); }),
            ErrorCode::kNotStrictlyHeterogeneous);
}

TEST(BraessHurt, AnalyticBoundsOnRandomClasses) {
  testing::Rng rng(19);
  for (int i = 0; i < 30; ++i) {
    auto cs = testing::RandomClasses(rng, 4);
    HurtCertificate c = BraessHurt(cs);
    R0Choice r = ChooseR0(cs);
    double d = 0, mean = 0, rmin = cs.front().r;
    for (auto& k : cs) d += k.amount;
    for (auto& k : cs) {
      mean += k.r * k.amount / d;
      rmin = std::min(rmin, k.r);
    }
    // The instance carries the classes scaled to unit demand.
    EXPECT_NEAR(c.solved.homogeneous_cost, 3 + (mean + r.r0) / 2, 1e-6);
    EXPECT_GE(c.solved.heterogeneous_cost,
              3 + mean + r.d0 * (rmin - r.r0) - 1e-4);
    EXPECT_GT(c.gap(), 1e-6);
  }
}

TEST(BraessHurtAffine, HalvesUsesSlopeOneAndAHalf) {
  HurtCertificate c = BraessHurtAffine(kHalves);
  EXPECT_DOUBLE_EQ(c.trace.constants.at("A"), 0.75);
  const CostFn& h = c.instance.functions.at("su").latency;
  EXPECT_EQ(h.kind(), CostFn::Kind::kAffine);
  EXPECT_DOUBLE_EQ(h.Eval(0.5), 0.75);
  EXPECT_DOUBLE_EQ(h.Eval(0.75), 0.75 + 0.375);
  EXPECT_EQ(c.solved.verdict, Verdict::kHurts);
  EXPECT_NEAR(c.solved.heterogeneous_cost, 3.125, 1e-4);
  EXPECT_NEAR(c.solved.homogeneous_cost, 2.875, 1e-6);
}

TEST(EmbedBraess, OnBraessGraphMatchesBaseConstruction) {
  HurtCertificate base = BraessHurt(kHalves);
  HurtCertificate e = EmbedBraess(testing::BraessGraph(), "s", "t", kHalves);
  EXPECT_EQ(e.instance.functions, base.instance.functions);
  EXPECT_NEAR(e.gap(), base.gap(), 1e-4);
  EXPECT_TRUE(e.trace.blocked_edges.empty());
}

TEST(EmbedBraess, ChordGetsBlockingLatency) {
  Network n = testing::BraessGraph().WithEdge({"st", "s", "t"});
  HurtCertificate e = EmbedBraess(n, "s", "t", kHalves);
  EXPECT_EQ(e.instance.functions.at("st").latency, CostFn::Constant(8));
  EXPECT_EQ(e.trace.blocked_edges, (std::vector<EdgeId>{"st"}));
  EXPECT_EQ(e.solved.verdict, Verdict::kHurts);
  EXPECT_LT(MaxEdgeFlow(e, e.trace.blocked_edges), 1e-9);
}

TEST(EmbedBraess, FullySubdividedWheatstone) {
  Instance in = LoadInstanceFile(
      std::string(ROUTEQ_FIXTURE_DIR) + "/corpus/nonsp/subdiv_all.json",
      ParseMode::kNetworkOnly);
  HurtCertificate e = EmbedBraess(in.network, "s", "t", kHalves);
  EXPECT_NEAR(e.gap(), BraessHurt(kHalves).gap(), 1e-4);
}

TEST(EmbedBraess, SeriesParallelNotFound) {
  Network n = Network::FromEdges({{"a", "s", "t"}, {"b", "s", "t"}});
  EXPECT_EQ(CodeOf([&] { EmbedBraess(n, "s", "t", kHalves); }),
            ErrorCode::kNotFound);
}

TEST(TwoCommodityHurt, Totals) {
  HurtCertificate c = TwoCommodityHurt();
  EXPECT_NEAR(c.solved.heterogeneous_cost, 12, 1e-6);
  EXPECT_NEAR(c.solved.homogeneous_cost, 6, 1e-6);
  EXPECT_TRUE(IsAverageRespecting(c.instance));
  EXPECT_EQ(c.instance, testing::ThreePathInstance());
}

TEST(NonBlockMatchingHurt, ThreePathNetworkReproducesTwoCommodityCertificate) {
  HurtCertificate c = NonBlockMatchingHurt(testing::ThreePathNetwork(),
                                           {{"s1", "t1"}, {"s2", "t2"}});
  HurtCertificate ref = TwoCommodityHurt();
  EXPECT_NEAR(c.solved.heterogeneous_cost, 12, 1e-6);
  EXPECT_NEAR(c.solved.homogeneous_cost, 6, 1e-6);
  EXPECT_EQ(c.trace.edges.at("e1"), "e1");
  EXPECT_EQ(c.trace.edges.at("e2"), "e2");
  EXPECT_EQ(c.instance.commodities, ref.instance.commodities);
}

TEST(NonBlockMatchingHurt, InnerEdgeNetwork) {
  Instance in = LoadInstanceFile(
      std::string(ROUTEQ_FIXTURE_DIR) + "/corpus/nonbm/inner_edge.json",
      ParseMode::kNetworkOnly);
  HurtCertificate c = NonBlockMatchingHurt(in.network, in.Specs());
  EXPECT_NEAR(c.gap(), 6, 1e-3);
  EXPECT_LT(MaxEdgeFlow(c, c.trace.blocked_edges), 1e-9);
  EXPECT_FALSE(c.trace.case_label.empty());
}

TEST(NonBlockMatchingHurt, ConformingInputRejected) {
  EXPECT_EQ(CodeOf([] {
              NonBlockMatchingHurt(testing::TwoCommodityBlockNetwork(),
                                   {{"s1", "t1"}, {"s2", "t2"}});
            }),
            ErrorCode::kClassifiedConforming);
}

TEST(NonBlockMatchingHurt, NonSeriesParallelDelegatesToEmbedding) {
  Network n = testing::BraessGraph().WithEdge({"xy", "x", "y"});
  HurtCertificate c = NonBlockMatchingHurt(n, {{"s", "t"}, {"x", "y"}});
  EXPECT_EQ(c.solved.verdict, Verdict::kHurts);
  EXPECT_TRUE(c.instance.commodities[1].classes.empty());
}

TEST(NonBlockMatchingHurt, CorpusInvariants) {
  for (const auto& entry : fs::directory_iterator(
           std::string(ROUTEQ_FIXTURE_DIR) + "/corpus/nonbm")) {
    Instance in =
        LoadInstanceFile(entry.path().string(), ParseMode::kNetworkOnly);
    HurtCertificate c = NonBlockMatchingHurt(in.network, in.Specs());
    EXPECT_NEAR(c.gap(), 6, 1e-3) << entry.path();
    EXPECT_LT(MaxEdgeFlow(c, c.trace.blocked_edges), 1e-9) << entry.path();
    // All of commodity 2 crosses e2 at both equilibria.
    const EdgeId& e2 = c.trace.edges.at("e2");
    for (const SolveResult* s :
         {&c.solved.heterogeneous, &c.solved.homogeneous}) {
      const CommodityFlow& cf = s->flow[1];
      double through = 0, total = 0;
      for (std::size_t p = 0; p < cf.paths.size(); ++p) {
        for (const auto& amounts : cf.class_amounts) {
          total += amounts[p];
          if (std::count(cf.paths[p].begin(), cf.paths[p].end(), e2)) {
            through += amounts[p];
          }
        }
      }
      EXPECT_GE(through, total * (1 - 1e-9)) << entry.path();
    }
  }
}

TEST(NonAverageRespectingExample, Totals) {
  HurtCertificate c = NonAverageRespectingExample();
  EXPECT_NEAR(c.solved.heterogeneous_cost, 12, 1e-6);
  EXPECT_NEAR(c.solved.homogeneous_cost, 4, 1e-6);
  EXPECT_FALSE(IsAverageRespecting(c.instance));
  EXPECT_EQ(c.instance, testing::MixedMeanInstance());
}

TEST(Certificates, AlwaysStrictlyHurt) {
  for (const HurtCertificate& c :
       {BraessHurt(kSkewed), BraessHurtAffine(kSkewed), TwoCommodityHurt(),
        NonAverageRespectingExample()}) {
    EXPECT_GT(c.gap(), 1e-6) << c.trace.kind;
  }
}

}  // namespace
}  // namespace routeq
