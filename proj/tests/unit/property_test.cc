#include <gtest/gtest.h>

#include <algorithm>

#include "generators.h"
#include "oracles.h"
#include "routeq/classify.h"
#include "routeq/dominating_path.h"
#include "routeq/equilibrium.h"

namespace routeq {
namespace {

TEST(Property, SeriesParallelDiversityNeverHurts) {
  testing::Rng rng(101);
  for (int i = 0; i < 60; ++i) {
    Instance inst = testing::RandomSpInstance(rng, 20, 4);
    ASSERT_NO_THROW(ValidateInstance(inst));
    VerdictResult v = DiversityVerdict(inst, {});
    EXPECT_LE(v.heterogeneous_cost, v.homogeneous_cost + 1e-4)
        << "case " << i;
  }
}

TEST(Property, GeneratedTwoCommodityInstancesAreBlockMatching) {
  testing::Rng rng(103);
  for (int i = 0; i < 60; ++i) {
    Instance inst = testing::RandomBlockMatchingInstance(rng, 4);
    auto c = ClassifyNetwork(inst.network, inst.Specs());
    EXPECT_TRUE(std::holds_alternative<BlockMatching>(c.outcome))
        << ClassificationTag(c.outcome);
    EXPECT_TRUE(IsAverageRespecting(inst));
  }
}

TEST(Property, BlockMatchingAverageRespectingNeverHurts) {
  testing::Rng rng(107);
  for (int i = 0; i < 40; ++i) {
    Instance inst = testing::RandomBlockMatchingInstance(rng, 4);
    VerdictResult v = DiversityVerdict(inst, {});
    EXPECT_LE(v.heterogeneous_cost, v.homogeneous_cost + 1e-4)
        << "case " << i;
  }
}

TEST(Property, SolverOutputIsFeasibleAndVerified) {
  testing::Rng rng(109);
  for (int i = 0; i < 40; ++i) {
    Instance inst = testing::RandomBlockMatchingInstance(rng, 3);
    SolveResult s = SolveEquilibrium(inst, {});
    EXPECT_NO_THROW(CheckFeasible(inst, s.flow));
    EXPECT_TRUE(VerifyEquilibrium(inst, s.flow, 1e-6).is_equilibrium);
  }
}

TEST(Property, DominatingPathMatchesBruteForce) {
  testing::Rng rng(113);
  std::uniform_real_distribution<double> frac(0.1, 1.0);
  for (int i = 0; i < 200; ++i) {
    auto sp = testing::RandomSpNetwork(rng, 2 + i % 14, "", "s", "t");
    Network n = Network::FromEdges(sp.edges);
    SPTree tree = std::get<SPTree>(SpDecompose(n, "s", "t"));
    std::vector<Path> paths = testing::BruteForcePaths(n, "s", "t");
    double d1 = 1 + i % 3;
    EdgeFlows x = testing::RandomDyadicFlow(rng, tree, paths, d1);
    EdgeFlows y = testing::RandomDyadicFlow(rng, tree, paths, d1 * frac(rng));
    Path p = FindDominatingPath(tree, x, y);
    auto ok = testing::BruteForceDominating(paths, x, y);
    EXPECT_FALSE(ok.empty());
    EXPECT_NE(std::find(ok.begin(), ok.end(), p), ok.end()) << "case " << i;
  }
}

}  // namespace
}  // namespace routeq
