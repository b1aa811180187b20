#include <gtest/gtest.h>

#include <cmath>

#include "generators.h"
#include "oracles.h"
#include "routeq/cost_fn.h"
#include "routeq/error.h"

namespace routeq {
namespace {

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::kInvalidNetwork;
}

TEST(CostFnEval, Constant) { EXPECT_EQ(CostFn::Constant(3).Eval(7), 3); }

TEST(CostFnEval, Affine) { EXPECT_EQ(CostFn::Affine(1, 0).Eval(0.5), 0.5); }

TEST(CostFnEval, InterpolatesBetweenAnchors) {
  CostFn f = CostFn::MonotoneThrough({{1, 3}, {1.25, 9}});
  EXPECT_DOUBLE_EQ(f.Eval(1.125), 6);
}

TEST(CostFnEval, NegativeFlowRejected) {
  EXPECT_EQ(CodeOf([] { CostFn::Constant(1).Eval(-1e-3); }),
            ErrorCode::kNegativeFlow);
}

TEST(CostFnEval, ExplicitExtensionSlopes) {
  CostFn f = CostFn::PiecewiseLinear({1, 2}, {1, 3}, 0.5, 4);
  EXPECT_DOUBLE_EQ(f.Eval(0), 0.5);
  EXPECT_DOUBLE_EQ(f.Eval(3), 7);
  EXPECT_DOUBLE_EQ(f.RightSlope(1.5), 2);
  EXPECT_DOUBLE_EQ(f.RightSlope(2), 4);
  EXPECT_DOUBLE_EQ(f.RightSlope(0.2), 0.5);
}

TEST(MonotoneThrough, HitsAnchorsAndExtendsSteeply) {
  CostFn f = CostFn::MonotoneThrough({{1, 3}, {1.25, 9}});
  EXPECT_DOUBLE_EQ(f.Eval(1), 3);
  EXPECT_DOUBLE_EQ(f.Eval(1.25), 9);
  // Adjacent segment slope is 24 on both sides.
  EXPECT_DOUBLE_EQ(f.Eval(0.5), -9);
  EXPECT_DOUBLE_EQ(f.Eval(2), 27);
}

TEST(MonotoneThrough, WheatstoneDesignAnchors) {
  CostFn h = CostFn::MonotoneThrough({{0.5, 1}, {0.75, 1.375}});
  EXPECT_DOUBLE_EQ(h.Eval(0.5), 1);
  EXPECT_DOUBLE_EQ(h.Eval(0.75), 1.375);
  EXPECT_DOUBLE_EQ(h.Eval(0), 0.25);
  EXPECT_DOUBLE_EQ(h.RightSlope(2), 1.5);
}

TEST(MonotoneThrough, SingleAnchorIsAffineThroughIt) {
  CostFn f = CostFn::MonotoneThrough({{0, 0}}, 1);
  for (double x : {0.0, 0.3, 2.0, 17.5}) EXPECT_DOUBLE_EQ(f.Eval(x), x);
}

TEST(MonotoneThrough, MinSlopeAppliesToFlatterSegments) {
  CostFn f = CostFn::MonotoneThrough({{1, 1}, {3, 2}}, 2);
  EXPECT_DOUBLE_EQ(f.Eval(0), -1);
  EXPECT_DOUBLE_EQ(f.Eval(4), 4);
}

TEST(MonotoneThrough, RejectsBadAnchors) {
  EXPECT_EQ(CodeOf([] { CostFn::MonotoneThrough({{1, 3}, {1, 4}}); }),
            ErrorCode::kNonMonotoneAnchors);
  EXPECT_EQ(CodeOf([] { CostFn::MonotoneThrough({{1, 3}, {2, 3}}); }),
            ErrorCode::kNonMonotoneAnchors);
  EXPECT_EQ(CodeOf([] { CostFn::MonotoneThrough({{1, 3}}, 0); }),
            ErrorCode::kNonMonotoneAnchors);
  EXPECT_EQ(CodeOf([] { CostFn::MonotoneThrough({}); }),
            ErrorCode::kNonMonotoneAnchors);
}

TEST(MonotoneThrough, PassesMonotonicityWithZeroDeviation) {
  testing::Rng rng(3);
  std::uniform_real_distribution<double> step(0.01, 2);
  for (int i = 0; i < 200; ++i) {
    std::vector<std::pair<double, double>> pts{{step(rng), step(rng)}};
    for (int k = 0; k < 1 + i % 4; ++k) {
      pts.push_back({pts.back().first + step(rng),
                     pts.back().second + step(rng)});
    }
    CostFn f = CostFn::MonotoneThrough(pts, step(rng));
    EdgeFunctions fns{{"e", {f, CostFn::Constant(0)}}};
    EXPECT_TRUE(ValidateMonotonicity(fns, 5).empty());
    for (auto [x, y] : pts) EXPECT_NEAR(f.Eval(x), y, 1e-12);
  }
}

TEST(CostFnEval, LipschitzUnderDenseSampling) {
  testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    CostFn f = testing::RandomLatency(rng);
    double lip = std::abs(f.RightSlope(0));
    for (double b : f.Breakpoints()) {
      if (b >= 0) lip = std::max(lip, std::abs(f.RightSlope(b)));
    }
    double prev = f.Eval(0);
    for (int k = 1; k <= 2000; ++k) {
      double x = k * 0.004;
      double cur = f.Eval(x);
      EXPECT_LE(std::abs(cur - prev), lip * 0.004 + 1e-12);
      EXPECT_NEAR(cur, testing::OracleEval(f, x), 1e-12);
      prev = cur;
    }
  }
}

TEST(PathCost, ThreePathInstanceAtHeterogeneousFlow) {
  Instance inst = testing::ThreePathInstance();
  EdgeFlows f{{"e1", 0.75}, {"e2", 1.25}, {"s1x", 0.25},
              {"yt1", 0.25}, {"s2x", 1},  {"yt2", 1}};
  EXPECT_DOUBLE_EQ(PathCost(inst.functions, f, {"e1"}, 0), 1);
  EXPECT_DOUBLE_EQ(PathCost(inst.functions, f, {"s1x", "e2", "yt1"}, 4), 9);
  EXPECT_DOUBLE_EQ(PathCost(inst.functions, f, {"e1"}, 4), 9);
}

TEST(PathCost, EmptyPathCostsNothing) {
  EXPECT_EQ(PathCost({}, {}, {}, 3), 0);
}

TEST(PathCost, MissingFunctions) {
  EXPECT_EQ(CodeOf([] { PathCost({}, {}, {"nope"}, 0); }),
            ErrorCode::kMissingEdge);
}

TEST(PathCost, AdditiveAndMonotone) {
  testing::Rng rng(9);
  for (int i = 0; i < 100; ++i) {
    Instance inst = testing::RandomSpInstance(rng, 12, 3);
    std::vector<Path> paths =
        EnumerateSimplePaths(inst.network, "s", "t");
    std::uniform_real_distribution<double> amt(0, 3);
    EdgeFlows f;
    for (const Edge& e : inst.network.edges()) f[e.id] = amt(rng);
    double r = inst.MaxR() * amt(rng) / 3;
    for (const Path& p : paths) {
      double whole = PathCost(inst.functions, f, p, r);
      std::size_t cut = p.size() / 2;
      Path a(p.begin(), p.begin() + cut), b(p.begin() + cut, p.end());
      EXPECT_NEAR(whole,
                  PathCost(inst.functions, f, a, r) +
                      PathCost(inst.functions, f, b, r),
                  1e-9);
      EXPECT_NEAR(whole, testing::OraclePathCost(inst, f, p, r), 1e-9);
      EdgeFlows g = f;
      g[p.front()] += 0.5;
      EXPECT_GE(PathCost(inst.functions, g, p, r), whole - 1e-12);
    }
  }
}

TEST(ValidateMonotonicity, ConstantsAreFine) {
  EdgeFunctions fns{{"e", {CostFn::Constant(1), CostFn::Constant(2)}}};
  EXPECT_TRUE(ValidateMonotonicity(fns, 4).empty());
}

TEST(ValidateMonotonicity, SteepDecreasingDeviationFails) {
  EdgeFunctions fns{{"e", {CostFn::Affine(1, 0), CostFn::Affine(-2, 5)}}};
  auto vs = ValidateMonotonicity(fns, 1);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].edge, "e");
  EXPECT_EQ(vs[0].r, 1);
  EXPECT_DOUBLE_EQ(vs[0].slope, -1);
}

TEST(ValidateMonotonicity, MildDecreasingDeviationAllowed) {
  EdgeFunctions fns{{"e", {CostFn::Affine(2, 0), CostFn::Affine(-1, 5)}}};
  EXPECT_TRUE(ValidateMonotonicity(fns, 1).empty());
}

TEST(ValidateMonotonicity, DecreasingLatencyFailsAtZero) {
  EdgeFunctions fns{
      {"e", {CostFn::PiecewiseLinear({0, 1, 2}, {0, 1, 0.5}, 0, 0),
             CostFn::Constant(0)}}};
  auto vs = ValidateMonotonicity(fns, 0);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].segment_begin, 1);
  EXPECT_EQ(vs[0].segment_end, 2);
}

TEST(ValidateMonotonicity, RandomDeviationsRespectBound) {
  testing::Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    CostFn l = testing::RandomLatency(rng);
    CostFn s = testing::RandomDeviation(rng, l, 3);
    EXPECT_TRUE(ValidateMonotonicity({{"e", {l, s}}}, 3).empty())
        << l.DebugString() << " / " << s.DebugString();
  }
}

}  // namespace
}  // namespace routeq
