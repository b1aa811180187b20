#include "generators.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "routeq/network.h"

namespace routeq::testing {
namespace {

double Uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t Index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

// Rounds to a multiple of 1/8 so test instances stay readable.
double Eighths(double v) { return std::round(v * 8) / 8; }

}  // namespace

SpNetwork RandomSpNetwork(Rng& rng, std::size_t num_edges,
                          const std::string& prefix, const VertexId& s,
                          const VertexId& t) {
  SpNetwork out{{{prefix + "e0", s, t}}, s, t};
  std::size_t next_vertex = 0;
  std::size_t next_edge = 1;
  while (out.edges.size() < std::max<std::size_t>(1, num_edges)) {
    std::size_t i = Index(rng, out.edges.size());
    Edge e = out.edges[i];
    if (std::bernoulli_distribution(0.5)(rng)) {
      VertexId mid = prefix + "v" + std::to_string(next_vertex++);
      out.edges[i] = {prefix + "e" + std::to_string(next_edge++), e.tail, mid};
      out.edges.push_back(
          {prefix + "e" + std::to_string(next_edge++), mid, e.head});
    } else {
      out.edges.push_back(
          {prefix + "e" + std::to_string(next_edge++), e.tail, e.head});
    }
  }
  return out;
}

CostFn RandomLatency(Rng& rng) {
  switch (Index(rng, 4)) {
    case 0:
      return CostFn::Constant(Eighths(Uniform(rng, 0, 3)));
    case 1:
      return CostFn::Affine(Eighths(Uniform(rng, 0, 3)),
                            Eighths(Uniform(rng, 0, 2)));
    default:
      break;
  }
  std::size_t n = 2 + Index(rng, 3);
  std::vector<double> xs{0}, ys{Eighths(Uniform(rng, 0, 2))};
  for (std::size_t i = 1; i < n; ++i) {
    xs.push_back(xs.back() + Eighths(Uniform(rng, 0.25, 1.5)));
    // Flat pieces are allowed.
    ys.push_back(ys.back() + Eighths(Uniform(rng, 0, 3)));
  }
  return CostFn::PiecewiseLinear(xs, ys, 0, Eighths(Uniform(rng, 0, 4)));
}

CostFn RandomDeviation(Rng& rng, const CostFn& latency, double r_max) {
  std::vector<double> xs = latency.Breakpoints();
  xs.erase(std::remove_if(xs.begin(), xs.end(), [](double x) { return x < 0; }),
           xs.end());
  if (xs.empty() || xs.front() > 0) xs.insert(xs.begin(), 0.0);
  auto slope_bound = [&](double x) {
    double s = latency.RightSlope(x);
    return r_max > 0 ? -s / r_max : 0.0;
  };
  std::vector<double> ys{Eighths(Uniform(rng, 0, 3))};
  for (std::size_t i = 1; i < xs.size(); ++i) {
    double dx = xs[i] - xs[i - 1];
    // Stay nonnegative.
    double lo = std::max(slope_bound(xs[i - 1]), -ys.back() / dx);
    double slope = Uniform(rng, lo, 2.0);
    ys.push_back(std::max(0.0, ys.back() + slope * dx));
  }
  double last = Uniform(rng, std::max(0.0, slope_bound(xs.back())), 2.0);
  return CostFn::PiecewiseLinear(xs, ys, 0, last);
}

std::vector<DemandClass> RandomClasses(Rng& rng, std::size_t max_classes) {
  std::size_t n = 2 + Index(rng, std::max<std::size_t>(1, max_classes - 1));
  std::vector<DemandClass> out;
  std::set<double> rs;
  while (out.size() < n) {
    double r = Eighths(Uniform(rng, 0, 4));
    if (!rs.insert(r).second) continue;
    out.push_back({r, Eighths(Uniform(rng, 0.125, 1.5))});
  }
  return out;
}

std::vector<DemandClass> RandomClassesWithMean(Rng& rng,
                                               std::size_t max_classes,
                                               double mean) {
  for (;;) {
    std::vector<DemandClass> cs = RandomClasses(rng, max_classes);
    double d = 0, moment = 0;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      d += cs[i].amount;
      moment += cs[i].r * cs[i].amount;
    }
    DemandClass& last = cs.back();
    d += last.amount;
    last.r = (mean * d - moment) / last.amount;
    bool distinct = false;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      distinct |= std::abs(cs[i].r - last.r) > 1e-9;
    }
    if (last.r >= 0 && last.r <= 6 && distinct) return cs;
  }
}

void AssignRandomFunctions(Rng& rng, Instance* inst) {
  double r_max = inst->MaxR();
  for (const Edge& e : inst->network.edges()) {
    CostFn l = RandomLatency(rng);
    CostFn s = std::bernoulli_distribution(0.3)(rng)
                   ? CostFn::Constant(Eighths(Uniform(rng, 0, 2)))
                   : RandomDeviation(rng, l, r_max);
    inst->functions[e.id] = {l, s};
  }
}

Instance RandomSpInstance(Rng& rng, std::size_t max_edges,
                          std::size_t max_classes) {
  SpNetwork sp = RandomSpNetwork(rng, 1 + Index(rng, max_edges), "", "s", "t");
  Instance inst;
  inst.network = Network::FromEdges(sp.edges);
  inst.commodities = {Commodity{{"s", "t"}, RandomClasses(rng, max_classes)}};
  AssignRandomFunctions(rng, &inst);
  return inst;
}

Instance RandomBlockMatchingInstance(Rng& rng, std::size_t max_classes) {
  std::size_t num_blocks = 2 + Index(rng, 3);
  std::vector<Edge> edges;
  std::vector<VertexId> sep;
  for (std::size_t b = 0; b <= num_blocks; ++b) {
    sep.push_back("c" + std::to_string(b));
  }
  for (std::size_t b = 0; b < num_blocks; ++b) {
    SpNetwork blk = RandomSpNetwork(rng, 1 + Index(rng, 4),
                                    "b" + std::to_string(b) + "_", sep[b],
                                    sep[b + 1]);
    edges.insert(edges.end(), blk.edges.begin(), blk.edges.end());
  }
  // Commodity 2 joins at sep[i] and leaves at sep[j], i < j.
  std::size_t i = Index(rng, num_blocks);
  std::size_t j = i + 1 + Index(rng, num_blocks - i);
  SpNetwork in = RandomSpNetwork(rng, 1 + Index(rng, 3), "in_", "s2", sep[i]);
  SpNetwork out = RandomSpNetwork(rng, 1 + Index(rng, 3), "out_", sep[j], "t2");
  edges.insert(edges.end(), in.edges.begin(), in.edges.end());
  edges.insert(edges.end(), out.edges.begin(), out.edges.end());

  Instance inst;
  inst.network = Network::FromEdges(edges);
  double mean = Eighths(Uniform(rng, 0.5, 2.5));
  inst.commodities = {
      Commodity{{sep.front(), sep.back()},
                RandomClassesWithMean(rng, max_classes, mean)},
      Commodity{{"s2", "t2"}, RandomClassesWithMean(rng, max_classes, mean)},
  };
  AssignRandomFunctions(rng, &inst);
  return inst;
}

EdgeFlows RandomDyadicFlow(Rng& rng, const SPTree& tree,
                           const std::vector<Path>& paths, double demand) {
  EdgeFlows f;
  for (const EdgeId& e : tree.Edges()) f[e] = 0;
  constexpr int kUnits = 64;
  // Concentrate on a few paths so some edges stay empty.
  std::size_t k = 1 + Index(rng, std::min<std::size_t>(paths.size(), 4));
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < k; ++i) chosen.push_back(Index(rng, paths.size()));
  for (int u = 0; u < kUnits; ++u) {
    const Path& p = paths[chosen[Index(rng, chosen.size())]];
    for (const EdgeId& e : p) f[e] += demand / kUnits;
  }
  return f;
}

Network TwoCommodityBlockNetwork() {
  return Network::FromEdges({
      {"a_direct", "s1", "u"},
      {"a_in", "s1", "a1"},
      {"a_out", "a1", "u"},
      {"b_direct", "u", "v"},
      {"b_in", "u", "x"},
      {"b_out", "x", "v"},
      {"c", "v", "w"},
      {"d_hi", "w", "t1"},
      {"d_lo", "w", "t1"},
      {"e", "s2", "w"},
      {"f", "t1", "u"},
      {"g", "v", "t2"},
  });
}

Network ThreePathNetwork() {
  return Network::FromEdges({{"e1", "s1", "t1"},
                             {"s1x", "s1", "x"},
                             {"e2", "x", "y"},
                             {"yt1", "y", "t1"},
                             {"s2x", "s2", "x"},
                             {"yt2", "y", "t2"}});
}

Network BraessGraph() {
  return Network::FromEdges({{"su", "s", "u"},
                             {"ut", "u", "t"},
                             {"uv", "u", "v"},
                             {"sv", "s", "v"},
                             {"vt", "v", "t"}});
}

}  // namespace routeq::testing
