#include "routeq/equilibrium.h"

#include <cmath>
#include <limits>
#include <map>

#include "path_model.h"

namespace routeq {
namespace internal {

PathModel BuildPathModel(const Instance& inst, std::size_t cap) {
  PathModel m;
  m.inst = &inst;
  const Network& net = inst.network;
  for (const Edge& e : net.edges()) {
    auto it = inst.functions.find(e.id);
    if (it == inst.functions.end()) {
      throw Error(ErrorCode::kMissingEdge,
                  "no functions for edge '" + e.id + "'");
    }
    m.fns.push_back(&it->second);
  }
  for (const Commodity& c : inst.commodities) {
    m.paths.emplace_back();
    m.edges.emplace_back();
    if (c.classes.empty()) continue;
    auto s = net.VertexIndex(c.spec.source);
    auto t = net.VertexIndex(c.spec.sink);
    if (!s || !t) {
      throw Error(ErrorCode::kInvalidInstance,
                  "commodity terminal missing from network");
    }
    for (auto& idx : EnumerateSimplePathIndices(net, *s, *t, cap)) {
      Path p;
      for (std::size_t e : idx) p.push_back(net.edges()[e].id);
      m.paths.back().push_back(std::move(p));
      m.edges.back().push_back(std::move(idx));
    }
    if (m.paths.back().empty()) {
      throw Error(ErrorCode::kEmptySubnetwork,
                  "no path from '" + c.spec.source + "' to '" + c.spec.sink +
                      "'");
    }
  }
  return m;
}

std::vector<double> EdgeLoads(const PathModel& m, const PathAmounts& x) {
  std::vector<double> loads(m.fns.size(), 0.0);
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (const auto& cls : x[k]) {
      for (std::size_t p = 0; p < cls.size(); ++p) {
        if (cls[p] == 0) continue;
        for (std::size_t e : m.edges[k][p]) loads[e] += cls[p];
      }
    }
  }
  return loads;
}

EdgeValues EvalEdges(const PathModel& m, const std::vector<double>& loads) {
  EdgeValues v;
  v.latency.resize(loads.size());
  v.deviation.resize(loads.size());
  for (std::size_t e = 0; e < loads.size(); ++e) {
    double x = std::max(0.0, loads[e]);
    v.latency[e] = m.fns[e]->latency.Eval(x);
    v.deviation[e] = m.fns[e]->deviation.Eval(x);
  }
  return v;
}

void CheckTolerances(double eps, double used_threshold) {
  if (!(eps >= 0) || !(used_threshold >= 0)) {
    throw Error(ErrorCode::kInvalidInstance,
                "eps and the used-path threshold must be nonnegative");
  }
}

EquilibriumReport VerifyAmounts(const PathModel& m, const PathAmounts& x,
                                double eps, double used_threshold) {
  EquilibriumReport rep;
  rep.eps = eps;
  EdgeValues v = EvalEdges(m, EdgeLoads(m, x));
  const Instance& inst = *m.inst;
  for (std::size_t k = 0; k < inst.commodities.size(); ++k) {
    const auto& classes = inst.commodities[k].classes;
    rep.class_costs.emplace_back();
    for (std::size_t i = 0; i < classes.size(); ++i) {
      double r = classes[i].r;
      std::vector<double> cost(m.paths[k].size());
      std::size_t best = 0;
      for (std::size_t p = 0; p < cost.size(); ++p) {
        cost[p] = PathCostAt(v, m.edges[k][p], r);
        if (cost[p] < cost[best]) best = p;
      }
      double weighted = 0, total = 0;
      for (std::size_t p = 0; p < cost.size(); ++p) {
        double a = x[k][i][p];
        if (a > 0) {
          weighted += a * cost[p];
          total += a;
        }
        if (a <= used_threshold) continue;
        double gap = cost[p] - cost[best];
        if (!rep.worst || gap > rep.worst->gap) {
          rep.worst = WardropViolation{k, i, m.paths[k][p], m.paths[k][best],
                                       gap};
        }
      }
      rep.class_costs.back().push_back(total > 0 ? weighted / total : 0.0);
    }
  }
  rep.worst_gap = rep.worst ? std::max(0.0, rep.worst->gap) : 0.0;
  rep.is_equilibrium = rep.worst_gap <= eps;
  return rep;
}

ClassFlow ToClassFlow(const PathModel& m, const PathAmounts& x) {
  ClassFlow flow;
  for (std::size_t k = 0; k < x.size(); ++k) {
    CommodityFlow cf;
    cf.paths = m.paths[k];
    cf.class_amounts = x[k];
    flow.push_back(std::move(cf));
  }
  return flow;
}

}  // namespace internal

namespace {

constexpr double kDemandTol = 1e-9;

// Aligns flow onto the model's path order.
internal::PathAmounts Align(const internal::PathModel& m,
                            const ClassFlow& flow) {
  const Instance& inst = *m.inst;
  internal::PathAmounts x(inst.commodities.size());
  for (std::size_t k = 0; k < inst.commodities.size(); ++k) {
    std::map<Path, std::size_t> index;
    for (std::size_t p = 0; p < m.paths[k].size(); ++p) index[m.paths[k][p]] = p;
    std::size_t nc = inst.commodities[k].classes.size();
    x[k].assign(nc, std::vector<double>(m.paths[k].size(), 0.0));
    for (std::size_t i = 0; i < nc; ++i) {
      for (std::size_t p = 0; p < flow[k].paths.size(); ++p) {
        double a = flow[k].class_amounts[i][p];
        if (a == 0) continue;
        auto it = index.find(flow[k].paths[p]);
        if (it == index.end()) {
          throw Error(ErrorCode::kInfeasibleFlow,
                      "flow uses a path outside the commodity's path set");
        }
        x[k][i][it->second] += a;
      }
    }
  }
  return x;
}

}  // namespace

void CheckFeasible(const Instance& inst, const ClassFlow& flow) {
  if (flow.size() != inst.commodities.size()) {
    throw Error(ErrorCode::kInfeasibleFlow,
                "flow has " + std::to_string(flow.size()) +
                    " commodities, instance has " +
                    std::to_string(inst.commodities.size()));
  }
  for (std::size_t k = 0; k < flow.size(); ++k) {
    const Commodity& c = inst.commodities[k];
    const CommodityFlow& cf = flow[k];
    std::string name = "commodity " + std::to_string(k);
    if (cf.class_amounts.size() != c.classes.size()) {
      throw Error(ErrorCode::kInfeasibleFlow, name + ": class count mismatch");
    }
    for (const Path& p : cf.paths) {
      if (!inst.network.IsSimplePath(p, c.spec.source, c.spec.sink)) {
        throw Error(ErrorCode::kInfeasibleFlow,
                    name + ": not a simple source-sink path");
      }
    }
    for (std::size_t i = 0; i < c.classes.size(); ++i) {
      const auto& amounts = cf.class_amounts[i];
      if (amounts.size() != cf.paths.size()) {
        throw Error(ErrorCode::kInfeasibleFlow,
                    name + ": amount list does not match path list");
      }
      double sum = 0;
      for (double a : amounts) {
        if (!(a >= 0)) {
          throw Error(ErrorCode::kInfeasibleFlow, name + ": negative amount");
        }
        sum += a;
      }
      double d = c.classes[i].amount;
      if (std::abs(sum - d) > kDemandTol * std::max(1.0, d)) {
        throw Error(ErrorCode::kInfeasibleFlow,
                    name + ": class " + std::to_string(i) +
                        " routes a different amount than its demand");
      }
    }
  }
}

EdgeFlows ComputeEdgeFlows(const Instance& inst, const ClassFlow& flow) {
  CheckFeasible(inst, flow);
  EdgeFlows out;
  for (const Edge& e : inst.network.edges()) out[e.id] = 0.0;
  for (const CommodityFlow& cf : flow) {
    for (const auto& amounts : cf.class_amounts) {
      for (std::size_t p = 0; p < cf.paths.size(); ++p) {
        for (const EdgeId& e : cf.paths[p]) out[e] += amounts[p];
      }
    }
  }
  return out;
}

EquilibriumReport VerifyEquilibrium(const Instance& inst, const ClassFlow& flow,
                                    double eps, double used_threshold,
                                    std::size_t cap) {
  internal::CheckTolerances(eps, used_threshold);
  CheckFeasible(inst, flow);
  internal::PathModel m = internal::BuildPathModel(inst, cap);
  return internal::VerifyAmounts(m, Align(m, flow), eps, used_threshold);
}

namespace {

std::vector<std::vector<double>> ClassCosts(const Instance& inst,
                                            const ClassFlow& flow) {
  EdgeFlows f = ComputeEdgeFlows(inst, flow);
  std::vector<std::vector<double>> out;
  for (std::size_t k = 0; k < flow.size(); ++k) {
    out.emplace_back();
    const auto& classes = inst.commodities[k].classes;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      double weighted = 0, total = 0;
      for (std::size_t p = 0; p < flow[k].paths.size(); ++p) {
        double a = flow[k].class_amounts[i][p];
        if (a <= 0) continue;
        weighted +=
            a * PathCost(inst.functions, f, flow[k].paths[p], classes[i].r);
        total += a;
      }
      out.back().push_back(total > 0 ? weighted / total : 0.0);
    }
  }
  return out;
}

}  // namespace

double HeterogeneousTotalCost(const Instance& inst, const ClassFlow& flow) {
  auto costs = ClassCosts(inst, flow);
  double total = 0;
  for (std::size_t k = 0; k < costs.size(); ++k) {
    for (std::size_t i = 0; i < costs[k].size(); ++i) {
      total += inst.commodities[k].classes[i].amount * costs[k][i];
    }
  }
  return total;
}

double HomogeneousTotalCost(const Instance& inst, const ClassFlow& flow) {
  for (const Commodity& c : inst.commodities) {
    if (c.classes.size() > 1) {
      throw Error(ErrorCode::kNotHomogeneous,
                  "commodity '" + c.spec.source + "'->'" + c.spec.sink +
                      "' has " + std::to_string(c.classes.size()) +
                      " classes");
    }
  }
  return HeterogeneousTotalCost(inst, flow);
}

std::string VerdictName(Verdict v) {
  switch (v) {
    case Verdict::kHelps:
      return "Helps";
    case Verdict::kHurts:
      return "Hurts";
    case Verdict::kTies:
      return "Ties";
  }
  return "Unknown";
}

VerdictResult DiversityVerdict(const Instance& inst, const SolverConfig& cfg,
                               double tie_tol) {
  VerdictResult out;
  out.homogenized = Homogenize(inst);
  try {
    out.heterogeneous = SolveEquilibrium(inst, cfg);
  } catch (NoConvergence& e) {
    e.stage = "heterogeneous";
    throw;
  }
  try {
    out.homogeneous = SolveEquilibrium(out.homogenized, cfg);
  } catch (NoConvergence& e) {
    e.stage = "homogeneous";
    throw;
  }
  out.heterogeneous_cost = HeterogeneousTotalCost(inst, out.heterogeneous.flow);
  out.homogeneous_cost =
      HomogeneousTotalCost(out.homogenized, out.homogeneous.flow);
  if (out.heterogeneous_cost > out.homogeneous_cost + tie_tol) {
    out.verdict = Verdict::kHurts;
  } else if (out.heterogeneous_cost < out.homogeneous_cost - tie_tol) {
    out.verdict = Verdict::kHelps;
  } else {
    out.verdict = Verdict::kTies;
  }
  return out;
}

}  // namespace routeq
