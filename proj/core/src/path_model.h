#ifndef ROUTEQ_SRC_PATH_MODEL_H_
#define ROUTEQ_SRC_PATH_MODEL_H_

#include <vector>

#include "routeq/equilibrium.h"
#include "routeq/instance.h"

namespace routeq::internal {

// Enumerated path sets and edge incidence for an instance, by edge index.
struct PathModel {
  const Instance* inst = nullptr;
  std::vector<std::vector<Path>> paths;  // Empty for zero-demand commodities.
  std::vector<std::vector<std::vector<std::size_t>>> edges;
  std::vector<const EdgePair*> fns;  // Per edge index.
};

PathModel BuildPathModel(const Instance& inst, std::size_t cap);

// x[k][i][p]: amount of class i of commodity k on model path p.
using PathAmounts = std::vector<std::vector<std::vector<double>>>;

std::vector<double> EdgeLoads(const PathModel& m, const PathAmounts& x);

// Per-edge latency and deviation values at the given loads.
struct EdgeValues {
  std::vector<double> latency;
  std::vector<double> deviation;
};
EdgeValues EvalEdges(const PathModel& m, const std::vector<double>& loads);

inline double PathCostAt(const EdgeValues& v,
                         const std::vector<std::size_t>& path, double r) {
  double l = 0, s = 0;
  for (std::size_t e : path) {
    l += v.latency[e];
    s += v.deviation[e];
  }
  return l + r * s;
}

// Throws kInvalidInstance for a negative eps or threshold.
void CheckTolerances(double eps, double used_threshold);

EquilibriumReport VerifyAmounts(const PathModel& m, const PathAmounts& x,
                                double eps, double used_threshold);

ClassFlow ToClassFlow(const PathModel& m, const PathAmounts& x);

}  // namespace routeq::internal

#endif  // ROUTEQ_SRC_PATH_MODEL_H_
