#ifndef ROUTEQ_INSTANCE_H_
#define ROUTEQ_INSTANCE_H_

#include <vector>

#include "routeq/cost_fn.h"
#include "routeq/network.h"

namespace routeq {

struct DemandClass {
  double r = 0;
  double amount = 0;

  bool operator==(const DemandClass&) const = default;
};

// A commodity with no classes is a zero-demand commodity.
struct Commodity {
  CommoditySpec spec;
  std::vector<DemandClass> classes;

  double TotalDemand() const;
  // Demand-weighted mean of r. Throws kZeroDemand for zero demand.
  double MeanR() const;

  bool operator==(const Commodity&) const = default;
};

struct Instance {
  Network network;
  EdgeFunctions functions;
  std::vector<Commodity> commodities;

  double MaxR() const;
  std::vector<CommoditySpec> Specs() const;

  bool operator==(const Instance&) const = default;
};

// Throws Error(kInvalidInstance) naming the first problem: unknown or
// identical terminals, negative r, non-positive amounts, edges without
// functions (or functions without edges), or a monotonicity violation at
// r in {0, MaxR()}.
void ValidateInstance(const Instance& inst);

// Replaces each commodity's classes by one class carrying the total demand
// at the mean r. Zero-demand commodities pass through unchanged.
Instance Homogenize(const Instance& inst);

// True iff all commodities with positive demand share the same mean r
// (tolerance 1e-9). Throws kZeroDemand when no commodity has demand.
bool IsAverageRespecting(const Instance& inst);

}  // namespace routeq

#endif  // ROUTEQ_INSTANCE_H_
