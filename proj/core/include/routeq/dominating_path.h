#ifndef ROUTEQ_DOMINATING_PATH_H_
#define ROUTEQ_DOMINATING_PATH_H_

#include "routeq/network.h"
#include "routeq/sp_tree.h"

namespace routeq {

// Given two feasible flows x and y on the SP network described by `tree`,
// routing d1 and d2 units with d1 >= d2 and d1 > 0, returns an s-t path P
// with x_e > 0 and x_e >= y_e on every edge of P.
//
// Throws Error(kInfeasibleFlow) when either flow is negative, violates
// conservation by more than 1e-9, or when d1 < d2 or d1 <= 0.
Path FindDominatingPath(const SPTree& tree, const EdgeFlows& x,
                        const EdgeFlows& y);

}  // namespace routeq

#endif  // ROUTEQ_DOMINATING_PATH_H_
