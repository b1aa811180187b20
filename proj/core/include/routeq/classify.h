#ifndef ROUTEQ_CLASSIFY_H_
#define ROUTEQ_CLASSIFY_H_

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "routeq/network.h"
#include "routeq/sp_tree.h"

namespace routeq {

struct SingleCommoditySP {
  SPTree tree;
};

struct BlockMatching {
  std::vector<BlockRepresentation> representations;  // One per commodity.
};

struct NonSeriesParallel {
  std::size_t commodity;
  NonSPWitness witness;
};

// Blocks B (of G_i) and D (of G_j) overlap without being equal.
struct NonBlockMatching {
  std::size_t first_commodity;
  std::size_t second_commodity;
  std::size_t first_block_index;
  std::size_t second_block_index;
  Block first_block;
  Block second_block;
};

using Classification = std::variant<SingleCommoditySP, BlockMatching,
                                    NonSeriesParallel, NonBlockMatching>;

std::string ClassificationTag(const Classification& c);

// Conforming means the positive results apply: SP for one commodity,
// block-matching for several.
inline bool IsConforming(const Classification& c) {
  return std::holds_alternative<SingleCommoditySP>(c) ||
         std::holds_alternative<BlockMatching>(c);
}

struct ClassificationResult {
  Classification outcome;
  std::vector<Network> subnetworks;  // G_k per commodity.
  // Edges that lie on no commodity's simple paths. They are ignored by the
  // classification.
  std::vector<EdgeId> dead_edges;
};

// NonSeriesParallel beats NonBlockMatching; ties go to the lowest commodity
// index, then block order.
ClassificationResult ClassifyNetwork(const Network& net,
                                     const std::vector<CommoditySpec>& cs,
                                     std::size_t cap = kDefaultPathCap);

}  // namespace routeq

#endif  // ROUTEQ_CLASSIFY_H_
