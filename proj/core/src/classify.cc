#include "routeq/classify.h"

#include <set>

#include "routeq/error.h"

namespace routeq {

std::string ClassificationTag(const Classification& c) {
  switch (c.index()) {
    case 0:
      return "SingleCommoditySP";
    case 1:
      return "BlockMatching";
    case 2:
      return "NonSeriesParallel";
    default:
      return "NonBlockMatching";
  }
}

ClassificationResult ClassifyNetwork(const Network& net,
                                     const std::vector<CommoditySpec>& cs,
                                     std::size_t cap) {
  if (cs.empty()) {
    throw Error(ErrorCode::kInvalidInstance, "at least one commodity needed");
  }
  ClassificationResult result;
  std::set<EdgeId> live;
  for (const CommoditySpec& c : cs) {
    result.subnetworks.push_back(CommoditySubnetwork(net, c, cap));
    for (const Edge& e : result.subnetworks.back().edges()) live.insert(e.id);
  }
  for (const Edge& e : net.edges()) {
    if (!live.count(e.id)) result.dead_edges.push_back(e.id);
  }

  std::vector<SPTree> trees;
  for (std::size_t k = 0; k < cs.size(); ++k) {
    SPResult r = SpDecompose(result.subnetworks[k], cs[k].source, cs[k].sink);
    if (auto* w = std::get_if<NonSPWitness>(&r)) {
      result.outcome = NonSeriesParallel{k, std::move(*w)};
      return result;
    }
    trees.push_back(std::get<SPTree>(std::move(r)));
  }
  if (cs.size() == 1) {
    result.outcome = SingleCommoditySP{trees.front()};
    return result;
  }

  BlockMatching bm;
  for (const SPTree& t : trees) {
    bm.representations.push_back(MakeBlockRepresentation(t));
  }
  for (std::size_t i = 0; i < cs.size(); ++i) {
    for (std::size_t j = i + 1; j < cs.size(); ++j) {
      auto mismatch =
          BlocksMatch(bm.representations[i], bm.representations[j]);
      if (!mismatch) continue;
      const auto& bi = bm.representations[i].blocks[mismatch->first_block];
      const auto& bj = bm.representations[j].blocks[mismatch->second_block];
      result.outcome = NonBlockMatching{
          i, j, mismatch->first_block, mismatch->second_block, bi, bj};
      return result;
    }
  }
  result.outcome = std::move(bm);
  return result;
}

}  // namespace routeq
