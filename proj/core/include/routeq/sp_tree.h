#ifndef ROUTEQ_SP_TREE_H_
#define ROUTEQ_SP_TREE_H_

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "routeq/network.h"

namespace routeq {

// Series-parallel decomposition tree. Nested Series nodes and nested Parallel
// nodes are always flattened, so a Series node's children are Leaf or
// Parallel nodes and vice versa.
struct SPTree {
  enum class Kind { kLeaf, kSeries, kParallel };

  Kind kind = Kind::kLeaf;
  EdgeId edge;  // Leaf only.
  VertexId source;
  VertexId sink;
  std::vector<SPTree> children;

  static SPTree Leaf(EdgeId edge, VertexId source, VertexId sink);
  // Both builders flatten same-kind children; a single child is returned
  // unchanged. Parallel children are ordered by their smallest edge id.
  static SPTree Series(std::vector<SPTree> parts);
  static SPTree Parallel(std::vector<SPTree> parts);

  // Edge ids in traversal order (series order, parallel children in order).
  std::vector<EdgeId> Edges() const;
  std::size_t NumEdges() const;
  // Compact textual form, e.g. "(a;(b|c))". Used to name kernel edges.
  std::string Label() const;

  bool operator==(const SPTree&) const = default;
};

// What is left when series and parallel reductions stall before reaching a
// single s-t edge. Kernel edges are named by the Label() of the sub-tree they
// stand for; `parts` maps each kernel edge id to that sub-tree.
struct NonSPWitness {
  Network kernel;
  std::map<EdgeId, SPTree> parts;
};

using SPResult = std::variant<SPTree, NonSPWitness>;

// Reduction-based recognition. Expects net to be its own commodity
// subnetwork for (s, t).
SPResult SpDecompose(const Network& net, const VertexId& s, const VertexId& t);

inline bool IsSeriesParallel(const SPResult& r) {
  return std::holds_alternative<SPTree>(r);
}

struct Block {
  VertexId source;
  VertexId sink;
  std::vector<EdgeId> edges;  // Sorted.
  SPTree tree;

  bool operator==(const Block&) const = default;
};

// s B_1 v_1 B_2 ... v_{b-1} B_b t.
struct BlockRepresentation {
  std::vector<Block> blocks;
  std::vector<VertexId> separators;

  bool operator==(const BlockRepresentation&) const = default;
};

BlockRepresentation MakeBlockRepresentation(const SPTree& tree);

struct BlockMismatch {
  std::size_t first_block;   // Index into the first representation.
  std::size_t second_block;  // Index into the second representation.
};

// nullopt when every pair of blocks has equal or disjoint edge sets;
// otherwise the first offending pair in block order.
std::optional<BlockMismatch> BlocksMatch(const BlockRepresentation& a,
                                         const BlockRepresentation& b);

}  // namespace routeq

#endif  // ROUTEQ_SP_TREE_H_
