#include "routeq/dominating_path.h"

#include <cmath>
#include <map>

#include "routeq/error.h"

namespace routeq {
namespace {

constexpr double kFlowTol = 1e-9;

double FlowOf(const EdgeFlows& f, const EdgeId& e) {
  auto it = f.find(e);
  return it == f.end() ? 0.0 : it->second;
}

void CollectLeaves(const SPTree& t, std::vector<const SPTree*>* out) {
  if (t.kind == SPTree::Kind::kLeaf) {
    out->push_back(&t);
    return;
  }
  for (const SPTree& c : t.children) CollectLeaves(c, out);
}

// Net outflow of the tree's source; throws on conservation failures.
double CheckFlow(const std::vector<const SPTree*>& leaves, const SPTree& tree,
                 const EdgeFlows& f, const char* name) {
  std::map<VertexId, double> balance;
  for (const SPTree* l : leaves) {
    double v = FlowOf(f, l->edge);
    if (v < 0) {
      throw Error(ErrorCode::kInfeasibleFlow, std::string(name) +
                                                  " is negative on edge '" +
                                                  l->edge + "'");
    }
    balance[l->source] -= v;
    balance[l->sink] += v;
  }
  for (const auto& [v, b] : balance) {
    if (v == tree.source || v == tree.sink) continue;
    if (std::abs(b) > kFlowTol) {
      throw Error(ErrorCode::kInfeasibleFlow, std::string(name) +
                                                  " violates conservation at '" +
                                                  v + "'");
    }
  }
  return -balance[tree.source];
}

double ChildOutflow(const SPTree& child, const EdgeFlows& f) {
  std::vector<const SPTree*> leaves;
  CollectLeaves(child, &leaves);
  double sum = 0;
  for (const SPTree* l : leaves) {
    if (l->source == child.source) sum += FlowOf(f, l->edge);
  }
  return sum;
}

void Descend(const SPTree& t, const EdgeFlows& x, const EdgeFlows& y,
             Path* out) {
  switch (t.kind) {
    case SPTree::Kind::kLeaf:
      out->push_back(t.edge);
      return;
    case SPTree::Kind::kSeries:
      for (const SPTree& c : t.children) Descend(c, x, y, out);
      return;
    case SPTree::Kind::kParallel: {
      const SPTree* best = nullptr;
      double best_margin = 0;
      for (const SPTree& c : t.children) {
        double xc = ChildOutflow(c, x);
        if (xc <= 0) continue;
        double margin = xc - ChildOutflow(c, y);
        if (!best || margin > best_margin) {
          best = &c;
          best_margin = margin;
        }
      }
      if (!best) {
        throw Error(ErrorCode::kInfeasibleFlow,
                    "no parallel branch carries x-flow");
      }
      Descend(*best, x, y, out);
      return;
    }
  }
}

}  // namespace

Path FindDominatingPath(const SPTree& tree, const EdgeFlows& x,
                        const EdgeFlows& y) {
  std::vector<const SPTree*> leaves;
  CollectLeaves(tree, &leaves);
  double d1 = CheckFlow(leaves, tree, x, "x");
  double d2 = CheckFlow(leaves, tree, y, "y");
  if (d1 <= 0) {
    throw Error(ErrorCode::kInfeasibleFlow, "x routes no flow");
  }
  if (d1 < d2 - kFlowTol) {
    throw Error(ErrorCode::kInfeasibleFlow, "x routes less than y");
  }
  Path p;
  Descend(tree, x, y, &p);
  return p;
}

}  // namespace routeq
