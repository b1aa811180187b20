#include "routeq/sp_tree.h"

#include <algorithm>
#include <set>

#include "routeq/error.h"

namespace routeq {
namespace {

const EdgeId& SmallestEdge(const SPTree& t) {
  if (t.kind == SPTree::Kind::kLeaf) return t.edge;
  const EdgeId* best = &SmallestEdge(t.children.front());
  for (std::size_t i = 1; i < t.children.size(); ++i) {
    const EdgeId& c = SmallestEdge(t.children[i]);
    if (c < *best) best = &c;
  }
  return *best;
}

void CollectEdges(const SPTree& t, std::vector<EdgeId>* out) {
  if (t.kind == SPTree::Kind::kLeaf) {
    out->push_back(t.edge);
    return;
  }
  for (const SPTree& c : t.children) CollectEdges(c, out);
}

}  // namespace

SPTree SPTree::Leaf(EdgeId edge, VertexId source, VertexId sink) {
  SPTree t;
  t.kind = Kind::kLeaf;
  t.edge = std::move(edge);
  t.source = std::move(source);
  t.sink = std::move(sink);
  return t;
}

SPTree SPTree::Series(std::vector<SPTree> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  SPTree t;
  t.kind = Kind::kSeries;
  for (SPTree& p : parts) {
    if (p.kind == Kind::kSeries) {
      for (SPTree& c : p.children) t.children.push_back(std::move(c));
    } else {
      t.children.push_back(std::move(p));
    }
  }
  t.source = t.children.front().source;
  t.sink = t.children.back().sink;
  return t;
}

SPTree SPTree::Parallel(std::vector<SPTree> parts) {
  if (parts.size() == 1) return std::move(parts.front());
  SPTree t;
  t.kind = Kind::kParallel;
  for (SPTree& p : parts) {
    if (p.kind == Kind::kParallel) {
      for (SPTree& c : p.children) t.children.push_back(std::move(c));
    } else {
      t.children.push_back(std::move(p));
    }
  }
  std::sort(t.children.begin(), t.children.end(),
            [](const SPTree& a, const SPTree& b) {
              return SmallestEdge(a) < SmallestEdge(b);
            });
  t.source = t.children.front().source;
  t.sink = t.children.front().sink;
  return t;
}

std::vector<EdgeId> SPTree::Edges() const {
  std::vector<EdgeId> out;
  CollectEdges(*this, &out);
  return out;
}

std::size_t SPTree::NumEdges() const {
  if (kind == Kind::kLeaf) return 1;
  std::size_t n = 0;
  for (const SPTree& c : children) n += c.NumEdges();
  return n;
}

std::string SPTree::Label() const {
  if (kind == Kind::kLeaf) return edge;
  std::string out = "(";
  const char* sep = kind == Kind::kSeries ? ";" : "|";
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (i) out += sep;
    out += children[i].Label();
  }
  out += ")";
  return out;
}

SPResult SpDecompose(const Network& net, const VertexId& s, const VertexId& t) {
  auto si = net.VertexIndex(s);
  auto ti = net.VertexIndex(t);
  if (!si || !ti || *si == *ti) {
    throw Error(ErrorCode::kInvalidNetwork,
                "decomposition terminals must be distinct existing vertices");
  }
  struct Super {
    std::size_t tail;
    std::size_t head;
    SPTree tree;
    bool alive;
  };
  std::vector<Super> edges;
  for (std::size_t i = 0; i < net.num_edges(); ++i) {
    const Edge& e = net.edges()[i];
    edges.push_back({net.TailIndex(i), net.HeadIndex(i),
                     SPTree::Leaf(e.id, e.tail, e.head), true});
  }

  bool changed = true;
  while (changed) {
    changed = false;

    // Parallel reductions.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>
        bundles;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (edges[i].alive) bundles[{edges[i].tail, edges[i].head}].push_back(i);
    }
    for (auto& [ends, idx] : bundles) {
      if (idx.size() < 2) continue;
      std::vector<SPTree> parts;
      for (std::size_t i : idx) {
        parts.push_back(std::move(edges[i].tree));
        edges[i].alive = false;
      }
      edges.push_back(
          {ends.first, ends.second, SPTree::Parallel(std::move(parts)), true});
      changed = true;
    }

    // Series reductions, one vertex at a time so degrees stay current.
    std::vector<std::vector<std::size_t>> in(net.num_vertices());
    std::vector<std::vector<std::size_t>> out(net.num_vertices());
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (!edges[i].alive) continue;
      out[edges[i].tail].push_back(i);
      in[edges[i].head].push_back(i);
    }
    for (std::size_t v = 0; v < net.num_vertices(); ++v) {
      if (v == *si || v == *ti) continue;
      if (in[v].size() != 1 || out[v].size() != 1) continue;
      std::size_t a = in[v][0];
      std::size_t b = out[v][0];
      if (!edges[a].alive || !edges[b].alive) continue;
      if (edges[a].tail == edges[b].head) continue;
      std::size_t tail = edges[a].tail;
      std::size_t head = edges[b].head;
      std::vector<SPTree> parts;
      parts.push_back(std::move(edges[a].tree));
      parts.push_back(std::move(edges[b].tree));
      edges[a].alive = false;
      edges[b].alive = false;
      edges.push_back({tail, head, SPTree::Series(std::move(parts)), true});
      std::size_t n = edges.size() - 1;
      std::replace(out[tail].begin(), out[tail].end(), a, n);
      std::replace(in[head].begin(), in[head].end(), b, n);
      in[v].clear();
      out[v].clear();
      changed = true;
    }
  }

  std::vector<const Super*> alive;
  for (const Super& e : edges) {
    if (e.alive) alive.push_back(&e);
  }
  if (alive.size() == 1 && alive[0]->tail == *si && alive[0]->head == *ti) {
    return alive[0]->tree;
  }

  NonSPWitness w;
  std::vector<Edge> kernel_edges;
  for (const Super* e : alive) {
    std::string id = e->tree.Label();
    kernel_edges.push_back(
        {id, net.vertices()[e->tail], net.vertices()[e->head]});
    w.parts.emplace(id, e->tree);
  }
  w.kernel = Network::FromEdges(std::move(kernel_edges));
  return w;
}

BlockRepresentation MakeBlockRepresentation(const SPTree& tree) {
  BlockRepresentation br;
  auto add_block = [&br](const SPTree& t) {
    Block b;
    b.source = t.source;
    b.sink = t.sink;
    b.edges = t.Edges();
    std::sort(b.edges.begin(), b.edges.end());
    b.tree = t;
    br.blocks.push_back(std::move(b));
  };
  if (tree.kind == SPTree::Kind::kSeries) {
    for (std::size_t i = 0; i < tree.children.size(); ++i) {
      add_block(tree.children[i]);
      if (i + 1 < tree.children.size()) {
        br.separators.push_back(tree.children[i].sink);
      }
    }
  } else {
    add_block(tree);
  }
  return br;
}

std::optional<BlockMismatch> BlocksMatch(const BlockRepresentation& a,
                                         const BlockRepresentation& b) {
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    const auto& ea = a.blocks[i].edges;
    for (std::size_t j = 0; j < b.blocks.size(); ++j) {
      const auto& eb = b.blocks[j].edges;
      if (ea == eb) continue;
      std::vector<EdgeId> common;
      std::set_intersection(ea.begin(), ea.end(), eb.begin(), eb.end(),
                            std::back_inserter(common));
      if (!common.empty()) return BlockMismatch{i, j};
    }
  }
  return std::nullopt;
}

}  // namespace routeq
