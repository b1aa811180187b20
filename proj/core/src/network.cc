#include "routeq/network.h"

#include <algorithm>
#include <functional>

#include "routeq/error.h"

namespace routeq {

Network::Network(std::vector<VertexId> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) !=
      vertices_.end()) {
    throw Error(ErrorCode::kInvalidNetwork, "duplicate vertex id");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].id == edges_[i].id) {
      throw Error(ErrorCode::kInvalidNetwork,
                  "duplicate edge id '" + edges_[i].id + "'");
    }
  }
  BuildIndex();
}

Network Network::FromEdges(std::vector<Edge> edges) {
  std::set<VertexId> vs;
  for (const Edge& e : edges) {
    vs.insert(e.tail);
    vs.insert(e.head);
  }
  return Network(std::vector<VertexId>(vs.begin(), vs.end()),
                 std::move(edges));
}

void Network::BuildIndex() {
  vertex_index_.clear();
  edge_index_.clear();
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    vertex_index_.emplace(vertices_[i], i);
  }
  out_.assign(vertices_.size(), {});
  in_.assign(vertices_.size(), {});
  tail_index_.resize(edges_.size());
  head_index_.resize(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge& e = edges_[i];
    auto t = vertex_index_.find(e.tail);
    auto h = vertex_index_.find(e.head);
    if (t == vertex_index_.end() || h == vertex_index_.end()) {
      throw Error(ErrorCode::kInvalidNetwork,
                  "edge '" + e.id + "' references an unknown vertex");
    }
    if (t->second == h->second) {
      throw Error(ErrorCode::kInvalidNetwork,
                  "edge '" + e.id + "' is a self-loop");
    }
    edge_index_.emplace(e.id, i);
    tail_index_[i] = t->second;
    head_index_[i] = h->second;
    out_[t->second].push_back(i);
    in_[h->second].push_back(i);
  }
}

bool Network::HasVertex(const VertexId& v) const {
  return vertex_index_.count(v) > 0;
}

bool Network::HasEdge(const EdgeId& e) const {
  return edge_index_.count(e) > 0;
}

std::optional<std::size_t> Network::VertexIndex(const VertexId& v) const {
  auto it = vertex_index_.find(v);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Network::EdgeIndex(const EdgeId& e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) return std::nullopt;
  return it->second;
}

const Edge& Network::edge(const EdgeId& e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) {
    throw Error(ErrorCode::kMissingEdge, "no edge '" + e + "'");
  }
  return edges_[it->second];
}

Network Network::Restrict(const std::set<EdgeId>& keep) const {
  std::vector<Edge> kept;
  for (const Edge& e : edges_) {
    if (keep.count(e.id)) kept.push_back(e);
  }
  return FromEdges(std::move(kept));
}

Network Network::WithEdge(const Edge& e) const {
  std::vector<VertexId> vs = vertices_;
  for (const VertexId& v : {e.tail, e.head}) {
    if (!HasVertex(v)) vs.push_back(v);
  }
  std::vector<Edge> es = edges_;
  es.push_back(e);
  return Network(std::move(vs), std::move(es));
}

Network Network::WithoutEdge(const EdgeId& id) const {
  std::vector<Edge> es;
  for (const Edge& e : edges_) {
    if (e.id != id) es.push_back(e);
  }
  return Network(vertices_, std::move(es));
}

Network Network::Reversed() const {
  std::vector<Edge> es;
  es.reserve(edges_.size());
  for (const Edge& e : edges_) es.push_back({e.id, e.head, e.tail});
  return Network(vertices_, std::move(es));
}

bool Network::IsSimplePath(const Path& path, const VertexId& s,
                           const VertexId& t) const {
  if (!HasVertex(s) || !HasVertex(t)) return false;
  if (path.empty()) return s == t;
  std::set<VertexId> seen{s};
  VertexId at = s;
  for (const EdgeId& id : path) {
    auto idx = EdgeIndex(id);
    if (!idx) return false;
    const Edge& e = edges_[*idx];
    if (e.tail != at) return false;
    if (!seen.insert(e.head).second) return false;
    at = e.head;
  }
  return at == t;
}

std::vector<VertexId> Network::PathVertices(const Path& path) const {
  std::vector<VertexId> out;
  if (path.empty()) return out;
  out.push_back(edge(path.front()).tail);
  for (const EdgeId& id : path) out.push_back(edge(id).head);
  return out;
}

std::vector<std::vector<std::size_t>> EnumerateSimplePathIndices(
    const Network& net, std::size_t s, std::size_t t, std::size_t cap) {
  std::vector<std::vector<std::size_t>> paths;
  std::vector<char> on_path(net.num_vertices(), 0);
  std::vector<std::size_t> stack;
  std::function<void(std::size_t)> dfs = [&](std::size_t v) {
    if (v == t) {
      if (paths.size() >= cap) {
        throw Error(ErrorCode::kPathExplosion,
                    "more than " + std::to_string(cap) + " simple paths");
      }
      paths.push_back(stack);
      return;
    }
    on_path[v] = 1;
    for (std::size_t e : net.OutEdges(v)) {
      std::size_t w = net.HeadIndex(e);
      if (on_path[w]) continue;
      stack.push_back(e);
      dfs(w);
      stack.pop_back();
    }
    on_path[v] = 0;
  };
  if (s != t) dfs(s);
  return paths;
}

std::vector<Path> EnumerateSimplePaths(const Network& net, const VertexId& s,
                                       const VertexId& t, std::size_t cap) {
  auto si = net.VertexIndex(s);
  auto ti = net.VertexIndex(t);
  if (!si || !ti) {
    throw Error(ErrorCode::kInvalidNetwork,
                "path endpoints '" + s + "', '" + t + "' must exist");
  }
  std::vector<Path> out;
  for (const auto& idx : EnumerateSimplePathIndices(net, *si, *ti, cap)) {
    Path p;
    p.reserve(idx.size());
    for (std::size_t e : idx) p.push_back(net.edges()[e].id);
    out.push_back(std::move(p));
  }
  return out;
}

Network CommoditySubnetwork(const Network& net, const CommoditySpec& c,
                            std::size_t cap) {
  if (c.source == c.sink) {
    throw Error(ErrorCode::kInvalidNetwork,
                "commodity source equals sink '" + c.source + "'");
  }
  std::set<EdgeId> used;
  for (const Path& p : EnumerateSimplePaths(net, c.source, c.sink, cap)) {
    used.insert(p.begin(), p.end());
  }
  if (used.empty()) {
    throw Error(ErrorCode::kEmptySubnetwork,
                "no path from '" + c.source + "' to '" + c.sink + "'");
  }
  return net.Restrict(used);
}

}  // namespace routeq
