#ifndef ROUTEQ_NETWORK_H_
#define ROUTEQ_NETWORK_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace routeq {

using VertexId = std::string;
using EdgeId = std::string;

// A path is the ordered list of edge ids it traverses.
using Path = std::vector<EdgeId>;

// Amount of flow per edge. Missing edges carry zero.
using EdgeFlows = std::map<EdgeId, double>;

inline constexpr std::size_t kDefaultPathCap = 10000;

struct Edge {
  EdgeId id;
  VertexId tail;
  VertexId head;

  auto operator<=>(const Edge&) const = default;
};

struct CommoditySpec {
  VertexId source;
  VertexId sink;

  auto operator<=>(const CommoditySpec&) const = default;
};

// Directed multigraph with string-named vertices and uniquely identified
// edges. Parallel edges are allowed, self-loops are not. Vertices are kept
// sorted and edges are kept sorted by id, so two networks built from the same
// data compare equal regardless of input order.
class Network {
 public:
  Network() = default;

  // Throws Error(kInvalidNetwork) on duplicate ids, dangling endpoints or
  // self-loops. Endpoints missing from `vertices` are an error, not implicit.
  Network(std::vector<VertexId> vertices, std::vector<Edge> edges);

  // Vertex set is the set of edge endpoints.
  static Network FromEdges(std::vector<Edge> edges);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  bool HasVertex(const VertexId& v) const;
  bool HasEdge(const EdgeId& e) const;
  std::optional<std::size_t> VertexIndex(const VertexId& v) const;
  std::optional<std::size_t> EdgeIndex(const EdgeId& e) const;
  const Edge& edge(const EdgeId& e) const;

  // Edge indices leaving / entering the vertex with index v, ascending by id.
  const std::vector<std::size_t>& OutEdges(std::size_t v) const {
    return out_[v];
  }
  const std::vector<std::size_t>& InEdges(std::size_t v) const {
    return in_[v];
  }
  std::size_t TailIndex(std::size_t e) const { return tail_index_[e]; }
  std::size_t HeadIndex(std::size_t e) const { return head_index_[e]; }

  // Keeps the given edges and exactly their endpoints.
  Network Restrict(const std::set<EdgeId>& keep) const;
  Network WithEdge(const Edge& e) const;
  Network WithoutEdge(const EdgeId& e) const;
  // Every edge reversed; ids preserved.
  Network Reversed() const;

  // True iff `path` is a contiguous walk from s to t over existing edges
  // that repeats no vertex.
  bool IsSimplePath(const Path& path, const VertexId& s,
                    const VertexId& t) const;
  std::vector<VertexId> PathVertices(const Path& path) const;

  bool operator==(const Network& other) const {
    return vertices_ == other.vertices_ && edges_ == other.edges_;
  }

 private:
  void BuildIndex();

  std::vector<VertexId> vertices_;
  std::vector<Edge> edges_;
  std::map<VertexId, std::size_t> vertex_index_;
  std::map<EdgeId, std::size_t> edge_index_;
  std::vector<std::size_t> tail_index_;
  std::vector<std::size_t> head_index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
};

// All simple s-t paths in lexicographic order of their edge-id sequences.
// Throws Error(kPathExplosion) once more than `cap` paths are found.
std::vector<Path> EnumerateSimplePaths(const Network& net, const VertexId& s,
                                       const VertexId& t,
                                       std::size_t cap = kDefaultPathCap);

// Same enumeration, as edge indices into net.edges().
std::vector<std::vector<std::size_t>> EnumerateSimplePathIndices(
    const Network& net, std::size_t s, std::size_t t, std::size_t cap);

// G_k: the vertices and edges lying on at least one simple s_k-t_k path.
// Throws kEmptySubnetwork when no such path exists.
Network CommoditySubnetwork(const Network& net, const CommoditySpec& c,
                            std::size_t cap = kDefaultPathCap);

}  // namespace routeq

#endif  // ROUTEQ_NETWORK_H_
