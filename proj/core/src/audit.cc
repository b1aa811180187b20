#include "routeq/audit.h"

#include <optional>
#include <set>

#include "routeq/error.h"
#include "routeq/sp_tree.h"

namespace routeq {

std::string AuditCheckName(AuditCheck c) {
  switch (c) {
    case AuditCheck::kNotSeriesParallel:
      return "not-series-parallel";
    case AuditCheck::kCrossBlockEdge:
      return "cross-block-edge";
    case AuditCheck::kUnsupportedEdge:
      return "unsupported-edge";
    case AuditCheck::kEscapingPath:
      return "escaping-path";
  }
  return "unknown";
}

namespace {

struct Reference {
  Network sub;
  SPTree tree;
};

std::optional<Reference> SpReference(const Network& net,
                                     const CommoditySpec& c, std::size_t cap,
                                     std::vector<AuditViolation>* out) {
  Network sub = CommoditySubnetwork(net, c, cap);
  SPResult r = SpDecompose(sub, c.source, c.sink);
  if (auto* t = std::get_if<SPTree>(&r)) return Reference{sub, *t};

  std::optional<Reference> best;
  EdgeId removed;
  for (const Edge& e : sub.edges()) {
    Network trimmed;
    try {
      trimmed = CommoditySubnetwork(net.WithoutEdge(e.id), c, cap);
    } catch (const Error&) {
      continue;
    }
    SPResult rr = SpDecompose(trimmed, c.source, c.sink);
    auto* t = std::get_if<SPTree>(&rr);
    if (!t) continue;
    if (!best || trimmed.num_edges() > best->sub.num_edges()) {
      best = Reference{trimmed, *t};
      removed = e.id;
    }
  }
  AuditViolation v{AuditCheck::kNotSeriesParallel, removed, {}, ""};
  v.detail = best ? "subnetwork becomes series-parallel without '" +
                        removed + "'"
                  : "no single edge removal makes the subnetwork "
                    "series-parallel";
  out->push_back(std::move(v));
  return best;
}

}  // namespace

std::vector<AuditViolation> StructuralAudit(const Network& net,
                                            const CommoditySpec& c,
                                            std::size_t cap) {
  std::vector<AuditViolation> out;
  std::optional<Reference> ref = SpReference(net, c, cap, &out);
  if (!ref) return out;
  const Network& sub = ref->sub;
  BlockRepresentation br = MakeBlockRepresentation(ref->tree);

  // Block index of each internal vertex.
  std::map<VertexId, std::size_t> internal_of;
  for (std::size_t k = 0; k < br.blocks.size(); ++k) {
    const Block& b = br.blocks[k];
    for (const EdgeId& id : b.edges) {
      const Edge& e = sub.edge(id);
      for (const VertexId& v : {e.tail, e.head}) {
        if (v != b.source && v != b.sink) internal_of[v] = k;
      }
    }
  }

  // (a)
  for (const Edge& e : net.edges()) {
    auto t = internal_of.find(e.tail);
    auto h = internal_of.find(e.head);
    if (t == internal_of.end() || h == internal_of.end()) continue;
    if (t->second < h->second) {
      out.push_back({AuditCheck::kCrossBlockEdge, e.id, {},
                     "edge joins internal vertices of blocks " +
                         std::to_string(t->second + 1) + " and " +
                         std::to_string(h->second + 1)});
    }
  }

  // (b)
  std::vector<std::set<VertexId>> path_vertices;
  for (const Path& p : EnumerateSimplePaths(sub, c.source, c.sink, cap)) {
    auto vs = sub.PathVertices(p);
    path_vertices.emplace_back(vs.begin(), vs.end());
  }
  for (const Edge& e : net.edges()) {
    if (!sub.HasVertex(e.tail) || !sub.HasVertex(e.head)) continue;
    bool supported = false;
    for (const auto& vs : path_vertices) {
      if (vs.count(e.tail) && vs.count(e.head)) {
        supported = true;
        break;
      }
    }
    if (!supported) {
      out.push_back({AuditCheck::kUnsupportedEdge, e.id, {},
                     "no simple path of the subnetwork visits both endpoints"});
    }
  }

  // (c)
  for (std::size_t k = 0; k < br.blocks.size(); ++k) {
    const Block& b = br.blocks[k];
    std::set<EdgeId> inside(b.edges.begin(), b.edges.end());
    for (const Path& p : EnumerateSimplePaths(net, b.source, b.sink, cap)) {
      for (const EdgeId& id : p) {
        if (inside.count(id)) continue;
        out.push_back({AuditCheck::kEscapingPath, id, p,
                       "path from '" + b.source + "' to '" + b.sink +
                           "' leaves block " + std::to_string(k + 1)});
        break;
      }
    }
  }
  return out;
}

}  // namespace routeq
