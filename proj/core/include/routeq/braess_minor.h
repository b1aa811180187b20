#ifndef ROUTEQ_BRAESS_MINOR_H_
#define ROUTEQ_BRAESS_MINOR_H_

#include <map>
#include <optional>

#include "routeq/network.h"

namespace routeq {

// The Wheatstone network on s, u, v, t with edges su, ut, uv, sv, vt.
Network BraessNetwork();

// A subdivision of the Braess graph inside a larger network, extended at
// both terminals. Each Braess edge id maps to a path of the host network;
// the seven paths are internally vertex-disjoint.
struct BraessMinor {
  VertexId s;  // Branch vertex standing in for the Braess source.
  VertexId u;
  VertexId v;
  VertexId t;
  std::map<EdgeId, Path> image;  // Keys su, ut, uv, sv, vt.
  Path head;                     // Host source to s, possibly empty.
  Path tail;                     // t to host sink, possibly empty.
};

// Exhaustive search over branch vertex quadruples, trying the host
// terminals as branch vertices first and otherwise vertices in sorted
// order. nullopt when there is no such subdivision (the network is SP).
std::optional<BraessMinor> FindBraessMinor(const Network& net,
                                           const VertexId& s,
                                           const VertexId& t,
                                           std::size_t cap = kDefaultPathCap);

}  // namespace routeq

#endif  // ROUTEQ_BRAESS_MINOR_H_
