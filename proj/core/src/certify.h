#ifndef ROUTEQ_SRC_CERTIFY_H_
#define ROUTEQ_SRC_CERTIFY_H_

#include <optional>
#include <set>

#include "routeq/adversarial.h"

namespace routeq::internal {

// Solves both equilibria and throws kVerificationFailed unless diversity
// hurts by more than 1e-6 and any expected totals match within 1e-4.
HurtCertificate Certify(Instance inst, ConstructionTrace trace,
                        std::optional<double> expected_ht,
                        std::optional<double> expected_hm,
                        const SolverConfig& cfg);

// Largest total flow over `edges` at either equilibrium.
double MaxFlowOn(const HurtCertificate& cert, const std::set<EdgeId>& edges);

// Braess functions keyed by su, ut, uv, sv, vt, for unit demand.
struct BraessDesign {
  std::vector<DemandClass> classes;  // Normalized.
  EdgeFunctions fns;
  ConstructionTrace trace;
  double expected_ht;
  double expected_hm;
  double mean_r;
};

BraessDesign DesignBraess(const std::vector<DemandClass>& classes, bool affine);

// Embeds into the commodity (s, t) of net; other commodities are not added.
struct Embedding {
  Instance inst;
  ConstructionTrace trace;
  double expected_ht;
  double expected_hm;
};
Embedding EmbedBraessInstance(const Network& net, const VertexId& s,
                              const VertexId& t,
                              const std::vector<DemandClass>& classes,
                              std::size_t cap);

}  // namespace routeq::internal

#endif  // ROUTEQ_SRC_CERTIFY_H_
