#ifndef ROUTEQ_ADVERSARIAL_H_
#define ROUTEQ_ADVERSARIAL_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "routeq/equilibrium.h"
#include "routeq/instance.h"

namespace routeq {

struct ConstructionTrace {
  std::string kind;
  std::string case_label;                   // Non-block-matching cases only.
  std::map<std::string, double> constants;  // r0, d0, A, N, M, scale, ...
  std::map<std::string, Path> paths;        // P1, P2, P3 or minor images.
  std::map<std::string, EdgeId> edges;      // e1, e2.
  std::vector<EdgeId> blocked_edges;        // Edges given the constant M.
  std::vector<std::string> notes;
};

// A constructed instance together with the verified equilibria showing that
// the heterogeneous total cost exceeds the homogeneous one.
struct HurtCertificate {
  Instance instance;
  std::optional<double> expected_heterogeneous;
  std::optional<double> expected_homogeneous;
  VerdictResult solved;
  ConstructionTrace trace;

  double gap() const {
    return solved.heterogeneous_cost - solved.homogeneous_cost;
  }
};

struct R0Choice {
  double r0;
  double d0;  // Normalized demand with r <= r0.
};

// Classes are normalized to unit demand first. Among the consecutive
// distinct class values r_j below the mean, takes the midpoint of the
// feasible part of [r_j, r_{j+1}) and returns the largest such midpoint.
// Throws kNotStrictlyHeterogeneous for fewer than two distinct r values.
R0Choice ChooseR0(const std::vector<DemandClass>& classes);

HurtCertificate BraessHurt(const std::vector<DemandClass>& classes,
                           const SolverConfig& cfg = {});
HurtCertificate BraessHurtAffine(const std::vector<DemandClass>& classes,
                                 const SolverConfig& cfg = {});

// Embeds the Braess construction into a non-SP network via FindBraessMinor;
// every edge outside the image gets the constant latency 2(3 + mean r).
// Throws kNotFound when the commodity subnetwork is SP.
HurtCertificate EmbedBraess(const Network& net, const VertexId& s,
                            const VertexId& t,
                            const std::vector<DemandClass>& classes,
                            const SolverConfig& cfg = {});

// Two commodities on three paths; totals 12 against 6.
HurtCertificate TwoCommodityHurt(const SolverConfig& cfg = {});

// Builds an instance on net where diversity hurts, for commodity layouts
// that are not block-matching. Throws kClassifiedConforming for conforming
// inputs and kConstructionFailed if no candidate verifies.
HurtCertificate NonBlockMatchingHurt(const Network& net,
                                     const std::vector<CommoditySpec>& cs,
                                     const SolverConfig& cfg = {});

// Two parallel links whose commodities differ in mean r; totals 12 against 4.
HurtCertificate NonAverageRespectingExample(const SolverConfig& cfg = {});

// Two links with (1, x) and (2, 0); diversity strictly helps, 1.5 against 2.
Instance TwoLinkHelpInstance();

}  // namespace routeq

#endif  // ROUTEQ_ADVERSARIAL_H_
