#ifndef ROUTEQ_AUDIT_H_
#define ROUTEQ_AUDIT_H_

#include <string>
#include <vector>

#include "routeq/network.h"

namespace routeq {

enum class AuditCheck {
  kNotSeriesParallel,  // G_c itself is not SP.
  kCrossBlockEdge,     // Internal vertex of a block to internal of a later one.
  kUnsupportedEdge,    // Endpoints never appear together on a G_c path.
  kEscapingPath,       // A separator-to-separator path leaves its block.
};

std::string AuditCheckName(AuditCheck c);

struct AuditViolation {
  AuditCheck check;
  EdgeId edge;  // Offending edge, empty for path violations.
  Path path;    // Offending path, kEscapingPath only.
  std::string detail;
};

// Exhaustive structural checks of net against the block structure of G_c.
// When G_c is not SP, a kNotSeriesParallel entry is reported and, if removing
// a single edge makes G_c SP, the remaining checks run against that reduced
// subnetwork (the removal keeping the most edges wins, ties by edge id).
std::vector<AuditViolation> StructuralAudit(const Network& net,
                                            const CommoditySpec& c,
                                            std::size_t cap = kDefaultPathCap);

}  // namespace routeq

#endif  // ROUTEQ_AUDIT_H_
