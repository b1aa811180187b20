#ifndef ROUTEQ_TOOLS_REPORT_JSON_H_
#define ROUTEQ_TOOLS_REPORT_JSON_H_

#include "json.hpp"
#include "routeq/adversarial.h"
#include "routeq/audit.h"
#include "routeq/classify.h"
#include "routeq/equilibrium.h"

namespace routeq::tools {

nlohmann::json ToJson(const EquilibriumReport& r);
nlohmann::json ToJson(const SolveStats& s);
nlohmann::json ToJson(const ClassFlow& flow);
nlohmann::json ToJson(const EdgeFlows& flows);
nlohmann::json ToJson(const ClassificationResult& c);
nlohmann::json ToJson(const AuditViolation& v);
nlohmann::json ToJson(const ConstructionTrace& t);

// Flow, edge flows, class costs, verification report and solver stats of one
// equilibrium of inst.
nlohmann::json EquilibriumJson(const Instance& inst, const SolveResult& r);

nlohmann::json VerdictJson(const Instance& inst, const VerdictResult& v);
nlohmann::json CertificateJson(const HurtCertificate& c);

}  // namespace routeq::tools

#endif  // ROUTEQ_TOOLS_REPORT_JSON_H_
