#include "report_json.h"

namespace routeq::tools {

using nlohmann::json;

json ToJson(const EquilibriumReport& r) {
  json out = {{"is_equilibrium", r.is_equilibrium},
              {"eps", r.eps},
              {"worst_gap", r.worst_gap},
              {"class_costs", r.class_costs}};
  if (r.worst) {
    out["worst"] = {{"commodity", r.worst->commodity},
                    {"class", r.worst->demand_class},
                    {"used_path", r.worst->used_path},
                    {"cheaper_path", r.worst->cheaper_path},
                    {"gap", r.worst->gap}};
  } else {
    out["worst"] = nullptr;
  }
  return out;
}

json ToJson(const SolveStats& s) {
  return {{"iterations", s.iterations},
          {"polish_attempts", s.polish_attempts},
          {"polished", s.polished}};
}

json ToJson(const ClassFlow& flow) {
  json out = json::array();
  for (const CommodityFlow& cf : flow) {
    json paths = json::array();
    for (std::size_t p = 0; p < cf.paths.size(); ++p) {
      json amounts = json::array();
      for (const auto& cls : cf.class_amounts) amounts.push_back(cls[p]);
      paths.push_back({{"edges", cf.paths[p]}, {"amounts", amounts}});
    }
    out.push_back({{"paths", paths}});
  }
  return out;
}

json ToJson(const EdgeFlows& flows) {
  json out = json::object();
  for (const auto& [e, f] : flows) out[e] = f;
  return out;
}

namespace {

json BlockJson(const Block& b) {
  return {{"source", b.source},
          {"sink", b.sink},
          {"edges", b.edges},
          {"tree", b.tree.Label()}};
}

json RepresentationJson(const BlockRepresentation& br) {
  json blocks = json::array();
  for (const Block& b : br.blocks) blocks.push_back(BlockJson(b));
  return {{"blocks", blocks}, {"separators", br.separators}};
}

}  // namespace

json ToJson(const ClassificationResult& c) {
  json out = {{"tag", ClassificationTag(c.outcome)},
              {"dead_edges", c.dead_edges}};
  if (auto* sp = std::get_if<SingleCommoditySP>(&c.outcome)) {
    out["tree"] = sp->tree.Label();
    out["blocks"] = RepresentationJson(MakeBlockRepresentation(sp->tree));
  } else if (auto* bm = std::get_if<BlockMatching>(&c.outcome)) {
    json reps = json::array();
    for (const auto& br : bm->representations) {
      reps.push_back(RepresentationJson(br));
    }
    out["representations"] = reps;
  } else if (auto* nsp = std::get_if<NonSeriesParallel>(&c.outcome)) {
    json kernel = json::array();
    for (const Edge& e : nsp->witness.kernel.edges()) {
      kernel.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
    }
    out["commodity"] = nsp->commodity;
    out["kernel"] = kernel;
  } else {
    const auto& nb = std::get<NonBlockMatching>(c.outcome);
    out["commodities"] = {nb.first_commodity, nb.second_commodity};
    out["block_indices"] = {nb.first_block_index, nb.second_block_index};
    out["first_block"] = BlockJson(nb.first_block);
    out["second_block"] = BlockJson(nb.second_block);
  }
  return out;
}

json ToJson(const AuditViolation& v) {
  json out = {{"check", AuditCheckName(v.check)},
              {"edge", v.edge},
              {"detail", v.detail}};
  if (!v.path.empty()) out["path"] = v.path;
  return out;
}

json ToJson(const ConstructionTrace& t) {
  return {{"kind", t.kind},
          {"case", t.case_label},
          {"constants", t.constants},
          {"paths", t.paths},
          {"edges", t.edges},
          {"blocked_edges", t.blocked_edges},
          {"notes", t.notes}};
}

json EquilibriumJson(const Instance& inst, const SolveResult& r) {
  return {{"edge_flows", ToJson(ComputeEdgeFlows(inst, r.flow))},
          {"path_flows", ToJson(r.flow)},
          {"verification", ToJson(r.report)},
          {"solver", ToJson(r.stats)}};
}

json VerdictJson(const Instance& inst, const VerdictResult& v) {
  return {{"verdict", VerdictName(v.verdict)},
          {"C_ht", v.heterogeneous_cost},
          {"C_hm", v.homogeneous_cost},
          {"heterogeneous", EquilibriumJson(inst, v.heterogeneous)},
          {"homogeneous", EquilibriumJson(v.homogenized, v.homogeneous)}};
}

json CertificateJson(const HurtCertificate& c) {
  json out = VerdictJson(c.instance, c.solved);
  out["gap"] = c.gap();
  out["expected"] = {
      {"C_ht", c.expected_heterogeneous ? json(*c.expected_heterogeneous)
                                        : json(nullptr)},
      {"C_hm", c.expected_homogeneous ? json(*c.expected_homogeneous)
                                      : json(nullptr)}};
  out["trace"] = ToJson(c.trace);
  return out;
}

}  // namespace routeq::tools
