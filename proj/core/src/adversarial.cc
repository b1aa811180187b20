#include "routeq/adversarial.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "certify.h"
#include "routeq/braess_minor.h"
#include "routeq/error.h"
#include "routeq/sp_tree.h"

namespace routeq {
namespace internal {

namespace {

constexpr double kExpectedTol = 1e-4;
constexpr double kStrictGap = 1e-6;

std::vector<DemandClass> Normalize(const std::vector<DemandClass>& classes,
                                   double* scale) {
  double total = 0;
  for (const DemandClass& c : classes) {
    if (!(c.amount > 0) || !(c.r >= 0)) {
      throw Error(ErrorCode::kInvalidInstance,
                  "classes need r >= 0 and positive amounts");
    }
    total += c.amount;
  }
  if (!(total > 0)) {
    throw Error(ErrorCode::kNotStrictlyHeterogeneous, "no demand given");
  }
  std::vector<DemandClass> out = classes;
  for (DemandClass& c : out) c.amount /= total;
  *scale = total;
  return out;
}

}  // namespace

HurtCertificate Certify(Instance inst, ConstructionTrace trace,
                        std::optional<double> expected_ht,
                        std::optional<double> expected_hm,
                        const SolverConfig& cfg) {
  try {
    ValidateInstance(inst);
  } catch (const Error& e) {
    throw Error(ErrorCode::kVerificationFailed,
                std::string("constructed instance is invalid: ") + e.what());
  }
  HurtCertificate cert;
  try {
    cert.solved = DiversityVerdict(inst, cfg);
  } catch (const NoConvergence& e) {
    throw Error(ErrorCode::kVerificationFailed,
                "equilibrium not found (" + e.stage + "): " + e.what());
  }
  cert.instance = std::move(inst);
  cert.trace = std::move(trace);
  cert.expected_heterogeneous = expected_ht;
  cert.expected_homogeneous = expected_hm;
  std::ostringstream os;
  os.precision(10);
  if (cert.solved.verdict != Verdict::kHurts || cert.gap() <= kStrictGap) {
    os << "diversity does not hurt: heterogeneous "
       << cert.solved.heterogeneous_cost << ", homogeneous "
       << cert.solved.homogeneous_cost;
    throw Error(ErrorCode::kVerificationFailed, os.str());
  }
  if (expected_ht &&
      std::abs(*expected_ht - cert.solved.heterogeneous_cost) > kExpectedTol) {
    os << "heterogeneous total " << cert.solved.heterogeneous_cost
       << " differs from expected " << *expected_ht;
    throw Error(ErrorCode::kVerificationFailed, os.str());
  }
  if (expected_hm &&
      std::abs(*expected_hm - cert.solved.homogeneous_cost) > kExpectedTol) {
    os << "homogeneous total " << cert.solved.homogeneous_cost
       << " differs from expected " << *expected_hm;
    throw Error(ErrorCode::kVerificationFailed, os.str());
  }
  return cert;
}

double MaxFlowOn(const HurtCertificate& cert, const std::set<EdgeId>& edges) {
  double worst = 0;
  EdgeFlows het =
      ComputeEdgeFlows(cert.instance, cert.solved.heterogeneous.flow);
  EdgeFlows hom =
      ComputeEdgeFlows(cert.solved.homogenized, cert.solved.homogeneous.flow);
  for (const EdgeId& e : edges) {
    worst = std::max({worst, het[e], hom[e]});
  }
  return worst;
}

BraessDesign DesignBraess(const std::vector<DemandClass>& classes,
                          bool affine) {
  BraessDesign d;
  double scale = 1;
  d.classes = Normalize(classes, &scale);
  R0Choice ch = ChooseR0(d.classes);
  double rbar = 0;
  for (const DemandClass& c : d.classes) rbar += c.r * c.amount;
  d.mean_r = rbar;
  double below = 0;  // sum over r_i <= r0 of d_i (r_i - r0)
  for (const DemandClass& c : d.classes) {
    if (c.r <= ch.r0) below += c.amount * (c.r - ch.r0);
  }
  d.trace.constants = {{"r0", ch.r0}, {"d0", ch.d0}, {"scale", scale},
                       {"mean_r", rbar}};
  CostFn h;
  double a = 1;  // h(1/2)
  if (affine) {
    a = (rbar - ch.r0) / (2 * ch.d0);
    h = CostFn::Affine(2 * a, 0);
    d.trace.constants["A"] = a;
    d.trace.kind = "braess-affine";
  } else {
    h = CostFn::MonotoneThrough(
        {{0.5, 1.0}, {0.5 + ch.d0 / 2, 1.0 + (rbar - ch.r0) / 2}}, 1.0);
    d.trace.kind = "braess";
  }
  CostFn side = CostFn::Constant(2 * a + (rbar + ch.r0) / 2);
  CostFn zero = CostFn::Constant(0);
  d.fns["su"] = {h, zero};
  d.fns["vt"] = {h, zero};
  d.fns["ut"] = {side, zero};
  d.fns["sv"] = {side, zero};
  d.fns["uv"] = {CostFn::Constant(a), CostFn::Constant(1)};
  d.expected_hm = 3 * a + (rbar + ch.r0) / 2;
  d.expected_ht = 3 * a + rbar + below;
  return d;
}

Embedding EmbedBraessInstance(const Network& net, const VertexId& s,
                              const VertexId& t,
                              const std::vector<DemandClass>& classes,
                              std::size_t cap) {
  Network sub = CommoditySubnetwork(net, {s, t}, cap);
  if (IsSeriesParallel(SpDecompose(sub, s, t))) {
    throw Error(ErrorCode::kNotFound,
                "commodity subnetwork is series-parallel");
  }
  std::optional<BraessMinor> minor = FindBraessMinor(sub, s, t, cap);
  if (!minor) {
    throw Error(ErrorCode::kNotFound, "no Braess subdivision found");
  }
  BraessDesign d = DesignBraess(classes, /*affine=*/false);
  double m = 2 * (3 + d.mean_r);
  Embedding out;
  out.trace = d.trace;
  out.trace.kind = "embed-braess";
  out.trace.constants["M"] = m;
  out.expected_ht = d.expected_ht;
  out.expected_hm = d.expected_hm;

  EdgePair zero{CostFn::Constant(0), CostFn::Constant(0)};
  EdgeFunctions fns;
  for (const Edge& e : net.edges()) {
    fns[e.id] = {CostFn::Constant(m), CostFn::Constant(0)};
  }
  for (const EdgeId& e : minor->head) fns[e] = zero;
  for (const EdgeId& e : minor->tail) fns[e] = zero;
  for (const auto& [braess_edge, path] : minor->image) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      fns[path[i]] = i == 0 ? d.fns.at(braess_edge) : zero;
    }
    out.trace.paths[braess_edge] = path;
  }
  out.trace.paths["head"] = minor->head;
  out.trace.paths["tail"] = minor->tail;
  std::set<EdgeId> used;
  for (const auto& [k, p] : out.trace.paths) used.insert(p.begin(), p.end());
  for (const Edge& e : net.edges()) {
    if (!used.count(e.id)) out.trace.blocked_edges.push_back(e.id);
  }
  out.inst.network = net;
  out.inst.functions = std::move(fns);
  out.inst.commodities = {Commodity{{s, t}, d.classes}};
  return out;
}

}  // namespace internal

R0Choice ChooseR0(const std::vector<DemandClass>& classes) {
  std::map<double, double> by_r;  // r -> normalized amount
  double total = 0;
  for (const DemandClass& c : classes) {
    if (!(c.amount > 0)) continue;
    by_r[c.r] += c.amount;
    total += c.amount;
  }
  if (by_r.size() < 2) {
    throw Error(ErrorCode::kNotStrictlyHeterogeneous,
                "need at least two distinct diversity values");
  }
  double rbar = 0;
  for (auto& [r, a] : by_r) {
    a /= total;
    rbar += r * a;
  }
  double rmin = by_r.begin()->first;
  std::optional<R0Choice> best;
  double d0 = 0;
  for (auto it = by_r.begin(); it != by_r.end(); ++it) {
    double rj = it->first;
    if (rj >= rbar) break;
    d0 += it->second;
    auto next = std::next(it);
    double hi = std::min(rbar, (rbar / 2 + d0 * rmin) / (0.5 + d0));
    if (next != by_r.end()) hi = std::min(hi, next->first);
    if (!(hi > rj)) continue;
    R0Choice c{(rj + hi) / 2, d0};
    if (!best || c.r0 > best->r0) best = c;
  }
  if (!best) {
    throw Error(ErrorCode::kNotStrictlyHeterogeneous, "no feasible r0");
  }
  return *best;
}

namespace {

Instance BraessInstance(const internal::BraessDesign& d) {
  Instance inst;
  inst.network = BraessNetwork();
  inst.functions = d.fns;
  inst.commodities = {Commodity{{"s", "t"}, d.classes}};
  return inst;
}

}  // namespace

HurtCertificate BraessHurt(const std::vector<DemandClass>& classes,
                           const SolverConfig& cfg) {
  internal::BraessDesign d = internal::DesignBraess(classes, false);
  return internal::Certify(BraessInstance(d), d.trace, d.expected_ht,
                           d.expected_hm, cfg);
}

HurtCertificate BraessHurtAffine(const std::vector<DemandClass>& classes,
                                 const SolverConfig& cfg) {
  internal::BraessDesign d = internal::DesignBraess(classes, true);
  return internal::Certify(BraessInstance(d), d.trace, d.expected_ht,
                           d.expected_hm, cfg);
}

HurtCertificate EmbedBraess(const Network& net, const VertexId& s,
                            const VertexId& t,
                            const std::vector<DemandClass>& classes,
                            const SolverConfig& cfg) {
  internal::Embedding emb =
      internal::EmbedBraessInstance(net, s, t, classes, cfg.cap);
  std::set<EdgeId> blocked(emb.trace.blocked_edges.begin(),
                           emb.trace.blocked_edges.end());
  HurtCertificate cert =
      internal::Certify(std::move(emb.inst), std::move(emb.trace),
                        emb.expected_ht, emb.expected_hm, cfg);
  if (internal::MaxFlowOn(cert, blocked) >= 1e-9) {
    throw Error(ErrorCode::kVerificationFailed,
                "blocked edges carry flow at equilibrium");
  }
  return cert;
}

HurtCertificate TwoCommodityHurt(const SolverConfig& cfg) {
  Instance inst;
  inst.network = Network({"s1", "s2", "t1", "t2", "x", "y"},
                         {{"e1", "s1", "t1"},
                          {"s1x", "s1", "x"},
                          {"e2", "x", "y"},
                          {"yt1", "y", "t1"},
                          {"s2x", "s2", "x"},
                          {"yt2", "y", "t2"}});
  EdgePair zero{CostFn::Constant(0), CostFn::Constant(0)};
  for (const Edge& e : inst.network.edges()) inst.functions[e.id] = zero;
  inst.functions["e1"] = {CostFn::Constant(1), CostFn::Constant(2)};
  inst.functions["e2"] = {CostFn::MonotoneThrough({{1, 3}, {1.25, 9}}),
                          CostFn::Constant(0)};
  inst.commodities = {
      Commodity{{"s1", "t1"}, {{0, 0.75}, {4, 0.25}}},
      Commodity{{"s2", "t2"}, {{1, 1}}},
  };
  ConstructionTrace trace;
  trace.kind = "two-commodity";
  trace.paths = {{"P1", {"e1"}},
                 {"P2", {"s2x", "e2", "yt2"}},
                 {"P3", {"s1x", "e2", "yt1"}}};
  trace.edges = {{"e1", "e1"}, {"e2", "e2"}};
  return internal::Certify(std::move(inst), std::move(trace), 12.0, 6.0, cfg);
}

HurtCertificate NonAverageRespectingExample(const SolverConfig& cfg) {
  Instance inst;
  inst.network =
      Network({"s", "t"}, {{"upper", "s", "t"}, {"lower", "s", "t"}});
  inst.functions["upper"] = {
      CostFn::MonotoneThrough({{1, 2}, {10.0 / 9.0, 10}}), CostFn::Constant(0)};
  inst.functions["lower"] = {CostFn::Constant(1), CostFn::Constant(1)};
  inst.commodities = {
      Commodity{{"s", "t"}, {{10, 1}}},
      Commodity{{"s", "t"}, {{9, 1.0 / 9.0}, {0, 8.0 / 9.0}}},
  };
  ConstructionTrace trace;
  trace.kind = "non-average-respecting";
  HurtCertificate cert =
      internal::Certify(std::move(inst), std::move(trace), 12.0, 4.0, cfg);
  if (IsAverageRespecting(cert.instance)) {
    throw Error(ErrorCode::kVerificationFailed,
                "example unexpectedly has average-respecting demand");
  }
  return cert;
}

Instance TwoLinkHelpInstance() {
  Instance inst;
  inst.network =
      Network({"s", "t"}, {{"link1", "s", "t"}, {"link2", "s", "t"}});
  inst.functions["link1"] = {CostFn::Constant(1), CostFn::Affine(1, 0)};
  inst.functions["link2"] = {CostFn::Constant(2), CostFn::Constant(0)};
  inst.commodities = {Commodity{{"s", "t"}, {{0, 0.5}, {2, 0.5}}}};
  return inst;
}

}  // namespace routeq
