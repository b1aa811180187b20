#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <set>

#include "certify.h"
#include "routeq/adversarial.h"
#include "routeq/classify.h"
#include "routeq/error.h"

namespace routeq {
namespace {

constexpr double kN = 24;
constexpr std::size_t kMaxPredicateChecks = 200000;
constexpr std::size_t kMaxVerifications = 32;
constexpr double kMargin = 1e-6;

const std::vector<DemandClass> kFirstClasses = {{0, 0.75}, {4, 0.25}};
const std::vector<DemandClass> kSecondClasses = {{1, 1}};

struct Candidate {
  Path p1, p2, p3;
  EdgeId e1, e2;
  bool guarded = false;  // P2 edges leaving P1/P3 vertices get N.
  EdgeFunctions fns;
  std::vector<EdgeId> blocked;
  std::string case_label;
};

// Shortest path cost with constant weights l + r * sigma; e2 costs `l2`.
double ShortestCost(const Network& g, const std::vector<double>& lat,
                    const std::vector<double>& dev, std::size_t e2,
                    double l2, double r, std::size_t s, std::size_t t,
                    bool avoid_e2) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(g.num_vertices(), kInf);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[x]) continue;
    if (x == t) return d;
    for (std::size_t e : g.OutEdges(x)) {
      if (avoid_e2 && e == e2) continue;
      double w = e == e2 ? l2 : lat[e] + r * dev[e];
      std::size_t y = g.HeadIndex(e);
      if (d + w < dist[y]) {
        dist[y] = d + w;
        pq.push({dist[y], y});
      }
    }
  }
  return kInf;
}

class Search {
 public:
  Search(const Network& g, CommoditySpec c1, CommoditySpec c2,
         const std::vector<EdgeId>& block, VertexId u, VertexId v,
         std::size_t cap)
      : g_(g),
        c1_(std::move(c1)),
        c2_(std::move(c2)),
        block_(block.begin(), block.end()),
        u_(std::move(u)),
        v_(std::move(v)),
        cap_(cap),
        m_(2.0 * static_cast<double>(g.num_vertices()) * kN) {}

  // Calls accept on candidates passing the cost predicate until it returns
  // true. Returns whether some candidate was accepted.
  bool Run(const std::function<bool(const Candidate&)>& accept,
           std::size_t* checks, std::size_t* verifications) {
    auto paths1 = EnumerateSimplePaths(g_, c1_.source, c1_.sink, cap_);
    auto paths2 = EnumerateSimplePaths(g_, c2_.source, c2_.sink, cap_);
    for (const Path& p2 : paths2) {
      for (const EdgeId& e2 : p2) {
        if (!block_.count(e2)) continue;
        for (const Path& p3 : paths1) {
          if (std::find(p3.begin(), p3.end(), e2) == p3.end()) continue;
          for (const Path& p1 : paths1) {
            if (std::find(p1.begin(), p1.end(), e2) != p1.end()) continue;
            for (const EdgeId& e1 : p1) {
              if (!block_.count(e1) || Contains(p2, e1) || Contains(p3, e1)) {
                continue;
              }
              for (bool guarded : {false, true}) {
                if (++*checks > kMaxPredicateChecks) return false;
                Candidate c = Assign(p1, p2, p3, e1, e2, guarded);
                if (!Predicate(c)) continue;
                if (*verifications >= kMaxVerifications) return false;
                ++*verifications;
                c.case_label = CaseLabel(p2);
                if (accept(c)) return true;
              }
            }
          }
        }
      }
    }
    return false;
  }

 private:
  static bool Contains(const Path& p, const EdgeId& e) {
    return std::find(p.begin(), p.end(), e) != p.end();
  }

  Candidate Assign(const Path& p1, const Path& p2, const Path& p3,
                   const EdgeId& e1, const EdgeId& e2, bool guarded) const {
    Candidate c{p1, p2, p3, e1, e2, guarded, {}, {}, ""};
    EdgePair zero{CostFn::Constant(0), CostFn::Constant(0)};
    std::set<EdgeId> on13(p1.begin(), p1.end());
    on13.insert(p3.begin(), p3.end());
    std::set<VertexId> v13;
    for (const Path* p : {&p1, &p3}) {
      for (const VertexId& v : g_.PathVertices(*p)) v13.insert(v);
    }
    for (const Edge& e : g_.edges()) {
      c.fns[e.id] = {CostFn::Constant(m_), CostFn::Constant(0)};
    }
    for (const EdgeId& e : on13) c.fns[e] = zero;
    for (const EdgeId& e : p2) {
      if (on13.count(e)) continue;
      bool leaves = v13.count(g_.edge(e).tail) > 0;
      c.fns[e] = guarded && leaves
                     ? EdgePair{CostFn::Constant(kN), CostFn::Constant(0)}
                     : zero;
    }
    c.fns[e1] = {CostFn::Constant(1), CostFn::Constant(2)};
    c.fns[e2] = {CostFn::MonotoneThrough({{1, 3}, {1.25, 9}, {2, kN}}),
                 CostFn::Constant(0)};
    for (const auto& [id, pair] : c.fns) {
      if (pair.latency == CostFn::Constant(m_)) c.blocked.push_back(id);
    }
    return c;
  }

  bool Predicate(const Candidate& c) const {
    std::size_t n = g_.num_edges();
    std::vector<double> lat(n), dev(n);
    for (std::size_t i = 0; i < n; ++i) {
      const EdgePair& p = c.fns.at(g_.edges()[i].id);
      lat[i] = p.latency.Eval(0);
      dev[i] = p.deviation.Eval(0);
    }
    std::size_t e2 = *g_.EdgeIndex(c.e2);
    std::size_t s1 = *g_.VertexIndex(c1_.source);
    std::size_t t1 = *g_.VertexIndex(c1_.sink);
    std::size_t s2 = *g_.VertexIndex(c2_.source);
    std::size_t t2 = *g_.VertexIndex(c2_.sink);
    auto sp = [&](double l2, double r, std::size_t s, std::size_t t,
                  bool avoid) {
      return ShortestCost(g_, lat, dev, e2, l2, r, s, t, avoid);
    };
    // Heterogeneous target: e2 at 9.
    if (sp(9, 0, s1, t1, false) < 1 - 1e-9) return false;
    if (sp(9, 4, s1, t1, false) < 9 - 1e-9) return false;
    if (!(sp(9, 1, s2, t2, true) > sp(9, 1, s2, t2, false) + kMargin)) {
      return false;
    }
    // Homogeneous target: e2 at 3.
    if (sp(3, 1, s1, t1, false) < 3 - 1e-9) return false;
    if (!(sp(3, 1, s2, t2, true) > sp(3, 1, s2, t2, false) + kMargin)) {
      return false;
    }
    return true;
  }

  std::string CaseLabel(const Path& p2) const {
    std::set<VertexId> inner;
    for (const EdgeId& id : block_) {
      const Edge& e = g_.edge(id);
      inner.insert(e.tail);
      inner.insert(e.head);
    }
    inner.erase(u_);
    inner.erase(v_);
    std::vector<VertexId> vs = g_.PathVertices(p2);
    for (std::size_t i = 0; i < p2.size(); ++i) {
      if (!block_.count(p2[i])) continue;
      if (vs[i] != u_) return "first-edge-internal";
      for (std::size_t j = 0; j < i; ++j) {
        if (inner.count(vs[j])) return "internal-before-u";
      }
      return "enters-at-u";
    }
    return "none";
  }

  const Network& g_;
  CommoditySpec c1_;
  CommoditySpec c2_;
  std::set<EdgeId> block_;
  VertexId u_;
  VertexId v_;
  std::size_t cap_;
  double m_;
};

Path Reverse(Path p) {
  std::reverse(p.begin(), p.end());
  return p;
}

HurtCertificate FromNonSeriesParallel(const Network& net,
                                      const std::vector<CommoditySpec>& cs,
                                      std::size_t k, const SolverConfig& cfg) {
  internal::Embedding emb = internal::EmbedBraessInstance(
      net, cs[k].source, cs[k].sink, kFirstClasses, cfg.cap);
  std::vector<Commodity> commodities;
  for (std::size_t j = 0; j < cs.size(); ++j) {
    commodities.push_back(j == k ? emb.inst.commodities.front()
                                 : Commodity{cs[j], {}});
  }
  emb.inst.commodities = std::move(commodities);
  emb.trace.kind = "non-block-matching";
  emb.trace.case_label = "non-series-parallel";
  emb.trace.constants["commodity"] = static_cast<double>(k);
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

// Share of commodity k's demand routed through edge e, minimum over both
// equilibria.
double ShareThrough(const HurtCertificate& cert, std::size_t k,
                    const EdgeId& e) {
  double worst = 1;
  for (const ClassFlow* f : {&cert.solved.heterogeneous.flow,
                             &cert.solved.homogeneous.flow}) {
    const CommodityFlow& cf = (*f)[k];
    double through = 0, total = 0;
    for (const auto& amounts : cf.class_amounts) {
      for (std::size_t p = 0; p < cf.paths.size(); ++p) {
        total += amounts[p];
        if (std::find(cf.paths[p].begin(), cf.paths[p].end(), e) !=
            cf.paths[p].end()) {
          through += amounts[p];
        }
      }
    }
    if (total > 0) worst = std::min(worst, through / total);
  }
  return worst;
}

}  // namespace

HurtCertificate NonBlockMatchingHurt(const Network& net,
                                     const std::vector<CommoditySpec>& cs,
                                     const SolverConfig& cfg) {
  ClassificationResult cls = ClassifyNetwork(net, cs, cfg.cap);
  if (IsConforming(cls.outcome)) {
    throw Error(ErrorCode::kClassifiedConforming,
                "network is " + ClassificationTag(cls.outcome));
  }
  if (auto* nsp = std::get_if<NonSeriesParallel>(&cls.outcome)) {
    return FromNonSeriesParallel(net, cs, nsp->commodity, cfg);
  }
  const auto& nb = std::get<NonBlockMatching>(cls.outcome);

  // Commodity 1 owns the block that has an edge outside the other block.
  std::size_t k1 = nb.first_commodity, k2 = nb.second_commodity;
  const Block* b = &nb.first_block;
  const Block* d = &nb.second_block;
  if (std::includes(d->edges.begin(), d->edges.end(), b->edges.begin(),
                    b->edges.end())) {
    std::swap(k1, k2);
    std::swap(b, d);
  }

  std::size_t checks = 0, verifications = 0;
  std::vector<std::string> failures;
  std::optional<HurtCertificate> found;
  for (bool reversed : {false, true}) {
    Network g = reversed ? net.Reversed() : net;
    CommoditySpec c1 = cs[k1], c2 = cs[k2];
    VertexId u = b->source, v = b->sink;
    if (reversed) {
      std::swap(c1.source, c1.sink);
      std::swap(c2.source, c2.sink);
      std::swap(u, v);
    }
    Search search(g, c1, c2, b->edges, u, v, cfg.cap);
    auto accept = [&](const Candidate& c) {
      Instance inst;
      inst.network = net;
      inst.functions = c.fns;
      for (std::size_t j = 0; j < cs.size(); ++j) {
        std::vector<DemandClass> classes;
        if (j == k1) classes = kFirstClasses;
        if (j == k2) classes = kSecondClasses;
        inst.commodities.push_back(Commodity{cs[j], classes});
      }
      ConstructionTrace trace;
      trace.kind = "non-block-matching";
      trace.case_label = c.case_label;
      trace.constants = {{"N", kN},
                         {"M", 2.0 * net.num_vertices() * kN},
                         {"first_commodity", static_cast<double>(k1)},
                         {"second_commodity", static_cast<double>(k2)}};
      auto orient = [reversed](const Path& p) {
        return reversed ? Reverse(p) : p;
      };
      trace.paths = {{"P1", orient(c.p1)},
                     {"P2", orient(c.p2)},
                     {"P3", orient(c.p3)},
                     {"B", b->edges}};
      trace.edges = {{"e1", c.e1}, {"e2", c.e2}};
      trace.blocked_edges = c.blocked;
      trace.notes.push_back(reversed ? "orientation: reversed"
                                     : "orientation: forward");
      trace.notes.push_back(c.guarded ? "assignment: guarded"
                                      : "assignment: zero-paths");
      std::set<EdgeId> blocked(c.blocked.begin(), c.blocked.end());
      try {
        HurtCertificate cert = internal::Certify(std::move(inst),
                                                 std::move(trace), {}, {}, cfg);
        if (std::abs(cert.gap() - 6.0) > 1e-3) {
          failures.push_back("gap " + std::to_string(cert.gap()));
          return false;
        }
        if (internal::MaxFlowOn(cert, blocked) >= 1e-9) {
          failures.push_back("blocked edge carries flow");
          return false;
        }
        if (ShareThrough(cert, k2, c.e2) < 1 - 1e-9) {
          failures.push_back("second commodity bypasses e2");
          return false;
        }
        found = std::move(cert);
        return true;
      } catch (const Error& e) {
        failures.push_back(e.what());
        return false;
      }
    };
    if (search.Run(accept, &checks, &verifications)) return std::move(*found);
  }
  std::string msg = "no verified candidate after " + std::to_string(checks) +
                    " predicate checks and " + std::to_string(verifications) +
                    " solves";
  if (!failures.empty()) msg += "; last failure: " + failures.back();
  throw Error(ErrorCode::kConstructionFailed, msg);
}

}  // namespace routeq
