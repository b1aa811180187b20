#include "routeq/instance.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "routeq/error.h"

namespace routeq {

double Commodity::TotalDemand() const {
  double d = 0;
  for (const DemandClass& c : classes) d += c.amount;
  return d;
}

double Commodity::MeanR() const {
  double d = TotalDemand();
  if (!(d > 0)) {
    throw Error(ErrorCode::kZeroDemand, "commodity '" + spec.source + "'->'" +
                                            spec.sink + "' has no demand");
  }
  double s = 0;
  for (const DemandClass& c : classes) s += c.r * c.amount;
  return s / d;
}

double Instance::MaxR() const {
  double r = 0;
  for (const Commodity& c : commodities) {
    for (const DemandClass& dc : c.classes) r = std::max(r, dc.r);
  }
  return r;
}

std::vector<CommoditySpec> Instance::Specs() const {
  std::vector<CommoditySpec> out;
  for (const Commodity& c : commodities) out.push_back(c.spec);
  return out;
}

void ValidateInstance(const Instance& inst) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorCode::kInvalidInstance, msg);
  };
  const Network& net = inst.network;
  for (std::size_t k = 0; k < inst.commodities.size(); ++k) {
    const Commodity& c = inst.commodities[k];
    std::string name = "commodity " + std::to_string(k);
    if (!net.HasVertex(c.spec.source) || !net.HasVertex(c.spec.sink)) {
      fail(name + " references an unknown vertex");
    }
    if (c.spec.source == c.spec.sink) fail(name + " has source == sink");
    for (const DemandClass& dc : c.classes) {
      if (!(dc.r >= 0) || !std::isfinite(dc.r)) {
        fail(name + " has a class with negative r");
      }
      if (!(dc.amount > 0) || !std::isfinite(dc.amount)) {
        fail(name + " has a class with non-positive amount");
      }
    }
  }
  for (const Edge& e : net.edges()) {
    if (!inst.functions.count(e.id)) {
      fail("edge '" + e.id + "' has no cost functions");
    }
  }
  for (const auto& [id, fns] : inst.functions) {
    if (!net.HasEdge(id)) fail("functions given for unknown edge '" + id + "'");
  }
  auto violations = ValidateMonotonicity(inst.functions, inst.MaxR());
  if (!violations.empty()) {
    const MonotonicityViolation& v = violations.front();
    std::ostringstream os;
    os << "edge '" << v.edge << "': latency + " << v.r
       << " * deviation has slope " << v.slope << " on [" << v.segment_begin
       << ", " << v.segment_end << ")";
    fail(os.str());
  }
}

Instance Homogenize(const Instance& inst) {
  Instance out = inst;
  for (Commodity& c : out.commodities) {
    if (c.classes.empty()) continue;
    double d = c.TotalDemand();
    if (!(d > 0)) {
      throw Error(ErrorCode::kZeroDemand, "commodity has no demand");
    }
    c.classes = {DemandClass{c.MeanR(), d}};
  }
  return out;
}

bool IsAverageRespecting(const Instance& inst) {
  std::vector<double> means;
  for (const Commodity& c : inst.commodities) {
    if (c.classes.empty()) continue;
    means.push_back(c.MeanR());
  }
  if (means.empty()) {
    throw Error(ErrorCode::kZeroDemand, "no commodity has positive demand");
  }
  for (double m : means) {
    if (std::abs(m - means.front()) > 1e-9) return false;
  }
  return true;
}

}  // namespace routeq
