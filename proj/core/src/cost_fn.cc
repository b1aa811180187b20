#include "routeq/cost_fn.h"

#include <algorithm>
#include <cstdio>
#include <limits>

#include "routeq/error.h"

namespace routeq {

CostFn CostFn::Constant(double c) {
  CostFn f;
  f.kind_ = Kind::kConstant;
  f.params_ = {c};
  return f;
}

CostFn CostFn::Affine(double a, double b) {
  CostFn f;
  f.kind_ = Kind::kAffine;
  f.params_ = {a, b};
  return f;
}

CostFn CostFn::PiecewiseLinear(std::vector<double> xs, std::vector<double> ys,
                               double left_slope, double right_slope) {
  if (xs.empty() || xs.size() != ys.size()) {
    throw Error(ErrorCode::kInvalidInstance,
                "piecewise-linear function needs matching, non-empty "
                "breakpoint and value lists");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) {
      throw Error(ErrorCode::kInvalidInstance,
                  "piecewise-linear breakpoints must strictly increase");
    }
  }
  CostFn f;
  f.kind_ = Kind::kPiecewiseLinear;
  f.params_.clear();
  f.xs_ = std::move(xs);
  f.ys_ = std::move(ys);
  f.left_slope_ = left_slope;
  f.right_slope_ = right_slope;
  return f;
}

CostFn CostFn::MonotoneThrough(
    const std::vector<std::pair<double, double>>& points, double min_slope) {
  if (points.empty()) {
    throw Error(ErrorCode::kNonMonotoneAnchors, "no anchors given");
  }
  if (!(min_slope > 0)) {
    throw Error(ErrorCode::kNonMonotoneAnchors, "min_slope must be positive");
  }
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && !(points[i].first > points[i - 1].first &&
                   points[i].second > points[i - 1].second)) {
      throw Error(ErrorCode::kNonMonotoneAnchors,
                  "anchors must strictly increase in both coordinates");
    }
    xs.push_back(points[i].first);
    ys.push_back(points[i].second);
  }
  double left = min_slope;
  double right = min_slope;
  std::size_t n = xs.size();
  if (n >= 2) {
    left = std::max(min_slope, (ys[1] - ys[0]) / (xs[1] - xs[0]));
    right = std::max(min_slope,
                     (ys[n - 1] - ys[n - 2]) / (xs[n - 1] - xs[n - 2]));
  }
  return PiecewiseLinear(std::move(xs), std::move(ys), left, right);
}

double CostFn::Eval(double x) const {
  if (x < 0) {
    throw Error(ErrorCode::kNegativeFlow,
                "cost evaluated at negative flow " + std::to_string(x));
  }
  switch (kind_) {
    case Kind::kConstant:
      return params_[0];
    case Kind::kAffine:
      return params_[0] * x + params_[1];
    case Kind::kPiecewiseLinear:
      break;
  }
  if (x <= xs_.front()) return ys_.front() + left_slope_ * (x - xs_.front());
  if (x >= xs_.back()) return ys_.back() + right_slope_ * (x - xs_.back());
  std::size_t i =
      std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin();  // xs_[i] > x
  double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return ys_[i - 1] + t * (ys_[i] - ys_[i - 1]);
}

double CostFn::RightSlope(double x) const {
  switch (kind_) {
    case Kind::kConstant:
      return 0;
    case Kind::kAffine:
      return params_[0];
    case Kind::kPiecewiseLinear:
      break;
  }
  if (x < xs_.front()) return left_slope_;
  if (x >= xs_.back()) return right_slope_;
  std::size_t i = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin();
  return (ys_[i] - ys_[i - 1]) / (xs_[i] - xs_[i - 1]);
}

std::vector<double> CostFn::Breakpoints() const {
  return kind_ == Kind::kPiecewiseLinear ? xs_ : std::vector<double>{};
}

std::string CostFn::DebugString() const {
  char buf[64];
  switch (kind_) {
    case Kind::kConstant:
      std::snprintf(buf, sizeof(buf), "const(%g)", params_[0]);
      return buf;
    case Kind::kAffine:
      std::snprintf(buf, sizeof(buf), "affine(%g, %g)", params_[0],
                    params_[1]);
      return buf;
    case Kind::kPiecewiseLinear:
      break;
  }
  std::string out = "pwl[";
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%s(%g,%g)", i ? " " : "", xs_[i],
                  ys_[i]);
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "; %g, %g]", left_slope_, right_slope_);
  return out + buf;
}

double PathCost(const EdgeFunctions& fns, const EdgeFlows& flows,
                const Path& path, double r) {
  double cost = 0;
  for (const EdgeId& id : path) {
    auto it = fns.find(id);
    if (it == fns.end()) {
      throw Error(ErrorCode::kMissingEdge, "no functions for edge '" + id + "'");
    }
    auto f = flows.find(id);
    double x = f == flows.end() ? 0.0 : f->second;
    cost += it->second.latency.Eval(x);
    if (r != 0) cost += r * it->second.deviation.Eval(x);
  }
  return cost;
}

std::vector<MonotonicityViolation> ValidateMonotonicity(
    const EdgeFunctions& fns, double r_max) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  constexpr double kSlack = 1e-12;
  std::vector<MonotonicityViolation> out;
  for (const auto& [id, pair] : fns) {
    std::vector<double> cuts{0.0};
    for (const CostFn* f : {&pair.latency, &pair.deviation}) {
      for (double b : f->Breakpoints()) {
        if (b > 0) cuts.push_back(b);
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      double lo = cuts[i];
      double hi = i + 1 < cuts.size() ? cuts[i + 1] : kInf;
      double sl = pair.latency.RightSlope(lo);
      double ss = pair.deviation.RightSlope(lo);
      for (double r : {0.0, r_max}) {
        double slope = sl + r * ss;
        if (slope < -kSlack) out.push_back({id, lo, hi, r, slope});
        if (r_max == 0) break;
      }
    }
  }
  return out;
}

}  // namespace routeq
