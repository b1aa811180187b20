#ifndef ROUTEQ_COST_FN_H_
#define ROUTEQ_COST_FN_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "routeq/network.h"

namespace routeq {

// Continuous piecewise-linear function of the edge flow. Constant and Affine
// are kept as their own kinds so they serialize back the way they were given.
class CostFn {
 public:
  enum class Kind { kConstant, kAffine, kPiecewiseLinear };

  CostFn() = default;

  static CostFn Constant(double c);
  // a * x + b.
  static CostFn Affine(double a, double b);
  // Linear interpolation between (xs[i], ys[i]); the extension slopes apply
  // left of xs.front() and right of xs.back(). xs must be strictly
  // increasing and non-empty.
  static CostFn PiecewiseLinear(std::vector<double> xs, std::vector<double> ys,
                                double left_slope, double right_slope);
  // Strictly increasing interpolant through the anchors. Outside the anchors
  // the slope is max(min_slope, slope of the adjacent segment). Throws
  // kNonMonotoneAnchors unless x and y both strictly increase and
  // min_slope > 0.
  static CostFn MonotoneThrough(const std::vector<std::pair<double, double>>&
                                    points,
                                double min_slope = 1.0);

  Kind kind() const { return kind_; }
  // Constant: {c}; Affine: {a, b}.
  const std::vector<double>& params() const { return params_; }
  const std::vector<double>& xs() const { return xs_; }
  const std::vector<double>& ys() const { return ys_; }
  double left_slope() const { return left_slope_; }
  double right_slope() const { return right_slope_; }

  // Throws kNegativeFlow for x < 0.
  double Eval(double x) const;
  // Slope of the piece containing [x, x + dx) for small dx > 0.
  double RightSlope(double x) const;
  // Breakpoints where the slope may change.
  std::vector<double> Breakpoints() const;

  std::string DebugString() const;

  bool operator==(const CostFn&) const = default;

 private:
  Kind kind_ = Kind::kConstant;
  std::vector<double> params_ = {0.0};
  std::vector<double> xs_;
  std::vector<double> ys_;
  double left_slope_ = 0;
  double right_slope_ = 0;
};

struct EdgePair {
  CostFn latency;
  CostFn deviation;

  bool operator==(const EdgePair&) const = default;
};

using EdgeFunctions = std::map<EdgeId, EdgePair>;

// l_P(f) + r * sigma_P(f) with f the total edge flows. Throws kMissingEdge for
// an edge with no functions; edges absent from `flows` carry zero.
double PathCost(const EdgeFunctions& fns, const EdgeFlows& flows,
                const Path& path, double r);

struct MonotonicityViolation {
  EdgeId edge;
  double segment_begin;
  double segment_end;  // Infinity for the unbounded last segment.
  double r;
  double slope;  // Slope of l + r * sigma on the segment.
};

// Checks l and l + r * sigma for r in {0, r_max} on every linear segment of
// the union of both functions' breakpoints over x >= 0.
std::vector<MonotonicityViolation> ValidateMonotonicity(
    const EdgeFunctions& fns, double r_max);

}  // namespace routeq

#endif  // ROUTEQ_COST_FN_H_
