#ifndef ROUTEQ_EQUILIBRIUM_H_
#define ROUTEQ_EQUILIBRIUM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "routeq/error.h"
#include "routeq/instance.h"

namespace routeq {

// Path flows of one commodity. class_amounts[i][p] is the amount of class i
// routed on paths[p].
struct CommodityFlow {
  std::vector<Path> paths;
  std::vector<std::vector<double>> class_amounts;

  bool operator==(const CommodityFlow&) const = default;
};

// One entry per commodity, in instance order.
using ClassFlow = std::vector<CommodityFlow>;

inline constexpr double kDefaultUsedThreshold = 1e-7;

// Throws kInfeasibleFlow unless each class's amounts are nonnegative, sum to
// the class demand within 1e-9 and sit on simple s_k-t_k paths.
void CheckFeasible(const Instance& inst, const ClassFlow& flow);

// Total flow on every network edge (zeros included).
EdgeFlows ComputeEdgeFlows(const Instance& inst, const ClassFlow& flow);

struct WardropViolation {
  std::size_t commodity = 0;
  std::size_t demand_class = 0;
  Path used_path;
  Path cheaper_path;
  double gap = 0;
};

struct EquilibriumReport {
  bool is_equilibrium = true;
  double eps = 0;
  double worst_gap = 0;
  // Largest gap found, present whenever some class uses a path.
  std::optional<WardropViolation> worst;
  // class_costs[k][i]: amount-weighted mean cost of class i over its paths.
  std::vector<std::vector<double>> class_costs;
};

// Checks every used path (amount > used_threshold) of every class against
// all simple s_k-t_k paths.
EquilibriumReport VerifyEquilibrium(
    const Instance& inst, const ClassFlow& flow, double eps,
    double used_threshold = kDefaultUsedThreshold,
    std::size_t cap = kDefaultPathCap);

struct SolverConfig {
  double eps = 1e-6;
  std::size_t max_iters = 200000;
  std::size_t cap = kDefaultPathCap;
  double used_threshold = kDefaultUsedThreshold;
  // Perturbs the otherwise uniform starting point.
  std::optional<std::uint64_t> seed;
  // Off leaves only the averaging iteration.
  bool polish = true;
};

struct SolveStats {
  std::size_t iterations = 0;  // Averaging steps taken.
  std::size_t polish_attempts = 0;
  bool polished = false;  // Final flow came from the Newton polish.
};

struct SolveResult {
  ClassFlow flow;
  EquilibriumReport report;
  SolveStats stats;
};

// Thrown when no verified equilibrium was found within max_iters. Carries the
// last iterate for inspection.
class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& message, ClassFlow flow,
                EquilibriumReport report, SolveStats stats)
      : Error(ErrorCode::kNoConvergence, message),
        flow_(std::move(flow)),
        report_(std::move(report)),
        stats_(stats) {}

  const ClassFlow& flow() const { return flow_; }
  const EquilibriumReport& report() const { return report_; }
  const SolveStats& stats() const { return stats_; }
  // Which side of a comparison failed, if known.
  std::string stage;

 private:
  ClassFlow flow_;
  EquilibriumReport report_;
  SolveStats stats_;
};

// Method of successive averages over enumerated paths (Jacobi best responses,
// lowest path index wins ties, step 1/(t+1)). The iterate is periodically
// handed to an active-set Newton solve of the equal-cost conditions, whose
// result is kept only if it verifies.
SolveResult SolveEquilibrium(const Instance& inst, const SolverConfig& cfg);

// sum_k sum_i d_ki * c_ki with c_ki the class's mean path cost.
double HeterogeneousTotalCost(const Instance& inst, const ClassFlow& flow);
// sum_k d_k * c_k. Throws kNotHomogeneous if a commodity has several classes.
double HomogeneousTotalCost(const Instance& inst, const ClassFlow& flow);

enum class Verdict { kHelps, kHurts, kTies };
std::string VerdictName(Verdict v);

inline constexpr double kDefaultTieTolerance = 1e-6;

struct VerdictResult {
  Verdict verdict = Verdict::kTies;
  double heterogeneous_cost = 0;
  double homogeneous_cost = 0;
  Instance homogenized;
  SolveResult heterogeneous;
  SolveResult homogeneous;
};

// Solves inst and Homogenize(inst) and compares the totals. NoConvergence
// propagates with `stage` set to "heterogeneous" or "homogeneous".
VerdictResult DiversityVerdict(const Instance& inst, const SolverConfig& cfg,
                               double tie_tol = kDefaultTieTolerance);

}  // namespace routeq

#endif  // ROUTEQ_EQUILIBRIUM_H_
