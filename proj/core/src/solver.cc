#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "path_model.h"
#include "routeq/equilibrium.h"

namespace routeq {
namespace {

using internal::PathAmounts;
using internal::PathModel;

constexpr std::size_t kMaxNewtonSteps = 500;
constexpr double kBreakSnap = 1e-11;
// Larger supports make the dense Newton systems too slow to try directly.
constexpr std::size_t kMaxFullSupport = 300;
constexpr double kResidualTol = 1e-11;
constexpr double kEntryTol = 1e-10;

PathAmounts InitialAmounts(const PathModel& m,
                           std::optional<std::uint64_t> seed) {
  const Instance& inst = *m.inst;
  std::mt19937_64 gen(seed.value_or(0));
  std::uniform_real_distribution<double> weight(0.5, 1.5);
  PathAmounts x(inst.commodities.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    std::size_t n = m.paths[k].size();
    for (const DemandClass& dc : inst.commodities[k].classes) {
      std::vector<double> w(n, 1.0);
      if (seed) {
        for (double& v : w) v = weight(gen);
      }
      double sum = 0;
      for (double v : w) sum += v;
      for (double& v : w) v *= dc.amount / sum;
      x[k].push_back(std::move(w));
    }
  }
  return x;
}

// One Jacobi averaging step with weight `step` toward the all-or-nothing
// best responses at the current loads.
void AveragingStep(const PathModel& m, double step, PathAmounts* x) {
  const Instance& inst = *m.inst;
  internal::EdgeValues v = internal::EvalEdges(m, internal::EdgeLoads(m, *x));
  for (std::size_t k = 0; k < x->size(); ++k) {
    const auto& classes = inst.commodities[k].classes;
    for (std::size_t i = 0; i < classes.size(); ++i) {
      std::size_t best = 0;
      double best_cost = 0;
      for (std::size_t p = 0; p < m.paths[k].size(); ++p) {
        double c = internal::PathCostAt(v, m.edges[k][p], classes[i].r);
        if (p == 0 || c < best_cost) {
          best = p;
          best_cost = c;
        }
      }
      auto& amounts = (*x)[k][i];
      for (std::size_t p = 0; p < amounts.size(); ++p) {
        amounts[p] *= 1 - step;
        if (p == best) amounts[p] += step * classes[i].amount;
      }
    }
  }
}

struct ClassRef {
  std::size_t k;
  std::size_t i;
  double r;
  double demand;
  std::vector<std::size_t> support;
  double level = 0;  // Common cost on the support.
};

bool NearBreak(double f, double b) {
  return std::abs(f - b) <= kBreakSnap * std::max(1.0, std::abs(b));
}

// Slope of the linear piece of f adjacent to x on the given side, treating
// x within kBreakSnap of a breakpoint as sitting on it.
double PieceSlope(const CostFn& fn, double x, int side) {
  if (fn.kind() != CostFn::Kind::kPiecewiseLinear) return fn.RightSlope(x);
  const auto& xs = fn.xs();
  const auto& ys = fn.ys();
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (NearBreak(x, xs[j])) {
      if (side > 0) {
        return j + 1 < xs.size()
                   ? (ys[j + 1] - ys[j]) / (xs[j + 1] - xs[j])
                   : fn.right_slope();
      }
      return j > 0 ? (ys[j] - ys[j - 1]) / (xs[j] - xs[j - 1])
                   : fn.left_slope();
    }
  }
  return fn.RightSlope(x);
}

bool AtBreak(const CostFn& fn, double x) {
  for (double b : fn.Breakpoints()) {
    if (NearBreak(x, b)) return true;
  }
  return false;
}

// Step length until x + a * dx reaches the next breakpoint of fn, or inf.
double NextBreak(const CostFn& fn, double x, double dx) {
  double best = std::numeric_limits<double>::infinity();
  for (double b : fn.Breakpoints()) {
    if (NearBreak(x, b)) continue;
    double a = (b - x) / dx;
    if (a > 0) best = std::min(best, a);
  }
  return best;
}

// Active-set Newton solve of "cost equals the class level on the support,
// demand met" for all classes at once, starting from x. On each linear piece
// of the cost functions the residual is affine, so a step of length a
// shrinks it by the factor 1 - a; steps stop at breakpoints and at zero
// amounts. Paths reaching zero leave the support and cheaper paths enter
// once the residual vanishes.
std::optional<PathAmounts> Polish(const PathModel& m, const PathAmounts& x0) {
  const Instance& inst = *m.inst;
  PathAmounts x = x0;
  std::size_t num_edges = m.fns.size();
  std::vector<double> init_loads = internal::EdgeLoads(m, x);
  internal::EdgeValues init_val = internal::EvalEdges(m, init_loads);
  std::vector<ClassRef> classes;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t i = 0; i < x[k].size(); ++i) {
      ClassRef c{k, i, inst.commodities[k].classes[i].r,
                 inst.commodities[k].classes[i].amount, {}};
      std::size_t top = 0;
      for (std::size_t p = 0; p < x[k][i].size(); ++p) {
        if (x[k][i][p] > x[k][i][top]) top = p;
        if (x[k][i][p] > 1e-12 * c.demand) c.support.push_back(p);
      }
      if (c.support.empty()) c.support.push_back(top);
      double sum = 0;
      for (std::size_t p = 0; p < x[k][i].size(); ++p) {
        if (!std::binary_search(c.support.begin(), c.support.end(), p)) {
          x[k][i][p] = 0;
        }
        double a = x[k][i][p];
        c.level += a * internal::PathCostAt(init_val, m.edges[k][p], c.r);
        sum += a;
      }
      if (sum > 0) c.level /= sum;
      classes.push_back(std::move(c));
    }
  }
  if (classes.empty()) return x;

  std::vector<int> side(num_edges, 1);
  std::size_t stalls = 0;
  for (std::size_t step = 0; step < kMaxNewtonSteps; ++step) {
    // Variables: support path amounts, then one level per class.
    struct Var {
      std::size_t cls;
      std::size_t path;
    };
    std::vector<Var> vars;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      for (std::size_t p : classes[c].support) vars.push_back({c, p});
    }
    std::size_t nx = vars.size();
    std::size_t n = nx + classes.size();
    auto amount = [&](const Var& v) -> double& {
      const ClassRef& c = classes[v.cls];
      return x[c.k][c.i][v.path];
    };
    auto path_edges = [&](const Var& v) -> const std::vector<std::size_t>& {
      return m.edges[classes[v.cls].k][v.path];
    };

    std::vector<double> loads = internal::EdgeLoads(m, x);
    for (double& f : loads) f = std::max(0.0, f);
    internal::EdgeValues val = internal::EvalEdges(m, loads);

    Eigen::VectorXd res(n);
    double worst = 0;
    std::vector<double> path_cost(nx);
    for (std::size_t a = 0; a < nx; ++a) {
      path_cost[a] =
          internal::PathCostAt(val, path_edges(vars[a]), classes[vars[a].cls].r);
      res(a) = path_cost[a] - classes[vars[a].cls].level;
      worst = std::max(worst, std::abs(res(a)));
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      double sum = 0;
      for (std::size_t p : classes[c].support) {
        sum += x[classes[c].k][classes[c].i][p];
      }
      res(nx + c) = sum - classes[c].demand;
      worst = std::max(worst, std::abs(res(nx + c)));
    }

    if (worst < kResidualTol) {
      // Residual solved on this support; admit the unused path undercutting
      // its class level the most.
      std::optional<std::pair<std::size_t, std::size_t>> entry;
      double best_cut = kEntryTol;
      for (std::size_t c = 0; c < classes.size(); ++c) {
        const ClassRef& cr = classes[c];
        for (std::size_t p = 0; p < m.paths[cr.k].size(); ++p) {
          if (std::binary_search(cr.support.begin(), cr.support.end(), p)) {
            continue;
          }
          double cut = cr.level -
                       internal::PathCostAt(val, m.edges[cr.k][p], cr.r);
          if (cut > best_cut) {
            best_cut = cut;
            entry = {c, p};
          }
        }
      }
      if (!entry) return x;
      auto& sup = classes[entry->first].support;
      sup.insert(std::lower_bound(sup.begin(), sup.end(), entry->second),
                 entry->second);
      continue;
    }

    std::vector<std::vector<std::size_t>> on_edge(num_edges);
    for (std::size_t a = 0; a < nx; ++a) {
      for (std::size_t e : path_edges(vars[a])) on_edge[e].push_back(a);
    }
    std::vector<bool> at_break(num_edges);
    for (std::size_t e = 0; e < num_edges; ++e) {
      at_break[e] = !on_edge[e].empty() &&
                    (AtBreak(m.fns[e]->latency, loads[e]) ||
                     AtBreak(m.fns[e]->deviation, loads[e]));
    }

    // Pick the pieces the step moves into: edges sitting on a breakpoint
    // take the slope on the side their load is heading to.
    Eigen::VectorXd delta;
    Eigen::MatrixXd jac;
    std::vector<double> dload(num_edges);
    for (int attempt = 0; attempt < 4; ++attempt) {
      jac = Eigen::MatrixXd::Zero(n, n);
      for (std::size_t e = 0; e < num_edges; ++e) {
        if (on_edge[e].empty()) continue;
        double dl = PieceSlope(m.fns[e]->latency, loads[e], side[e]);
        double ds = PieceSlope(m.fns[e]->deviation, loads[e], side[e]);
        for (std::size_t a : on_edge[e]) {
          double r = classes[vars[a].cls].r;
          for (std::size_t b : on_edge[e]) jac(a, b) += dl + r * ds;
        }
      }
      for (std::size_t a = 0; a < nx; ++a) {
        jac(a, nx + vars[a].cls) = -1;
        jac(nx + vars[a].cls, a) = 1;
      }
      delta = jac.completeOrthogonalDecomposition().solve(-res);
      if (!delta.allFinite()) return std::nullopt;
      bool flipped = false;
      for (std::size_t e = 0; e < num_edges; ++e) {
        double d = 0;
        for (std::size_t a : on_edge[e]) d += delta(a);
        dload[e] = d;
        if (!at_break[e] || std::abs(d) < kBreakSnap) continue;
        int want = d > 0 ? 1 : -1;
        if (want != side[e]) {
          side[e] = want;
          flipped = true;
        }
      }
      if (!flipped) break;
    }

    Eigen::VectorXd left = jac * delta + res;
    if (left.lpNorm<Eigen::Infinity>() > 1e-8 * std::max(1.0, worst)) {
      // No exact solution on this support. Drop the path left furthest
      // above its class level by the least-squares step.
      std::optional<std::size_t> drop;
      for (std::size_t a = 0; a < nx; ++a) {
        if (classes[vars[a].cls].support.size() < 2) continue;
        if (!drop || left(a) > left(*drop)) drop = a;
      }
      if (!drop) return std::nullopt;
      ClassRef& c = classes[vars[*drop].cls];
      amount(vars[*drop]) = 0;
      c.support.erase(
          std::find(c.support.begin(), c.support.end(), vars[*drop].path));
      continue;
    }

    // Ratio test against zero amounts and the next breakpoints.
    double alpha = 1;
    std::optional<std::size_t> blocking;
    for (std::size_t a = 0; a < nx; ++a) {
      if (delta(a) >= 0) continue;
      double lim = amount(vars[a]) / -delta(a);
      if (lim < alpha) {
        alpha = lim;
        blocking = a;
      }
    }
    for (std::size_t e = 0; e < num_edges; ++e) {
      if (std::abs(dload[e]) < kBreakSnap) continue;
      double lim = std::min(NextBreak(m.fns[e]->latency, loads[e], dload[e]),
                            NextBreak(m.fns[e]->deviation, loads[e], dload[e]));
      if (lim < alpha) {
        alpha = lim;
        blocking.reset();
      }
    }
    for (std::size_t a = 0; a < nx; ++a) {
      amount(vars[a]) = std::max(0.0, amount(vars[a]) + alpha * delta(a));
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
      classes[c].level += alpha * delta(nx + c);
    }
    for (std::size_t e = 0; e < num_edges; ++e) {
      if (std::abs(dload[e]) >= kBreakSnap) side[e] = dload[e] > 0 ? 1 : -1;
    }
    if (blocking) {
      ClassRef& c = classes[vars[*blocking].cls];
      amount(vars[*blocking]) = 0;
      if (c.support.size() > 1) {
        c.support.erase(std::find(c.support.begin(), c.support.end(),
                                  vars[*blocking].path));
      }
    } else if (alpha < 1e-12) {
      if (++stalls > 8) return std::nullopt;
    }
  }
  return std::nullopt;
}

// Rescales each class so its amounts sum exactly to its demand.
void Renormalize(const PathModel& m, PathAmounts* x) {
  for (std::size_t k = 0; k < x->size(); ++k) {
    for (std::size_t i = 0; i < (*x)[k].size(); ++i) {
      auto& a = (*x)[k][i];
      double sum = 0;
      for (double v : a) sum += v;
      double d = m.inst->commodities[k].classes[i].amount;
      if (sum > 0) {
        for (double& v : a) v *= d / sum;
      }
    }
  }
}

// Zeroes paths costing more than the class minimum plus a margin, then
// rescales, so the Newton polish starts without paths that averaging has
// not yet drained.
PathAmounts PruneCostly(const PathModel& m, const PathAmounts& x,
                        double rel_margin, double abs_margin) {
  const Instance& inst = *m.inst;
  internal::EdgeValues v = internal::EvalEdges(m, internal::EdgeLoads(m, x));
  PathAmounts out = x;
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t i = 0; i < x[k].size(); ++i) {
      double r = inst.commodities[k].classes[i].r;
      std::vector<double> cost(m.paths[k].size());
      double lo = 0;
      for (std::size_t p = 0; p < cost.size(); ++p) {
        cost[p] = internal::PathCostAt(v, m.edges[k][p], r);
        if (p == 0 || cost[p] < lo) lo = cost[p];
      }
      double margin = std::max(abs_margin, rel_margin * std::abs(lo));
      double kept = 0;
      for (std::size_t p = 0; p < cost.size(); ++p) {
        if (cost[p] > lo + margin) out[k][i][p] = 0;
        kept += out[k][i][p];
      }
      if (!(kept > 0)) {
        for (std::size_t p = 0; p < cost.size(); ++p) {
          if (cost[p] == lo) {
            out[k][i][p] = inst.commodities[k].classes[i].amount;
            break;
          }
        }
      }
    }
  }
  Renormalize(m, &out);
  return out;
}

std::size_t SupportSize(const PathAmounts& x) {
  std::size_t n = 0;
  for (const auto& com : x) {
    for (const auto& cls : com) {
      for (double a : cls) n += a > 0;
    }
  }
  return n;
}

bool IsPowerOfTwo(std::size_t t) { return t != 0 && (t & (t - 1)) == 0; }

}  // namespace

SolveResult SolveEquilibrium(const Instance& inst, const SolverConfig& cfg) {
  internal::CheckTolerances(cfg.eps, cfg.used_threshold);
  PathModel m = internal::BuildPathModel(inst, cfg.cap);
  PathAmounts x = InitialAmounts(m, cfg.seed);
  SolveStats stats;
  EquilibriumReport rep;
  for (std::size_t t = 0;; ++t) {
    rep = internal::VerifyAmounts(m, x, cfg.eps, cfg.used_threshold);
    if (rep.is_equilibrium) {
      return {internal::ToClassFlow(m, x), rep, stats};
    }
    if (cfg.polish && (t == 0 || IsPowerOfTwo(t))) {
      ++stats.polish_attempts;
      // Cheapest paths alone with entries left to the active set, then
      // near-cheapest paths, then the full support when it is small.
      std::vector<PathAmounts> starts = {PruneCostly(m, x, 1e-12, 1e-12),
                                         PruneCostly(m, x, 1e-2, 1e-3)};
      if (SupportSize(x) <= kMaxFullSupport) starts.push_back(x);
      for (const PathAmounts& start : starts) {
        std::optional<PathAmounts> px = Polish(m, start);
        if (!px) continue;
        Renormalize(m, &*px);
        EquilibriumReport prep =
            internal::VerifyAmounts(m, *px, cfg.eps, cfg.used_threshold);
        if (prep.is_equilibrium) {
          stats.polished = true;
          return {internal::ToClassFlow(m, *px), prep, stats};
        }
      }
    }
    if (t >= cfg.max_iters) break;
    AveragingStep(m, 1.0 / static_cast<double>(t + 2), &x);
    stats.iterations = t + 1;
  }
  std::ostringstream os;
  os << "no verified equilibrium after " << stats.iterations
     << " iterations (worst gap " << rep.worst_gap << ")";
  throw NoConvergence(os.str(), internal::ToClassFlow(m, x), rep, stats);
}

}  // namespace routeq
