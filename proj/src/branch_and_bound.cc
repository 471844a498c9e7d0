#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <set>

#include "wardmip/solve.h"

namespace wardmip {

const char* ToString(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kLimitReached:
      return "limit_reached";
  }
  return "infeasible";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Fixing {
  int column;
  uint8_t value;
};

struct OpenNode {
  int64_t id = 0;
  double bound = 0.0;  // parent relaxation objective, model sense
  std::vector<Fixing> fixings;
};

// Compares objective values in the model's sense: larger is better for
// maximization, smaller for minimization. All comparisons go through
// Score() so the search itself is sense-agnostic.
class ObjectiveOrder {
 public:
  ObjectiveOrder(const IlpModel& model, const SolverConfig& config)
      : sign_(model.maximize() ? 1.0 : -1.0),
        constant_(model.objective_constant),
        config_(config) {
    integral_ = std::all_of(model.objective.begin(), model.objective.end(),
                            [](double c) { return c == std::round(c); });
  }

  double Score(double value) const { return sign_ * (value - constant_); }
  double FromScore(double score) const { return sign_ * score + constant_; }
  double Worst() const { return -sign_ * kInf; }

  // Tightest valid bound: on integral objectives any feasible value is the
  // constant plus an integer.
  double Tighten(double bound) const {
    if (!integral_ || !std::isfinite(bound)) return bound;
    return FromScore(std::floor(Score(bound) + 1e-6));
  }

  // Whether a subtree bounded by `bound` can hold a strictly better
  // solution than `incumbent`.
  bool CanImprove(double bound, double incumbent) const {
    if (integral_) {
      return std::floor(Score(bound) + 1e-6) >=
             std::round(Score(incumbent)) + 1.0;
    }
    const double gap = Score(bound) - Score(incumbent);
    return gap > config_.relative_optimality_tol *
                     std::max(1.0, std::abs(incumbent));
  }

  bool Better(double a, double b) const { return Score(a) > Score(b); }
  bool integral() const { return integral_; }

 private:
  double sign_;
  double constant_;
  const SolverConfig& config_;
  bool integral_ = false;
};

struct NodeQueueOrder {
  const ObjectiveOrder* order;
  // priority_queue pops the "largest": best bound, then lowest id.
  bool operator()(const OpenNode& a, const OpenNode& b) const {
    const double sa = order->Score(a.bound);
    const double sb = order->Score(b.bound);
    if (sa != sb) return sa < sb;
    return a.id > b.id;
  }
};

// Most fractional integer column, lowest index on ties; -1 if integral.
int BranchColumn(const IlpModel& model, const std::vector<double>& values,
                 double integrality_tol) {
  int best = -1;
  double best_distance = -1.0;
  for (int j = 0; j < model.num_columns; ++j) {
    if (!model.integer[j]) continue;
    const double frac = values[j] - std::floor(values[j]);
    if (frac <= integrality_tol || frac >= 1.0 - integrality_tol) continue;
    const double distance = std::min(frac, 1.0 - frac);
    if (distance > best_distance + 1e-12) {
      best_distance = distance;
      best = j;
    }
  }
  return best;
}

}  // namespace

SolveResult SolveIlp(const IlpModel& model, const SolverConfig& config) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  const auto elapsed = [&] {
    return std::chrono::duration<double>(Clock::now() - start).count();
  };

  for (int j = 0; j < model.num_columns; ++j) {
    if (model.integer[j] && (model.lower[j] < 0.0 || model.upper[j] > 1.0)) {
      throw Error("integer column " + std::to_string(j) +
                  " does not have 0/1 bounds");
    }
  }

  LpOptions lp_options;
  lp_options.feasibility_tol = config.feasibility_tol;
  const LpRelaxation lp(model, lp_options);
  const ObjectiveOrder order(model, config);

  SolveResult result;
  std::optional<double> incumbent_value;
  std::priority_queue<OpenNode, std::vector<OpenNode>, NodeQueueOrder> open(
      NodeQueueOrder{&order});
  int64_t next_id = 0;
  open.push(OpenNode{next_id++, order.FromScore(kInf), {}});

  std::vector<double> lower(model.num_columns);
  std::vector<double> upper(model.num_columns);
  bool limit_hit = false;

  while (!open.empty()) {
    if ((config.node_limit > 0 && result.stats.nodes >= config.node_limit) ||
        (config.time_limit > 0 && elapsed() >= config.time_limit)) {
      limit_hit = true;
      break;
    }
    OpenNode node = open.top();
    open.pop();
    if (incumbent_value && !order.CanImprove(node.bound, *incumbent_value)) {
      continue;
    }

    std::copy(model.lower.begin(), model.lower.end(), lower.begin());
    std::copy(model.upper.begin(), model.upper.end(), upper.begin());
    for (const Fixing& f : node.fixings) {
      lower[f.column] = upper[f.column] = f.value;
    }
    const LpSolution relaxation = lp.Solve(lower, upper);
    ++result.stats.nodes;
    result.stats.lp_iterations += relaxation.iterations;

    if (relaxation.status == LpStatus::kNumericalFailure) {
      throw NumericalFailure("LP relaxation failed at node " +
                             std::to_string(node.id));
    }
    if (relaxation.status == LpStatus::kUnbounded) {
      throw Error("LP relaxation unbounded; columns must be bounded");
    }
    if (relaxation.status == LpStatus::kInfeasible) continue;
    if (node.fixings.empty()) result.stats.root_bound = relaxation.objective;
    if (incumbent_value &&
        !order.CanImprove(relaxation.objective, *incumbent_value)) {
      continue;
    }

    const int branch =
        BranchColumn(model, relaxation.values, config.integrality_tol);
    if (branch < 0) {
      std::vector<double> values = relaxation.values;
      for (int j = 0; j < model.num_columns; ++j) {
        if (model.integer[j]) values[j] = std::round(values[j]);
      }
      const double value = model.Evaluate(values);
      if (!incumbent_value || order.Better(value, *incumbent_value)) {
        incumbent_value = value;
        result.incumbent = std::move(values);
      }
      continue;
    }

    for (uint8_t side : {uint8_t{1}, uint8_t{0}}) {
      OpenNode child{next_id++, relaxation.objective, node.fixings};
      child.fixings.push_back({branch, side});
      open.push(std::move(child));
    }
  }

  result.stats.wall_seconds = elapsed();
  if (limit_hit) {
    result.status = SolveStatus::kLimitReached;
    double bound = open.top().bound;
    if (incumbent_value && order.Better(*incumbent_value, bound)) {
      bound = *incumbent_value;
    }
    result.bound = order.Tighten(bound);
    result.objective = incumbent_value.value_or(
        std::numeric_limits<double>::quiet_NaN());
    return result;
  }
  if (incumbent_value) {
    result.status = SolveStatus::kOptimal;
    result.objective = *incumbent_value;
    result.bound = *incumbent_value;
  } else {
    result.status = SolveStatus::kInfeasible;
    result.objective = std::numeric_limits<double>::quiet_NaN();
    result.bound = order.Worst();
  }
  return result;
}

namespace {

IlpModel WithoutFamilies(const IlpModel& model, const std::set<Family>& drop) {
  IlpModel reduced = model;
  std::erase_if(reduced.rows, [&](const ConstraintRow& row) {
    return drop.contains(row.tag.family);
  });
  return reduced;
}

}  // namespace

std::vector<Family> ConflictingFamilies(const IlpModel& model,
                                        const SolverConfig& config) {
  const bool use_lp = SolveLp(model).status == LpStatus::kInfeasible;
  const auto infeasible = [&](const std::set<Family>& drop) {
    const IlpModel reduced = WithoutFamilies(model, drop);
    if (use_lp) return SolveLp(reduced).status == LpStatus::kInfeasible;
    return SolveIlp(reduced, config).status == SolveStatus::kInfeasible;
  };
  if (!infeasible({})) return {};

  std::set<Family> present;
  for (const ConstraintRow& row : model.rows) present.insert(row.tag.family);
  std::set<Family> dropped;
  for (Family family : present) {
    dropped.insert(family);
    if (!infeasible(dropped)) dropped.erase(family);
  }
  std::vector<Family> conflict;
  for (Family family : present) {
    if (!dropped.contains(family)) conflict.push_back(family);
  }
  return conflict;
}

}  // namespace wardmip
