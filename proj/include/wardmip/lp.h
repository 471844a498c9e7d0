// LP relaxation engine: bounded-variable primal simplex.

#ifndef WARDMIP_LP_H_
#define WARDMIP_LP_H_

#include <cstdint>
#include <span>
#include <vector>

#include "wardmip/compile.h"

namespace wardmip {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kNumericalFailure };

const char* ToString(LpStatus status);

struct LpOptions {
  double feasibility_tol = 1e-7;
  double dual_tol = 1e-9;
  double pivot_tol = 1e-9;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int degenerate_streak_for_bland = 50;
  // 0 selects a limit proportional to the model size.
  int64_t iteration_limit = 0;
};

struct LpSolution {
  LpStatus status = LpStatus::kNumericalFailure;
  std::vector<double> values;  // one per model column
  double objective = 0.0;      // includes the model constant
  int64_t iterations = 0;
};

struct BoundOverride {
  int column;
  double lower;
  double upper;
};

// Holds the column-major constraint matrix of a model so repeated solves with
// different column bounds do not rebuild it. Integrality is ignored.
class LpRelaxation {
 public:
  explicit LpRelaxation(const IlpModel& model, LpOptions options = {});

  LpSolution Solve(std::span<const double> lower,
                   std::span<const double> upper) const;
  LpSolution Solve() const;

  int num_rows() const { return static_cast<int>(rhs_.size()); }
  int num_columns() const { return num_columns_; }

 private:
  friend class SimplexRun;

  const IlpModel& model_;
  LpOptions options_;
  int num_columns_ = 0;
  // Rows that kept at least one term.
  std::vector<int> col_start_;
  std::vector<int> row_index_;
  std::vector<double> coef_;
  std::vector<Sense> sense_;
  std::vector<double> rhs_;
  std::vector<double> cost_;  // minimization form
  // Set when a row without terms cannot be satisfied.
  bool trivially_infeasible_ = false;
};

// One-shot relaxation solve with the model's bounds, tightened or replaced
// by `overrides`.
LpSolution SolveLp(const IlpModel& model,
                   std::span<const BoundOverride> overrides = {},
                   const LpOptions& options = {});

}  // namespace wardmip

#endif  // WARDMIP_LP_H_
