// Exact optimization of compiled models.

#ifndef WARDMIP_SOLVE_H_
#define WARDMIP_SOLVE_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "wardmip/compile.h"
#include "wardmip/lp.h"
#include "wardmip/model.h"

namespace wardmip {

enum class SolveStatus { kOptimal, kInfeasible, kLimitReached };

const char* ToString(SolveStatus status);

struct SolverConfig {
  double feasibility_tol = 1e-7;
  double integrality_tol = 1e-6;
  // Absolute gap when every objective coefficient is integral.
  double integer_optimality_tol = 1e-9;
  // Relative gap otherwise.
  double relative_optimality_tol = 1e-6;
  // Explored-node cap; 0 means unlimited.
  int64_t node_limit = 0;
  // Wall-clock cap in seconds; 0 means unlimited.
  double time_limit = 0.0;
};

struct SolveStats {
  int64_t nodes = 0;
  int64_t lp_iterations = 0;
  double wall_seconds = 0.0;
  // Objective of the root relaxation; unset if the root LP was infeasible.
  std::optional<double> root_bound;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kInfeasible;
  // Full column vector (assignment block then penalty block).
  std::optional<std::vector<double>> incumbent;
  // Incumbent objective, NaN when there is none.
  double objective = 0.0;
  // Proven bound in the model's sense. Equals objective when optimal.
  double bound = 0.0;
  SolveStats stats;
};

// Thrown when the LP engine reports a numerical failure.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

// Best-bound branch-and-bound over the LP relaxation. Branches on the most
// fractional integer column (lowest index on ties); among open nodes with
// equal bound the oldest is expanded first. Deterministic for a fixed model
// and config unless the time limit fires.
SolveResult SolveIlp(const IlpModel& model, const SolverConfig& config = {});

// Refusal when the enumeration space exceeds kBruteForceLimit.
class TooLarge : public Error {
 public:
  using Error::Error;
};

inline constexpr double kBruteForceLimit = 1e7;

// Exhaustive search over every roster of `inst`: each nurse-day is OFF or one
// of the shifts. Feasibility comes from the roster validator and the
// objective from its recomputation, so nothing here touches the compiled
// model. Ties go to the lexicographically smallest assignment vector. The
// incumbent holds assignment columns followed by the implied penalty values.
SolveResult BruteForce(const ProblemInstance& inst);

// Families whose rows, taken together, already make the model infeasible.
// Found by deletion filtering over whole families; empty if the model is
// feasible. The LP relaxation is tried first and the integer program (under
// `config`) only when the relaxation alone is feasible.
std::vector<Family> ConflictingFamilies(const IlpModel& model,
                                        const SolverConfig& config = {});

}  // namespace wardmip

#endif  // WARDMIP_SOLVE_H_
