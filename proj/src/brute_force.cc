#include <cmath>
#include <limits>

#include "wardmip/roster.h"
#include "wardmip/solve.h"

namespace wardmip {

SolveResult BruteForce(const ProblemInstance& inst) {
  RequireValid(inst);
  const int nurses = inst.num_nurses();
  const int days = inst.horizon;
  const int shifts = inst.num_shifts();
  const double space =
      std::pow(static_cast<double>(shifts + 1),
               static_cast<double>(nurses) * static_cast<double>(days));
  if (space > kBruteForceLimit) {
    throw TooLarge("brute force would enumerate " + std::to_string(space) +
                   " rosters");
  }

  const bool maximize = IsMaximize(inst.objective_mode);
  SolveResult result;
  std::optional<double> best;
  std::vector<double> best_vector;
  Roster roster(nurses, days);
  // Odometer over cells, nurse-major; each cell runs OFF, 0, ..., S-1.
  while (true) {
    ++result.stats.nodes;
    const ValidationReport report = Validate(inst, roster);
    if (report.ok()) {
      const double value = report.objective_recomputed;
      const bool better =
          !best || (maximize ? value > *best + 1e-9 : value < *best - 1e-9);
      const bool tie = best && std::abs(value - *best) <= 1e-9;
      if (better || tie) {
        std::vector<double> encoded = Encode(inst, roster);
        if (better || encoded < best_vector) {
          best = value;
          best_vector = std::move(encoded);
          result.incumbent = EncodeWithPenalties(inst, roster);
        }
      }
    }
    int cell = nurses * days - 1;
    for (; cell >= 0; --cell) {
      const int n = cell / days;
      const int d = cell % days;
      if (roster.at(n, d) + 1 < shifts) {
        roster.set(n, d, roster.at(n, d) + 1);
        break;
      }
      roster.set(n, d, Roster::kOff);
    }
    if (cell < 0) break;
  }

  if (best) {
    result.status = SolveStatus::kOptimal;
    result.objective = result.bound = *best;
  } else {
    result.status = SolveStatus::kInfeasible;
    result.objective = std::numeric_limits<double>::quiet_NaN();
    result.bound = maximize ? -std::numeric_limits<double>::infinity()
                            : std::numeric_limits<double>::infinity();
  }
  return result;
}

}  // namespace wardmip
