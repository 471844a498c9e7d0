// Rosters: decoding solver output, independent validation against the
// instance, objective recomputation and fairness statistics.
//
// Nothing here reads a compiled model. Validate() re-derives every rule from
// the nurse x day grid so it can serve as an oracle for the compiler.

#ifndef WARDMIP_ROSTER_H_
#define WARDMIP_ROSTER_H_

#include <span>
#include <string>
#include <vector>

#include "wardmip/compile.h"
#include "wardmip/model.h"

namespace wardmip {

class Roster {
 public:
  static constexpr int kOff = -1;

  Roster() = default;
  Roster(int num_nurses, int horizon)
      : num_nurses_(num_nurses),
        horizon_(horizon),
        cells_(static_cast<size_t>(num_nurses) * horizon, kOff) {}

  int num_nurses() const { return num_nurses_; }
  int horizon() const { return horizon_; }
  // Shift index or kOff.
  int at(int nurse, int day) const { return cells_[Offset(nurse, day)]; }
  void set(int nurse, int day, int shift) { cells_[Offset(nurse, day)] = shift; }
  bool Works(int nurse, int day) const { return at(nurse, day) != kOff; }

  friend bool operator==(const Roster&, const Roster&) = default;

 private:
  size_t Offset(int nurse, int day) const {
    return static_cast<size_t>(nurse) * horizon_ + day;
  }
  int num_nurses_ = 0;
  int horizon_ = 0;
  std::vector<int> cells_;
};

// Thrown for malformed assignment vectors or rosters of the wrong shape.
class RosterError : public Error {
 public:
  using Error::Error;
};

// `assignment` must hold exactly N*S*D values, each within `tol` of 0 or 1.
// Two shifts on one nurse-day is an error, never repaired.
Roster Decode(const ProblemInstance& inst, std::span<const double> assignment,
              double tol = 1e-6);

// Assignment block (N*S*D) of the roster.
std::vector<double> Encode(const ProblemInstance& inst, const Roster& roster);

// Assignment block followed by the penalty indicators the roster implies,
// in compiled column order.
std::vector<double> EncodeWithPenalties(const ProblemInstance& inst,
                                        const Roster& roster);

struct Violation {
  RowTag tag;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  double objective_recomputed = 0.0;

  bool ok() const { return violations.empty(); }
  // Distinct families among the violations, in family order.
  std::vector<Family> Families() const;
};

// Checks every enabled hard rule on the grid and recomputes the objective,
// counting soft-rule occurrences directly. Throws RosterError on a shape
// mismatch.
ValidationReport Validate(const ProblemInstance& inst, const Roster& roster);

struct Spread {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

struct FairnessReport {
  std::vector<int> night_shifts;      // per nurse
  std::vector<int> total_shifts;      // per nurse
  std::vector<int> longest_work_run;  // consecutive worked days, per nurse
  std::vector<int> longest_night_run;
  Spread night_spread;
  Spread total_spread;
  int longest_work_run_overall = 0;
};

FairnessReport Fairness(const ProblemInstance& inst, const Roster& roster);

}  // namespace wardmip

#endif  // WARDMIP_ROSTER_H_
