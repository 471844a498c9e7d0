// Domain types for ward scheduling instances.
//
// Day, shift, rank and ward indices are 0-based everywhere in memory. The
// instance document format (see io.h) is 1-based.

#ifndef WARDMIP_MODEL_H_
#define WARDMIP_MODEL_H_

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace wardmip {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CoverageMode { kExact, kAtLeast };
enum class CascadeMode { kOff, kAdjacent, kCumulative };
enum class ObjectiveMode {
  kMaximizeUtility,
  kMinimizeCost,
  kPenalizedUtility,
  kPenalizedCost,
};

// True for the two modes whose optimization sense is "maximize".
bool IsMaximize(ObjectiveMode mode);

struct ShiftSet {
  std::vector<std::string> labels;
  int morning_index = 0;
  int afternoon_index = 1;
  int night_index = 2;

  // AM, PM, MN.
  static ShiftSet Standard();

  int size() const { return static_cast<int>(labels.size()); }
  friend bool operator==(const ShiftSet&, const ShiftSet&) = default;
};

// The number of shifts a nurse must work over the horizon. Either a single
// total, or one count per shift type.
struct RequiredShifts {
  enum class Form { kNone, kTotal, kPerShift };
  Form form = Form::kNone;
  int total = 0;
  std::vector<int> per_shift;

  static RequiredShifts None() { return {}; }
  static RequiredShifts Total(int count) { return {Form::kTotal, count, {}}; }
  static RequiredShifts PerShift(std::vector<int> counts) {
    return {Form::kPerShift, 0, std::move(counts)};
  }
  friend bool operator==(const RequiredShifts&,
                         const RequiredShifts&) = default;
};

struct Nurse {
  std::string id;
  int rank = 0;  // 0 is the most junior rank.
  int ward = 0;
  std::set<int> leave_days;
  RequiredShifts required;

  friend bool operator==(const Nurse&, const Nurse&) = default;
};

// Required headcount per (ward, rank, shift, day). Dense; cells default to 0.
class DemandTable {
 public:
  DemandTable() = default;
  DemandTable(int wards, int ranks, int shifts, int days);

  int wards() const { return wards_; }
  int ranks() const { return ranks_; }
  int shifts() const { return shifts_; }
  int days() const { return days_; }

  int at(int ward, int rank, int shift, int day) const;
  void set(int ward, int rank, int shift, int day, int count);

  // Sum of every cell.
  int64_t Total() const;
  const std::vector<int>& cells() const { return cells_; }

  friend bool operator==(const DemandTable&, const DemandTable&) = default;

 private:
  size_t Offset(int ward, int rank, int shift, int day) const;

  int wards_ = 0;
  int ranks_ = 0;
  int shifts_ = 0;
  int days_ = 0;
  std::vector<int> cells_;
};

struct CellKey {
  int nurse = 0;
  int shift = 0;
  int day = 0;
  friend auto operator<=>(const CellKey&, const CellKey&) = default;
};

// Sparse (nurse, shift, day) -> weight map with a default for unlisted cells.
// Used for both preference (P) and cost (C) tables. per_nurse_constant holds
// the per-nurse assigned cost of the cost-minimizing objective.
struct WeightTable {
  double default_value = 0.0;
  std::map<CellKey, double> values;
  std::map<int, double> per_nurse_constant;

  double at(int nurse, int shift, int day) const;
  double ConstantSum() const;
  friend bool operator==(const WeightTable&, const WeightTable&) = default;
};

struct WindowRule {
  int length = 0;      // W consecutive days
  int max_worked = 0;  // at most m of them worked
  friend bool operator==(const WindowRule&, const WindowRule&) = default;
};

// After `nights` consecutive night shifts the next `off_days` days are off.
struct NightBlock {
  int nights = 0;
  int off_days = 0;
  friend bool operator==(const NightBlock&, const NightBlock&) = default;
};

// Penalizes every run of `length` consecutive night shifts.
struct NightRunPenalty {
  int length = 0;
  double weight = 0.0;
  friend bool operator==(const NightRunPenalty&,
                         const NightRunPenalty&) = default;
};

struct PolicyConfig {
  int max_work_days = 0;
  std::vector<WindowRule> window_rules;
  std::optional<NightBlock> night_block;
  // Cap on night shifts per nurse over the whole horizon.
  std::optional<int> max_night_shifts;
  // Hard cap on nights in any window of (value + 1) consecutive days.
  std::optional<int> max_consecutive_nights;
  bool forbid_night_morning = false;
  bool forbid_pm_am_hard = false;
  std::optional<double> soft_pm_am_weight;
  std::optional<NightRunPenalty> soft_night_run;
  CoverageMode coverage_mode = CoverageMode::kAtLeast;
  CascadeMode cascade_mode = CascadeMode::kOff;

  bool HasSoftRules() const {
    return soft_pm_am_weight.has_value() || soft_night_run.has_value();
  }
  friend bool operator==(const PolicyConfig&, const PolicyConfig&) = default;
};

struct ProblemInstance {
  std::string name;
  int horizon = 0;
  ShiftSet shift_set;
  std::vector<Nurse> nurses;
  int ranks = 1;
  int wards = 1;
  DemandTable demand;
  WeightTable preference;
  WeightTable cost;
  PolicyConfig policy;
  ObjectiveMode objective_mode = ObjectiveMode::kMaximizeUtility;

  int num_nurses() const { return static_cast<int>(nurses.size()); }
  int num_shifts() const { return shift_set.size(); }
  // N * S * D.
  int num_assignment_cells() const {
    return num_nurses() * num_shifts() * horizon;
  }
  friend bool operator==(const ProblemInstance&,
                         const ProblemInstance&) = default;
};

struct InstanceError {
  std::string field;  // dotted path, e.g. "nurses[3].leave_days"
  std::string message;
  friend bool operator==(const InstanceError&, const InstanceError&) = default;
};

// Thrown by operations whose precondition is a structurally valid instance.
class InvalidInstance : public Error {
 public:
  explicit InvalidInstance(std::vector<InstanceError> errors);
  const std::vector<InstanceError>& errors() const { return errors_; }

 private:
  std::vector<InstanceError> errors_;
};

// Returns every structural problem with the instance, in field declaration
// order and then by ascending index. Empty means valid.
std::vector<InstanceError> ValidateInstance(const ProblemInstance& inst);

// Throws InvalidInstance if ValidateInstance reports anything.
void RequireValid(const ProblemInstance& inst);

struct DayGap {
  int day = 0;
  int64_t demand = 0;
  int64_t available = 0;
  friend bool operator==(const DayGap&, const DayGap&) = default;
};

// Necessary conditions for feasibility, computed without solving.
struct CapacityReport {
  int64_t total_demand = 0;
  // Sum over nurses of min(max_work_days, horizon - |leave_days|).
  int64_t total_capacity = 0;
  // Days where demand exceeds the number of nurses not on leave.
  std::vector<DayGap> day_gaps;

  bool Passes() const {
    return day_gaps.empty() && total_demand <= total_capacity;
  }
};

CapacityReport CapacityScreen(const ProblemInstance& inst);

// 20 nurses (8 senior, 12 junior), 14 days, one ward, rank cascade. Demand,
// preferences, leave and required shift totals are drawn from `seed`.
ProblemInstance BuiltinGeneralWard(uint64_t seed);

// 27 nurses, 7 days, cost objective with per-nurse constants, fixed daily
// demand of 6/6/3. Costs and leave are drawn from `seed`.
ProblemInstance BuiltinLi2003(uint64_t seed);

const char* ToString(CoverageMode mode);
const char* ToString(CascadeMode mode);
const char* ToString(ObjectiveMode mode);
std::optional<CoverageMode> ParseCoverageMode(const std::string& text);
std::optional<CascadeMode> ParseCascadeMode(const std::string& text);
std::optional<ObjectiveMode> ParseObjectiveMode(const std::string& text);

}  // namespace wardmip

#endif  // WARDMIP_MODEL_H_
