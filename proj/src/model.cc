#include "wardmip/model.h"

#include <cmath>
#include <numeric>
#include <sstream>

namespace wardmip {

bool IsMaximize(ObjectiveMode mode) {
  return mode == ObjectiveMode::kMaximizeUtility ||
         mode == ObjectiveMode::kPenalizedUtility;
}

ShiftSet ShiftSet::Standard() { return ShiftSet{{"AM", "PM", "MN"}, 0, 1, 2}; }

DemandTable::DemandTable(int wards, int ranks, int shifts, int days)
    : wards_(wards),
      ranks_(ranks),
      shifts_(shifts),
      days_(days),
      cells_(static_cast<size_t>(wards) * ranks * shifts * days, 0) {}

size_t DemandTable::Offset(int ward, int rank, int shift, int day) const {
  if (ward < 0 || ward >= wards_ || rank < 0 || rank >= ranks_ || shift < 0 ||
      shift >= shifts_ || day < 0 || day >= days_) {
    throw std::out_of_range("demand cell out of range");
  }
  return ((static_cast<size_t>(ward) * ranks_ + rank) * shifts_ + shift) *
             days_ +
         day;
}

int DemandTable::at(int ward, int rank, int shift, int day) const {
  return cells_[Offset(ward, rank, shift, day)];
}

void DemandTable::set(int ward, int rank, int shift, int day, int count) {
  cells_[Offset(ward, rank, shift, day)] = count;
}

int64_t DemandTable::Total() const {
  return std::accumulate(cells_.begin(), cells_.end(), int64_t{0});
}

double WeightTable::at(int nurse, int shift, int day) const {
  auto it = values.find(CellKey{nurse, shift, day});
  return it == values.end() ? default_value : it->second;
}

double WeightTable::ConstantSum() const {
  double sum = 0.0;
  for (const auto& [nurse, value] : per_nurse_constant) sum += value;
  return sum;
}

namespace {

std::string Indexed(const std::string& field, size_t index) {
  return field + "[" + std::to_string(index) + "]";
}

class ErrorList {
 public:
  void Add(std::string field, std::string message) {
    errors_.push_back({std::move(field), std::move(message)});
  }
  std::vector<InstanceError> Take() { return std::move(errors_); }

 private:
  std::vector<InstanceError> errors_;
};

void CheckWeightTable(const ProblemInstance& inst, const std::string& name,
                      const WeightTable& table, ErrorList& errors) {
  if (!std::isfinite(table.default_value)) {
    errors.Add(name + ".default", "default weight is not finite");
  }
  for (const auto& [key, value] : table.values) {
    std::ostringstream field;
    field << name << ".values[" << key.nurse << "," << key.shift << ","
          << key.day << "]";
    if (key.nurse < 0 || key.nurse >= inst.num_nurses()) {
      errors.Add(field.str(), "nurse index out of range");
    }
    if (key.shift < 0 || key.shift >= inst.num_shifts()) {
      errors.Add(field.str(), "shift index out of range");
    }
    if (key.day < 0 || key.day >= inst.horizon) {
      errors.Add(field.str(), "day index out of range");
    }
    if (!std::isfinite(value)) errors.Add(field.str(), "weight is not finite");
  }
  for (const auto& [nurse, value] : table.per_nurse_constant) {
    const std::string field =
        name + ".per_nurse_constant[" + std::to_string(nurse) + "]";
    if (nurse < 0 || nurse >= inst.num_nurses()) {
      errors.Add(field, "nurse index out of range");
    }
    if (!std::isfinite(value)) errors.Add(field, "constant is not finite");
  }
}

void CheckPolicy(const ProblemInstance& inst, ErrorList& errors) {
  const PolicyConfig& policy = inst.policy;
  const int days = inst.horizon;
  if (policy.max_work_days < 0 || policy.max_work_days > days) {
    errors.Add("policy.max_work_days", "must lie in [0, horizon]");
  }
  for (size_t k = 0; k < policy.window_rules.size(); ++k) {
    const WindowRule& rule = policy.window_rules[k];
    const std::string field = Indexed("policy.window_rules", k);
    if (rule.length < 1 || rule.length > days) {
      errors.Add(field + ".length", "window length must lie in [1, horizon]");
    }
    if (rule.max_worked < 0 || rule.max_worked >= rule.length) {
      errors.Add(field + ".max_worked", "must lie in [0, window length)");
    }
  }
  if (policy.night_block) {
    const NightBlock& block = *policy.night_block;
    if (block.nights < 1) {
      errors.Add("policy.night_block.nights", "must be at least 1");
    }
    if (block.off_days < 1) {
      errors.Add("policy.night_block.off_days", "must be at least 1");
    }
    if (block.nights + block.off_days > days) {
      errors.Add("policy.night_block",
                 "nights + off_days must not exceed the horizon");
    }
  }
  if (policy.max_night_shifts && *policy.max_night_shifts < 0) {
    errors.Add("policy.max_night_shifts", "must be non-negative");
  }
  if (policy.max_consecutive_nights &&
      (*policy.max_consecutive_nights < 0 ||
       *policy.max_consecutive_nights >= days)) {
    errors.Add("policy.max_consecutive_nights", "must lie in [0, horizon)");
  }
  if (policy.cascade_mode != CascadeMode::kOff) {
    if (inst.ranks < 2) {
      errors.Add("policy.cascade_mode", "a rank cascade needs at least 2 ranks");
    }
    if (policy.coverage_mode == CoverageMode::kExact) {
      errors.Add("policy.coverage_mode",
                 "exact coverage cannot be combined with a rank cascade");
    }
  }
  const ShiftSet& shifts = inst.shift_set;
  if (policy.forbid_night_morning &&
      shifts.morning_index == shifts.night_index) {
    errors.Add("policy.forbid_night_morning",
               "morning and night shift must differ");
  }
  const bool pm_am = policy.forbid_pm_am_hard || policy.soft_pm_am_weight;
  if (pm_am && shifts.morning_index == shifts.afternoon_index) {
    errors.Add("policy.forbid_pm_am", "morning and afternoon shift must differ");
  }
  if (policy.soft_pm_am_weight && (!std::isfinite(*policy.soft_pm_am_weight) ||
                                   *policy.soft_pm_am_weight < 0)) {
    errors.Add("policy.soft_pm_am_weight", "must be finite and >= 0");
  }
  if (policy.soft_night_run) {
    const NightRunPenalty& run = *policy.soft_night_run;
    if (run.length < 1 || run.length > days) {
      errors.Add("policy.soft_night_run.length", "must lie in [1, horizon]");
    }
    if (!std::isfinite(run.weight) || run.weight < 0) {
      errors.Add("policy.soft_night_run.weight", "must be finite and >= 0");
    }
  }
}

}  // namespace

InvalidInstance::InvalidInstance(std::vector<InstanceError> errors)
    : Error([&] {
        std::string text = "invalid instance";
        for (const InstanceError& e : errors) {
          text += "\n  " + e.field + ": " + e.message;
        }
        return text;
      }()),
      errors_(std::move(errors)) {}

std::vector<InstanceError> ValidateInstance(const ProblemInstance& inst) {
  ErrorList errors;
  const int days = inst.horizon;
  if (days < 1) errors.Add("horizon", "must be at least 1");

  const ShiftSet& shifts = inst.shift_set;
  if (shifts.labels.empty()) {
    errors.Add("shift_set.labels", "at least one shift is required");
  }
  std::set<std::string> seen_labels;
  for (size_t s = 0; s < shifts.labels.size(); ++s) {
    if (shifts.labels[s].empty()) {
      errors.Add(Indexed("shift_set.labels", s), "label is empty");
    } else if (!seen_labels.insert(shifts.labels[s]).second) {
      errors.Add(Indexed("shift_set.labels", s), "duplicate label");
    }
  }
  const auto shift_in_range = [&](int s) {
    return s >= 0 && s < shifts.size();
  };
  if (!shift_in_range(shifts.morning_index)) {
    errors.Add("shift_set.morning_index", "out of range");
  }
  if (!shift_in_range(shifts.afternoon_index)) {
    errors.Add("shift_set.afternoon_index", "out of range");
  }
  if (!shift_in_range(shifts.night_index)) {
    errors.Add("shift_set.night_index", "out of range");
  }

  if (inst.ranks < 1) errors.Add("ranks", "must be at least 1");
  if (inst.wards < 1) errors.Add("wards", "must be at least 1");

  if (inst.nurses.empty()) errors.Add("nurses", "at least one nurse required");
  std::set<std::string> seen_ids;
  for (size_t n = 0; n < inst.nurses.size(); ++n) {
    const Nurse& nurse = inst.nurses[n];
    const std::string field = Indexed("nurses", n);
    if (nurse.id.empty()) {
      errors.Add(field + ".id", "id is empty");
    } else if (!seen_ids.insert(nurse.id).second) {
      errors.Add(field + ".id", "duplicate nurse id '" + nurse.id + "'");
    }
    if (nurse.rank < 0 || nurse.rank >= inst.ranks) {
      errors.Add(field + ".rank", "out of range");
    }
    if (nurse.ward < 0 || nurse.ward >= inst.wards) {
      errors.Add(field + ".ward", "out of range");
    }
    for (int day : nurse.leave_days) {
      if (day < 0 || day >= days) {
        errors.Add(field + ".leave_days",
                   "leave day " + std::to_string(day) + " outside horizon");
      }
    }
    const RequiredShifts& req = nurse.required;
    switch (req.form) {
      case RequiredShifts::Form::kNone:
        break;
      case RequiredShifts::Form::kTotal:
        if (req.total < 0 || req.total > days) {
          errors.Add(field + ".required_shifts", "total must lie in [0, horizon]");
        }
        break;
      case RequiredShifts::Form::kPerShift: {
        if (static_cast<int>(req.per_shift.size()) != shifts.size()) {
          errors.Add(field + ".required_shifts",
                     "per-shift form needs one count per shift");
        }
        int64_t sum = 0;
        for (int count : req.per_shift) {
          if (count < 0) {
            errors.Add(field + ".required_shifts", "negative count");
          }
          sum += count;
        }
        if (sum > days) {
          errors.Add(field + ".required_shifts",
                     "per-shift counts exceed the horizon");
        }
        break;
      }
    }
  }

  const DemandTable& demand = inst.demand;
  if (demand.wards() != inst.wards || demand.ranks() != inst.ranks ||
      demand.shifts() != shifts.size() || demand.days() != days) {
    errors.Add("demand", "table dimensions do not match the instance");
  } else {
    for (size_t i = 0; i < demand.cells().size(); ++i) {
      if (demand.cells()[i] < 0) {
        errors.Add(Indexed("demand", i), "negative headcount");
      }
    }
  }

  CheckWeightTable(inst, "preference", inst.preference, errors);
  CheckWeightTable(inst, "cost", inst.cost, errors);
  CheckPolicy(inst, errors);
  return errors.Take();
}

void RequireValid(const ProblemInstance& inst) {
  std::vector<InstanceError> errors = ValidateInstance(inst);
  if (!errors.empty()) throw InvalidInstance(std::move(errors));
}

CapacityReport CapacityScreen(const ProblemInstance& inst) {
  CapacityReport report;
  report.total_demand = inst.demand.Total();
  for (const Nurse& nurse : inst.nurses) {
    const int free_days = inst.horizon - static_cast<int>(nurse.leave_days.size());
    report.total_capacity += std::min(inst.policy.max_work_days, free_days);
  }
  for (int d = 0; d < inst.horizon; ++d) {
    int64_t demand = 0;
    for (int w = 0; w < inst.wards; ++w) {
      for (int r = 0; r < inst.ranks; ++r) {
        for (int s = 0; s < inst.num_shifts(); ++s) {
          demand += inst.demand.at(w, r, s, d);
        }
      }
    }
    int64_t available = 0;
    for (const Nurse& nurse : inst.nurses) {
      if (!nurse.leave_days.contains(d)) ++available;
    }
    if (demand > available) report.day_gaps.push_back({d, demand, available});
  }
  return report;
}

const char* ToString(CoverageMode mode) {
  return mode == CoverageMode::kExact ? "exact" : "at_least";
}

const char* ToString(CascadeMode mode) {
  switch (mode) {
    case CascadeMode::kOff:
      return "off";
    case CascadeMode::kAdjacent:
      return "adjacent";
    case CascadeMode::kCumulative:
      return "cumulative";
  }
  return "off";
}

const char* ToString(ObjectiveMode mode) {
  switch (mode) {
    case ObjectiveMode::kMaximizeUtility:
      return "maximize_utility";
    case ObjectiveMode::kMinimizeCost:
      return "minimize_cost";
    case ObjectiveMode::kPenalizedUtility:
      return "penalized_utility";
    case ObjectiveMode::kPenalizedCost:
      return "penalized_cost";
  }
  return "maximize_utility";
}

std::optional<CoverageMode> ParseCoverageMode(const std::string& text) {
  if (text == "exact") return CoverageMode::kExact;
  if (text == "at_least" || text == "at-least") return CoverageMode::kAtLeast;
  return std::nullopt;
}

std::optional<CascadeMode> ParseCascadeMode(const std::string& text) {
  if (text == "off") return CascadeMode::kOff;
  if (text == "adjacent") return CascadeMode::kAdjacent;
  if (text == "cumulative") return CascadeMode::kCumulative;
  return std::nullopt;
}

std::optional<ObjectiveMode> ParseObjectiveMode(const std::string& text) {
  for (ObjectiveMode mode :
       {ObjectiveMode::kMaximizeUtility, ObjectiveMode::kMinimizeCost,
        ObjectiveMode::kPenalizedUtility, ObjectiveMode::kPenalizedCost}) {
    if (text == ToString(mode)) return mode;
  }
  return std::nullopt;
}

}  // namespace wardmip
