#include "wardmip/compile.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wardmip {

const char* FamilyName(Family family) {
  switch (family) {
    case Family::kC1:
      return "C1";
    case Family::kC2:
      return "C2";
    case Family::kC2N:
      return "C2N";
    case Family::kC3:
      return "C3";
    case Family::kC4:
      return "C4";
    case Family::kC5:
      return "C5";
    case Family::kC6:
      return "C6";
    case Family::kC8:
      return "C8";
    case Family::kC9:
      return "C9";
    case Family::kC10:
      return "C10";
    case Family::kC11:
      return "C11";
    case Family::kC12:
      return "C12";
    case Family::kS11:
      return "S11";
    case Family::kS12:
      return "S12";
  }
  return "?";
}

std::vector<Family> AllFamilies() {
  return {Family::kC1,  Family::kC2,  Family::kC2N, Family::kC3, Family::kC4,
          Family::kC5,  Family::kC6,  Family::kC8,  Family::kC9, Family::kC10,
          Family::kC11, Family::kC12, Family::kS11, Family::kS12};
}

std::string RowTag::Name() const {
  std::string name = FamilyName(family);
  for (const TagIndex& part : index) {
    name += '_';
    name += part.dimension;
    name += std::to_string(part.value + 1);
  }
  return name;
}

double ConstraintRow::Activity(const std::vector<double>& values) const {
  double sum = 0.0;
  for (const Term& term : terms) sum += term.coef * values[term.column];
  return sum;
}

std::string VarRef::Name() const {
  const auto one_based = [](int v) { return std::to_string(v + 1); };
  if (kind == Kind::kAssignment) {
    return "X" + one_based(nurse) + "_" + one_based(shift) + "_" +
           one_based(day);
  }
  return std::string(pattern == Family::kS11 ? "Z11_" : "Z12_") +
         one_based(nurse) + "_" + one_based(day);
}

double IlpModel::Evaluate(const std::vector<double>& values) const {
  double sum = objective_constant;
  for (int j = 0; j < num_columns; ++j) sum += objective[j] * values[j];
  return sum;
}

std::vector<int> IlpModel::ViolatedRows(const std::vector<double>& values,
                                        double tol) const {
  std::vector<int> violated;
  for (size_t i = 0; i < rows.size(); ++i) {
    const double activity = rows[i].Activity(values);
    const double rhs = rows[i].rhs;
    bool ok = true;
    switch (rows[i].sense) {
      case Sense::kLessEqual:
        ok = activity <= rhs + tol;
        break;
      case Sense::kGreaterEqual:
        ok = activity >= rhs - tol;
        break;
      case Sense::kEqual:
        ok = std::abs(activity - rhs) <= tol;
        break;
    }
    if (!ok) violated.push_back(static_cast<int>(i));
  }
  return violated;
}

int IlpModel::CountRows(Family family) const {
  return static_cast<int>(
      std::count_if(rows.begin(), rows.end(), [&](const ConstraintRow& row) {
        return row.tag.family == family;
      }));
}

int IndexOf(const ProblemInstance& inst, int nurse, int shift, int day) {
  if (nurse < 0 || nurse >= inst.num_nurses()) {
    throw std::out_of_range("nurse index " + std::to_string(nurse) +
                            " out of range");
  }
  if (shift < 0 || shift >= inst.num_shifts()) {
    throw std::out_of_range("shift index " + std::to_string(shift) +
                            " out of range");
  }
  if (day < 0 || day >= inst.horizon) {
    throw std::out_of_range("day index " + std::to_string(day) +
                            " out of range");
  }
  return (nurse * inst.num_shifts() + shift) * inst.horizon + day;
}

Cell CellOf(const ProblemInstance& inst, int column) {
  if (column < 0 || column >= inst.num_assignment_cells()) {
    throw std::out_of_range("column " + std::to_string(column) +
                            " is not an assignment column");
  }
  const int day = column % inst.horizon;
  const int rest = column / inst.horizon;
  return Cell{rest / inst.num_shifts(), rest % inst.num_shifts(), day};
}

namespace {

class RowBuilder {
 public:
  explicit RowBuilder(const ProblemInstance& inst) : inst_(inst) {}

  RowBuilder& Add(int nurse, int shift, int day, double coef = 1.0) {
    terms_.push_back({IndexOf(inst_, nurse, shift, day), coef});
    return *this;
  }
  RowBuilder& AddColumn(int column, double coef) {
    terms_.push_back({column, coef});
    return *this;
  }
  // Every shift of (nurse, day).
  RowBuilder& AddDay(int nurse, int day) {
    for (int s = 0; s < inst_.num_shifts(); ++s) Add(nurse, s, day);
    return *this;
  }
  bool empty() const { return terms_.empty(); }

  // Sorted by column, duplicates merged, zeros dropped.
  ConstraintRow Finish(Sense sense, double rhs, Family family,
                       std::vector<TagIndex> index) {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return a.column < b.column; });
    std::vector<Term> merged;
    for (const Term& term : terms_) {
      if (!merged.empty() && merged.back().column == term.column) {
        merged.back().coef += term.coef;
      } else {
        merged.push_back(term);
      }
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
    terms_.clear();
    return ConstraintRow{std::move(merged), sense, rhs,
                         RowTag{family, std::move(index)}};
  }

 private:
  const ProblemInstance& inst_;
  std::vector<Term> terms_;
};

// A coverage row without terms is kept only when it cannot be satisfied, so
// the infeasibility stays visible in the model.
bool KeepEmpty(Sense sense, double rhs) {
  switch (sense) {
    case Sense::kLessEqual:
      return rhs < 0;
    case Sense::kGreaterEqual:
      return rhs > 0;
    case Sense::kEqual:
      return rhs != 0;
  }
  return true;
}

void EmitCoverage(const ProblemInstance& inst, std::vector<ConstraintRow>& rows) {
  const PolicyConfig& policy = inst.policy;
  const bool cascade = policy.cascade_mode != CascadeMode::kOff;
  const Sense plain_sense =
      (!cascade && policy.coverage_mode == CoverageMode::kExact)
          ? Sense::kEqual
          : Sense::kGreaterEqual;

  // Nurses per (ward, rank), ascending.
  std::vector<std::vector<std::vector<int>>> staff(
      inst.wards, std::vector<std::vector<int>>(inst.ranks));
  for (int n = 0; n < inst.num_nurses(); ++n) {
    staff[inst.nurses[n].ward][inst.nurses[n].rank].push_back(n);
  }

  RowBuilder row(inst);
  const int top = inst.ranks - 1;
  // Plain coverage rows: every rank without cascade, only the top rank with.
  for (int w = 0; w < inst.wards; ++w) {
    for (int r = 0; r < inst.ranks; ++r) {
      if (cascade && r != top) continue;
      for (int s = 0; s < inst.num_shifts(); ++s) {
        for (int d = 0; d < inst.horizon; ++d) {
          for (int n : staff[w][r]) row.Add(n, s, d);
          const double demand = inst.demand.at(w, r, s, d);
          if (row.empty() && !KeepEmpty(plain_sense, demand)) continue;
          rows.push_back(row.Finish(plain_sense, demand, Family::kC8,
                                    {{'w', w}, {'r', r}, {'s', s}, {'d', d}}));
        }
      }
    }
  }
  if (!cascade) return;

  for (int w = 0; w < inst.wards; ++w) {
    for (int r = 0; r < top; ++r) {
      // Adjacent: rank r plus the surplus of rank r + 1. Cumulative: every
      // rank at or above r pooled together.
      const int last = policy.cascade_mode == CascadeMode::kAdjacent ? r + 1 : top;
      for (int s = 0; s < inst.num_shifts(); ++s) {
        for (int d = 0; d < inst.horizon; ++d) {
          double demand = 0.0;
          for (int q = r; q <= last; ++q) {
            for (int n : staff[w][q]) row.Add(n, s, d);
            demand += inst.demand.at(w, q, s, d);
          }
          if (row.empty() && !KeepEmpty(Sense::kGreaterEqual, demand)) continue;
          rows.push_back(row.Finish(Sense::kGreaterEqual, demand, Family::kC9,
                                    {{'w', w}, {'r', r}, {'s', s}, {'d', d}}));
        }
      }
    }
  }
}

void RequireSoftWeights(const PolicyConfig& policy) {
  std::vector<InstanceError> errors;
  if (policy.soft_pm_am_weight && !(*policy.soft_pm_am_weight >= 0)) {
    errors.push_back({"policy.soft_pm_am_weight", "negative soft weight"});
  }
  if (policy.soft_night_run && !(policy.soft_night_run->weight >= 0)) {
    errors.push_back({"policy.soft_night_run.weight", "negative soft weight"});
  }
  if (!errors.empty()) throw InvalidInstance(std::move(errors));
}

}  // namespace

std::vector<ConstraintRow> CompileHard(const ProblemInstance& inst) {
  const PolicyConfig& policy = inst.policy;
  const int nurses = inst.num_nurses();
  const int days = inst.horizon;
  const int morning = inst.shift_set.morning_index;
  const int afternoon = inst.shift_set.afternoon_index;
  const int night = inst.shift_set.night_index;
  std::vector<ConstraintRow> rows;
  RowBuilder row(inst);

  for (int n = 0; n < nurses; ++n) {
    for (int d = 0; d < days; ++d) {
      rows.push_back(row.AddDay(n, d).Finish(Sense::kLessEqual, 1, Family::kC1,
                                             {{'n', n}, {'d', d}}));
    }
  }

  for (int n = 0; n < nurses; ++n) {
    for (int d = 0; d < days; ++d) row.AddDay(n, d);
    rows.push_back(row.Finish(Sense::kLessEqual, policy.max_work_days,
                              Family::kC2, {{'n', n}}));
  }

  if (policy.max_night_shifts) {
    for (int n = 0; n < nurses; ++n) {
      for (int d = 0; d < days; ++d) row.Add(n, night, d);
      rows.push_back(row.Finish(Sense::kLessEqual, *policy.max_night_shifts,
                                Family::kC2N, {{'n', n}}));
    }
  }

  for (size_t k = 0; k < policy.window_rules.size(); ++k) {
    const WindowRule& rule = policy.window_rules[k];
    for (int n = 0; n < nurses; ++n) {
      for (int start = 0; start + rule.length - 1 < days; ++start) {
        for (int d = start; d < start + rule.length; ++d) row.AddDay(n, d);
        rows.push_back(row.Finish(
            Sense::kLessEqual, rule.max_worked, Family::kC3,
            {{'k', static_cast<int>(k)}, {'n', n}, {'d', start}}));
      }
    }
  }

  if (policy.night_block) {
    const int run = policy.night_block->nights;
    const int off = policy.night_block->off_days;
    for (int n = 0; n < nurses; ++n) {
      for (int start = 0; start + run + off - 1 < days; ++start) {
        for (int d = start; d < start + run; ++d) row.Add(n, night, d);
        for (int d = start + run; d < start + run + off; ++d) row.AddDay(n, d);
        rows.push_back(row.Finish(Sense::kLessEqual, run, Family::kC4,
                                  {{'n', n}, {'d', start}}));
      }
    }
  }

  for (int n = 0; n < nurses; ++n) {
    for (int d : inst.nurses[n].leave_days) {
      rows.push_back(row.AddDay(n, d).Finish(Sense::kLessEqual, 0, Family::kC5,
                                             {{'n', n}, {'d', d}}));
    }
  }

  if (policy.forbid_night_morning) {
    for (int n = 0; n < nurses; ++n) {
      for (int d = 0; d + 1 < days; ++d) {
        row.Add(n, night, d).Add(n, morning, d + 1);
        rows.push_back(row.Finish(Sense::kLessEqual, 1, Family::kC6,
                                  {{'n', n}, {'d', d}}));
      }
    }
  }

  EmitCoverage(inst, rows);

  for (int n = 0; n < nurses; ++n) {
    const RequiredShifts& req = inst.nurses[n].required;
    if (req.form == RequiredShifts::Form::kTotal) {
      for (int d = 0; d < days; ++d) row.AddDay(n, d);
      rows.push_back(
          row.Finish(Sense::kEqual, req.total, Family::kC10, {{'n', n}}));
    } else if (req.form == RequiredShifts::Form::kPerShift) {
      for (int s = 0; s < inst.num_shifts(); ++s) {
        for (int d = 0; d < days; ++d) row.Add(n, s, d);
        rows.push_back(row.Finish(Sense::kEqual, req.per_shift[s],
                                  Family::kC10, {{'n', n}, {'s', s}}));
      }
    }
  }

  if (policy.forbid_pm_am_hard) {
    for (int n = 0; n < nurses; ++n) {
      for (int d = 0; d + 1 < days; ++d) {
        row.Add(n, afternoon, d).Add(n, morning, d + 1);
        rows.push_back(row.Finish(Sense::kLessEqual, 1, Family::kC11,
                                  {{'n', n}, {'d', d}}));
      }
    }
  }

  if (policy.max_consecutive_nights) {
    const int cap = *policy.max_consecutive_nights;
    const int window = cap + 1;
    for (int n = 0; n < nurses; ++n) {
      for (int start = 0; start + window - 1 < days; ++start) {
        for (int d = start; d < start + window; ++d) row.Add(n, night, d);
        rows.push_back(row.Finish(Sense::kLessEqual, cap, Family::kC12,
                                  {{'n', n}, {'d', start}}));
      }
    }
  }
  return rows;
}

SoftBlock CompileSoft(const ProblemInstance& inst) {
  const PolicyConfig& policy = inst.policy;
  RequireSoftWeights(policy);
  const int nurses = inst.num_nurses();
  const int days = inst.horizon;
  const int morning = inst.shift_set.morning_index;
  const int afternoon = inst.shift_set.afternoon_index;
  const int night = inst.shift_set.night_index;

  SoftBlock block;
  int column = inst.num_assignment_cells();
  RowBuilder row(inst);
  const auto add_column = [&](Family pattern, int nurse, int day,
                              double weight) {
    VarRef ref;
    ref.kind = VarRef::Kind::kPenalty;
    ref.nurse = nurse;
    ref.day = day;
    ref.pattern = pattern;
    ref.column = column;
    block.columns.push_back(ref);
    block.weights.push_back(weight);
    return column++;
  };

  // z >= x_pm,d + x_am,d+1 - 1
  if (policy.soft_pm_am_weight) {
    for (int n = 0; n < nurses; ++n) {
      for (int d = 0; d + 1 < days; ++d) {
        const int z = add_column(Family::kS11, n, d, *policy.soft_pm_am_weight);
        row.Add(n, afternoon, d).Add(n, morning, d + 1).AddColumn(z, -1.0);
        block.rows.push_back(row.Finish(Sense::kLessEqual, 1, Family::kS11,
                                        {{'n', n}, {'d', d}}));
      }
    }
  }

  // z >= sum of j consecutive nights - (j - 1)
  if (policy.soft_night_run) {
    const int length = policy.soft_night_run->length;
    for (int n = 0; n < nurses; ++n) {
      for (int start = 0; start + length - 1 < days; ++start) {
        const int z =
            add_column(Family::kS12, n, start, policy.soft_night_run->weight);
        for (int d = start; d < start + length; ++d) row.Add(n, night, d);
        row.AddColumn(z, -1.0);
        block.rows.push_back(row.Finish(Sense::kLessEqual, length - 1,
                                        Family::kS12,
                                        {{'n', n}, {'d', start}}));
      }
    }
  }
  return block;
}

ObjectiveParts BuildObjective(const ProblemInstance& inst) {
  ObjectiveParts parts;
  const ObjectiveMode mode = inst.objective_mode;
  parts.sense = IsMaximize(mode) ? ObjectiveSense::kMaximize
                                 : ObjectiveSense::kMinimize;
  parts.coefficients.assign(inst.num_assignment_cells(), 0.0);
  for (int n = 0; n < inst.num_nurses(); ++n) {
    for (int s = 0; s < inst.num_shifts(); ++s) {
      for (int d = 0; d < inst.horizon; ++d) {
        const double p = inst.preference.at(n, s, d);
        const double c = inst.cost.at(n, s, d);
        double coef = 0.0;
        switch (mode) {
          case ObjectiveMode::kMaximizeUtility:
            coef = p;
            break;
          case ObjectiveMode::kMinimizeCost:
            coef = -c;
            break;
          case ObjectiveMode::kPenalizedUtility:
            coef = p - c;
            break;
          case ObjectiveMode::kPenalizedCost:
            coef = c - p;
            break;
        }
        parts.coefficients[IndexOf(inst, n, s, d)] = coef;
      }
    }
  }
  if (!IsMaximize(mode)) parts.constant = inst.cost.ConstantSum();

  if (inst.policy.HasSoftRules()) {
    const SoftBlock soft = CompileSoft(inst);
    const double sign = IsMaximize(mode) ? -1.0 : 1.0;
    for (double weight : soft.weights) {
      parts.coefficients.push_back(sign * weight);
    }
  }
  return parts;
}

IlpModel Compile(const ProblemInstance& inst) {
  RequireValid(inst);
  IlpModel model;
  const int cells = inst.num_assignment_cells();
  model.num_assignment_columns = cells;
  for (int j = 0; j < cells; ++j) {
    const Cell cell = CellOf(inst, j);
    model.columns.push_back(VarRef{VarRef::Kind::kAssignment, cell.nurse,
                                   cell.shift, cell.day, Family::kS11, j});
  }
  model.lower.assign(cells, 0.0);
  model.upper.assign(cells, 1.0);
  model.integer.assign(cells, true);
  model.rows = CompileHard(inst);

  if (inst.policy.HasSoftRules()) {
    SoftBlock soft = CompileSoft(inst);
    for (const VarRef& ref : soft.columns) {
      model.columns.push_back(ref);
      model.lower.push_back(0.0);
      model.upper.push_back(1.0);
      model.integer.push_back(false);
    }
    for (ConstraintRow& row : soft.rows) model.rows.push_back(std::move(row));
  }
  model.num_columns = static_cast<int>(model.columns.size());

  ObjectiveParts objective = BuildObjective(inst);
  model.objective = std::move(objective.coefficients);
  model.objective_constant = objective.constant;
  model.sense = objective.sense;
  return model;
}

}  // namespace wardmip
