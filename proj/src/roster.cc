#include "wardmip/roster.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace wardmip {

Roster Decode(const ProblemInstance& inst, std::span<const double> assignment,
              double tol) {
  const int shifts = inst.num_shifts();
  if (static_cast<int>(assignment.size()) != inst.num_assignment_cells()) {
    throw RosterError("assignment vector has " +
                      std::to_string(assignment.size()) + " entries, expected " +
                      std::to_string(inst.num_assignment_cells()));
  }
  Roster roster(inst.num_nurses(), inst.horizon);
  for (int n = 0; n < inst.num_nurses(); ++n) {
    for (int d = 0; d < inst.horizon; ++d) {
      for (int s = 0; s < shifts; ++s) {
        const double value = assignment[IndexOf(inst, n, s, d)];
        if (std::abs(value) <= tol) continue;
        if (std::abs(value - 1.0) > tol) {
          throw RosterError("non-integral assignment for nurse " +
                            inst.nurses[n].id + " day " +
                            std::to_string(d + 1));
        }
        if (roster.Works(n, d)) {
          throw RosterError("nurse " + inst.nurses[n].id +
                            " holds two shifts on day " + std::to_string(d + 1));
        }
        roster.set(n, d, s);
      }
    }
  }
  return roster;
}

std::vector<double> Encode(const ProblemInstance& inst, const Roster& roster) {
  std::vector<double> values(inst.num_assignment_cells(), 0.0);
  for (int n = 0; n < roster.num_nurses(); ++n) {
    for (int d = 0; d < roster.horizon(); ++d) {
      if (roster.Works(n, d)) values[IndexOf(inst, n, roster.at(n, d), d)] = 1.0;
    }
  }
  return values;
}

std::vector<double> EncodeWithPenalties(const ProblemInstance& inst,
                                        const Roster& roster) {
  std::vector<double> values = Encode(inst, roster);
  const ShiftSet& shifts = inst.shift_set;
  const PolicyConfig& policy = inst.policy;
  if (policy.soft_pm_am_weight) {
    for (int n = 0; n < inst.num_nurses(); ++n) {
      for (int d = 0; d + 1 < inst.horizon; ++d) {
        const bool hit = roster.at(n, d) == shifts.afternoon_index &&
                         roster.at(n, d + 1) == shifts.morning_index;
        values.push_back(hit ? 1.0 : 0.0);
      }
    }
  }
  if (policy.soft_night_run) {
    const int length = policy.soft_night_run->length;
    for (int n = 0; n < inst.num_nurses(); ++n) {
      for (int start = 0; start + length <= inst.horizon; ++start) {
        bool all = true;
        for (int d = start; d < start + length; ++d) {
          all = all && roster.at(n, d) == shifts.night_index;
        }
        values.push_back(all ? 1.0 : 0.0);
      }
    }
  }
  return values;
}

std::vector<Family> ValidationReport::Families() const {
  std::set<Family> families;
  for (const Violation& v : violations) families.insert(v.tag.family);
  return {families.begin(), families.end()};
}

namespace {

class Checker {
 public:
  Checker(const ProblemInstance& inst, const Roster& roster)
      : inst_(inst), roster_(roster) {}

  ValidationReport Run() {
    const PolicyConfig& policy = inst_.policy;
    CheckWorkedDays();
    if (policy.max_night_shifts) CheckNightTotal();
    for (size_t k = 0; k < policy.window_rules.size(); ++k) CheckWindow(k);
    if (policy.night_block) CheckNightBlock();
    CheckLeave();
    if (policy.forbid_night_morning) {
      CheckTurnaround(Family::kC6, inst_.shift_set.night_index,
                      "night followed by morning");
    }
    CheckCoverage();
    CheckRequired();
    if (policy.forbid_pm_am_hard) {
      CheckTurnaround(Family::kC11, inst_.shift_set.afternoon_index,
                      "afternoon followed by morning");
    }
    if (policy.max_consecutive_nights) CheckNightWindows();
    report_.objective_recomputed = Objective();
    std::stable_sort(report_.violations.begin(), report_.violations.end(),
                     [](const Violation& a, const Violation& b) {
                       return a.tag.family < b.tag.family;
                     });
    return std::move(report_);
  }

 private:
  int Nurses() const { return inst_.num_nurses(); }
  int Days() const { return inst_.horizon; }
  bool Night(int n, int d) const {
    return roster_.at(n, d) == inst_.shift_set.night_index;
  }
  int WorkedIn(int n, int first, int last) const {
    int count = 0;
    for (int d = first; d <= last; ++d) count += roster_.Works(n, d) ? 1 : 0;
    return count;
  }
  int NightsIn(int n, int first, int last) const {
    int count = 0;
    for (int d = first; d <= last; ++d) count += Night(n, d) ? 1 : 0;
    return count;
  }
  const std::string& Id(int n) const { return inst_.nurses[n].id; }

  void Report(Family family, std::vector<TagIndex> index, std::string message) {
    report_.violations.push_back({RowTag{family, std::move(index)},
                                  std::move(message)});
  }

  void CheckWorkedDays() {
    for (int n = 0; n < Nurses(); ++n) {
      const int worked = WorkedIn(n, 0, Days() - 1);
      if (worked > inst_.policy.max_work_days) {
        Report(Family::kC2, {{'n', n}},
               Id(n) + " works " + std::to_string(worked) + " days, max " +
                   std::to_string(inst_.policy.max_work_days));
      }
    }
  }

  void CheckNightTotal() {
    const int cap = *inst_.policy.max_night_shifts;
    for (int n = 0; n < Nurses(); ++n) {
      const int nights = NightsIn(n, 0, Days() - 1);
      if (nights > cap) {
        Report(Family::kC2N, {{'n', n}},
               Id(n) + " works " + std::to_string(nights) + " nights, max " +
                   std::to_string(cap));
      }
    }
  }

  void CheckWindow(size_t k) {
    const WindowRule& rule = inst_.policy.window_rules[k];
    for (int n = 0; n < Nurses(); ++n) {
      for (int start = 0; start + rule.length <= Days(); ++start) {
        const int worked = WorkedIn(n, start, start + rule.length - 1);
        if (worked > rule.max_worked) {
          Report(Family::kC3, {{'k', static_cast<int>(k)}, {'n', n}, {'d', start}},
                 Id(n) + " works " + std::to_string(worked) + " of " +
                     std::to_string(rule.length) + " days from day " +
                     std::to_string(start + 1));
        }
      }
    }
  }

  // Nights in the block plus worked days right after it may not exceed the
  // block length: a full block of nights forces the following days off.
  void CheckNightBlock() {
    const int run = inst_.policy.night_block->nights;
    const int off = inst_.policy.night_block->off_days;
    for (int n = 0; n < Nurses(); ++n) {
      for (int start = 0; start + run + off <= Days(); ++start) {
        const int nights = NightsIn(n, start, start + run - 1);
        const int after = WorkedIn(n, start + run, start + run + off - 1);
        if (nights + after > run) {
          Report(Family::kC4, {{'n', n}, {'d', start}},
                 Id(n) + " lacks rest after nights from day " +
                     std::to_string(start + 1));
        }
      }
    }
  }

  void CheckLeave() {
    for (int n = 0; n < Nurses(); ++n) {
      for (int d : inst_.nurses[n].leave_days) {
        if (roster_.Works(n, d)) {
          Report(Family::kC5, {{'n', n}, {'d', d}},
                 Id(n) + " works on leave day " + std::to_string(d + 1));
        }
      }
    }
  }

  void CheckTurnaround(Family family, int first_shift, const char* what) {
    const int morning = inst_.shift_set.morning_index;
    for (int n = 0; n < Nurses(); ++n) {
      for (int d = 0; d + 1 < Days(); ++d) {
        if (roster_.at(n, d) == first_shift && roster_.at(n, d + 1) == morning) {
          Report(family, {{'n', n}, {'d', d}},
                 Id(n) + ": " + what + " on days " + std::to_string(d + 1) +
                     "-" + std::to_string(d + 2));
        }
      }
    }
  }

  void CheckCoverage() {
    const int ranks = inst_.ranks;
    const int shifts = inst_.num_shifts();
    // staffed[w][r][s][d]
    std::vector<int> staffed(
        static_cast<size_t>(inst_.wards) * ranks * shifts * Days(), 0);
    const auto at = [&](int w, int r, int s, int d) -> int& {
      return staffed[((static_cast<size_t>(w) * ranks + r) * shifts + s) *
                         Days() +
                     d];
    };
    for (int n = 0; n < Nurses(); ++n) {
      for (int d = 0; d < Days(); ++d) {
        if (roster_.Works(n, d)) {
          ++at(inst_.nurses[n].ward, inst_.nurses[n].rank, roster_.at(n, d), d);
        }
      }
    }
    const CascadeMode cascade = inst_.policy.cascade_mode;
    const bool exact = cascade == CascadeMode::kOff &&
                       inst_.policy.coverage_mode == CoverageMode::kExact;
    const int top = ranks - 1;
    const auto describe = [&](int have, int need, int w, int r, int s, int d) {
      std::ostringstream out;
      out << "ward " << w + 1 << " rank " << r + 1 << " "
          << inst_.shift_set.labels[s] << " day " << d + 1 << ": staffed "
          << have << ", demand " << need;
      return out.str();
    };

    for (int w = 0; w < inst_.wards; ++w) {
      for (int r = 0; r < ranks; ++r) {
        if (cascade != CascadeMode::kOff && r != top) continue;
        for (int s = 0; s < shifts; ++s) {
          for (int d = 0; d < Days(); ++d) {
            const int have = at(w, r, s, d);
            const int need = inst_.demand.at(w, r, s, d);
            if (exact ? have != need : have < need) {
              Report(Family::kC8, {{'w', w}, {'r', r}, {'s', s}, {'d', d}},
                     describe(have, need, w, r, s, d));
            }
          }
        }
      }
    }
    if (cascade == CascadeMode::kOff) return;
    for (int w = 0; w < inst_.wards; ++w) {
      for (int r = 0; r < top; ++r) {
        const int last = cascade == CascadeMode::kAdjacent ? r + 1 : top;
        for (int s = 0; s < shifts; ++s) {
          for (int d = 0; d < Days(); ++d) {
            int have = 0;
            int need = 0;
            for (int q = r; q <= last; ++q) {
              have += at(w, q, s, d);
              need += inst_.demand.at(w, q, s, d);
            }
            if (have < need) {
              Report(Family::kC9, {{'w', w}, {'r', r}, {'s', s}, {'d', d}},
                     describe(have, need, w, r, s, d) + " (cascade)");
            }
          }
        }
      }
    }
  }

  void CheckRequired() {
    for (int n = 0; n < Nurses(); ++n) {
      const RequiredShifts& req = inst_.nurses[n].required;
      if (req.form == RequiredShifts::Form::kTotal) {
        const int worked = WorkedIn(n, 0, Days() - 1);
        if (worked != req.total) {
          Report(Family::kC10, {{'n', n}},
                 Id(n) + " works " + std::to_string(worked) +
                     " shifts, required " + std::to_string(req.total));
        }
      } else if (req.form == RequiredShifts::Form::kPerShift) {
        for (int s = 0; s < inst_.num_shifts(); ++s) {
          int count = 0;
          for (int d = 0; d < Days(); ++d) count += roster_.at(n, d) == s;
          if (count != req.per_shift[s]) {
            Report(Family::kC10, {{'n', n}, {'s', s}},
                   Id(n) + " works " + std::to_string(count) + " " +
                       inst_.shift_set.labels[s] + " shifts, required " +
                       std::to_string(req.per_shift[s]));
          }
        }
      }
    }
  }

  void CheckNightWindows() {
    const int cap = *inst_.policy.max_consecutive_nights;
    for (int n = 0; n < Nurses(); ++n) {
      for (int start = 0; start + cap + 1 <= Days(); ++start) {
        if (NightsIn(n, start, start + cap) > cap) {
          Report(Family::kC12, {{'n', n}, {'d', start}},
                 Id(n) + " works more than " + std::to_string(cap) +
                     " nights from day " + std::to_string(start + 1));
        }
      }
    }
  }

  // Occurrences of afternoon-then-morning over consecutive days.
  int CountPmAm() const {
    int count = 0;
    for (int n = 0; n < Nurses(); ++n) {
      for (int d = 0; d + 1 < Days(); ++d) {
        count += roster_.at(n, d) == inst_.shift_set.afternoon_index &&
                 roster_.at(n, d + 1) == inst_.shift_set.morning_index;
      }
    }
    return count;
  }

  // A maximal run of L >= j nights holds L - j + 1 windows of j nights.
  int CountNightRuns(int length) const {
    int count = 0;
    for (int n = 0; n < Nurses(); ++n) {
      int run = 0;
      for (int d = 0; d <= Days(); ++d) {
        if (d < Days() && Night(n, d)) {
          ++run;
          continue;
        }
        if (run >= length) count += run - length + 1;
        run = 0;
      }
    }
    return count;
  }

  double Objective() const {
    const ObjectiveMode mode = inst_.objective_mode;
    double total = 0.0;
    for (int n = 0; n < Nurses(); ++n) {
      for (int d = 0; d < Days(); ++d) {
        if (!roster_.Works(n, d)) continue;
        const int s = roster_.at(n, d);
        const double p = inst_.preference.at(n, s, d);
        const double c = inst_.cost.at(n, s, d);
        switch (mode) {
          case ObjectiveMode::kMaximizeUtility:
            total += p;
            break;
          case ObjectiveMode::kMinimizeCost:
            total -= c;
            break;
          case ObjectiveMode::kPenalizedUtility:
            total += p - c;
            break;
          case ObjectiveMode::kPenalizedCost:
            total += c - p;
            break;
        }
      }
    }
    double penalty = 0.0;
    if (inst_.policy.soft_pm_am_weight) {
      penalty += *inst_.policy.soft_pm_am_weight * CountPmAm();
    }
    if (inst_.policy.soft_night_run) {
      penalty += inst_.policy.soft_night_run->weight *
                 CountNightRuns(inst_.policy.soft_night_run->length);
    }
    if (IsMaximize(mode)) return total - penalty;
    double assigned = 0.0;
    for (const auto& [nurse, value] : inst_.cost.per_nurse_constant) {
      assigned += value;
    }
    return assigned + total + penalty;
  }

  const ProblemInstance& inst_;
  const Roster& roster_;
  ValidationReport report_;
};

Spread SpreadOf(const std::vector<int>& counts) {
  if (counts.empty()) return {};
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  const double sum = std::accumulate(counts.begin(), counts.end(), 0.0);
  return Spread{static_cast<double>(*lo), static_cast<double>(*hi),
                sum / static_cast<double>(counts.size())};
}

void RequireShape(const ProblemInstance& inst, const Roster& roster) {
  if (roster.num_nurses() != inst.num_nurses() ||
      roster.horizon() != inst.horizon) {
    throw RosterError("roster is " + std::to_string(roster.num_nurses()) + "x" +
                      std::to_string(roster.horizon()) + ", instance is " +
                      std::to_string(inst.num_nurses()) + "x" +
                      std::to_string(inst.horizon));
  }
  for (int n = 0; n < roster.num_nurses(); ++n) {
    for (int d = 0; d < roster.horizon(); ++d) {
      const int s = roster.at(n, d);
      if (s != Roster::kOff && (s < 0 || s >= inst.num_shifts())) {
        throw RosterError("invalid shift index in roster");
      }
    }
  }
}

}  // namespace

ValidationReport Validate(const ProblemInstance& inst, const Roster& roster) {
  RequireShape(inst, roster);
  return Checker(inst, roster).Run();
}

FairnessReport Fairness(const ProblemInstance& inst, const Roster& roster) {
  RequireShape(inst, roster);
  FairnessReport report;
  const int night = inst.shift_set.night_index;
  for (int n = 0; n < roster.num_nurses(); ++n) {
    int nights = 0;
    int total = 0;
    int run = 0;
    int night_run = 0;
    int longest = 0;
    int longest_night = 0;
    for (int d = 0; d < roster.horizon(); ++d) {
      const bool works = roster.Works(n, d);
      const bool is_night = roster.at(n, d) == night;
      total += works;
      nights += is_night;
      run = works ? run + 1 : 0;
      night_run = is_night ? night_run + 1 : 0;
      longest = std::max(longest, run);
      longest_night = std::max(longest_night, night_run);
    }
    report.night_shifts.push_back(nights);
    report.total_shifts.push_back(total);
    report.longest_work_run.push_back(longest);
    report.longest_night_run.push_back(longest_night);
    report.longest_work_run_overall =
        std::max(report.longest_work_run_overall, longest);
  }
  report.night_spread = SpreadOf(report.night_shifts);
  report.total_spread = SpreadOf(report.total_shifts);
  return report;
}

}  // namespace wardmip
