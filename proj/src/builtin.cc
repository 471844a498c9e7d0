// The two built-in case-study instances. Neither case study publishes its
// data tables, so demand variation, preferences, costs, leave and required
// shift totals are synthesized from the seed. Structure and policy
// parameters are fixed.

#include <cstdio>

#include "wardmip/model.h"
#include "wardmip/random.h"

namespace wardmip {
namespace {

std::string NurseId(int index) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "N%02d", index + 1);
  return buffer;
}

// Draws `count` distinct days in [0, horizon).
std::set<int> DrawLeave(Rng& rng, int count, int horizon) {
  std::set<int> days;
  while (static_cast<int>(days.size()) < count) {
    days.insert(static_cast<int>(rng.Uniform(0, horizon - 1)));
  }
  return days;
}

}  // namespace

ProblemInstance BuiltinGeneralWard(uint64_t seed) {
  constexpr int kNurses = 20;
  constexpr int kSeniors = 8;  // fixed 8/12 senior/junior split
  constexpr int kDays = 14;
  constexpr int kJunior = 0;
  constexpr int kSenior = 1;

  Rng rng(seed ^ 0x67656e6572616cULL);
  ProblemInstance inst;
  inst.name = "general-ward-seed" + std::to_string(seed);
  inst.horizon = kDays;
  inst.shift_set = ShiftSet::Standard();
  inst.ranks = 2;
  inst.wards = 1;
  inst.objective_mode = ObjectiveMode::kMaximizeUtility;

  PolicyConfig& policy = inst.policy;
  policy.max_work_days = 11;
  policy.window_rules = {WindowRule{5, 4}};
  policy.night_block = NightBlock{3, 1};
  policy.forbid_night_morning = true;
  policy.coverage_mode = CoverageMode::kAtLeast;
  policy.cascade_mode = CascadeMode::kAdjacent;

  for (int n = 0; n < kNurses; ++n) {
    Nurse nurse;
    nurse.id = NurseId(n);
    nurse.rank = n < kSeniors ? kSenior : kJunior;
    nurse.ward = 0;
    const int leave_count = static_cast<int>(rng.Uniform(0, 2));
    nurse.leave_days = DrawLeave(rng, leave_count, kDays);
    const int required =
        static_cast<int>(rng.Uniform(8, 10)) - (leave_count > 1 ? 1 : 0);
    nurse.required = RequiredShifts::Total(required);
    inst.nurses.push_back(std::move(nurse));
  }

  // Base daily headcount per rank and shift (AM, PM, MN).
  constexpr int kSeniorBase[3] = {1, 1, 1};
  constexpr int kJuniorBase[3] = {2, 2, 1};
  inst.demand = DemandTable(1, 2, 3, kDays);
  for (int d = 0; d < kDays; ++d) {
    for (int s = 0; s < 3; ++s) {
      const int extra = (s != 2 && rng.Bernoulli(0.3)) ? 1 : 0;
      inst.demand.set(0, kSenior, s, d, kSeniorBase[s]);
      inst.demand.set(0, kJunior, s, d, kJuniorBase[s] + extra);
    }
  }

  for (int n = 0; n < kNurses; ++n) {
    for (int s = 0; s < 3; ++s) {
      for (int d = 0; d < kDays; ++d) {
        inst.preference.values[{n, s, d}] =
            static_cast<double>(rng.Uniform(0, 4));
      }
    }
  }
  return inst;
}

ProblemInstance BuiltinLi2003(uint64_t seed) {
  constexpr int kNurses = 27;
  constexpr int kDays = 7;
  constexpr int kDemand[3] = {6, 6, 3};

  Rng rng(seed ^ 0x6c69323030330000ULL);
  ProblemInstance inst;
  inst.name = "li2003-seed" + std::to_string(seed);
  inst.horizon = kDays;
  inst.shift_set = ShiftSet::Standard();
  inst.ranks = 1;
  inst.wards = 1;
  inst.objective_mode = ObjectiveMode::kMinimizeCost;

  PolicyConfig& policy = inst.policy;
  policy.max_work_days = 5;
  policy.max_night_shifts = 1;
  policy.forbid_night_morning = true;
  policy.coverage_mode = CoverageMode::kExact;
  policy.cascade_mode = CascadeMode::kOff;

  for (int n = 0; n < kNurses; ++n) {
    Nurse nurse;
    nurse.id = NurseId(n);
    if (rng.Bernoulli(0.2)) nurse.leave_days = DrawLeave(rng, 1, kDays);
    inst.nurses.push_back(std::move(nurse));
  }

  inst.demand = DemandTable(1, 1, 3, kDays);
  for (int d = 0; d < kDays; ++d) {
    for (int s = 0; s < 3; ++s) inst.demand.set(0, 0, s, d, kDemand[s]);
  }

  // Per-nurse assigned cost, reduced by working requested duties.
  for (int n = 0; n < kNurses; ++n) {
    inst.cost.per_nurse_constant[n] = static_cast<double>(rng.Uniform(20, 40));
    for (int d = 0; d < kDays; ++d) {
      if (!rng.Bernoulli(0.4)) continue;
      const int s = static_cast<int>(rng.Uniform(0, 2));
      inst.cost.values[{n, s, d}] = static_cast<double>(rng.Uniform(1, 5));
    }
  }
  return inst;
}

}  // namespace wardmip
