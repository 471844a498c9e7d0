#include "wardmip/generate.h"

#include <algorithm>

#include "wardmip/random.h"

namespace wardmip {

namespace {

void CheckParams(const GeneratorParams& p) {
  if (p.nurses < 1) throw GeneratorError("nurses must be at least 1");
  if (p.days < 1) throw GeneratorError("days must be at least 1");
  if (p.ranks < 1) throw GeneratorError("ranks must be at least 1");
  if (p.wards < 1) throw GeneratorError("wards must be at least 1");
  if (!(p.density >= 0.0 && p.density <= 1.0)) {
    throw GeneratorError("density must lie in [0, 1]");
  }
  if (p.max_work_days && (*p.max_work_days < 0 || *p.max_work_days > p.days)) {
    throw GeneratorError("max working days must lie in [0, days]");
  }
}

void DrawPolicy(Rng& rng, const GeneratorParams& p, ProblemInstance& inst) {
  const int days = p.days;
  PolicyConfig& policy = inst.policy;
  policy.max_work_days = p.max_work_days.value_or(
      static_cast<int>(rng.Uniform((days + 1) / 2, days)));
  if (days >= 2 && rng.Bernoulli(0.4)) {
    const int length = static_cast<int>(rng.Uniform(2, days));
    policy.window_rules.push_back(
        {length, static_cast<int>(rng.Uniform(1, length - 1))});
  }
  if (days >= 2 && rng.Bernoulli(0.3)) {
    const int nights = static_cast<int>(rng.Uniform(1, days - 1));
    policy.night_block =
        NightBlock{nights, static_cast<int>(rng.Uniform(1, days - nights))};
  }
  if (rng.Bernoulli(0.3)) {
    policy.max_night_shifts = static_cast<int>(rng.Uniform(0, days));
  }
  if (rng.Bernoulli(0.2)) {
    policy.max_consecutive_nights = static_cast<int>(rng.Uniform(0, days - 1));
  }
  policy.forbid_night_morning = rng.Bernoulli(0.5);
  policy.forbid_pm_am_hard = rng.Bernoulli(0.2);
  if (rng.Bernoulli(0.3)) {
    policy.soft_pm_am_weight = static_cast<double>(rng.Uniform(1, 5));
  }
  if (rng.Bernoulli(0.3)) {
    policy.soft_night_run = NightRunPenalty{
        static_cast<int>(rng.Uniform(1, std::min(days, 4))),
        static_cast<double>(rng.Uniform(1, 5))};
  }
  if (p.ranks >= 2) {
    policy.cascade_mode = static_cast<CascadeMode>(rng.Uniform(0, 2));
  }
  if (policy.cascade_mode == CascadeMode::kOff && rng.Bernoulli(0.3)) {
    policy.coverage_mode = CoverageMode::kExact;
  }
  inst.objective_mode = static_cast<ObjectiveMode>(rng.Uniform(0, 3));
}

}  // namespace

ProblemInstance GenerateInstance(const GeneratorParams& p) {
  CheckParams(p);
  Rng rng(p.seed);
  ProblemInstance inst;
  inst.name = "random-n" + std::to_string(p.nurses) + "-d" +
              std::to_string(p.days) + "-seed" + std::to_string(p.seed);
  inst.horizon = p.days;
  inst.shift_set = ShiftSet::Standard();
  inst.ranks = p.ranks;
  inst.wards = p.wards;
  const int shifts = inst.num_shifts();

  if (p.vary_policy) {
    DrawPolicy(rng, p, inst);
  } else {
    inst.policy.max_work_days = p.max_work_days.value_or(p.days);
  }

  std::vector<std::vector<int>> group_size(p.wards, std::vector<int>(p.ranks, 0));
  for (int n = 0; n < p.nurses; ++n) {
    Nurse nurse;
    nurse.id = "R" + std::to_string(n + 1);
    nurse.rank = static_cast<int>(rng.Uniform(0, p.ranks - 1));
    nurse.ward = static_cast<int>(rng.Uniform(0, p.wards - 1));
    ++group_size[nurse.ward][nurse.rank];
    if (p.vary_policy) {
      for (int d = 0; d < p.days; ++d) {
        if (rng.Bernoulli(0.1)) nurse.leave_days.insert(d);
      }
      if (rng.Bernoulli(0.2)) {
        nurse.required = RequiredShifts::Total(
            static_cast<int>(rng.Uniform(0, p.days)));
      } else if (rng.Bernoulli(0.1)) {
        std::vector<int> counts(shifts, 0);
        int budget = static_cast<int>(rng.Uniform(0, p.days));
        for (int s = 0; s < shifts && budget > 0; ++s) {
          counts[s] = static_cast<int>(rng.Uniform(0, budget));
          budget -= counts[s];
        }
        nurse.required = RequiredShifts::PerShift(std::move(counts));
      }
    }
    inst.nurses.push_back(std::move(nurse));
  }

  inst.demand = DemandTable(p.wards, p.ranks, shifts, p.days);
  for (int w = 0; w < p.wards; ++w) {
    for (int r = 0; r < p.ranks; ++r) {
      // Slots per shift sized so full density roughly uses the whole group.
      const int slots = (group_size[w][r] + shifts - 1) / shifts;
      for (int s = 0; s < shifts; ++s) {
        for (int d = 0; d < p.days; ++d) {
          int count = 0;
          for (int k = 0; k < slots; ++k) count += rng.Bernoulli(p.density);
          inst.demand.set(w, r, s, d, count);
        }
      }
    }
  }

  for (int n = 0; n < p.nurses; ++n) {
    for (int s = 0; s < shifts; ++s) {
      for (int d = 0; d < p.days; ++d) {
        if (rng.Bernoulli(0.7)) {
          inst.preference.values[{n, s, d}] =
              static_cast<double>(rng.Uniform(0, 5));
        }
        if (rng.Bernoulli(0.5)) {
          inst.cost.values[{n, s, d}] = static_cast<double>(rng.Uniform(1, 5));
        }
      }
    }
    inst.cost.per_nurse_constant[n] = static_cast<double>(rng.Uniform(0, 10));
  }

  RequireValid(inst);
  return inst;
}

}  // namespace wardmip
