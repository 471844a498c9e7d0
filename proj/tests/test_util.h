// Helpers shared by the unit and acceptance tests.

#ifndef WARDMIP_TESTS_TEST_UTIL_H_
#define WARDMIP_TESTS_TEST_UTIL_H_

#include <functional>
#include <span>
#include <vector>

#include "wardmip/generate.h"
#include "wardmip/model.h"
#include "wardmip/roster.h"
#include "wardmip/solve.h"

namespace wardmip::testing {

// Instance `i` of the tiny oracle suite: up to 3 nurses, 3 days, 3 shifts,
// random rules and objective.
inline ProblemInstance OracleInstance(int i) {
  GeneratorParams params;
  params.nurses = 1 + i % 3;
  params.days = 1 + (i / 3) % 3;
  params.ranks = 1 + (i / 9) % 2;
  params.density = 0.3;
  params.vary_policy = true;
  params.seed = 1000 + static_cast<uint64_t>(i);
  return GenerateInstance(params);
}

inline Roster RosterOf(const ProblemInstance& inst, const SolveResult& result) {
  return Decode(inst, std::span<const double>(result.incumbent->data(),
                                              inst.num_assignment_cells()));
}

// Calls `visit` on every roster of the instance's shape.
inline void ForEachRoster(const ProblemInstance& inst,
                          const std::function<void(const Roster&)>& visit) {
  const int cells = inst.num_nurses() * inst.horizon;
  Roster roster(inst.num_nurses(), inst.horizon);
  while (true) {
    visit(roster);
    int cell = cells - 1;
    for (; cell >= 0; --cell) {
      const int n = cell / inst.horizon;
      const int d = cell % inst.horizon;
      if (roster.at(n, d) + 1 < inst.num_shifts()) {
        roster.set(n, d, roster.at(n, d) + 1);
        break;
      }
      roster.set(n, d, Roster::kOff);
    }
    if (cell < 0) return;
  }
}

// Plain one-ward, one-rank instance with no rules beyond max working days.
inline ProblemInstance BareInstance(int nurses, int days) {
  ProblemInstance inst;
  inst.name = "bare";
  inst.horizon = days;
  inst.shift_set = ShiftSet::Standard();
  for (int n = 0; n < nurses; ++n) {
    Nurse nurse;
    nurse.id = "n" + std::to_string(n + 1);
    inst.nurses.push_back(nurse);
  }
  inst.demand = DemandTable(1, 1, 3, days);
  inst.policy.max_work_days = days;
  return inst;
}

}  // namespace wardmip::testing

#endif  // WARDMIP_TESTS_TEST_UTIL_H_
