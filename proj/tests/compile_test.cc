#include <gtest/gtest.h>

#include <map>
#include <set>

#include "test_util.h"
#include "wardmip/compile.h"
#include "wardmip/solve.h"

namespace wardmip {
namespace {

int LeaveCount(const ProblemInstance& inst) {
  int count = 0;
  for (const Nurse& nurse : inst.nurses) count += nurse.leave_days.size();
  return count;
}

int RequiredCount(const ProblemInstance& inst) {
  int count = 0;
  for (const Nurse& nurse : inst.nurses) {
    if (nurse.required.form == RequiredShifts::Form::kTotal) count += 1;
    if (nurse.required.form == RequiredShifts::Form::kPerShift) {
      count += inst.num_shifts();
    }
  }
  return count;
}

TEST(Compile, OneNurseOneDayToy) {
  ProblemInstance inst = testing::BareInstance(1, 1);
  inst.preference.values[{0, 0, 0}] = 5;
  inst.preference.values[{0, 1, 0}] = 2;
  inst.preference.values[{0, 2, 0}] = 1;
  const IlpModel model = Compile(inst);
  EXPECT_EQ(model.num_columns, 3);
  EXPECT_EQ(model.CountRows(Family::kC1), 1);
  EXPECT_EQ(model.CountRows(Family::kC2), 1);
  const SolveResult result = SolveIlp(model);
  ASSERT_EQ(result.status, SolveStatus::kOptimal);
  EXPECT_EQ(result.objective, 5.0);
  EXPECT_EQ(*result.incumbent, (std::vector<double>{1, 0, 0}));
}

TEST(Compile, GeneralWardCounts) {
  const ProblemInstance inst = BuiltinGeneralWard(0);
  const IlpModel model = Compile(inst);
  const int n = 20, d = 14, s = 3;
  EXPECT_EQ(model.num_columns, n * s * d);
  EXPECT_EQ(model.num_assignment_columns, 840);
  EXPECT_EQ(model.CountRows(Family::kC1), n * d);
  EXPECT_EQ(model.CountRows(Family::kC2), n);
  EXPECT_EQ(model.CountRows(Family::kC3), n * (d - 5 + 1));
  EXPECT_EQ(model.CountRows(Family::kC4), n * (d - 3 - 1 + 1));
  EXPECT_EQ(model.CountRows(Family::kC5), LeaveCount(inst));
  EXPECT_EQ(model.CountRows(Family::kC6), n * (d - 1));
  // Cascade on: plain coverage only at the top rank, cascade rows below it.
  EXPECT_EQ(model.CountRows(Family::kC8), s * d);
  EXPECT_EQ(model.CountRows(Family::kC9), s * d);
  EXPECT_EQ(model.CountRows(Family::kC10), RequiredCount(inst));
  EXPECT_EQ(model.CountRows(Family::kC2N), 0);
  EXPECT_EQ(model.CountRows(Family::kC11), 0);
  EXPECT_EQ(model.CountRows(Family::kC12), 0);
  EXPECT_EQ(model.CountRows(Family::kS11), 0);
  EXPECT_EQ(model.CountRows(Family::kS12), 0);
}

TEST(Compile, LiCounts) {
  const ProblemInstance inst = BuiltinLi2003(0);
  const IlpModel model = Compile(inst);
  EXPECT_EQ(model.num_columns, 27 * 3 * 7);
  EXPECT_EQ(model.CountRows(Family::kC1), 27 * 7);
  EXPECT_EQ(model.CountRows(Family::kC2), 27);
  EXPECT_EQ(model.CountRows(Family::kC2N), 27);
  EXPECT_EQ(model.CountRows(Family::kC5), LeaveCount(inst));
  EXPECT_EQ(model.CountRows(Family::kC6), 27 * 6);
  EXPECT_EQ(model.CountRows(Family::kC8), 3 * 7);
  EXPECT_EQ(model.CountRows(Family::kC9), 0);
  for (const ConstraintRow& row : model.rows) {
    if (row.tag.family == Family::kC8) {
      EXPECT_EQ(row.sense, Sense::kEqual);
      EXPECT_EQ(row.terms.size(), 27u);
    }
  }
  EXPECT_FALSE(model.maximize());
  EXPECT_DOUBLE_EQ(model.objective_constant, inst.cost.ConstantSum());
}

TEST(Compile, IndexOfIsABijection) {
  const ProblemInstance inst = BuiltinLi2003(0);
  std::set<int> seen;
  for (int n = 0; n < inst.num_nurses(); ++n) {
    for (int s = 0; s < 3; ++s) {
      for (int d = 0; d < inst.horizon; ++d) {
        const int column = IndexOf(inst, n, s, d);
        EXPECT_EQ(CellOf(inst, column), (Cell{n, s, d}));
        seen.insert(column);
      }
    }
  }
  EXPECT_EQ(seen.size(), static_cast<size_t>(inst.num_assignment_cells()));
  EXPECT_EQ(*seen.begin(), 0);
  EXPECT_EQ(*seen.rbegin(), inst.num_assignment_cells() - 1);
}

TEST(Compile, IndexOfRejectsOutOfRange) {
  const ProblemInstance inst = BuiltinLi2003(0);
  EXPECT_THROW(IndexOf(inst, 27, 0, 0), std::out_of_range);
  EXPECT_THROW(IndexOf(inst, 0, 3, 0), std::out_of_range);
  EXPECT_THROW(IndexOf(inst, 0, 0, 7), std::out_of_range);
  try {
    IndexOf(inst, 0, 0, -1);
    FAIL();
  } catch (const std::out_of_range& e) {
    EXPECT_NE(std::string(e.what()).find("day"), std::string::npos);
  }
}

TEST(Compile, RowsAreOrderedByFamilyThenIndex) {
  ProblemInstance inst = BuiltinGeneralWard(3);
  inst.policy.soft_pm_am_weight = 1.0;
  inst.policy.soft_night_run = NightRunPenalty{2, 1.0};
  const IlpModel model = Compile(inst);
  for (size_t i = 1; i < model.rows.size(); ++i) {
    const RowTag& a = model.rows[i - 1].tag;
    const RowTag& b = model.rows[i].tag;
    ASSERT_TRUE(a.family < b.family || (a.family == b.family && a.index < b.index))
        << a.Name() << " then " << b.Name();
  }
}

TEST(Compile, Deterministic) {
  EXPECT_EQ(Compile(BuiltinGeneralWard(1)), Compile(BuiltinGeneralWard(1)));
}

TEST(Compile, RowNames) {
  const IlpModel model = Compile(BuiltinGeneralWard(0));
  std::set<std::string> names;
  for (const ConstraintRow& row : model.rows) names.insert(row.tag.Name());
  EXPECT_EQ(names.size(), model.rows.size());
  EXPECT_TRUE(names.contains("C6_n4_d8"));
  EXPECT_TRUE(names.contains("C1_n20_d14"));
  EXPECT_FALSE(names.contains("C6_n1_d14"));  // no day after the last
}

TEST(Compile, RejectsInvalidInstance) {
  ProblemInstance inst = testing::BareInstance(1, 1);
  inst.horizon = 0;
  EXPECT_THROW(Compile(inst), InvalidInstance);
}

TEST(Compile, RowBuilderDropsEmptyFeasibleRowsKeepsInfeasibleOnes) {
  // Rank 2 has no nurses. Zero demand there produces no row; positive demand
  // produces an empty row that can never hold.
  ProblemInstance inst = testing::BareInstance(1, 1);
  inst.ranks = 2;
  inst.demand = DemandTable(1, 2, 3, 1);
  EXPECT_EQ(Compile(inst).CountRows(Family::kC8), 3);
  inst.demand.set(0, 1, 0, 0, 1);
  const IlpModel model = Compile(inst);
  EXPECT_EQ(model.CountRows(Family::kC8), 4);
  EXPECT_EQ(SolveIlp(model).status, SolveStatus::kInfeasible);
}

TEST(Compile, AdjacentCascadeRows) {
  ProblemInstance inst = testing::BareInstance(3, 1);
  inst.ranks = 2;
  inst.nurses[2].rank = 1;
  inst.demand = DemandTable(1, 2, 3, 1);
  inst.demand.set(0, 0, 0, 0, 2);
  inst.demand.set(0, 1, 0, 0, 1);
  inst.policy.cascade_mode = CascadeMode::kAdjacent;
  const IlpModel model = Compile(inst);
  for (const ConstraintRow& row : model.rows) {
    if (row.tag.family == Family::kC9 && row.tag.index[2].value == 0) {
      EXPECT_EQ(row.sense, Sense::kGreaterEqual);
      EXPECT_EQ(row.rhs, 3.0);
      EXPECT_EQ(row.terms.size(), 3u);
    }
    if (row.tag.family == Family::kC8 && row.tag.index[2].value == 0) {
      EXPECT_EQ(row.rhs, 1.0);
      ASSERT_EQ(row.terms.size(), 1u);
      EXPECT_EQ(row.terms[0].column, IndexOf(inst, 2, 0, 0));
    }
  }
}

TEST(Compile, CumulativeCascadePoolsAllHigherRanks) {
  ProblemInstance inst = testing::BareInstance(3, 1);
  inst.ranks = 3;
  inst.nurses[1].rank = 1;
  inst.nurses[2].rank = 2;
  inst.demand = DemandTable(1, 3, 3, 1);
  inst.demand.set(0, 0, 0, 0, 1);
  inst.policy.cascade_mode = CascadeMode::kCumulative;
  const IlpModel model = Compile(inst);
  for (const ConstraintRow& row : model.rows) {
    if (row.tag.family != Family::kC9 || row.tag.index[2].value != 0) continue;
    const int rank = row.tag.index[1].value;
    EXPECT_EQ(row.terms.size(), static_cast<size_t>(3 - rank));
  }
  // Adjacent pools only two ranks.
  inst.policy.cascade_mode = CascadeMode::kAdjacent;
  for (const ConstraintRow& row : Compile(inst).rows) {
    if (row.tag.family == Family::kC9 && row.tag.index[2].value == 0) {
      EXPECT_EQ(row.terms.size(), 2u);
    }
  }
}

TEST(Compile, ObjectiveSignsPerMode) {
  ProblemInstance inst = testing::BareInstance(1, 1);
  inst.preference.values[{0, 0, 0}] = 4;
  inst.cost.values[{0, 0, 0}] = 3;
  inst.cost.per_nurse_constant[0] = 10;
  const int col = IndexOf(inst, 0, 0, 0);
  struct Case {
    ObjectiveMode mode;
    double coef;
    double constant;
    bool maximize;
  };
  for (const Case& c : {Case{ObjectiveMode::kMaximizeUtility, 4, 0, true},
                        Case{ObjectiveMode::kMinimizeCost, -3, 10, false},
                        Case{ObjectiveMode::kPenalizedUtility, 1, 0, true},
                        Case{ObjectiveMode::kPenalizedCost, -1, 10, false}}) {
    inst.objective_mode = c.mode;
    const IlpModel model = Compile(inst);
    EXPECT_EQ(model.objective[col], c.coef) << ToString(c.mode);
    EXPECT_EQ(model.objective_constant, c.constant) << ToString(c.mode);
    EXPECT_EQ(model.maximize(), c.maximize) << ToString(c.mode);
  }
}

TEST(Compile, SoftColumnsAndRows) {
  ProblemInstance inst = testing::BareInstance(2, 5);
  inst.policy.soft_pm_am_weight = 2.5;
  inst.policy.soft_night_run = NightRunPenalty{3, 4.0};
  const IlpModel model = Compile(inst);
  const int assignment = 2 * 3 * 5;
  const int pm_am = 2 * (5 - 1);
  const int runs = 2 * (5 - 3 + 1);
  EXPECT_EQ(model.num_assignment_columns, assignment);
  EXPECT_EQ(model.num_columns, assignment + pm_am + runs);
  EXPECT_EQ(model.CountRows(Family::kS11), pm_am);
  EXPECT_EQ(model.CountRows(Family::kS12), runs);
  for (int j = assignment; j < model.num_columns; ++j) {
    EXPECT_FALSE(model.integer[j]);
    EXPECT_EQ(model.lower[j], 0.0);
    EXPECT_EQ(model.upper[j], 1.0);
    EXPECT_EQ(model.columns[j].kind, VarRef::Kind::kPenalty);
    // Maximizing: penalties are subtracted.
    EXPECT_EQ(model.objective[j], j < assignment + pm_am ? -2.5 : -4.0);
  }
  EXPECT_EQ(model.columns[assignment].Name(), "Z11_1_1");
  EXPECT_EQ(model.columns[assignment + pm_am].Name(), "Z12_1_1");

  inst.objective_mode = ObjectiveMode::kMinimizeCost;
  const IlpModel minimizing = Compile(inst);
  EXPECT_EQ(minimizing.objective[assignment], 2.5);
}

TEST(Compile, SoftRowShapes) {
  ProblemInstance inst = testing::BareInstance(1, 3);
  inst.policy.soft_pm_am_weight = 1.0;
  inst.policy.soft_night_run = NightRunPenalty{2, 1.0};
  const IlpModel model = Compile(inst);
  for (const ConstraintRow& row : model.rows) {
    if (row.tag.family == Family::kS11) {
      EXPECT_EQ(row.sense, Sense::kLessEqual);
      EXPECT_EQ(row.rhs, 1.0);
      ASSERT_EQ(row.terms.size(), 3u);
    }
    if (row.tag.family == Family::kS12) {
      EXPECT_EQ(row.sense, Sense::kLessEqual);
      EXPECT_EQ(row.rhs, 1.0);  // j - 1
      ASSERT_EQ(row.terms.size(), 3u);
    }
  }
}

TEST(Compile, RequiredShiftForms) {
  ProblemInstance inst = testing::BareInstance(2, 3);
  inst.nurses[0].required = RequiredShifts::Total(2);
  inst.nurses[1].required = RequiredShifts::PerShift({1, 0, 1});
  const IlpModel model = Compile(inst);
  EXPECT_EQ(model.CountRows(Family::kC10), 1 + 3);
  for (const ConstraintRow& row : model.rows) {
    if (row.tag.family == Family::kC10) EXPECT_EQ(row.sense, Sense::kEqual);
  }
}

TEST(Compile, OptionalHardFamilies) {
  ProblemInstance inst = testing::BareInstance(2, 4);
  inst.policy.forbid_pm_am_hard = true;
  inst.policy.max_consecutive_nights = 1;
  inst.policy.max_night_shifts = 2;
  const IlpModel model = Compile(inst);
  EXPECT_EQ(model.CountRows(Family::kC11), 2 * 3);
  EXPECT_EQ(model.CountRows(Family::kC12), 2 * (4 - 2 + 1));
  EXPECT_EQ(model.CountRows(Family::kC2N), 2);
}

}  // namespace
}  // namespace wardmip
