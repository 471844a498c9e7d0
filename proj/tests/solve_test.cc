#include <gtest/gtest.h>

#include <cmath>

#include "test_util.h"
#include "wardmip/compile.h"
#include "wardmip/roster.h"
#include "wardmip/solve.h"

namespace wardmip {
namespace {

using testing::BareInstance;
using testing::OracleInstance;
using testing::RosterOf;

TEST(SolveIlp, AgreesWithBruteForceOnTinySuite) {
  int feasible = 0;
  for (int i = 0; i < 50; ++i) {
    const ProblemInstance inst = OracleInstance(i);
    const SolveResult ilp = SolveIlp(Compile(inst));
    const SolveResult brute = BruteForce(inst);
    ASSERT_EQ(ilp.status, brute.status) << "instance " << i;
    if (ilp.status != SolveStatus::kOptimal) continue;
    ++feasible;
    EXPECT_EQ(ilp.objective, brute.objective) << "instance " << i;
    const ValidationReport report = Validate(inst, RosterOf(inst, ilp));
    EXPECT_TRUE(report.ok()) << "instance " << i;
    EXPECT_NEAR(report.objective_recomputed, ilp.objective, 1e-6) << "instance " << i;
  }
  EXPECT_GE(feasible, 25);
}

TEST(SolveIlp, WeakDualityAtTheRoot) {
  for (int i = 0; i < 50; ++i) {
    const IlpModel model = Compile(OracleInstance(i));
    const SolveResult result = SolveIlp(model);
    if (result.status != SolveStatus::kOptimal) continue;
    ASSERT_TRUE(result.stats.root_bound);
    if (model.maximize()) {
      EXPECT_GE(*result.stats.root_bound, result.objective - 1e-9) << i;
    } else {
      EXPECT_LE(*result.stats.root_bound, result.objective + 1e-9) << i;
    }
  }
}

TEST(SolveIlp, OptimalResultCarriesCertificate) {
  const SolveResult result = SolveIlp(Compile(BuiltinLi2003(0)));
  ASSERT_EQ(result.status, SolveStatus::kOptimal);
  EXPECT_LE(std::abs(result.objective - result.bound), 1e-6);
  EXPECT_EQ(result.objective, std::round(result.objective));
}

TEST(SolveIlp, Deterministic) {
  const IlpModel model = Compile(BuiltinLi2003(1));
  const SolveResult a = SolveIlp(model);
  const SolveResult b = SolveIlp(model);
  EXPECT_EQ(a.status, b.status);
  EXPECT_EQ(a.stats.nodes, b.stats.nodes);
  EXPECT_EQ(a.stats.lp_iterations, b.stats.lp_iterations);
  EXPECT_EQ(a.incumbent, b.incumbent);
}

TEST(SolveIlp, NodeLimitReportsBoundOnTheRightSide) {
  const IlpModel model = Compile(BuiltinLi2003(0));
  SolverConfig config;
  config.node_limit = 1;
  const SolveResult result = SolveIlp(model, config);
  ASSERT_EQ(result.status, SolveStatus::kLimitReached);
  EXPECT_EQ(result.stats.nodes, 1);
  const SolveResult optimal = SolveIlp(model);
  // Minimizing: the proven bound never exceeds the true optimum.
  EXPECT_LE(result.bound, optimal.objective + 1e-9);
  if (result.incumbent) EXPECT_GE(result.objective, optimal.objective);
}

TEST(SolveIlp, TimeLimitWithoutIncumbent) {
  SolverConfig config;
  config.time_limit = 1e-12;
  const SolveResult result = SolveIlp(Compile(BuiltinGeneralWard(0)), config);
  EXPECT_EQ(result.status, SolveStatus::kLimitReached);
  EXPECT_FALSE(result.incumbent);
  EXPECT_TRUE(std::isnan(result.objective));
}

TEST(SolveIlp, InfeasibleByExhaustion) {
  // One nurse, exact coverage of two shifts on the same day.
  ProblemInstance inst = BareInstance(1, 1);
  inst.policy.coverage_mode = CoverageMode::kExact;
  inst.demand.set(0, 0, 0, 0, 1);
  inst.demand.set(0, 0, 1, 0, 1);
  const SolveResult result = SolveIlp(Compile(inst));
  EXPECT_EQ(result.status, SolveStatus::kInfeasible);
  EXPECT_FALSE(result.incumbent);
  EXPECT_EQ(result.bound, -std::numeric_limits<double>::infinity());
}

TEST(SolveIlp, RejectsNonBinaryIntegerColumns) {
  IlpModel model = Compile(BareInstance(1, 1));
  model.upper[0] = 2.0;
  EXPECT_THROW(SolveIlp(model), Error);
}

TEST(SolveIlp, MatchesBruteForceUnderExactCoverageAndTurnaround) {
  ProblemInstance inst = BareInstance(3, 2);
  inst.policy.coverage_mode = CoverageMode::kExact;
  for (int d = 0; d < 2; ++d) {
    inst.demand.set(0, 0, 0, d, 1);
    inst.demand.set(0, 0, 2, d, 1);
  }
  inst.policy.forbid_night_morning = true;
  for (int n = 0; n < 3; ++n) {
    for (int s = 0; s < 3; ++s) {
      for (int d = 0; d < 2; ++d) inst.preference.values[{n, s, d}] = (n + s + d) % 3;
    }
  }
  const SolveResult ilp = SolveIlp(Compile(inst));
  const SolveResult brute = BruteForce(inst);
  ASSERT_EQ(ilp.status, SolveStatus::kOptimal);
  EXPECT_EQ(ilp.objective, brute.objective);
}

TEST(BruteForce, RefusesLargeSpaces) {
  EXPECT_THROW(BruteForce(BareInstance(4, 3)), TooLarge);  // 4^12 > 1e7
  EXPECT_NO_THROW(BruteForce(BareInstance(3, 3)));         // 4^9 = 262144
}

TEST(BruteForce, OneNurseToy) {
  ProblemInstance inst = BareInstance(1, 1);
  inst.preference.values[{0, 0, 0}] = 5;
  inst.preference.values[{0, 1, 0}] = 2;
  inst.preference.values[{0, 2, 0}] = 1;
  const SolveResult result = BruteForce(inst);
  EXPECT_EQ(result.objective, 5.0);
  EXPECT_EQ(result.stats.nodes, 4);
}

TEST(BruteForce, TiesGoToTheLexicographicallySmallestVector) {
  ProblemInstance inst = BareInstance(1, 1);
  EXPECT_EQ(*BruteForce(inst).incumbent, (std::vector<double>{0, 0, 0}));
  inst.preference.values[{0, 0, 0}] = 1;
  inst.preference.values[{0, 1, 0}] = 1;
  EXPECT_EQ(*BruteForce(inst).incumbent, (std::vector<double>{0, 1, 0}));
}

TEST(BruteForce, IncumbentIncludesPenaltyValues) {
  ProblemInstance inst = BareInstance(1, 2);
  inst.policy.soft_pm_am_weight = 1;
  inst.preference.values[{0, 1, 0}] = 3;
  inst.preference.values[{0, 0, 1}] = 3;
  const SolveResult result = BruteForce(inst);
  EXPECT_EQ(result.objective, 5.0);
  ASSERT_EQ(result.incumbent->size(), 7u);
  EXPECT_EQ(result.incumbent->back(), 1.0);
  const SolveResult ilp = SolveIlp(Compile(inst));
  EXPECT_EQ(*ilp.incumbent, *result.incumbent);
}

TEST(ConflictingFamilies, LeaveAgainstRequiredShifts) {
  ProblemInstance inst = BareInstance(1, 2);
  inst.nurses[0].leave_days = {0, 1};
  inst.nurses[0].required = RequiredShifts::Total(1);
  EXPECT_EQ(ConflictingFamilies(Compile(inst)),
            (std::vector<Family>{Family::kC5, Family::kC10}));
}

TEST(ConflictingFamilies, CoverageAgainstOneShiftPerDay) {
  // Two days so the working-day cap stays slack.
  ProblemInstance inst = BareInstance(1, 2);
  inst.policy.coverage_mode = CoverageMode::kExact;
  inst.demand.set(0, 0, 0, 0, 1);
  inst.demand.set(0, 0, 1, 0, 1);
  EXPECT_EQ(ConflictingFamilies(Compile(inst)),
            (std::vector<Family>{Family::kC1, Family::kC8}));
}

TEST(ConflictingFamilies, TurnaroundAgainstCoverage) {
  // Night on day 1 and morning on day 2 are both demanded by the only nurse,
  // which the turnaround rule forbids.
  ProblemInstance inst = BareInstance(1, 2);
  inst.policy.forbid_night_morning = true;
  inst.demand.set(0, 0, 2, 0, 1);
  inst.demand.set(0, 0, 0, 1, 1);
  EXPECT_EQ(ConflictingFamilies(Compile(inst)),
            (std::vector<Family>{Family::kC6, Family::kC8}));
}

TEST(ConflictingFamilies, EmptyWhenFeasible) {
  EXPECT_TRUE(ConflictingFamilies(Compile(BareInstance(2, 2))).empty());
}

}  // namespace
}  // namespace wardmip
