#include "cli.h"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "wardmip/compile.h"
#include "wardmip/generate.h"
#include "wardmip/io.h"
#include "wardmip/model.h"
#include "wardmip/roster.h"
#include "wardmip/solve.h"

namespace wardmip::cli {

namespace {

// Bad input the user can fix; always exit code kUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

enum class LogLevel { kQuiet, kInfo, kDebug };

LogLevel LogLevelFromEnv() {
  const char* value = std::getenv("WARDMIP_LOG");
  if (value == nullptr) return LogLevel::kInfo;
  const std::string level = value;
  if (level == "quiet" || level == "error" || level == "0") return LogLevel::kQuiet;
  if (level == "debug" || level == "2") return LogLevel::kDebug;
  return LogLevel::kInfo;
}

class Log {
 public:
  Log(std::ostream& err, LogLevel level) : err_(err), level_(level) {}
  std::ostream* info() { return level_ >= LogLevel::kInfo ? &err_ : nullptr; }
  std::ostream* debug() { return level_ >= LogLevel::kDebug ? &err_ : nullptr; }

 private:
  std::ostream& err_;
  LogLevel level_;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void WriteFile(const std::string& path, const std::string& text,
               std::ostream& out) {
  if (path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text)) throw UsageError("cannot write '" + path + "'");
}

ProblemInstance LoadInstance(const std::string& path) {
  const std::string text = ReadFile(path);
  try {
    return ReadInstance(text);
  } catch (const ParseError& e) {
    throw UsageError(path + ":" + e.what());
  }
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "none";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::ostringstream text;
  text << std::setprecision(12) << value;
  return text.str();
}

struct SolveFlags {
  double time_limit = 0.0;
  int64_t node_limit = 0;
  std::string csv_path;
  std::string coverage_mode;
  std::string cascade_mode;
  std::optional<double> soft_pm_am;
  std::optional<std::pair<int, double>> soft_night_run;
};

void AddSolveFlags(CLI::App& command, SolveFlags& flags) {
  command.add_option("--time-limit", flags.time_limit, "Wall-clock limit in seconds")
      ->check(CLI::PositiveNumber);
  command.add_option("--node-limit", flags.node_limit, "Branch-and-bound node limit")
      ->check(CLI::PositiveNumber);
  command.add_option("--csv", flags.csv_path, "Also write the roster as CSV");
  command.add_option("--coverage-mode", flags.coverage_mode,
                     "Override coverage: exact | at-least");
  command.add_option("--cascade", flags.cascade_mode,
                     "Override rank cascade: off | adjacent | cumulative");
  command.add_option("--soft-pm-am", flags.soft_pm_am,
                     "Penalize afternoon-then-morning with this weight")
      ->check(CLI::NonNegativeNumber);
  command.add_option("--soft-night-run", flags.soft_night_run,
                     "Penalize each run of <len> nights with <weight>")
      ->type_name("<len> <weight>");
}

void ApplyOverrides(const SolveFlags& flags, ProblemInstance& inst) {
  PolicyConfig& policy = inst.policy;
  if (!flags.coverage_mode.empty()) {
    const auto mode = ParseCoverageMode(flags.coverage_mode);
    if (!mode) throw UsageError("--coverage-mode must be exact or at-least");
    policy.coverage_mode = *mode;
  }
  if (!flags.cascade_mode.empty()) {
    const auto mode = ParseCascadeMode(flags.cascade_mode);
    if (!mode) throw UsageError("--cascade must be off, adjacent or cumulative");
    policy.cascade_mode = *mode;
  }
  if (flags.soft_pm_am) policy.soft_pm_am_weight = *flags.soft_pm_am;
  if (flags.soft_night_run) {
    policy.soft_night_run =
        NightRunPenalty{flags.soft_night_run->first, flags.soft_night_run->second};
  }
  RequireValid(inst);
}

SolverConfig ConfigFrom(const SolveFlags& flags) {
  SolverConfig config;
  config.time_limit = flags.time_limit;
  config.node_limit = flags.node_limit;
  return config;
}

void PrintCoverage(const ProblemInstance& inst, const Roster& roster,
                   std::ostream& out) {
  out << "coverage (nurses per shift and day):\n";
  size_t width = 5;
  for (const std::string& label : inst.shift_set.labels) {
    width = std::max(width, label.size());
  }
  for (int s = 0; s < inst.num_shifts(); ++s) {
    out << "  " << std::left << std::setw(static_cast<int>(width))
        << inst.shift_set.labels[s] << std::right;
    for (int d = 0; d < inst.horizon; ++d) {
      int count = 0;
      for (int n = 0; n < roster.num_nurses(); ++n) count += roster.at(n, d) == s;
      out << std::setw(4) << count;
    }
    out << '\n';
  }
}

void PrintFairness(const FairnessReport& report, std::ostream& out) {
  const auto spread = [](const Spread& s) {
    std::ostringstream text;
    text << "min " << s.min << ", max " << s.max << ", mean " << std::fixed
         << std::setprecision(2) << s.mean;
    return text.str();
  };
  out << "fairness: nights per nurse " << spread(report.night_spread)
      << "; shifts per nurse " << spread(report.total_spread)
      << "; longest run of worked days " << report.longest_work_run_overall
      << '\n';
}

struct Outcome {
  SolveResult result;
  std::optional<Roster> roster;
};

// Compiles, solves and prints the status block and roster.
Outcome SolveAndPrint(const ProblemInstance& inst, const SolveFlags& flags,
                      std::ostream& out, Log& log) {
  if (std::ostream* debug = log.debug()) {
    const CapacityReport capacity = CapacityScreen(inst);
    *debug << "capacity: demand " << capacity.total_demand << ", capacity "
           << capacity.total_capacity << ", days short "
           << capacity.day_gaps.size() << '\n';
  }
  const IlpModel model = Compile(inst);
  out << "instance: " << inst.name << " (" << inst.num_nurses() << " nurses, "
      << inst.horizon << " days, " << inst.num_shifts() << " shifts)\n";
  out << "model: " << model.num_columns << " columns ("
      << model.num_assignment_columns << " binary), " << model.rows.size()
      << " rows\n";

  const SolverConfig config = ConfigFrom(flags);
  Outcome outcome{SolveIlp(model, config), std::nullopt};
  const SolveResult& result = outcome.result;
  out << "status: " << ToString(result.status) << '\n';
  out << "objective: " << FormatNumber(result.objective) << '\n';
  out << "bound: " << FormatNumber(result.bound) << '\n';
  out << "nodes: " << result.stats.nodes << '\n';
  std::ostringstream seconds;
  seconds << std::fixed << std::setprecision(2) << result.stats.wall_seconds;
  out << "solved in " << seconds.str()
      << " seconds (wall time, hardware-dependent)\n";
  if (std::ostream* debug = log.debug()) {
    *debug << "simplex iterations: " << result.stats.lp_iterations << '\n';
    if (result.stats.root_bound) {
      *debug << "root bound: " << FormatNumber(*result.stats.root_bound) << '\n';
    }
  }

  if (result.status == SolveStatus::kInfeasible) {
    std::vector<Family> conflict = ConflictingFamilies(model, config);
    out << "infeasible: conflicting families:";
    if (conflict.empty()) out << " unknown";
    for (Family family : conflict) out << ' ' << FamilyName(family);
    out << '\n';
    return outcome;
  }
  if (!result.incumbent) return outcome;

  outcome.roster = Decode(
      inst, std::span<const double>(result.incumbent->data(),
                                    inst.num_assignment_cells()));
  out << '\n' << RenderRoster(inst, *outcome.roster, RosterFormat::kGrid) << '\n';
  PrintCoverage(inst, *outcome.roster, out);
  if (!flags.csv_path.empty()) {
    WriteFile(flags.csv_path,
              RenderRoster(inst, *outcome.roster, RosterFormat::kCsv), out);
    if (std::ostream* info = log.info()) {
      *info << "wrote " << flags.csv_path << '\n';
    }
  }
  return outcome;
}

int ExitFor(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return kOk;
    case SolveStatus::kInfeasible:
      return kInfeasible;
    case SolveStatus::kLimitReached:
      return kLimit;
  }
  return kInternal;
}

void PrintViolations(const ValidationReport& report, std::ostream& out) {
  out << "validation: " << report.violations.size() << " violation"
      << (report.violations.size() == 1 ? "" : "s") << '\n';
  for (const Violation& v : report.violations) {
    out << "  " << v.tag.Name() << ": " << v.message << '\n';
  }
}

int CmdSolve(const std::string& path, const SolveFlags& flags,
             std::ostream& out, Log& log) {
  ProblemInstance inst = LoadInstance(path);
  ApplyOverrides(flags, inst);
  return ExitFor(SolveAndPrint(inst, flags, out, log).result.status);
}

int CmdValidate(const std::string& instance_path, const std::string& roster_path,
                std::ostream& out) {
  const ProblemInstance inst = LoadInstance(instance_path);
  Roster roster;
  try {
    roster = ReadRosterCsv(inst, ReadFile(roster_path));
  } catch (const RosterError& e) {
    throw UsageError(roster_path + ": " + e.what());
  } catch (const ParseError& e) {
    throw UsageError(roster_path + ":" + e.what());
  }
  const ValidationReport report = Validate(inst, roster);
  PrintViolations(report, out);
  out << "objective: " << FormatNumber(report.objective_recomputed) << '\n';
  return report.ok() ? kOk : kViolations;
}

int CmdExportMps(const std::string& path, const std::string& out_path,
                 std::ostream& out, Log& log) {
  const ProblemInstance inst = LoadInstance(path);
  const IlpModel model = Compile(inst);
  WriteFile(out_path, ExportMps(model), out);
  if (out_path != "-") {
    if (std::ostream* info = log.info()) {
      *info << "wrote " << out_path << " (" << model.rows.size() << " rows, "
            << model.num_columns << " columns)\n";
    }
  }
  return kOk;
}

int CmdDemo(const std::string& name, uint64_t seed, const SolveFlags& flags,
            const std::string& save_path, std::ostream& out, Log& log) {
  ProblemInstance inst;
  if (name == "general-ward") {
    inst = BuiltinGeneralWard(seed);
  } else if (name == "li2003") {
    inst = BuiltinLi2003(seed);
  } else {
    throw UsageError("unknown demo '" + name + "' (general-ward | li2003)");
  }
  ApplyOverrides(flags, inst);
  if (!save_path.empty()) WriteFile(save_path, WriteInstance(inst), out);
  const Outcome outcome = SolveAndPrint(inst, flags, out, log);
  if (!outcome.roster) return ExitFor(outcome.result.status);
  const ValidationReport report = Validate(inst, *outcome.roster);
  PrintViolations(report, out);
  PrintFairness(Fairness(inst, *outcome.roster), out);
  if (!report.ok()) return kViolations;
  return ExitFor(outcome.result.status);
}

int CmdGen(const GeneratorParams& params, const std::string& out_path,
           std::ostream& out) {
  ProblemInstance inst;
  try {
    inst = GenerateInstance(params);
  } catch (const GeneratorError& e) {
    throw UsageError(e.what());
  }
  WriteFile(out_path, WriteInstance(inst), out);
  return kOk;
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Log log(err, LogLevelFromEnv());
  CLI::App app{"Nurse rostering with an exact integer programming solver",
               "wardmip"};
  app.require_subcommand(1);
  std::function<int()> action;

  SolveFlags solve_flags;
  std::string solve_path;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("instance", solve_path, "Instance document")->required();
  AddSolveFlags(*solve, solve_flags);
  solve->callback([&] {
    action = [&] { return CmdSolve(solve_path, solve_flags, out, log); };
  });

  std::string validate_instance;
  std::string validate_roster;
  CLI::App* validate =
      app.add_subcommand("validate", "Check a roster CSV against an instance");
  validate->add_option("instance", validate_instance, "Instance document")->required();
  validate->add_option("roster", validate_roster, "Roster CSV")->required();
  validate->callback([&] {
    action = [&] { return CmdValidate(validate_instance, validate_roster, out); };
  });

  std::string mps_instance;
  std::string mps_out;
  CLI::App* mps = app.add_subcommand("export-mps", "Write the compiled model as MPS");
  mps->add_option("instance", mps_instance, "Instance document")->required();
  mps->add_option("output", mps_out, "Output path, - for stdout")->required();
  mps->callback([&] {
    action = [&] { return CmdExportMps(mps_instance, mps_out, out, log); };
  });

  std::string demo_name;
  uint64_t demo_seed = 0;
  SolveFlags demo_flags;
  std::string demo_save;
  CLI::App* demo = app.add_subcommand("demo", "Solve a built-in instance");
  demo->add_option("name", demo_name, "general-ward | li2003")->required();
  demo->add_option("--seed", demo_seed, "Seed for the synthesized data");
  demo->add_option("--save-instance", demo_save,
                   "Write the built-in instance document to this path");
  AddSolveFlags(*demo, demo_flags);
  demo->callback([&] {
    action = [&] {
      return CmdDemo(demo_name, demo_seed, demo_flags, demo_save, out, log);
    };
  });

  GeneratorParams gen_params;
  std::optional<int> gen_max_work_days;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand("gen", "Write a random instance");
  gen->add_option("output", gen_out, "Output path, - for stdout")->required();
  gen->add_option("--nurses", gen_params.nurses, "Number of nurses")
      ->check(CLI::PositiveNumber);
  gen->add_option("--days", gen_params.days, "Horizon in days")
      ->check(CLI::PositiveNumber);
  gen->add_option("--ranks", gen_params.ranks, "Number of ranks")
      ->check(CLI::PositiveNumber);
  gen->add_option("--wards", gen_params.wards, "Number of wards")
      ->check(CLI::PositiveNumber);
  gen->add_option("--density", gen_params.density, "Demand density in [0, 1]")
      ->check(CLI::Range(0.0, 1.0));
  gen->add_option("--max-work-days", gen_max_work_days, "Max working days");
  gen->add_flag("--vary-policy", gen_params.vary_policy,
                "Draw random rules, leave and objective");
  gen->add_option("--seed", gen_params.seed, "Random seed");
  gen->callback([&] {
    action = [&] {
      gen_params.max_work_days = gen_max_work_days;
      return CmdGen(gen_params, gen_out, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInstance& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalFailure& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace wardmip::cli
