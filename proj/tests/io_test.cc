#include <gtest/gtest.h>

#include <map>
#include <set>
#include <sstream>

#include "test_util.h"
#include "wardmip/compile.h"
#include "wardmip/generate.h"
#include "wardmip/io.h"
#include "wardmip/random.h"

namespace wardmip {
namespace {

std::vector<std::string> Lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::vector<std::string> Fields(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream in(line);
  for (std::string f; in >> f;) fields.push_back(f);
  return fields;
}

// Replaces the value of the first occurrence of `"key": ` up to the next
// comma or newline.
std::string SetField(std::string text, const std::string& key,
                     const std::string& value) {
  const std::string needle = "\"" + key + "\": ";
  const size_t at = text.find(needle);
  const size_t start = at + needle.size();
  const size_t end = text.find_first_of(",\n}", start);
  return text.replace(start, end - start, value);
}

TEST(InstanceIo, LiRoundTrip) {
  const ProblemInstance li = BuiltinLi2003(0);
  EXPECT_EQ(ReadInstance(WriteInstance(li)), li);
}

TEST(InstanceIo, GeneralWardRoundTrip) {
  const ProblemInstance ward = BuiltinGeneralWard(0);
  EXPECT_EQ(ReadInstance(WriteInstance(ward)), ward);
}

TEST(InstanceIo, CanonicalAndStable) {
  const ProblemInstance li = BuiltinLi2003(0);
  const std::string text = WriteInstance(li);
  EXPECT_EQ(WriteInstance(li), text);
  EXPECT_EQ(WriteInstance(ReadInstance(text)), text);
  EXPECT_EQ(text.find('\r'), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
}

TEST(InstanceIo, LiDocumentHasDemandLine663) {
  const std::string text = WriteInstance(BuiltinLi2003(0));
  EXPECT_NE(text.find(R"({"day": 1, "rank": 1, "shifts": [6, 6, 3], "ward": 1})"),
            std::string::npos);
}

TEST(InstanceIo, TopLevelKeysSorted) {
  std::vector<std::string> keys;
  for (const std::string& line : Lines(WriteInstance(BuiltinLi2003(0)))) {
    if (line.rfind("  \"", 0) == 0) {
      keys.push_back(line.substr(3, line.find('"', 3) - 3));
    }
  }
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(keys.size(), 13u);
}

TEST(InstanceIo, OneBasedIndicesOnDisk) {
  ProblemInstance inst = testing::BareInstance(1, 2);
  inst.nurses[0].leave_days = {0};
  const std::string text = WriteInstance(inst);
  EXPECT_NE(text.find(R"("leave_days": [1])"), std::string::npos);
}

TEST(InstanceIo, ZeroHorizonIsASemanticError) {
  const std::string text =
      SetField(WriteInstance(testing::BareInstance(1, 1)), "horizon", "0");
  try {
    ReadInstance(text);
    FAIL();
  } catch (const InvalidInstance& e) {
    ASSERT_FALSE(e.errors().empty());
    EXPECT_EQ(e.errors()[0].field, "horizon");
  }
}

TEST(InstanceIo, UnknownFieldIsNamed) {
  std::string text = WriteInstance(testing::BareInstance(1, 1));
  text.insert(text.find("\"format\""), "\"colour\": \"blue\",\n  ");
  try {
    ReadInstance(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'colour'"), std::string::npos) << e.what();
  }
  std::string nested = WriteInstance(testing::BareInstance(1, 1));
  nested.insert(nested.find("\"max_work_days\""), "\"overtime\": 3, ");
  try {
    ReadInstance(nested);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("policy.overtime"), std::string::npos)
        << e.what();
  }
}

TEST(InstanceIo, SyntaxErrorReportsPosition) {
  const std::string text = "{\n  \"horizon\": 3,\n  \"name\": ,\n}\n";
  try {
    ReadInstance(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_GT(e.column(), 1);
  }
}

TEST(InstanceIo, WrongTypeNamesField) {
  const std::string text =
      SetField(WriteInstance(testing::BareInstance(1, 1)), "horizon", "\"three\"");
  try {
    ReadInstance(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("horizon"), std::string::npos);
  }
}

TEST(InstanceIo, MissingFieldNamed) {
  std::string text = WriteInstance(testing::BareInstance(1, 1));
  const size_t at = text.find("  \"horizon\"");
  text.erase(at, text.find('\n', at) - at + 1);
  try {
    ReadInstance(text);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("'horizon'"), std::string::npos);
  }
}

TEST(InstanceIo, RejectsWrongFormatTag) {
  const std::string text = SetField(WriteInstance(testing::BareInstance(1, 1)),
                                    "format", "\"something-else\"");
  EXPECT_THROW(ReadInstance(text), ParseError);
}

TEST(InstanceIo, RoundTripsRandomInstances) {
  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    GeneratorParams params;
    params.nurses = static_cast<int>(rng.Uniform(1, 12));
    params.days = static_cast<int>(rng.Uniform(1, 10));
    params.ranks = static_cast<int>(rng.Uniform(1, 3));
    params.wards = static_cast<int>(rng.Uniform(1, 2));
    params.density = 0.4;
    params.vary_policy = true;
    params.seed = static_cast<uint64_t>(i);
    ProblemInstance inst = GenerateInstance(params);
    // Non-integral weights must survive too.
    for (auto& [key, value] : inst.preference.values) value = value / 3.0 + 0.1;
    const std::string text = WriteInstance(inst);
    ASSERT_EQ(ReadInstance(text), inst) << "instance " << i;
    ASSERT_EQ(WriteInstance(ReadInstance(text)), text) << "instance " << i;
  }
}

// ------------------------------------------------------------------ MPS

struct MpsSummary {
  std::vector<std::string> row_names;  // ROWS entries, objective first
  std::set<std::string> columns;
  std::vector<std::string> integer_columns;
  std::map<std::string, double> objective_rhs;
  int bound_lines = 0;
};

MpsSummary ParseMps(const std::string& text) {
  MpsSummary summary;
  std::string section;
  bool integer = false;
  for (const std::string& line : Lines(text)) {
    if (line.empty()) continue;
    if (line[0] != ' ') {
      section = Fields(line)[0];
      continue;
    }
    const std::vector<std::string> f = Fields(line);
    if (section == "ROWS") {
      summary.row_names.push_back(f[1]);
    } else if (section == "COLUMNS") {
      if (f.size() == 3 && f[1] == "'MARKER'") {
        integer = f[2] == "'INTORG'";
        continue;
      }
      summary.columns.insert(f[0]);
      if (integer && (summary.integer_columns.empty() ||
                      summary.integer_columns.back() != f[0])) {
        summary.integer_columns.push_back(f[0]);
      }
    } else if (section == "RHS") {
      summary.objective_rhs[f[1]] = std::stod(f[2]);
    } else if (section == "BOUNDS") {
      ++summary.bound_lines;
    }
  }
  return summary;
}

TEST(ExportMps, GeneralWardCounts) {
  const IlpModel model = Compile(BuiltinGeneralWard(0));
  const MpsSummary mps = ParseMps(ExportMps(model));
  EXPECT_EQ(mps.columns.size(), 840u);
  EXPECT_EQ(mps.integer_columns.size(), 840u);
  EXPECT_EQ(mps.row_names.size(), model.rows.size() + 1);
  EXPECT_EQ(mps.row_names[0], "OBJ");
  EXPECT_EQ(mps.bound_lines, 840);
}

TEST(ExportMps, Deterministic) {
  const IlpModel model = Compile(BuiltinLi2003(0));
  EXPECT_EQ(ExportMps(model), ExportMps(Compile(BuiltinLi2003(0))));
}

TEST(ExportMps, NamesFitAndAreUnique) {
  ProblemInstance inst = BuiltinGeneralWard(0);
  inst.policy.soft_pm_am_weight = 1.5;
  inst.policy.soft_night_run = NightRunPenalty{2, 0.25};
  const IlpModel model = Compile(inst);
  const MpsSummary mps = ParseMps(ExportMps(model));
  std::set<std::string> rows(mps.row_names.begin(), mps.row_names.end());
  EXPECT_EQ(rows.size(), mps.row_names.size());
  for (const std::string& name : rows) EXPECT_LE(name.size(), 8u) << name;
  for (const std::string& name : mps.columns) EXPECT_LE(name.size(), 8u) << name;
  EXPECT_EQ(mps.columns.size(), static_cast<size_t>(model.num_columns));
  EXPECT_EQ(mps.integer_columns.size(), 840u);
  // Short tags are kept verbatim.
  EXPECT_TRUE(rows.contains("C6_n4_d8"));
  EXPECT_TRUE(mps.columns.contains("X1_1_1"));
}

TEST(ExportMps, ObjectiveConstantInRhs) {
  const ProblemInstance li = BuiltinLi2003(0);
  const MpsSummary mps = ParseMps(ExportMps(Compile(li)));
  ASSERT_TRUE(mps.objective_rhs.contains("OBJ"));
  EXPECT_DOUBLE_EQ(mps.objective_rhs.at("OBJ"), -li.cost.ConstantSum());
}

TEST(ExportMps, FixedFieldPositions) {
  const std::string text = ExportMps(Compile(BuiltinLi2003(0)));
  bool in_columns = false;
  for (const std::string& line : Lines(text)) {
    if (line == "COLUMNS") in_columns = true;
    if (line == "RHS") break;
    if (!in_columns || line[0] != ' ' || line.find("MARKER") != std::string::npos) {
      continue;
    }
    // Name in columns 5-12, row in 15-22, value right-aligned in 25-36.
    ASSERT_EQ(line.substr(0, 4), "    ");
    ASSERT_EQ(line.size(), 36u) << line;
    ASSERT_EQ(line.substr(12, 2), "  ") << line;
    ASSERT_EQ(line.substr(22, 2), "  ") << line;
  }
}

TEST(ExportMps, Sections) {
  const std::string text = ExportMps(Compile(BuiltinLi2003(0)));
  std::vector<std::string> sections;
  for (const std::string& line : Lines(text)) {
    if (!line.empty() && line[0] != ' ') sections.push_back(Fields(line)[0]);
  }
  EXPECT_EQ(sections, (std::vector<std::string>{"NAME", "OBJSENSE", "ROWS", "COLUMNS",
                                                "RHS", "BOUNDS", "ENDATA"}));
  EXPECT_NE(text.find("OBJSENSE\n    MIN\n"), std::string::npos);
}

// ---------------------------------------------------------------- rosters

TEST(RenderRoster, AllOffGrid) {
  const ProblemInstance inst = testing::BareInstance(2, 3);
  const std::vector<std::string> lines =
      Lines(RenderRoster(inst, Roster(2, 3), RosterFormat::kGrid));
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "Nurse D1 D2 D3");
  EXPECT_EQ(lines[1], "n1    –  –  –");
  EXPECT_EQ(lines[2], "n2    –  –  –");
}

TEST(RenderRoster, CsvLineCount) {
  const ProblemInstance inst = testing::BareInstance(4, 3);
  const std::string csv = RenderRoster(inst, Roster(4, 3), RosterFormat::kCsv);
  const std::vector<std::string> lines = Lines(csv);
  EXPECT_EQ(lines.size(), 5u);
  EXPECT_EQ(lines[0], "nurse,D1,D2,D3");
  EXPECT_EQ(lines[1], "n1,OFF,OFF,OFF");
}

TEST(RenderRoster, LiGridShape) {
  const ProblemInstance li = BuiltinLi2003(0);
  Roster roster(27, 7);
  roster.set(3, 2, 2);
  const std::vector<std::string> lines =
      Lines(RenderRoster(li, roster, RosterFormat::kGrid));
  ASSERT_EQ(lines.size(), 28u);
  EXPECT_EQ(Fields(lines[0]).size(), 8u);
  for (size_t i = 1; i < lines.size(); ++i) EXPECT_EQ(Fields(lines[i]).size(), 8u);
  EXPECT_EQ(Fields(lines[4])[3], "MN");
}

TEST(RosterCsv, RoundTripWithQuoting) {
  ProblemInstance inst = testing::BareInstance(3, 2);
  inst.nurses[0].id = "Smith, J";
  inst.nurses[1].id = "O\"Neil";
  Roster roster(3, 2);
  roster.set(0, 0, 0);
  roster.set(1, 1, 2);
  roster.set(2, 0, 1);
  const std::string csv = RenderRoster(inst, roster, RosterFormat::kCsv);
  EXPECT_NE(csv.find("\"Smith, J\""), std::string::npos);
  EXPECT_NE(csv.find("\"O\"\"Neil\""), std::string::npos);
  EXPECT_EQ(ReadRosterCsv(inst, csv), roster);
}

TEST(RosterCsv, RowsMatchedById) {
  const ProblemInstance inst = testing::BareInstance(2, 1);
  Roster expected(2, 1);
  expected.set(1, 0, 1);
  EXPECT_EQ(ReadRosterCsv(inst, "nurse,D1\nn2,PM\nn1,OFF\n"), expected);
}

TEST(RosterCsv, ShapeErrors) {
  const ProblemInstance inst = testing::BareInstance(2, 2);
  EXPECT_THROW(ReadRosterCsv(inst, "nurse,D1,D2\nn1,AM,OFF\n"), RosterError);
  EXPECT_THROW(ReadRosterCsv(inst, "nurse,D1\nn1,AM\nn2,AM\n"), RosterError);
  EXPECT_THROW(ReadRosterCsv(inst, "nurse,D1,D2\nn1,AM,OFF\nn9,AM,OFF\n"), RosterError);
  EXPECT_THROW(ReadRosterCsv(inst, "nurse,D1,D2\nn1,AM,OFF\nn1,AM,OFF\n"), RosterError);
}

TEST(RosterCsv, UnknownLabel) {
  const ProblemInstance inst = testing::BareInstance(1, 1);
  EXPECT_THROW(ReadRosterCsv(inst, "nurse,D1\nn1,EVE\n"), ParseError);
}

}  // namespace
}  // namespace wardmip
