// Translation of a ProblemInstance into a sparse 0-1 integer program.
//
// Column layout: the assignment block comes first, one binary column per
// (nurse, shift, day) in nurse-major, shift, day order. Penalty columns for
// soft rules follow, continuous in [0, 1].

#ifndef WARDMIP_COMPILE_H_
#define WARDMIP_COMPILE_H_

#include <string>
#include <utility>
#include <vector>

#include "wardmip/model.h"

namespace wardmip {

// Constraint families. Declaration order is row order in compiled models.
enum class Family {
  kC1,   // at most one shift per nurse-day
  kC2,   // max worked days over the horizon
  kC2N,  // max night shifts over the horizon
  kC3,   // sliding-window max worked days
  kC4,   // off days after a block of nights
  kC5,   // leave
  kC6,   // no night followed by morning
  kC8,   // coverage per (ward, rank, shift, day)
  kC9,   // rank cascade coverage
  kC10,  // required shift counts
  kC11,  // no afternoon followed by morning (hard)
  kC12,  // max nights in a sliding window (hard)
  kS11,  // afternoon-morning penalty link
  kS12,  // night-run penalty link
};

const char* FamilyName(Family family);
std::vector<Family> AllFamilies();

enum class Sense { kLessEqual, kEqual, kGreaterEqual };
enum class ObjectiveSense { kMaximize, kMinimize };

// One component of a row's index tuple, e.g. {'n', 3} for nurse 3.
struct TagIndex {
  char dimension;
  int value;  // 0-based
  friend auto operator<=>(const TagIndex&, const TagIndex&) = default;
};

struct RowTag {
  Family family;
  std::vector<TagIndex> index;

  // e.g. "C6_n4_d8". Indices are rendered 1-based.
  std::string Name() const;
  friend auto operator<=>(const RowTag&, const RowTag&) = default;
};

struct Term {
  int column;
  double coef;
  friend bool operator==(const Term&, const Term&) = default;
};

struct ConstraintRow {
  std::vector<Term> terms;
  Sense sense = Sense::kLessEqual;
  double rhs = 0.0;
  RowTag tag;

  double Activity(const std::vector<double>& values) const;
  friend bool operator==(const ConstraintRow&, const ConstraintRow&) = default;
};

struct VarRef {
  enum class Kind { kAssignment, kPenalty };
  Kind kind = Kind::kAssignment;
  // Assignment: the cell. Penalty: nurse and first day of the pattern.
  int nurse = 0;
  int shift = 0;
  int day = 0;
  Family pattern = Family::kS11;  // penalty columns only
  int column = 0;

  std::string Name() const;
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct IlpModel {
  int num_columns = 0;
  int num_assignment_columns = 0;
  std::vector<VarRef> columns;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<bool> integer;
  std::vector<ConstraintRow> rows;
  std::vector<double> objective;
  double objective_constant = 0.0;
  ObjectiveSense sense = ObjectiveSense::kMaximize;

  bool maximize() const { return sense == ObjectiveSense::kMaximize; }
  // objective . values + objective_constant
  double Evaluate(const std::vector<double>& values) const;
  // Rows whose sense is violated by more than `tol` at `values`.
  std::vector<int> ViolatedRows(const std::vector<double>& values,
                                double tol = 1e-7) const;
  int CountRows(Family family) const;
  friend bool operator==(const IlpModel&, const IlpModel&) = default;
};

// Column of assignment variable (nurse, shift, day). Throws std::out_of_range
// naming the offending dimension.
int IndexOf(const ProblemInstance& inst, int nurse, int shift, int day);

struct Cell {
  int nurse;
  int shift;
  int day;
  friend bool operator==(const Cell&, const Cell&) = default;
};

// Inverse of IndexOf over the assignment block.
Cell CellOf(const ProblemInstance& inst, int column);

std::vector<ConstraintRow> CompileHard(const ProblemInstance& inst);

struct SoftBlock {
  std::vector<VarRef> columns;
  std::vector<ConstraintRow> rows;
  std::vector<double> weights;  // unsigned penalty weight per column
};

// Penalty columns for enabled soft rules, numbered from N*S*D. Throws
// InvalidInstance when a soft weight is negative.
SoftBlock CompileSoft(const ProblemInstance& inst);

struct ObjectiveParts {
  std::vector<double> coefficients;  // one per column, penalty block included
  double constant = 0.0;
  ObjectiveSense sense = ObjectiveSense::kMaximize;
};

ObjectiveParts BuildObjective(const ProblemInstance& inst);

// Full model. Throws InvalidInstance if the instance does not validate.
IlpModel Compile(const ProblemInstance& inst);

}  // namespace wardmip

#endif  // WARDMIP_COMPILE_H_
