// Instance documents, MPS export and roster text formats.
//
// Instance documents are JSON with a fixed "format"/"version" header. Nurse,
// shift, day, rank and ward indices are 1-based on disk. See
// README.md for the field list.

#ifndef WARDMIP_IO_H_
#define WARDMIP_IO_H_

#include <string>
#include <string_view>

#include "wardmip/compile.h"
#include "wardmip/model.h"
#include "wardmip/roster.h"

namespace wardmip {

inline constexpr char kInstanceFormat[] = "wardmip-instance";
inline constexpr int kInstanceVersion = 1;

// Malformed documents. Syntax errors carry a 1-based line and column;
// structural errors name the offending field as a dotted path.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) +
                             ": " + message
                       : message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Parses and validates. Throws ParseError for syntax, unknown or mistyped
// fields, and InvalidInstance for semantic problems.
ProblemInstance ReadInstance(std::string_view text);

// Canonical text: sorted keys, one line per leaf record, LF endings.
std::string WriteInstance(const ProblemInstance& inst);

// Fixed-format MPS. Names longer than 8 characters are cut and given a
// '.'-separated base-36 suffix to keep them unique.
std::string ExportMps(const IlpModel& model, const std::string& name = "WARDMIP");

enum class RosterFormat { kGrid, kCsv };

std::string RenderRoster(const ProblemInstance& inst, const Roster& roster,
                         RosterFormat format);

// Reads the CSV produced by RenderRoster. Rows are matched to nurses by id.
// Throws RosterError when the nurse set or the day count does not match and
// ParseError for malformed CSV or unknown shift labels.
Roster ReadRosterCsv(const ProblemInstance& inst, std::string_view text);

}  // namespace wardmip

#endif  // WARDMIP_IO_H_
