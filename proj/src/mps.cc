#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "wardmip/io.h"

namespace wardmip {

namespace {

constexpr size_t kNameWidth = 8;
constexpr char kObjectiveRow[] = "OBJ";

std::string Base36(int value) {
  static constexpr char kDigits[] = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ";
  std::string out;
  do {
    out.insert(out.begin(), kDigits[value % 36]);
    value /= 36;
  } while (value > 0);
  return out;
}

// Hands out unique names of at most eight characters. Names that fit and are
// unused are kept; others become a prefix plus '.' and a base-36 counter.
class NameTable {
 public:
  explicit NameTable(std::set<std::string> reserved) : used_(std::move(reserved)) {}

  std::string Assign(const std::string& wanted) {
    if (wanted.size() <= kNameWidth && used_.insert(wanted).second) {
      return wanted;
    }
    while (true) {
      const std::string suffix = "." + Base36(counter_++);
      const std::string name =
          wanted.substr(0, kNameWidth - suffix.size()) + suffix;
      if (used_.insert(name).second) return name;
    }
  }

 private:
  std::set<std::string> used_;
  int counter_ = 0;
};

// Shortest round-trip text that fits the 12-character numeric field, losing
// precision only when it must.
std::string Number(double value) {
  if (value == 0.0) value = 0.0;  // no "-0"
  char buffer[32];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  std::string text(buffer, end);
  for (int precision = 11; text.size() > 12 && precision > 0; --precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    text = buffer;
  }
  return text;
}

std::string Pad(const std::string& text, size_t width) {
  return text.size() >= width ? text : text + std::string(width - text.size(), ' ');
}

// Fixed fields: 2-3 code, 5-12 name, 15-22 name, 25-36 number.
std::string Line(const std::string& code, const std::string& name1,
                 const std::string& name2, const std::string& number) {
  std::string line = " " + Pad(code, 2) + " " + Pad(name1, kNameWidth);
  if (!name2.empty() || !number.empty()) {
    line += "  " + Pad(name2, kNameWidth);
    if (!number.empty()) line += "  " + std::string(12 - number.size(), ' ') + number;
  }
  while (!line.empty() && line.back() == ' ') line.pop_back();
  return line + "\n";
}

char SenseCode(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual:
      return 'L';
    case Sense::kEqual:
      return 'E';
    case Sense::kGreaterEqual:
      return 'G';
  }
  return 'E';
}

}  // namespace

std::string ExportMps(const IlpModel& model, const std::string& name) {
  NameTable names({kObjectiveRow});
  std::vector<std::string> row_names;
  row_names.reserve(model.rows.size());
  for (const ConstraintRow& row : model.rows) {
    row_names.push_back(names.Assign(row.tag.Name()));
  }
  std::vector<std::string> column_names;
  column_names.reserve(model.num_columns);
  for (int j = 0; j < model.num_columns; ++j) {
    column_names.push_back(names.Assign(model.columns[j].Name()));
  }

  // Column-major view of the rows.
  std::vector<std::vector<std::pair<int, double>>> entries(model.num_columns);
  for (size_t i = 0; i < model.rows.size(); ++i) {
    for (const Term& term : model.rows[i].terms) {
      entries[term.column].emplace_back(static_cast<int>(i), term.coef);
    }
  }

  std::string out;
  out += "NAME          " + name + "\n";
  out += "OBJSENSE\n";
  out += model.maximize() ? "    MAX\n" : "    MIN\n";
  out += "ROWS\n";
  out += Line("N", kObjectiveRow, "", "");
  for (size_t i = 0; i < model.rows.size(); ++i) {
    out += Line(std::string(1, SenseCode(model.rows[i].sense)), row_names[i], "", "");
  }

  out += "COLUMNS\n";
  bool in_integer_block = false;
  int marker = 0;
  const auto toggle = [&](bool integer) {
    if (integer == in_integer_block) return;
    const std::string marker_name = "MARKER" + std::to_string(marker++);
    out += "    " + Pad(marker_name, kNameWidth) + "  'MARKER'                 " +
           (integer ? "'INTORG'" : "'INTEND'") + "\n";
    in_integer_block = integer;
  };
  for (int j = 0; j < model.num_columns; ++j) {
    toggle(model.integer[j]);
    const double cost = model.objective[j];
    // Every column is listed at least once, even if it appears nowhere.
    if (cost != 0.0 || entries[j].empty()) {
      out += Line("", column_names[j], kObjectiveRow, Number(cost));
    }
    for (const auto& [row, coef] : entries[j]) {
      out += Line("", column_names[j], row_names[row], Number(coef));
    }
  }
  toggle(false);

  out += "RHS\n";
  if (model.objective_constant != 0.0) {
    out += Line("", "RHS", kObjectiveRow, Number(-model.objective_constant));
  }
  for (size_t i = 0; i < model.rows.size(); ++i) {
    if (model.rows[i].rhs != 0.0) {
      out += Line("", "RHS", row_names[i], Number(model.rows[i].rhs));
    }
  }

  out += "BOUNDS\n";
  for (int j = 0; j < model.num_columns; ++j) {
    if (model.lower[j] != 0.0) {
      out += Line("LO", "BND", column_names[j], Number(model.lower[j]));
    }
    if (std::isfinite(model.upper[j])) {
      out += Line("UP", "BND", column_names[j], Number(model.upper[j]));
    } else {
      out += Line("PL", "BND", column_names[j], "");
    }
  }
  out += "ENDATA\n";
  return out;
}

}  // namespace wardmip
