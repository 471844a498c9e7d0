#include <algorithm>
#include <map>

#include "wardmip/io.h"

namespace wardmip {

namespace {

constexpr char kGridOff[] = "–";  // en dash
constexpr char kCsvOff[] = "OFF";

// Display width of a UTF-8 string, counting code points.
size_t Width(const std::string& text) {
  return std::count_if(text.begin(), text.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0) != 0x80;
  });
}

std::string PadRight(const std::string& text, size_t width) {
  const size_t w = Width(text);
  return w >= width ? text : text + std::string(width - w, ' ');
}

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string Grid(const ProblemInstance& inst, const Roster& roster) {
  size_t id_width = Width("Nurse");
  for (const Nurse& nurse : inst.nurses) id_width = std::max(id_width, Width(nurse.id));
  size_t cell_width = Width(kGridOff);
  for (const std::string& label : inst.shift_set.labels) {
    cell_width = std::max(cell_width, Width(label));
  }
  cell_width = std::max(cell_width, std::to_string(roster.horizon()).size() + 1);

  std::string out = PadRight("Nurse", id_width);
  for (int d = 0; d < roster.horizon(); ++d) {
    out += ' ' + PadRight("D" + std::to_string(d + 1), cell_width);
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  out += '\n';
  for (int n = 0; n < roster.num_nurses(); ++n) {
    std::string line = PadRight(inst.nurses[n].id, id_width);
    for (int d = 0; d < roster.horizon(); ++d) {
      const std::string cell = roster.Works(n, d)
                                   ? inst.shift_set.labels[roster.at(n, d)]
                                   : std::string(kGridOff);
      line += ' ' + PadRight(cell, cell_width);
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

std::string Csv(const ProblemInstance& inst, const Roster& roster) {
  std::string out = "nurse";
  for (int d = 0; d < roster.horizon(); ++d) out += ",D" + std::to_string(d + 1);
  out += '\n';
  for (int n = 0; n < roster.num_nurses(); ++n) {
    out += CsvField(inst.nurses[n].id);
    for (int d = 0; d < roster.horizon(); ++d) {
      out += ',';
      out += CsvField(roster.Works(n, d) ? inst.shift_set.labels[roster.at(n, d)]
                                         : std::string(kCsvOff));
    }
    out += '\n';
  }
  return out;
}

// RFC 4180 records; accepts LF or CRLF line ends. Blank lines are skipped.
std::vector<std::vector<std::string>> ParseCsv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  int line = 1;
  const auto end_record = [&] {
    if (field_started || !record.empty()) {
      record.push_back(std::move(field));
      records.push_back(std::move(record));
    }
    record.clear();
    field.clear();
    field_started = false;
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty()) throw ParseError("stray quote in CSV field", line, 0);
        quoted = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (quoted) throw ParseError("unterminated quoted CSV field", line, 0);
  end_record();
  return records;
}

}  // namespace

std::string RenderRoster(const ProblemInstance& inst, const Roster& roster,
                         RosterFormat format) {
  if (roster.num_nurses() != inst.num_nurses() ||
      roster.horizon() != inst.horizon) {
    throw RosterError("roster shape does not match the instance");
  }
  return format == RosterFormat::kGrid ? Grid(inst, roster) : Csv(inst, roster);
}

Roster ReadRosterCsv(const ProblemInstance& inst, std::string_view text) {
  const auto records = ParseCsv(text);
  if (records.empty()) throw ParseError("empty roster CSV");
  const int days = static_cast<int>(records.front().size()) - 1;
  if (days != inst.horizon) {
    throw RosterError("roster has " + std::to_string(days) +
                      " day columns, instance horizon is " +
                      std::to_string(inst.horizon));
  }
  const int rows = static_cast<int>(records.size()) - 1;
  if (rows != inst.num_nurses()) {
    throw RosterError("roster has " + std::to_string(rows) +
                      " nurse rows, instance has " +
                      std::to_string(inst.num_nurses()));
  }
  std::map<std::string, int> nurse_index;
  for (int n = 0; n < inst.num_nurses(); ++n) nurse_index[inst.nurses[n].id] = n;
  std::map<std::string, int> shift_index;
  for (int s = 0; s < inst.num_shifts(); ++s) {
    shift_index[inst.shift_set.labels[s]] = s;
  }

  Roster roster(inst.num_nurses(), inst.horizon);
  std::vector<bool> seen(inst.num_nurses(), false);
  for (int r = 1; r <= rows; ++r) {
    const auto& record = records[r];
    if (static_cast<int>(record.size()) != days + 1) {
      throw ParseError("row has " + std::to_string(record.size()) +
                           " fields, expected " + std::to_string(days + 1),
                       r + 1, 0);
    }
    const auto nurse = nurse_index.find(record[0]);
    if (nurse == nurse_index.end()) {
      throw RosterError("unknown nurse '" + record[0] + "'");
    }
    if (seen[nurse->second]) {
      throw RosterError("nurse '" + record[0] + "' listed twice");
    }
    seen[nurse->second] = true;
    for (int d = 0; d < days; ++d) {
      const std::string& cell = record[d + 1];
      if (cell == kCsvOff || cell.empty() || cell == kGridOff) continue;
      const auto shift = shift_index.find(cell);
      if (shift == shift_index.end()) {
        throw ParseError("unknown shift label '" + cell + "'", r + 1, d + 2);
      }
      roster.set(nurse->second, d, shift->second);
    }
  }
  return roster;
}

}  // namespace wardmip
