#include <algorithm>
#include <initializer_list>
#include <set>
#include <tuple>
#include <sstream>

#include "json.hpp"
#include "wardmip/io.h"

namespace wardmip {

using Json = nlohmann::json;

namespace {

// ---------------------------------------------------------------- writing

bool IsLeaf(const Json& value) {
  if (value.is_array()) {
    return std::all_of(value.begin(), value.end(),
                       [](const Json& v) { return v.is_primitive(); });
  }
  if (value.is_object()) {
    return std::all_of(value.begin(), value.end(), [](const Json& v) {
      return v.is_primitive() || (v.is_array() && IsLeaf(v));
    });
  }
  return true;
}

// Leaf values go on one line as `{"a": 1, "b": [1, 2]}`.
void EmitInline(const Json& value, std::string& out) {
  if (value.is_object()) {
    out += '{';
    bool first = true;
    for (const auto& [key, item] : value.items()) {
      if (!first) out += ", ";
      first = false;
      out += Json(key).dump();
      out += ": ";
      EmitInline(item, out);
    }
    out += '}';
  } else if (value.is_array()) {
    out += '[';
    for (size_t i = 0; i < value.size(); ++i) {
      if (i > 0) out += ", ";
      EmitInline(value[i], out);
    }
    out += ']';
  } else {
    out += value.dump();
  }
}

void Emit(const Json& value, int indent, std::string& out) {
  if (IsLeaf(value) || value.empty()) {
    EmitInline(value, out);
    return;
  }
  const std::string pad(indent + 2, ' ');
  const bool object = value.is_object();
  out += object ? "{\n" : "[\n";
  bool first = true;
  for (const auto& [key, item] : value.items()) {
    if (!first) out += ",\n";
    first = false;
    out += pad;
    if (object) {
      out += Json(key).dump();
      out += ": ";
    }
    Emit(item, indent + 2, out);
  }
  out += '\n';
  out += std::string(indent, ' ');
  out += object ? '}' : ']';
}

Json WeightsToJson(const WeightTable& table) {
  Json values = Json::array();
  for (const auto& [key, value] : table.values) {
    values.push_back({{"day", key.day + 1},
                      {"nurse", key.nurse + 1},
                      {"shift", key.shift + 1},
                      {"value", value}});
  }
  Json constants = Json::array();
  for (const auto& [nurse, value] : table.per_nurse_constant) {
    constants.push_back({{"nurse", nurse + 1}, {"value", value}});
  }
  return {{"constants", constants},
          {"default", table.default_value},
          {"values", values}};
}

Json PolicyToJson(const PolicyConfig& policy) {
  Json out = {{"cascade", ToString(policy.cascade_mode)},
              {"coverage", ToString(policy.coverage_mode)},
              {"forbid_night_morning", policy.forbid_night_morning},
              {"forbid_pm_am", policy.forbid_pm_am_hard},
              {"max_work_days", policy.max_work_days}};
  Json windows = Json::array();
  for (const WindowRule& rule : policy.window_rules) {
    windows.push_back({{"length", rule.length}, {"max_worked", rule.max_worked}});
  }
  out["window_rules"] = windows;
  if (policy.night_block) {
    out["night_block"] = {{"nights", policy.night_block->nights},
                          {"off_days", policy.night_block->off_days}};
  }
  if (policy.max_night_shifts) out["max_night_shifts"] = *policy.max_night_shifts;
  if (policy.max_consecutive_nights) {
    out["max_consecutive_nights"] = *policy.max_consecutive_nights;
  }
  if (policy.soft_pm_am_weight) out["soft_pm_am_weight"] = *policy.soft_pm_am_weight;
  if (policy.soft_night_run) {
    out["soft_night_run"] = {{"length", policy.soft_night_run->length},
                             {"weight", policy.soft_night_run->weight}};
  }
  return out;
}

Json ToJson(const ProblemInstance& inst) {
  Json nurses = Json::array();
  for (const Nurse& nurse : inst.nurses) {
    Json leave = Json::array();
    for (int d : nurse.leave_days) leave.push_back(d + 1);
    Json item = {{"id", nurse.id},
                 {"leave_days", leave},
                 {"rank", nurse.rank + 1},
                 {"ward", nurse.ward + 1}};
    if (nurse.required.form == RequiredShifts::Form::kTotal) {
      item["required_total"] = nurse.required.total;
    } else if (nurse.required.form == RequiredShifts::Form::kPerShift) {
      item["required_per_shift"] = nurse.required.per_shift;
    }
    nurses.push_back(item);
  }

  Json demand = Json::array();
  const DemandTable& table = inst.demand;
  for (int w = 0; w < table.wards(); ++w) {
    for (int r = 0; r < table.ranks(); ++r) {
      for (int d = 0; d < table.days(); ++d) {
        Json counts = Json::array();
        for (int s = 0; s < table.shifts(); ++s) {
          counts.push_back(table.at(w, r, s, d));
        }
        demand.push_back(
            {{"day", d + 1}, {"rank", r + 1}, {"shifts", counts}, {"ward", w + 1}});
      }
    }
  }

  const ShiftSet& shifts = inst.shift_set;
  return {{"format", kInstanceFormat},
          {"version", kInstanceVersion},
          {"name", inst.name},
          {"horizon", inst.horizon},
          {"ranks", inst.ranks},
          {"wards", inst.wards},
          {"objective", ToString(inst.objective_mode)},
          {"shifts",
           {{"labels", shifts.labels},
            {"morning", shifts.morning_index + 1},
            {"afternoon", shifts.afternoon_index + 1},
            {"night", shifts.night_index + 1}}},
          {"nurses", nurses},
          {"demand", demand},
          {"preference", WeightsToJson(inst.preference)},
          {"cost", WeightsToJson(inst.cost)},
          {"policy", PolicyToJson(inst.policy)}};
}

// ---------------------------------------------------------------- reading

std::pair<int, int> LineColumn(std::string_view text, size_t byte) {
  byte = std::min(byte, text.size());
  int line = 1;
  int column = 1;
  for (size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// A JSON value together with its dotted path, for error messages.
class Node {
 public:
  Node(const Json& value, std::string path)
      : value_(value), path_(std::move(path)) {}

  const std::string& path() const { return path_; }

  void RequireObject(std::initializer_list<const char*> allowed) const {
    if (!value_.is_object()) Fail("must be an object");
    for (const auto& [key, item] : value_.items()) {
      const bool known = std::any_of(allowed.begin(), allowed.end(),
                                     [&](const char* a) { return key == a; });
      if (!known) {
        throw ParseError("unknown field '" + Child(key) + "'");
      }
    }
  }

  bool Has(const char* key) const { return value_.contains(key); }

  Node Get(const char* key) const {
    if (!value_.contains(key)) {
      throw ParseError("missing field '" + Child(key) + "'");
    }
    return Node(value_.at(key), Child(key));
  }

  std::vector<Node> Elements() const {
    if (!value_.is_array()) Fail("must be an array");
    std::vector<Node> out;
    for (size_t i = 0; i < value_.size(); ++i) {
      out.emplace_back(value_[i], path_ + "[" + std::to_string(i) + "]");
    }
    return out;
  }

  int Int() const {
    if (!value_.is_number_integer()) Fail("must be an integer");
    const auto v = value_.get<int64_t>();
    if (v < -1000000000 || v > 1000000000) Fail("is out of range");
    return static_cast<int>(v);
  }

  // 1-based on disk, 0-based in memory.
  int Index() const { return Int() - 1; }

  double Number() const {
    if (!value_.is_number()) Fail("must be a number");
    return value_.get<double>();
  }

  bool Bool() const {
    if (!value_.is_boolean()) Fail("must be true or false");
    return value_.get<bool>();
  }

  std::string String() const {
    if (!value_.is_string()) Fail("must be a string");
    return value_.get<std::string>();
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ParseError("field '" + path_ + "' " + message);
  }

 private:
  std::string Child(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const Json& value_;
  std::string path_;
};

WeightTable ReadWeights(const Node& node) {
  node.RequireObject({"constants", "default", "values"});
  WeightTable table;
  table.default_value = node.Get("default").Number();
  for (const Node& item : node.Get("values").Elements()) {
    item.RequireObject({"day", "nurse", "shift", "value"});
    const CellKey key{item.Get("nurse").Index(), item.Get("shift").Index(),
                      item.Get("day").Index()};
    if (!table.values.emplace(key, item.Get("value").Number()).second) {
      item.Fail("repeats a cell");
    }
  }
  for (const Node& item : node.Get("constants").Elements()) {
    item.RequireObject({"nurse", "value"});
    const int nurse = item.Get("nurse").Index();
    if (!table.per_nurse_constant.emplace(nurse, item.Get("value").Number())
             .second) {
      item.Fail("repeats a nurse");
    }
  }
  return table;
}

PolicyConfig ReadPolicy(const Node& node) {
  node.RequireObject({"cascade", "coverage", "forbid_night_morning",
                      "forbid_pm_am", "max_consecutive_nights",
                      "max_night_shifts", "max_work_days", "night_block",
                      "soft_night_run", "soft_pm_am_weight", "window_rules"});
  PolicyConfig policy;
  policy.max_work_days = node.Get("max_work_days").Int();
  if (node.Has("window_rules")) {
    for (const Node& item : node.Get("window_rules").Elements()) {
      item.RequireObject({"length", "max_worked"});
      policy.window_rules.push_back(
          {item.Get("length").Int(), item.Get("max_worked").Int()});
    }
  }
  if (node.Has("night_block")) {
    const Node block = node.Get("night_block");
    block.RequireObject({"nights", "off_days"});
    policy.night_block =
        NightBlock{block.Get("nights").Int(), block.Get("off_days").Int()};
  }
  if (node.Has("max_night_shifts")) {
    policy.max_night_shifts = node.Get("max_night_shifts").Int();
  }
  if (node.Has("max_consecutive_nights")) {
    policy.max_consecutive_nights = node.Get("max_consecutive_nights").Int();
  }
  if (node.Has("forbid_night_morning")) {
    policy.forbid_night_morning = node.Get("forbid_night_morning").Bool();
  }
  if (node.Has("forbid_pm_am")) {
    policy.forbid_pm_am_hard = node.Get("forbid_pm_am").Bool();
  }
  if (node.Has("soft_pm_am_weight")) {
    policy.soft_pm_am_weight = node.Get("soft_pm_am_weight").Number();
  }
  if (node.Has("soft_night_run")) {
    const Node run = node.Get("soft_night_run");
    run.RequireObject({"length", "weight"});
    policy.soft_night_run =
        NightRunPenalty{run.Get("length").Int(), run.Get("weight").Number()};
  }
  if (node.Has("coverage")) {
    const Node mode = node.Get("coverage");
    const auto parsed = ParseCoverageMode(mode.String());
    if (!parsed) mode.Fail("must be exact or at_least");
    policy.coverage_mode = *parsed;
  }
  if (node.Has("cascade")) {
    const Node mode = node.Get("cascade");
    const auto parsed = ParseCascadeMode(mode.String());
    if (!parsed) mode.Fail("must be off, adjacent or cumulative");
    policy.cascade_mode = *parsed;
  }
  return policy;
}

ProblemInstance FromJson(const Node& root) {
  root.RequireObject({"cost", "demand", "format", "horizon", "name", "nurses",
                      "objective", "policy", "preference", "ranks", "shifts",
                      "version", "wards"});
  if (root.Get("format").String() != kInstanceFormat) {
    root.Get("format").Fail(std::string("must be \"") + kInstanceFormat + "\"");
  }
  if (root.Get("version").Int() != kInstanceVersion) {
    root.Get("version").Fail("is not a supported version");
  }

  ProblemInstance inst;
  inst.name = root.Has("name") ? root.Get("name").String() : "";
  inst.horizon = root.Get("horizon").Int();
  inst.ranks = root.Has("ranks") ? root.Get("ranks").Int() : 1;
  inst.wards = root.Has("wards") ? root.Get("wards").Int() : 1;
  {
    const Node mode = root.Get("objective");
    const auto parsed = ParseObjectiveMode(mode.String());
    if (!parsed) mode.Fail("is not a known objective");
    inst.objective_mode = *parsed;
  }

  if (root.Has("shifts")) {
    const Node shifts = root.Get("shifts");
    shifts.RequireObject({"afternoon", "labels", "morning", "night"});
    inst.shift_set.labels.clear();
    for (const Node& label : shifts.Get("labels").Elements()) {
      inst.shift_set.labels.push_back(label.String());
    }
    inst.shift_set.morning_index = shifts.Get("morning").Index();
    inst.shift_set.afternoon_index = shifts.Get("afternoon").Index();
    inst.shift_set.night_index = shifts.Get("night").Index();
  } else {
    inst.shift_set = ShiftSet::Standard();
  }

  for (const Node& item : root.Get("nurses").Elements()) {
    item.RequireObject({"id", "leave_days", "rank", "required_per_shift",
                        "required_total", "ward"});
    Nurse nurse;
    nurse.id = item.Get("id").String();
    nurse.rank = item.Has("rank") ? item.Get("rank").Index() : 0;
    nurse.ward = item.Has("ward") ? item.Get("ward").Index() : 0;
    if (item.Has("leave_days")) {
      for (const Node& day : item.Get("leave_days").Elements()) {
        if (!nurse.leave_days.insert(day.Index()).second) {
          day.Fail("repeats a leave day");
        }
      }
    }
    if (item.Has("required_total") && item.Has("required_per_shift")) {
      item.Fail("sets both required_total and required_per_shift");
    }
    if (item.Has("required_total")) {
      nurse.required = RequiredShifts::Total(item.Get("required_total").Int());
    } else if (item.Has("required_per_shift")) {
      std::vector<int> counts;
      for (const Node& count : item.Get("required_per_shift").Elements()) {
        counts.push_back(count.Int());
      }
      nurse.required = RequiredShifts::PerShift(std::move(counts));
    }
    inst.nurses.push_back(std::move(nurse));
  }

  // Demand is only read against sane dimensions; otherwise validation
  // reports the dimension itself.
  const bool sized = inst.horizon >= 1 && inst.ranks >= 1 && inst.wards >= 1 &&
                     inst.num_shifts() >= 1;
  if (sized) {
    inst.demand = DemandTable(inst.wards, inst.ranks, inst.num_shifts(),
                              inst.horizon);
  }
  std::set<std::tuple<int, int, int>> seen;
  const std::vector<Node> demand = root.Get("demand").Elements();
  for (const Node& item : sized ? demand : std::vector<Node>{}) {
    item.RequireObject({"day", "rank", "shifts", "ward"});
    const int ward = item.Get("ward").Index();
    const int rank = item.Get("rank").Index();
    const int day = item.Get("day").Index();
    if (ward < 0 || ward >= inst.demand.wards()) item.Get("ward").Fail("is out of range");
    if (rank < 0 || rank >= inst.demand.ranks()) item.Get("rank").Fail("is out of range");
    if (day < 0 || day >= inst.demand.days()) item.Get("day").Fail("is out of range");
    if (!seen.emplace(ward, rank, day).second) item.Fail("repeats a demand cell");
    const std::vector<Node> counts = item.Get("shifts").Elements();
    if (static_cast<int>(counts.size()) != inst.num_shifts()) {
      item.Get("shifts").Fail("must list one count per shift");
    }
    for (int s = 0; s < inst.num_shifts(); ++s) {
      inst.demand.set(ward, rank, s, day, counts[s].Int());
    }
  }

  if (root.Has("preference")) inst.preference = ReadWeights(root.Get("preference"));
  if (root.Has("cost")) inst.cost = ReadWeights(root.Get("cost"));
  inst.policy = ReadPolicy(root.Get("policy"));
  return inst;
}

}  // namespace

ProblemInstance ReadInstance(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = LineColumn(text, e.byte > 0 ? e.byte - 1 : 0);
    std::string message = e.what();
    // Drop the library's "[json.exception.parse_error.101] parse error at
    // line 1, column 2: " prefix; the position is reported separately.
    if (const size_t colon = message.find(": "); colon != std::string::npos) {
      message = message.substr(colon + 2);
    }
    throw ParseError(message, line, column);
  }
  ProblemInstance inst = FromJson(Node(root, ""));
  RequireValid(inst);
  return inst;
}

std::string WriteInstance(const ProblemInstance& inst) {
  std::string out;
  Emit(ToJson(inst), 0, out);
  out += '\n';
  return out;
}

}  // namespace wardmip
