#include "touchstone/trace.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "touchstone/error.hpp"
#include "touchstone/util.hpp"

namespace touchstone::trace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

const char* source_tag_name(SourceTag tag) {
  switch (tag) {
    case SourceTag::aitw: return "aitw";
    case SourceTag::generated: return "generated";
    case SourceTag::synthetic: return "synthetic";
  }
  return "synthetic";
}

SourceTag source_tag_from(std::string_view name) {
  if (name == "aitw") return SourceTag::aitw;
  if (name == "generated") return SourceTag::generated;
  if (name == "synthetic") return SourceTag::synthetic;
  fail(Errc::malformed_action, "unknown source_tag '" + std::string(name) + "'");
}

const char* action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::click: return "click";
    case ActionKind::swipe: return "swipe";
    case ActionKind::type: return "type";
    case ActionKind::press_home: return "press_home";
    case ActionKind::press_back: return "press_back";
    case ActionKind::status_complete: return "status_complete";
    case ActionKind::status_impossible: return "status_impossible";
  }
  return "status_complete";
}

namespace {

std::optional<ActionKind> action_kind_from(std::string_view name) {
  for (ActionKind kind :
       {ActionKind::click, ActionKind::swipe, ActionKind::type,
        ActionKind::press_home, ActionKind::press_back,
        ActionKind::status_complete, ActionKind::status_impossible}) {
    if (name == action_kind_name(kind)) return kind;
  }
  return std::nullopt;
}

void check_unit(double v, const char* field) {
  if (!(v >= 0.0 && v <= 1.0)) {
    fail(Errc::malformed_action,
         std::string(field) + " out of [0,1]: " + std::to_string(v));
  }
}

double require_number(const ordered_json& obj, const char* field) {
  if (!obj.contains(field) || !obj[field].is_number()) {
    fail(Errc::malformed_action, std::string("missing numeric field '") + field + "'");
  }
  return obj[field].get<double>();
}

}  // namespace

Action Action::make_click(double x, double y, std::optional<std::string> xpath) {
  Action a;
  a.kind = ActionKind::click;
  a.x = x;
  a.y = y;
  a.xpath = std::move(xpath);
  return a;
}

Action Action::make_swipe(double tx, double ty, double lx, double ly,
                          long duration_ms) {
  Action a;
  a.kind = ActionKind::swipe;
  a.touch_x = tx;
  a.touch_y = ty;
  a.lift_x = lx;
  a.lift_y = ly;
  a.duration_ms = duration_ms;
  return a;
}

Action Action::make_type(std::string text) {
  Action a;
  a.kind = ActionKind::type;
  a.text = std::move(text);
  return a;
}

Action Action::make(ActionKind kind) {
  Action a;
  a.kind = kind;
  return a;
}

std::string action_to_json(const Action& action) {
  ordered_json obj;
  obj["kind"] = action_kind_name(action.kind);
  switch (action.kind) {
    case ActionKind::click:
      obj["x"] = action.x;
      obj["y"] = action.y;
      if (action.xpath) obj["xpath"] = *action.xpath;
      break;
    case ActionKind::swipe:
      obj["touch_x"] = action.touch_x;
      obj["touch_y"] = action.touch_y;
      obj["lift_x"] = action.lift_x;
      obj["lift_y"] = action.lift_y;
      obj["duration_ms"] = action.duration_ms;
      break;
    case ActionKind::type:
      obj["text"] = action.text;
      break;
    default:
      break;
  }
  return obj.dump(2) + "\n";
}

Action action_from_json(const std::string& json_text) {
  ordered_json obj = ordered_json::parse(json_text, nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    fail(Errc::malformed_action, "action record is not a JSON object");
  }
  if (!obj.contains("kind") || !obj["kind"].is_string()) {
    fail(Errc::malformed_action, "action record lacks string 'kind'");
  }
  auto kind = action_kind_from(obj["kind"].get<std::string>());
  if (!kind) {
    fail(Errc::malformed_action,
         "unknown action kind '" + obj["kind"].get<std::string>() + "'");
  }
  Action action;
  action.kind = *kind;
  switch (*kind) {
    case ActionKind::click: {
      action.x = require_number(obj, "x");
      action.y = require_number(obj, "y");
      check_unit(action.x, "x");
      check_unit(action.y, "y");
      if (obj.contains("xpath")) {
        if (!obj["xpath"].is_string()) {
          fail(Errc::malformed_action, "click xpath must be a string");
        }
        action.xpath = obj["xpath"].get<std::string>();
      }
      break;
    }
    case ActionKind::swipe: {
      action.touch_x = require_number(obj, "touch_x");
      action.touch_y = require_number(obj, "touch_y");
      action.lift_x = require_number(obj, "lift_x");
      action.lift_y = require_number(obj, "lift_y");
      check_unit(action.touch_x, "touch_x");
      check_unit(action.touch_y, "touch_y");
      check_unit(action.lift_x, "lift_x");
      check_unit(action.lift_y, "lift_y");
      double duration = require_number(obj, "duration_ms");
      if (duration <= 0 || duration != static_cast<long>(duration)) {
        fail(Errc::malformed_action, "duration_ms must be a positive integer");
      }
      action.duration_ms = static_cast<long>(duration);
      break;
    }
    case ActionKind::type: {
      if (!obj.contains("text") || !obj["text"].is_string()) {
        fail(Errc::malformed_action, "type action lacks string 'text'");
      }
      action.text = obj["text"].get<std::string>();
      break;
    }
    default:
      break;
  }
  return action;
}

namespace {

std::string step_dir_name(int index) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "%04d", index);
  return buf;
}

std::string read_single_line(const fs::path& path) {
  std::string content = util::read_file(path);
  std::size_t end = content.find('\n');
  std::string line = end == std::string::npos ? content : content.substr(0, end);
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) {
    line.pop_back();
  }
  return line;
}

std::set<std::string> read_packages(const fs::path& path) {
  std::set<std::string> packages;
  std::string content = util::read_file(path);
  std::size_t start = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    std::string line = content.substr(
        start, end == std::string::npos ? std::string::npos : end - start);
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) packages.insert(line);
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return packages;
}

void write_packages(const fs::path& path, const std::set<std::string>& packages) {
  std::string content;
  for (const std::string& pkg : packages) {
    content += pkg;
    content += '\n';
  }
  util::write_file(path, content);
}

TaskRecord load_task_record(const fs::path& path) {
  if (!fs::exists(path)) fail(Errc::missing_file, path.string());
  ordered_json obj = ordered_json::parse(util::read_file(path), nullptr, false);
  if (obj.is_discarded() || !obj.is_object()) {
    fail(Errc::malformed_action, "task.json is not a JSON object");
  }
  for (const char* field : {"task_id", "instruction", "source_tag"}) {
    if (!obj.contains(field) || !obj[field].is_string()) {
      fail(Errc::malformed_action, std::string("task.json lacks string '") + field + "'");
    }
  }
  TaskRecord task;
  task.task_id = obj["task_id"].get<std::string>();
  task.instruction = obj["instruction"].get<std::string>();
  task.source_tag = source_tag_from(obj["source_tag"].get<std::string>());
  if (task.task_id.empty()) fail(Errc::malformed_action, "task_id empty");
  if (task.instruction.empty()) fail(Errc::malformed_action, "instruction empty");
  return task;
}

}  // namespace

Trace load_trace(const fs::path& dir) {
  Trace trace;
  trace.task = load_task_record(dir / "task.json");

  fs::path steps_dir = dir / "steps";
  if (!fs::is_directory(steps_dir)) fail(Errc::missing_file, steps_dir.string());

  std::vector<int> indices;
  for (const auto& entry : fs::directory_iterator(steps_dir)) {
    std::string name = entry.path().filename().string();
    if (name.size() == 4 &&
        std::all_of(name.begin(), name.end(),
                    [](char c) { return c >= '0' && c <= '9'; })) {
      indices.push_back(std::stoi(name));
    }
  }
  std::sort(indices.begin(), indices.end());
  if (indices.empty()) fail(Errc::missing_file, "no step directories in " + steps_dir.string());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] != static_cast<int>(i)) {
      fail(Errc::gap_in_steps,
           "expected step " + step_dir_name(static_cast<int>(i)) + ", found " +
               step_dir_name(indices[i]));
    }
  }

  for (int index : indices) {
    fs::path step = steps_dir / step_dir_name(index);
    Observation obs;
    obs.step_index = index;
    obs.screenshot_ref = step / "screenshot.png";
    for (const char* required : {"screenshot.png", "vh.xml", "activity.txt", "action.json"}) {
      if (!fs::exists(step / required)) fail(Errc::missing_file, (step / required).string());
    }
    obs.vh_xml = util::read_file(step / "vh.xml");
    obs.ui_tree = vh::parse_vh(obs.vh_xml);
    obs.activity = read_single_line(step / "activity.txt");
    if (obs.activity.empty()) {
      fail(Errc::malformed_action, "empty activity in " + step.string());
    }
    obs.action = action_from_json(util::read_file(step / "action.json"));
    if (fs::exists(step / "packages.txt")) {
      obs.packages = read_packages(step / "packages.txt");
    }
    trace.observations.push_back(std::move(obs));
  }

  if (trace.observations.back().packages) {
    trace.final_packages = trace.observations.back().packages;
  }
  return trace;
}

void save_trace(const Trace& trace, const fs::path& dir) {
  if (fs::exists(dir)) {
    if (!fs::is_directory(dir) || !fs::is_empty(dir)) {
      fail(Errc::io_failure, dir.string() + " exists and is not an empty directory");
    }
  }
  if (trace.observations.empty()) {
    fail(Errc::io_failure, "refusing to save a trace with no observations");
  }
  std::error_code ec;
  fs::create_directories(dir / "steps", ec);
  if (ec) fail(Errc::io_failure, "cannot create " + dir.string());

  ordered_json task;
  task["task_id"] = trace.task.task_id;
  task["instruction"] = trace.task.instruction;
  task["source_tag"] = source_tag_name(trace.task.source_tag);
  util::write_file(dir / "task.json", task.dump(2) + "\n");

  for (const Observation& obs : trace.observations) {
    fs::path step = dir / "steps" / step_dir_name(obs.step_index);
    fs::create_directories(step, ec);
    if (ec) fail(Errc::io_failure, "cannot create " + step.string());
    fs::copy_file(obs.screenshot_ref, step / "screenshot.png",
                  fs::copy_options::overwrite_existing, ec);
    if (ec) {
      fail(Errc::io_failure, "cannot copy screenshot " + obs.screenshot_ref.string());
    }
    util::write_file(step / "vh.xml", obs.vh_xml);
    util::write_file(step / "activity.txt", obs.activity + "\n");
    util::write_file(step / "action.json", action_to_json(obs.action));
    if (obs.packages) write_packages(step / "packages.txt", *obs.packages);
  }
}

bool traces_equal(const Trace& a, const Trace& b) {
  if (a.task != b.task) return false;
  if (a.final_packages != b.final_packages) return false;
  if (a.observations.size() != b.observations.size()) return false;
  for (std::size_t i = 0; i < a.observations.size(); ++i) {
    const Observation& oa = a.observations[i];
    const Observation& ob = b.observations[i];
    if (oa.step_index != ob.step_index) return false;
    if (oa.vh_xml != ob.vh_xml) return false;
    if (oa.activity != ob.activity) return false;
    if (oa.action != ob.action) return false;
    if (oa.packages != ob.packages) return false;
    if (util::file_hash(oa.screenshot_ref) != util::file_hash(ob.screenshot_ref)) {
      return false;
    }
  }
  return true;
}

std::vector<Action> action_sequence(const Trace& trace) {
  std::vector<Action> actions;
  actions.reserve(trace.observations.size());
  for (const Observation& obs : trace.observations) {
    actions.push_back(obs.action);
  }
  return actions;
}

}  // namespace touchstone::trace
