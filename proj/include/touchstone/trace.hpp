#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "touchstone/vh.hpp"

namespace touchstone::trace {

enum class SourceTag { aitw, generated, synthetic };

const char* source_tag_name(SourceTag tag);
SourceTag source_tag_from(std::string_view name);  // raises MalformedAction

struct TaskRecord {
  std::string task_id;
  std::string instruction;
  SourceTag source_tag = SourceTag::synthetic;

  bool operator==(const TaskRecord&) const = default;
};

enum class ActionKind {
  click,
  swipe,
  type,
  press_home,
  press_back,
  status_complete,
  status_impossible,
};

const char* action_kind_name(ActionKind kind);

// Flat action record mirroring the on-disk JSON schema; fields are
// meaningful only for the kinds that define them.
struct Action {
  ActionKind kind = ActionKind::status_complete;
  // click
  double x = 0.0;
  double y = 0.0;
  std::optional<std::string> xpath;
  // swipe
  double touch_x = 0.0;
  double touch_y = 0.0;
  double lift_x = 0.0;
  double lift_y = 0.0;
  long duration_ms = 0;
  // type
  std::string text;

  bool operator==(const Action&) const = default;

  static Action make_click(double x, double y,
                           std::optional<std::string> xpath = std::nullopt);
  static Action make_swipe(double tx, double ty, double lx, double ly,
                           long duration_ms);
  static Action make_type(std::string text);
  static Action make(ActionKind kind);  // parameterless kinds
};

std::string action_to_json(const Action& action);
Action action_from_json(const std::string& json_text);  // raises MalformedAction

struct Observation {
  int step_index = 0;
  std::filesystem::path screenshot_ref;
  std::string vh_xml;  // raw dump, persisted verbatim
  vh::UiTree ui_tree;
  std::string activity;
  Action action;
  std::optional<std::set<std::string>> packages;
};

struct Trace {
  TaskRecord task;
  std::vector<Observation> observations;
  std::optional<std::set<std::string>> final_packages;
};

// Directory layout:
//   <trace>/task.json
//   <trace>/steps/0000/{screenshot.png, vh.xml, activity.txt, action.json[, packages.txt]}
// raises MissingFile, MalformedAction, GapInSteps
Trace load_trace(const std::filesystem::path& dir);

// pre: dir absent or an empty directory. raises IoFailure
void save_trace(const Trace& trace, const std::filesystem::path& dir);

// Field-for-field equality with screenshots compared by content hash.
bool traces_equal(const Trace& a, const Trace& b);

std::vector<Action> action_sequence(const Trace& trace);

}  // namespace touchstone::trace
