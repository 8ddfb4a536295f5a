#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "touchstone/trace.hpp"
#include "touchstone/vh.hpp"

namespace touchstone::agentenv {

struct ScreenDef {
  std::string id;
  std::string activity;
  std::string vh_template;  // embedded UIAutomator XML
  vh::UiTree template_tree;
  std::vector<unsigned char> screenshot_png;
};

// Trigger predicate over an agent action. Optional package conditions
// make transitions state-dependent (e.g. an app icon that only works
// once the app is installed).
struct Trigger {
  trace::ActionKind kind = trace::ActionKind::click;
  std::optional<std::string> xpath;        // click: resolved target
  std::optional<std::string> direction;    // swipe: up/down/left/right
  std::optional<std::string> text_equals;  // type: exact text gate
  std::optional<std::string> requires_package;
  std::optional<std::string> requires_package_absent;
};

struct Effect {
  enum class Kind { install, uninstall, copy_focused_text };
  Kind kind = Kind::install;
  std::string package;       // install / uninstall
  std::string target_xpath;  // copy_focused_text: node on the target screen
};

struct Transition {
  std::string from;
  std::string to;
  Trigger trigger;
  std::vector<Effect> effects;
};

struct DeviceModel {
  std::string app_id;
  std::string initial_screen;
  std::set<std::string> initial_packages;
  std::map<std::string, ScreenDef> screens;
  std::vector<Transition> transitions;
};

// raises PackSyntax, DanglingScreen, AmbiguousTransition
DeviceModel load_app_pack(const std::filesystem::path& path);
DeviceModel parse_app_pack(const std::string& json_text);

struct DeviceState {
  std::string current_screen;
  // typed-text overrides, scoped per screen: screen id -> xpath -> text
  std::map<std::string, std::map<std::string, std::string>> text_overrides;
  std::set<std::string> packages;
  std::optional<std::string> focused_xpath;
};

enum class SessionStatus { running, complete, impossible };

// One agent session over a device model: answers UI state queries,
// applies posted actions to the state machine, and records one
// observation per action.
class Session {
 public:
  Session(const DeviceModel& model, trace::TaskRecord task,
          std::set<std::string> extra_initial_packages = {});

  SessionStatus status() const { return status_; }
  const DeviceState& device_state() const { return state_; }

  // UI state queries; side-effect free. raises SessionTerminated
  const std::string& task_instruction() const;
  std::string view_hierarchy() const;
  const std::vector<unsigned char>& screenshot() const;
  std::string screenshot_base64() const;

  // Action space. raises SessionTerminated, CoordinatesOutOfRange
  void post_click(double x, double y);
  void post_swipe(double touch_x, double touch_y, double lift_x, double lift_y,
                  long duration_ms);
  void post_type(const std::string& text);
  void post_press_home();
  void post_press_back();
  void post_task_complete();
  void post_task_impossible();

  void apply(const trace::Action& action);  // dispatch by kind

  std::size_t steps_recorded() const { return steps_.size(); }

  // Writes the recorded trace to out_dir (trace_model layout) and
  // returns it. pre: session terminated. raises IoFailure
  trace::Trace record(const std::filesystem::path& out_dir) const;

 private:
  struct Step {
    std::string screen_id;
    std::string vh_xml;
    std::string activity;
    trace::Action action;
    std::set<std::string> packages;
  };

  const ScreenDef& current_screen() const;
  std::string render_vh() const;
  void require_running() const;
  void record_step(trace::Action action);
  void apply_transition(const trace::Action& action);

  const DeviceModel& model_;
  trace::TaskRecord task_;
  DeviceState state_;
  SessionStatus status_ = SessionStatus::running;
  std::vector<Step> steps_;
};

}  // namespace touchstone::agentenv
