#include "touchstone/agentenv.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "touchstone/error.hpp"
#include "touchstone/pngio.hpp"
#include "touchstone/util.hpp"

namespace touchstone::agentenv {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string require_string(const json& obj, const char* field,
                           const std::string& where) {
  if (!obj.contains(field) || !obj[field].is_string()) {
    fail(Errc::pack_syntax, where + " lacks string '" + field + "'");
  }
  return obj[field].get<std::string>();
}

Trigger parse_trigger(const json& obj, const std::string& where) {
  Trigger trigger;
  std::string action = require_string(obj, "action", where);
  if (action == "click") {
    trigger.kind = trace::ActionKind::click;
    if (obj.contains("xpath")) trigger.xpath = obj["xpath"].get<std::string>();
  } else if (action == "swipe") {
    trigger.kind = trace::ActionKind::swipe;
    if (obj.contains("direction")) {
      std::string direction = obj["direction"].get<std::string>();
      if (direction != "up" && direction != "down" && direction != "left" &&
          direction != "right") {
        fail(Errc::pack_syntax, where + " has bad swipe direction '" + direction + "'");
      }
      trigger.direction = direction;
    }
  } else if (action == "type") {
    trigger.kind = trace::ActionKind::type;
    if (obj.contains("text_equals")) {
      trigger.text_equals = obj["text_equals"].get<std::string>();
    }
  } else if (action == "press_home") {
    trigger.kind = trace::ActionKind::press_home;
  } else if (action == "press_back") {
    trigger.kind = trace::ActionKind::press_back;
  } else {
    fail(Errc::pack_syntax, where + " has unknown trigger action '" + action + "'");
  }
  if (obj.contains("requires_package")) {
    trigger.requires_package = obj["requires_package"].get<std::string>();
  }
  if (obj.contains("requires_package_absent")) {
    trigger.requires_package_absent = obj["requires_package_absent"].get<std::string>();
  }
  return trigger;
}

Effect parse_effect(const json& obj, const std::string& where) {
  Effect effect;
  std::string kind = require_string(obj, "kind", where);
  if (kind == "install") {
    effect.kind = Effect::Kind::install;
    effect.package = require_string(obj, "package", where);
  } else if (kind == "uninstall") {
    effect.kind = Effect::Kind::uninstall;
    effect.package = require_string(obj, "package", where);
  } else if (kind == "copy_focused_text") {
    effect.kind = Effect::Kind::copy_focused_text;
    effect.target_xpath = require_string(obj, "target_xpath", where);
  } else {
    fail(Errc::pack_syntax, where + " has unknown effect kind '" + kind + "'");
  }
  return effect;
}

// Conservative overlap analysis: two triggers on the same screen are
// ambiguous when an action could satisfy both.
bool triggers_may_overlap(const Trigger& a, const Trigger& b) {
  if (a.kind != b.kind) return false;
  if (a.xpath && b.xpath && *a.xpath != *b.xpath) return false;
  if (a.direction && b.direction && *a.direction != *b.direction) return false;
  if (a.text_equals && b.text_equals && *a.text_equals != *b.text_equals) return false;
  auto exclusive = [](const Trigger& x, const Trigger& y) {
    return x.requires_package && y.requires_package_absent &&
           *x.requires_package == *y.requires_package_absent;
  };
  if (exclusive(a, b) || exclusive(b, a)) return false;
  return true;
}

std::string swipe_direction(const trace::Action& action) {
  double dx = action.lift_x - action.touch_x;
  double dy = action.lift_y - action.touch_y;
  if (std::abs(dy) >= std::abs(dx)) return dy < 0 ? "up" : "down";
  return dx < 0 ? "left" : "right";
}

}  // namespace

DeviceModel parse_app_pack(const std::string& json_text) {
  json doc = json::parse(json_text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    fail(Errc::pack_syntax, "app pack is not a JSON object");
  }
  DeviceModel model;
  model.app_id = require_string(doc, "app_id", "pack");
  model.initial_screen = require_string(doc, "initial_screen", "pack");
  if (doc.contains("initial_packages")) {
    for (const auto& item : doc["initial_packages"]) {
      model.initial_packages.insert(item.get<std::string>());
    }
  }

  if (!doc.contains("screens") || !doc["screens"].is_object() ||
      doc["screens"].empty()) {
    fail(Errc::pack_syntax, "pack has no screens");
  }
  for (const auto& [id, body] : doc["screens"].items()) {
    ScreenDef screen;
    screen.id = id;
    screen.activity = require_string(body, "activity", "screen '" + id + "'");
    screen.vh_template = require_string(body, "vh", "screen '" + id + "'");
    try {
      screen.template_tree = vh::parse_vh(screen.vh_template);
    } catch (const Error& e) {
      fail(Errc::pack_syntax, "screen '" + id + "' vh template: " + e.what());
    }
    if (body.contains("screenshot_b64")) {
      screen.screenshot_png = util::base64_decode(body["screenshot_b64"].get<std::string>());
    } else {
      screen.screenshot_png = png::solid_swatch(32, 32, id);
    }
    model.screens.emplace(id, std::move(screen));
  }

  if (model.screens.find(model.initial_screen) == model.screens.end()) {
    fail(Errc::dangling_screen, "initial screen '" + model.initial_screen + "' undefined");
  }

  if (doc.contains("transitions")) {
    int index = 0;
    for (const auto& body : doc["transitions"]) {
      std::string where = "transition #" + std::to_string(index++);
      Transition transition;
      transition.from = require_string(body, "from", where);
      transition.to = require_string(body, "to", where);
      if (!body.contains("trigger") || !body["trigger"].is_object()) {
        fail(Errc::pack_syntax, where + " lacks trigger object");
      }
      transition.trigger = parse_trigger(body["trigger"], where);
      if (body.contains("effects")) {
        for (const auto& effect : body["effects"]) {
          transition.effects.push_back(parse_effect(effect, where));
        }
      }
      for (const std::string& endpoint : {transition.from, transition.to}) {
        if (model.screens.find(endpoint) == model.screens.end()) {
          fail(Errc::dangling_screen, where + " references unknown screen '" + endpoint + "'");
        }
      }
      model.transitions.push_back(std::move(transition));
    }
  }

  for (std::size_t i = 0; i < model.transitions.size(); ++i) {
    for (std::size_t j = i + 1; j < model.transitions.size(); ++j) {
      const Transition& a = model.transitions[i];
      const Transition& b = model.transitions[j];
      if (a.from != b.from) continue;
      if (triggers_may_overlap(a.trigger, b.trigger)) {
        fail(Errc::ambiguous_transition,
             "transitions #" + std::to_string(i) + " and #" + std::to_string(j) +
                 " from screen '" + a.from + "' can fire on the same action");
      }
    }
  }
  return model;
}

DeviceModel load_app_pack(const fs::path& path) {
  return parse_app_pack(util::read_file(path));
}

Session::Session(const DeviceModel& model, trace::TaskRecord task,
                 std::set<std::string> extra_initial_packages)
    : model_(model), task_(std::move(task)) {
  state_.current_screen = model_.initial_screen;
  state_.packages = model_.initial_packages;
  for (const std::string& pkg : extra_initial_packages) state_.packages.insert(pkg);
  // template-declared focus
  const ScreenDef& screen = current_screen();
  vh::ComponentIndex components = vh::functional_components(screen.template_tree);
  for (const vh::UiNode* node : components.entries) {
    if (node->attr_true("focused")) {
      state_.focused_xpath = vh::xpath_of(screen.template_tree, *node);
      break;
    }
  }
}

const ScreenDef& Session::current_screen() const {
  return model_.screens.at(state_.current_screen);
}

void Session::require_running() const {
  if (status_ != SessionStatus::running) {
    fail(Errc::session_terminated, "session is no longer running");
  }
}

std::string Session::render_vh() const {
  const ScreenDef& screen = current_screen();
  vh::UiTree tree = screen.template_tree;  // copy, then apply state

  auto overrides = state_.text_overrides.find(screen.id);
  if (overrides != state_.text_overrides.end()) {
    for (const auto& [xpath, text] : overrides->second) {
      const vh::UiNode* node = vh::resolve_xpath(tree, xpath);
      if (!node) continue;
      auto& attrs = const_cast<vh::UiNode*>(node)->attrs;
      bool found = false;
      for (auto& [key, value] : attrs) {
        if (key == "text") {
          value = text;
          found = true;
          break;
        }
      }
      if (!found) attrs.emplace_back("text", text);
    }
  }

  // reflect focus
  auto set_focus_flags = [&](const vh::UiNode& node, const auto& self) -> void {
    std::string xpath = vh::xpath_of(tree, node);
    bool is_focused = state_.focused_xpath && *state_.focused_xpath == xpath;
    auto& attrs = const_cast<vh::UiNode&>(node).attrs;
    for (auto& [key, value] : attrs) {
      if (key == "focused") value = is_focused ? "true" : "false";
    }
    for (const vh::UiNode& child : node.children) self(child, self);
  };
  for (const vh::UiNode& top : tree.root.children) set_focus_flags(top, set_focus_flags);

  return vh::serialize_vh(tree);
}

const std::string& Session::task_instruction() const {
  require_running();
  return task_.instruction;
}

std::string Session::view_hierarchy() const {
  require_running();
  return render_vh();
}

const std::vector<unsigned char>& Session::screenshot() const {
  require_running();
  return current_screen().screenshot_png;
}

std::string Session::screenshot_base64() const {
  return util::base64_encode(screenshot());
}

void Session::record_step(trace::Action action) {
  Step step;
  step.screen_id = state_.current_screen;
  step.vh_xml = render_vh();
  step.activity = current_screen().activity;
  step.action = std::move(action);
  step.packages = state_.packages;
  steps_.push_back(std::move(step));
}

void Session::apply_transition(const trace::Action& action) {
  const Transition* fired = nullptr;
  for (const Transition& transition : model_.transitions) {
    if (transition.from != state_.current_screen) continue;
    const Trigger& trigger = transition.trigger;
    if (trigger.kind != action.kind) continue;
    if (trigger.requires_package && !state_.packages.count(*trigger.requires_package)) continue;
    if (trigger.requires_package_absent &&
        state_.packages.count(*trigger.requires_package_absent)) continue;
    if (action.kind == trace::ActionKind::click && trigger.xpath &&
        action.xpath != trigger.xpath) continue;
    if (action.kind == trace::ActionKind::swipe && trigger.direction &&
        swipe_direction(action) != *trigger.direction) continue;
    if (action.kind == trace::ActionKind::type && trigger.text_equals &&
        action.text != *trigger.text_equals) continue;
    fired = &transition;
    break;
  }
  if (!fired) return;  // stray actions leave the screen unchanged

  // capture focused text before switching screens
  std::optional<std::string> focused_text;
  if (state_.focused_xpath) {
    vh::UiTree rendered = vh::parse_vh(render_vh());
    const vh::UiNode* node = vh::resolve_xpath(rendered, *state_.focused_xpath);
    if (node) focused_text = std::string(node->attr_or("text"));
  }

  for (const Effect& effect : fired->effects) {
    switch (effect.kind) {
      case Effect::Kind::install:
        state_.packages.insert(effect.package);
        break;
      case Effect::Kind::uninstall:
        state_.packages.erase(effect.package);
        break;
      case Effect::Kind::copy_focused_text:
        if (focused_text) {
          state_.text_overrides[fired->to][effect.target_xpath] = *focused_text;
        }
        break;
    }
  }

  state_.current_screen = fired->to;
  state_.focused_xpath.reset();
  const ScreenDef& screen = current_screen();
  vh::ComponentIndex components = vh::functional_components(screen.template_tree);
  for (const vh::UiNode* node : components.entries) {
    if (node->attr_true("focused")) {
      state_.focused_xpath = vh::xpath_of(screen.template_tree, *node);
      break;
    }
  }
}

void Session::post_click(double x, double y) {
  require_running();
  if (!(x >= 0.0 && x <= 1.0 && y >= 0.0 && y <= 1.0)) {
    fail(Errc::coordinates_out_of_range, "click at (" + std::to_string(x) + ", " +
                                             std::to_string(y) + ")");
  }
  vh::UiTree rendered = vh::parse_vh(render_vh());
  const vh::UiNode* hit = vh::node_at_point(rendered, x, y);
  std::optional<std::string> xpath;
  if (hit) xpath = vh::xpath_of(rendered, *hit);

  trace::Action action = trace::Action::make_click(x, y, xpath);
  record_step(action);

  // clicking an editable node focuses it; other clicks leave focus alone
  if (hit && hit->attr_or("class").find("EditText") != std::string_view::npos) {
    state_.focused_xpath = xpath;
  }
  apply_transition(action);
}

void Session::post_swipe(double touch_x, double touch_y, double lift_x,
                         double lift_y, long duration_ms) {
  require_running();
  for (double v : {touch_x, touch_y, lift_x, lift_y}) {
    if (!(v >= 0.0 && v <= 1.0)) {
      fail(Errc::coordinates_out_of_range, "swipe coordinate " + std::to_string(v));
    }
  }
  if (duration_ms <= 0) {
    fail(Errc::coordinates_out_of_range, "swipe duration must be positive");
  }
  trace::Action action =
      trace::Action::make_swipe(touch_x, touch_y, lift_x, lift_y, duration_ms);
  record_step(action);
  apply_transition(action);
}

void Session::post_type(const std::string& text) {
  require_running();
  trace::Action action = trace::Action::make_type(text);
  record_step(action);

  if (state_.focused_xpath) {
    const ScreenDef& screen = current_screen();
    const vh::UiNode* node = vh::resolve_xpath(screen.template_tree, *state_.focused_xpath);
    if (node && node->attr_or("class").find("EditText") != std::string_view::npos) {
      std::string& slot = state_.text_overrides[screen.id][*state_.focused_xpath];
      if (slot.empty()) slot = std::string(node->attr_or("text"));
      slot += text;
    }
  }
  apply_transition(action);
}

void Session::post_press_home() {
  require_running();
  trace::Action action = trace::Action::make(trace::ActionKind::press_home);
  record_step(action);
  apply_transition(action);
}

void Session::post_press_back() {
  require_running();
  trace::Action action = trace::Action::make(trace::ActionKind::press_back);
  record_step(action);
  apply_transition(action);
}

void Session::post_task_complete() {
  require_running();
  record_step(trace::Action::make(trace::ActionKind::status_complete));
  status_ = SessionStatus::complete;
}

void Session::post_task_impossible() {
  require_running();
  record_step(trace::Action::make(trace::ActionKind::status_impossible));
  status_ = SessionStatus::impossible;
}

void Session::apply(const trace::Action& action) {
  using trace::ActionKind;
  switch (action.kind) {
    case ActionKind::click: post_click(action.x, action.y); break;
    case ActionKind::swipe:
      post_swipe(action.touch_x, action.touch_y, action.lift_x, action.lift_y,
                 action.duration_ms);
      break;
    case ActionKind::type: post_type(action.text); break;
    case ActionKind::press_home: post_press_home(); break;
    case ActionKind::press_back: post_press_back(); break;
    case ActionKind::status_complete: post_task_complete(); break;
    case ActionKind::status_impossible: post_task_impossible(); break;
  }
}

trace::Trace Session::record(const fs::path& out_dir) const {
  if (status_ == SessionStatus::running) {
    fail(Errc::io_failure, "cannot record a running session");
  }
  if (fs::exists(out_dir) && (!fs::is_directory(out_dir) || !fs::is_empty(out_dir))) {
    fail(Errc::io_failure, out_dir.string() + " exists and is not an empty directory");
  }
  std::error_code ec;
  fs::create_directories(out_dir / "steps", ec);
  if (ec) fail(Errc::io_failure, "cannot create " + out_dir.string());

  nlohmann::ordered_json task;
  task["task_id"] = task_.task_id;
  task["instruction"] = task_.instruction;
  task["source_tag"] = trace::source_tag_name(task_.source_tag);
  util::write_file(out_dir / "task.json", task.dump(2) + "\n");

  for (std::size_t i = 0; i < steps_.size(); ++i) {
    char name[8];
    std::snprintf(name, sizeof(name), "%04zu", i);
    fs::path step_dir = out_dir / "steps" / name;
    fs::create_directories(step_dir, ec);
    if (ec) fail(Errc::io_failure, "cannot create " + step_dir.string());

    const Step& step = steps_[i];
    util::write_file(step_dir / "screenshot.png",
                     model_.screens.at(step.screen_id).screenshot_png);
    util::write_file(step_dir / "vh.xml", step.vh_xml);
    util::write_file(step_dir / "activity.txt", step.activity + "\n");
    util::write_file(step_dir / "action.json", trace::action_to_json(step.action));
    std::string packages;
    for (const std::string& pkg : step.packages) packages += pkg + "\n";
    util::write_file(step_dir / "packages.txt", packages);
  }
  return trace::load_trace(out_dir);
}

}  // namespace touchstone::agentenv
