#include "touchstone/annotation.hpp"

#include <charconv>
#include <sstream>

#include "touchstone/error.hpp"
#include "touchstone/util.hpp"

namespace touchstone::annotation {

const char* keyword_name(Keyword keyword) {
  switch (keyword) {
    case Keyword::fuzzy_screen: return "fuzzy";
    case Keyword::fuzzy_textbox: return "fuzzy";
    case Keyword::activity: return "activity";
    case Keyword::exact: return "exact";
    case Keyword::exclude: return "exclude";
    case Keyword::installed: return "installed";
    case Keyword::uninstalled: return "uninstalled";
    case Keyword::click: return "click";
    case Keyword::type: return "type";
  }
  return "activity";
}

bool keyword_takes_component(Keyword keyword) {
  return keyword == Keyword::exact || keyword == Keyword::exclude ||
         keyword == Keyword::fuzzy_textbox || keyword == Keyword::click;
}

std::string primitive_to_string(const Primitive& primitive) {
  switch (primitive.keyword) {
    case Keyword::fuzzy_screen:
      return "fuzzy<-1>";
    case Keyword::fuzzy_textbox:
    case Keyword::exact:
    case Keyword::exclude:
    case Keyword::click:
      return std::string(keyword_name(primitive.keyword)) + "<" +
             std::to_string(primitive.component_index.value()) + ">";
    case Keyword::installed:
    case Keyword::uninstalled:
      return std::string(keyword_name(primitive.keyword)) + "<" +
             primitive.app_id.value() + ">";
    case Keyword::type:
      return "type<" + primitive.input_text.value() + ">";
    case Keyword::activity:
      return "activity";
  }
  return "activity";
}

namespace {

[[noreturn]] void syntax_error(int line, int column, const std::string& message) {
  fail(Errc::syntax_error,
       "line " + std::to_string(line) + ", column " + std::to_string(column) +
           ": " + message);
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

Primitive parse_primitive_line(std::string_view body, int line) {
  std::size_t open = body.find('<');
  std::string word(open == std::string_view::npos ? body : body.substr(0, open));

  bool known = word == "fuzzy" || word == "activity" || word == "exact" ||
               word == "exclude" || word == "installed" ||
               word == "uninstalled" || word == "click" || word == "type";
  if (!known) {
    fail(Errc::unknown_keyword,
         "line " + std::to_string(line) + ": '" + word + "'");
  }

  Primitive primitive;
  if (word == "activity") {
    if (open != std::string_view::npos) {
      syntax_error(line, 3, "'activity' takes no argument");
    }
    primitive.keyword = Keyword::activity;
    return primitive;
  }

  if (open == std::string_view::npos || body.back() != '>') {
    syntax_error(line, 3, "'" + word + "' requires an <argument>");
  }
  std::string arg(body.substr(open + 1, body.size() - open - 2));

  auto parse_int = [&](bool allow_minus_one) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc() || ptr != arg.data() + arg.size()) {
      syntax_error(line, static_cast<int>(open) + 4, "expected integer, got '" + arg + "'");
    }
    if (value < 0 && !(allow_minus_one && value == -1)) {
      syntax_error(line, static_cast<int>(open) + 4, "component index must be >= 0");
    }
    return value;
  };

  if (word == "fuzzy") {
    int value = parse_int(true);
    if (value == -1) {
      primitive.keyword = Keyword::fuzzy_screen;
    } else {
      primitive.keyword = Keyword::fuzzy_textbox;
      primitive.component_index = value;
    }
  } else if (word == "exact" || word == "exclude" || word == "click") {
    primitive.keyword = word == "exact"     ? Keyword::exact
                        : word == "exclude" ? Keyword::exclude
                                            : Keyword::click;
    primitive.component_index = parse_int(false);
  } else if (word == "installed" || word == "uninstalled") {
    primitive.keyword = word == "installed" ? Keyword::installed : Keyword::uninstalled;
    primitive.app_id = arg;
  } else {  // type
    primitive.keyword = Keyword::type;
    primitive.input_text = arg;
  }
  return primitive;
}

}  // namespace

Annotation parse_annotation(std::string_view text) {
  Annotation annotation;
  bool saw_task_id = false;
  bool in_keystate = false;

  std::size_t start = 0;
  int line_no = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    std::string_view raw = text.substr(
        start, end == std::string_view::npos ? text.size() - start : end - start);
    ++line_no;
    std::string_view line = trim_right(raw);

    if (line.empty()) {
      // blank lines allowed anywhere
    } else if (!saw_task_id) {
      constexpr std::string_view kPrefix = "task_id:";
      if (!line.starts_with(kPrefix)) {
        syntax_error(line_no, 1, "expected 'task_id: <string>'");
      }
      std::string_view value = line.substr(kPrefix.size());
      while (!value.empty() && value.front() == ' ') value.remove_prefix(1);
      if (value.empty()) syntax_error(line_no, 9, "task_id must be nonempty");
      annotation.task_id = std::string(value);
      saw_task_id = true;
    } else if (line.starts_with("keystate")) {
      if (in_keystate && annotation.keystates.back().primitives.empty()) {
        syntax_error(line_no, 1, "keystate has no primitives");
      }
      constexpr std::string_view kPrefix = "keystate @";
      if (!line.starts_with(kPrefix) || line.back() != ':') {
        syntax_error(line_no, 1, "expected 'keystate @<int>:'");
      }
      std::string_view digits = line.substr(kPrefix.size(), line.size() - kPrefix.size() - 1);
      int step = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), step);
      if (ec != std::errc() || ptr != digits.data() + digits.size() || step < 0) {
        syntax_error(line_no, 11, "bad keystate step '" + std::string(digits) + "'");
      }
      for (const KeyState& existing : annotation.keystates) {
        if (existing.gt_step == step) {
          fail(Errc::duplicate_keystate, "keystate @" + std::to_string(step) + " repeated");
        }
      }
      if (!annotation.keystates.empty() && annotation.keystates.back().gt_step > step) {
        fail(Errc::non_monotone_steps,
             "keystate @" + std::to_string(step) + " after @" +
                 std::to_string(annotation.keystates.back().gt_step));
      }
      annotation.keystates.push_back(KeyState{step, {}});
      in_keystate = true;
    } else if (line.starts_with("  ")) {
      if (!in_keystate) syntax_error(line_no, 1, "primitive outside a keystate block");
      std::string_view body = line.substr(2);
      if (body.empty() || body.front() == ' ') {
        syntax_error(line_no, 3, "primitives use exactly two-space indent");
      }
      annotation.keystates.back().primitives.push_back(parse_primitive_line(body, line_no));
    } else {
      syntax_error(line_no, 1, "unrecognized line '" + std::string(line) + "'");
    }

    if (end == std::string_view::npos) break;
    start = end + 1;
  }

  if (!saw_task_id) fail(Errc::syntax_error, "empty annotation: missing task_id");
  if (in_keystate && annotation.keystates.back().primitives.empty()) {
    fail(Errc::syntax_error, "final keystate has no primitives");
  }
  return annotation;
}

std::string print_annotation(const Annotation& annotation) {
  std::ostringstream out;
  out << "task_id: " << annotation.task_id << "\n";
  for (const KeyState& keystate : annotation.keystates) {
    out << "keystate @" << keystate.gt_step << ":\n";
    for (const Primitive& primitive : keystate.primitives) {
      out << "  " << primitive_to_string(primitive) << "\n";
    }
  }
  return out.str();
}

std::vector<LintIssue> lint_annotation(const Annotation& annotation,
                                       const trace::Trace& gt) {
  std::vector<LintIssue> issues;
  if (annotation.task_id != gt.task.task_id) {
    issues.push_back({-1, "annotation task_id '" + annotation.task_id +
                              "' does not match trace task_id '" +
                              gt.task.task_id + "'"});
  }
  for (std::size_t i = 0; i < annotation.keystates.size(); ++i) {
    const KeyState& keystate = annotation.keystates[i];
    int ks = static_cast<int>(i);
    if (keystate.gt_step >= static_cast<int>(gt.observations.size())) {
      issues.push_back({ks, "gt_step " + std::to_string(keystate.gt_step) +
                                " beyond trace length " +
                                std::to_string(gt.observations.size())});
      continue;
    }
    const trace::Observation& obs = gt.observations[static_cast<std::size_t>(keystate.gt_step)];
    vh::ComponentIndex components = vh::functional_components(obs.ui_tree);
    for (const Primitive& primitive : keystate.primitives) {
      if (primitive.component_index &&
          *primitive.component_index >= static_cast<int>(components.size())) {
        issues.push_back(
            {ks, primitive_to_string(primitive) + " out of range: screen has " +
                     std::to_string(components.size()) + " components"});
      }
      if (primitive.keyword == Keyword::click &&
          obs.action.kind != trace::ActionKind::click) {
        issues.push_back(
            {ks, "click<n> annotated on a step whose recorded action is " +
                     std::string(trace::action_kind_name(obs.action.kind))});
      }
      if ((primitive.keyword == Keyword::installed ||
           primitive.keyword == Keyword::uninstalled) &&
          primitive.app_id->empty()) {
        issues.push_back({ks, std::string(keyword_name(primitive.keyword)) +
                                  "<app> has empty app id"});
      }
    }
  }
  return issues;
}

namespace {

std::string html_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_overlay(const trace::Trace& gt, const Annotation* annotation) {
  std::ostringstream out;
  out << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>" << html_escape(gt.task.task_id) << " overlay</title>\n"
      << "<style>\n"
      << ".screen { position: relative; margin: 16px 0; }\n"
      << ".screen img { position: absolute; left: 0; top: 0; width: 100%; height: 100%; }\n"
      << ".box { position: absolute; border: 2px solid #e33; box-sizing: border-box; }\n"
      << ".box span { background: #e33; color: #fff; font: 12px monospace; padding: 0 3px; }\n"
      << ".box.annotated { border-color: #26c; border-width: 3px; }\n"
      << ".box.annotated span { background: #26c; }\n"
      << "</style>\n</head>\n<body>\n"
      << "<h1>" << html_escape(gt.task.task_id) << "</h1>\n"
      << "<p>" << html_escape(gt.task.instruction) << "</p>\n";

  for (const trace::Observation& obs : gt.observations) {
    vh::ComponentIndex components = vh::functional_components(obs.ui_tree);

    // component indices referenced by keystates annotated on this step
    std::vector<std::pair<int, std::string>> marked;
    if (annotation) {
      for (const KeyState& keystate : annotation->keystates) {
        if (keystate.gt_step != obs.step_index) continue;
        for (const Primitive& primitive : keystate.primitives) {
          if (primitive.component_index) {
            marked.emplace_back(*primitive.component_index,
                                primitive_to_string(primitive));
          }
        }
      }
    }

    std::string png = util::read_file(obs.screenshot_ref);
    std::string b64 = util::base64_encode(std::span<const unsigned char>(
        reinterpret_cast<const unsigned char*>(png.data()), png.size()));

    out << "<h2>step " << obs.step_index << " &mdash; "
        << html_escape(obs.activity) << "</h2>\n"
        << "<p>action: " << trace::action_kind_name(obs.action.kind) << "</p>\n"
        << "<div class=\"screen\" style=\"width:" << obs.ui_tree.screen_w
        << "px;height:" << obs.ui_tree.screen_h << "px\">\n"
        << "<img src=\"data:image/png;base64," << b64 << "\" alt=\"step "
        << obs.step_index << "\">\n";

    for (std::size_t k = 0; k < components.size(); ++k) {
      const vh::Rect& b = components.entries[k]->bounds;
      std::string note;
      bool annotated = false;
      for (const auto& [index, label] : marked) {
        if (index == static_cast<int>(k)) {
          annotated = true;
          note += " " + label;
        }
      }
      out << "<div class=\"box" << (annotated ? " annotated" : "")
          << "\" style=\"left:" << b.left << "px;top:" << b.top
          << "px;width:" << b.width() << "px;height:" << b.height()
          << "px\"><span>" << k << html_escape(note) << "</span></div>\n";
    }
    out << "</div>\n";
  }
  out << "</body>\n</html>\n";
  return out.str();
}

}  // namespace touchstone::annotation
