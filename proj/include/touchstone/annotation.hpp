#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "touchstone/trace.hpp"

namespace touchstone::annotation {

enum class Keyword {
  fuzzy_screen,    // fuzzy<-1>
  fuzzy_textbox,   // fuzzy<n>
  activity,        // activity
  exact,           // exact<n>
  exclude,         // exclude<n>
  installed,       // installed<app>
  uninstalled,     // uninstalled<app>
  click,           // click<n>
  type,            // type<input_text>
};

const char* keyword_name(Keyword keyword);
bool keyword_takes_component(Keyword keyword);

struct Primitive {
  Keyword keyword = Keyword::activity;
  std::optional<int> component_index;     // exact, exclude, fuzzy_textbox, click
  std::optional<std::string> app_id;      // installed, uninstalled
  std::optional<std::string> input_text;  // type

  bool operator==(const Primitive&) const = default;
};

std::string primitive_to_string(const Primitive& primitive);

struct KeyState {
  int gt_step = 0;
  std::vector<Primitive> primitives;  // conjunctive, nonempty

  bool operator==(const KeyState&) const = default;
};

struct Annotation {
  std::string task_id;
  std::vector<KeyState> keystates;  // gt_step strictly increasing

  bool operator==(const Annotation&) const = default;
};

// File grammar (UTF-8, blank lines ignored):
//   task_id: <string>
//   keystate @<int>:
//     <keyword-line>+        two-space indent, one primitive per line
// raises SyntaxError, UnknownKeyword, DuplicateKeyState, NonMonotoneSteps
Annotation parse_annotation(std::string_view text);

// Canonical emission; parse(print(a)) == a.
std::string print_annotation(const Annotation& annotation);

struct LintIssue {
  int keystate = -1;  // position in annotation.keystates, -1 for file-level
  std::string message;
};

std::vector<LintIssue> lint_annotation(const Annotation& annotation,
                                       const trace::Trace& gt);

// Self-contained HTML report: every observation's screenshot with
// numbered boxes over its functional components; components referenced
// by the annotation are highlighted. raises IoFailure
std::string render_overlay(const trace::Trace& gt, const Annotation* annotation);

}  // namespace touchstone::annotation
