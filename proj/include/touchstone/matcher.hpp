#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "touchstone/annotation.hpp"
#include "touchstone/similarity.hpp"
#include "touchstone/trace.hpp"

namespace touchstone::matcher {

// Ablation switches; a disabled category makes its primitives pass
// vacuously.
enum class Category {
  activity,
  ui_component_exact,
  action,
  system,
  screen_fuzzy,
  textbox_fuzzy,
};

const char* category_name(Category category);
std::optional<Category> category_from(std::string_view name);
Category category_of(annotation::Keyword keyword);

struct MatchConfig {
  similarity::SimilarityConfig similarity;
  // Attributes an exact component match compares; never "bounds".
  std::vector<std::string> compared_attrs{"class", "text", "content-desc",
                                          "resource-id", "checked", "selected"};
  std::set<Category> ablation;
};

struct PrimitiveResult {
  annotation::Primitive primitive;
  bool matched = false;
  std::string evidence;  // nonempty when matched
};

struct KeyStateResult {
  int gt_step = 0;
  std::optional<int> matched_observation;
  std::vector<PrimitiveResult> primitives;
};

struct Verdict {
  bool completed = false;
  std::vector<KeyStateResult> keystate_results;
  std::optional<int> first_unmatched;  // gt_step of the first unmatched keystate
};

// --- per-primitive matchers ---------------------------------------------

// Byte-equality of activity strings.
bool match_activity(const trace::Observation& gt_obs,
                    const trace::Observation& cand_obs);

// Simplified-HTML cosine similarity at theta_screen.
bool match_screen_fuzzy(const trace::Observation& gt_obs,
                        const trace::Observation& cand_obs,
                        const MatchConfig& cfg);

// First candidate node (pre-order) equal to ground-truth component n on
// every compared attribute; nullptr when none.
const vh::UiNode* match_component_exact(const trace::Observation& gt_obs, int n,
                                        const trace::Observation& cand_obs,
                                        const MatchConfig& cfg);

bool match_component_exclude(const trace::Observation& gt_obs, int n,
                             const trace::Observation& cand_obs,
                             const MatchConfig& cfg);

// Any candidate node with nonempty text similar to the ground-truth
// component's text at theta_textbox.
bool match_textbox_fuzzy(const trace::Observation& gt_obs, int n,
                         const trace::Observation& cand_obs,
                         const MatchConfig& cfg);

// click<n>: candidate action clicks the node that exactly matches
// ground-truth component n (recorded XPath, else resolved from the
// click point). type<s>: candidate action types exactly s.
bool match_action(const trace::Observation& gt_obs,
                  const annotation::Primitive& primitive,
                  const trace::Observation& cand_obs, const MatchConfig& cfg);

// installed<app> / uninstalled<app> against the trace's final packages.
// raises MissingPackagesSnapshot
bool match_system(const annotation::Primitive& primitive,
                  const trace::Trace& trace);

// --- whole-trace evaluation -----------------------------------------------

// Greedy forward scan: each keystate binds to the earliest observation
// (strictly after the previous keystate's) satisfying all of its
// non-system primitives; system primitives are checked once against the
// final packages snapshot.
Verdict evaluate_trace(const trace::Trace& exec, const trace::Trace& gt,
                       const annotation::Annotation& annotation,
                       const MatchConfig& cfg);

std::string verdict_to_json(const Verdict& verdict, const std::string& task_id);

}  // namespace touchstone::matcher
