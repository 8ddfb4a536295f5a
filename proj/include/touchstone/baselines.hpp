#pragma once

#include <span>

#include "touchstone/trace.hpp"

namespace touchstone::baselines {

struct ActionMatchConfig {
  // Positional slack for clicks, as normalized Euclidean distance.
  double click_tolerance = 0.14;
  // When false, typed text is compared case-insensitively with
  // whitespace runs collapsed.
  bool text_exact = true;
};

// Kind equality plus parameter equality: clicks within click_tolerance,
// swipes by per-axis direction sign, typed text per text_exact,
// parameterless kinds by kind alone.
bool action_equal(const trace::Action& a, const trace::Action& b,
                  const ActionMatchConfig& cfg);

// Equal length and position-wise action_equal.
bool stepwise_match(std::span<const trace::Action> gt,
                    std::span<const trace::Action> exec,
                    const ActionMatchConfig& cfg);

// gt is a subsequence of exec under action_equal.
bool lcs_match(std::span<const trace::Action> gt,
               std::span<const trace::Action> exec,
               const ActionMatchConfig& cfg);

}  // namespace touchstone::baselines
