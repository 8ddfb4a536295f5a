#include "touchstone/baselines.hpp"

#include <cmath>

#include "touchstone/similarity.hpp"

namespace touchstone::baselines {

namespace {

int axis_sign(double delta) { return delta > 0 ? 1 : delta < 0 ? -1 : 0; }

}  // namespace

bool action_equal(const trace::Action& a, const trace::Action& b,
                  const ActionMatchConfig& cfg) {
  using trace::ActionKind;
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ActionKind::click: {
      double dx = a.x - b.x;
      double dy = a.y - b.y;
      return std::sqrt(dx * dx + dy * dy) <= cfg.click_tolerance;
    }
    case ActionKind::swipe:
      return axis_sign(a.lift_x - a.touch_x) == axis_sign(b.lift_x - b.touch_x) &&
             axis_sign(a.lift_y - a.touch_y) == axis_sign(b.lift_y - b.touch_y);
    case ActionKind::type:
      if (cfg.text_exact) return a.text == b.text;
      return similarity::normalize_text(a.text) == similarity::normalize_text(b.text);
    default:
      return true;
  }
}

bool stepwise_match(std::span<const trace::Action> gt,
                    std::span<const trace::Action> exec,
                    const ActionMatchConfig& cfg) {
  if (gt.size() != exec.size()) return false;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!action_equal(gt[i], exec[i], cfg)) return false;
  }
  return true;
}

bool lcs_match(std::span<const trace::Action> gt,
               std::span<const trace::Action> exec,
               const ActionMatchConfig& cfg) {
  // Greedy earliest match decides subsequence containment exactly.
  std::size_t next = 0;
  for (const trace::Action& step : exec) {
    if (next == gt.size()) break;
    if (action_equal(gt[next], step, cfg)) ++next;
  }
  return next == gt.size();
}

}  // namespace touchstone::baselines
