#include "touchstone/matcher.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "touchstone/error.hpp"

namespace touchstone::matcher {

using annotation::Keyword;
using annotation::Primitive;
using trace::Observation;

const char* category_name(Category category) {
  switch (category) {
    case Category::activity: return "activity";
    case Category::ui_component_exact: return "ui_component_exact";
    case Category::action: return "action";
    case Category::system: return "system";
    case Category::screen_fuzzy: return "screen_fuzzy";
    case Category::textbox_fuzzy: return "textbox_fuzzy";
  }
  return "activity";
}

std::optional<Category> category_from(std::string_view name) {
  for (Category category :
       {Category::activity, Category::ui_component_exact, Category::action,
        Category::system, Category::screen_fuzzy, Category::textbox_fuzzy}) {
    if (name == category_name(category)) return category;
  }
  return std::nullopt;
}

Category category_of(Keyword keyword) {
  switch (keyword) {
    case Keyword::activity: return Category::activity;
    case Keyword::exact:
    case Keyword::exclude: return Category::ui_component_exact;
    case Keyword::click:
    case Keyword::type: return Category::action;
    case Keyword::installed:
    case Keyword::uninstalled: return Category::system;
    case Keyword::fuzzy_screen: return Category::screen_fuzzy;
    case Keyword::fuzzy_textbox: return Category::textbox_fuzzy;
  }
  return Category::activity;
}

namespace {

const vh::UiNode& component_at(const Observation& obs, int n) {
  vh::ComponentIndex index = vh::functional_components(obs.ui_tree);
  if (n < 0 || static_cast<std::size_t>(n) >= index.size()) {
    throw std::out_of_range("component index " + std::to_string(n) +
                            " out of range for screen with " +
                            std::to_string(index.size()) + " components");
  }
  return *index.entries[static_cast<std::size_t>(n)];
}

bool attrs_equal(const vh::UiNode& a, const vh::UiNode& b,
                 const std::vector<std::string>& compared) {
  for (const std::string& name : compared) {
    if (a.attr_or(name) != b.attr_or(name)) return false;
  }
  return true;
}

void preorder_nodes(const vh::UiNode& node, std::vector<const vh::UiNode*>& out) {
  out.push_back(&node);
  for (const vh::UiNode& child : node.children) preorder_nodes(child, out);
}

std::vector<const vh::UiNode*> all_nodes(const vh::UiTree& tree) {
  std::vector<const vh::UiNode*> out;
  for (const vh::UiNode& top : tree.root.children) preorder_nodes(top, out);
  return out;
}

}  // namespace

bool match_activity(const Observation& gt_obs, const Observation& cand_obs) {
  return gt_obs.activity == cand_obs.activity;
}

bool match_screen_fuzzy(const Observation& gt_obs, const Observation& cand_obs,
                        const MatchConfig& cfg) {
  similarity::Embedder embedder(cfg.similarity);
  return embedder.similar(vh::simplify_to_html(gt_obs.ui_tree),
                          vh::simplify_to_html(cand_obs.ui_tree),
                          cfg.similarity.theta_screen);
}

const vh::UiNode* match_component_exact(const Observation& gt_obs, int n,
                                        const Observation& cand_obs,
                                        const MatchConfig& cfg) {
  const vh::UiNode& target = component_at(gt_obs, n);
  for (const vh::UiNode* node : all_nodes(cand_obs.ui_tree)) {
    if (attrs_equal(target, *node, cfg.compared_attrs)) return node;
  }
  return nullptr;
}

bool match_component_exclude(const Observation& gt_obs, int n,
                             const Observation& cand_obs,
                             const MatchConfig& cfg) {
  return match_component_exact(gt_obs, n, cand_obs, cfg) == nullptr;
}

bool match_textbox_fuzzy(const Observation& gt_obs, int n,
                         const Observation& cand_obs, const MatchConfig& cfg) {
  const vh::UiNode& target = component_at(gt_obs, n);
  std::string gt_text(target.attr_or("text"));
  if (gt_text.empty()) return false;
  similarity::Embedder embedder(cfg.similarity);
  for (const vh::UiNode* node : all_nodes(cand_obs.ui_tree)) {
    std::string cand_text(node->attr_or("text"));
    if (cand_text.empty()) continue;
    if (embedder.similar(gt_text, cand_text, cfg.similarity.theta_textbox)) {
      return true;
    }
  }
  return false;
}

bool match_action(const Observation& gt_obs, const Primitive& primitive,
                  const Observation& cand_obs, const MatchConfig& cfg) {
  using trace::ActionKind;
  if (primitive.keyword == Keyword::type) {
    return cand_obs.action.kind == ActionKind::type &&
           cand_obs.action.text == *primitive.input_text;
  }

  // click<n>
  if (cand_obs.action.kind != ActionKind::click) return false;
  const vh::UiNode* target =
      match_component_exact(gt_obs, *primitive.component_index, cand_obs, cfg);
  if (!target) return false;
  std::string target_xpath = vh::xpath_of(cand_obs.ui_tree, *target);

  std::string clicked_xpath;
  if (cand_obs.action.xpath) {
    clicked_xpath = *cand_obs.action.xpath;
  } else {
    const vh::UiNode* hit =
        vh::node_at_point(cand_obs.ui_tree, cand_obs.action.x, cand_obs.action.y);
    if (!hit) return false;
    clicked_xpath = vh::xpath_of(cand_obs.ui_tree, *hit);
  }
  return clicked_xpath == target_xpath;
}

bool match_system(const Primitive& primitive, const trace::Trace& trace) {
  if (!trace.final_packages) {
    fail(Errc::missing_packages_snapshot,
         "trace has no final packages snapshot");
  }
  bool present = trace.final_packages->count(*primitive.app_id) > 0;
  return primitive.keyword == Keyword::installed ? present : !present;
}

namespace {

struct PrimitiveOutcome {
  bool matched = false;
  std::string evidence;
};

PrimitiveOutcome eval_primitive(const Primitive& primitive,
                                const Observation& gt_obs,
                                const Observation& cand_obs,
                                const MatchConfig& cfg,
                                const similarity::Embedder& embedder) {
  switch (primitive.keyword) {
    case Keyword::activity: {
      bool ok = match_activity(gt_obs, cand_obs);
      return {ok, ok ? cand_obs.activity : ""};
    }
    case Keyword::fuzzy_screen: {
      double score = embedder.score(vh::simplify_to_html(gt_obs.ui_tree),
                                    vh::simplify_to_html(cand_obs.ui_tree));
      bool ok = score >= cfg.similarity.theta_screen;
      std::ostringstream evidence;
      evidence << "cosine=" << score;
      return {ok, ok ? evidence.str() : ""};
    }
    case Keyword::exact: {
      const vh::UiNode* node =
          match_component_exact(gt_obs, *primitive.component_index, cand_obs, cfg);
      return {node != nullptr,
              node ? vh::xpath_of(cand_obs.ui_tree, *node) : ""};
    }
    case Keyword::exclude: {
      bool ok = match_component_exclude(gt_obs, *primitive.component_index,
                                        cand_obs, cfg);
      return {ok, ok ? "component absent from candidate screen" : ""};
    }
    case Keyword::fuzzy_textbox: {
      const vh::UiNode& target = component_at(gt_obs, *primitive.component_index);
      std::string gt_text(target.attr_or("text"));
      if (gt_text.empty()) return {false, ""};
      for (const vh::UiNode* node : all_nodes(cand_obs.ui_tree)) {
        std::string cand_text(node->attr_or("text"));
        if (cand_text.empty()) continue;
        double score = embedder.score(gt_text, cand_text);
        if (score >= cfg.similarity.theta_textbox) {
          std::ostringstream evidence;
          evidence << "cosine=" << score << " text=\"" << cand_text << "\"";
          return {true, evidence.str()};
        }
      }
      return {false, ""};
    }
    case Keyword::click:
    case Keyword::type: {
      bool ok = match_action(gt_obs, primitive, cand_obs, cfg);
      std::string evidence;
      if (ok) {
        evidence = primitive.keyword == Keyword::type
                       ? "typed \"" + cand_obs.action.text + "\""
                       : "clicked " + cand_obs.action.xpath.value_or("(resolved)");
      }
      return {ok, evidence};
    }
    default:
      return {false, ""};
  }
}

// screen gates first, then in-screen primitives
std::vector<const Primitive*> gate_ordered(const std::vector<Primitive>& primitives) {
  std::vector<const Primitive*> ordered;
  for (const Primitive& p : primitives) {
    if (p.keyword == Keyword::activity || p.keyword == Keyword::fuzzy_screen) {
      ordered.push_back(&p);
    }
  }
  for (const Primitive& p : primitives) {
    Category category = category_of(p.keyword);
    if (category != Category::system && p.keyword != Keyword::activity &&
        p.keyword != Keyword::fuzzy_screen) {
      ordered.push_back(&p);
    }
  }
  return ordered;
}

}  // namespace

Verdict evaluate_trace(const trace::Trace& exec, const trace::Trace& gt,
                       const annotation::Annotation& annotation,
                       const MatchConfig& cfg) {
  similarity::Embedder embedder(cfg.similarity);
  Verdict verdict;
  verdict.completed = true;

  int cursor = 0;  // next candidate observation index
  for (const annotation::KeyState& keystate : annotation.keystates) {
    KeyStateResult result;
    result.gt_step = keystate.gt_step;
    const Observation& gt_obs =
        gt.observations.at(static_cast<std::size_t>(keystate.gt_step));

    std::vector<const Primitive*> obs_prims = gate_ordered(keystate.primitives);

    std::optional<int> matched_at;
    std::vector<PrimitiveResult> obs_results;
    for (int j = cursor; j < static_cast<int>(exec.observations.size()); ++j) {
      const Observation& cand = exec.observations[static_cast<std::size_t>(j)];
      std::vector<PrimitiveResult> attempt;
      bool all_ok = true;
      for (const Primitive* primitive : obs_prims) {
        PrimitiveResult pr;
        pr.primitive = *primitive;
        if (cfg.ablation.count(category_of(primitive->keyword))) {
          pr.matched = true;
          pr.evidence = "category disabled by ablation";
        } else {
          PrimitiveOutcome outcome =
              eval_primitive(*primitive, gt_obs, cand, cfg, embedder);
          pr.matched = outcome.matched;
          pr.evidence = outcome.evidence;
        }
        attempt.push_back(std::move(pr));
        if (!attempt.back().matched) {
          all_ok = false;
          break;  // gates short-circuit the rest of this observation
        }
      }
      if (all_ok) {
        matched_at = j;
        obs_results = std::move(attempt);
        break;
      }
    }

    if (matched_at) {
      result.matched_observation = matched_at;
      cursor = *matched_at + 1;
      result.primitives = std::move(obs_results);
    } else {
      verdict.completed = false;
      if (!verdict.first_unmatched) verdict.first_unmatched = keystate.gt_step;
      for (const Primitive* primitive : obs_prims) {
        result.primitives.push_back({*primitive, false, ""});
      }
    }

    // system primitives are screen-independent; evaluate once
    for (const Primitive& primitive : keystate.primitives) {
      if (category_of(primitive.keyword) != Category::system) continue;
      PrimitiveResult pr;
      pr.primitive = primitive;
      if (cfg.ablation.count(Category::system)) {
        pr.matched = true;
        pr.evidence = "category disabled by ablation";
      } else {
        pr.matched = match_system(primitive, exec);
        if (pr.matched) pr.evidence = *primitive.app_id;
      }
      if (!pr.matched) verdict.completed = false;
      result.primitives.push_back(std::move(pr));
    }

    verdict.keystate_results.push_back(std::move(result));
  }
  return verdict;
}

std::string verdict_to_json(const Verdict& verdict, const std::string& task_id) {
  nlohmann::ordered_json doc;
  doc["task_id"] = task_id;
  doc["completed"] = verdict.completed;
  if (verdict.first_unmatched) {
    doc["first_unmatched"] = *verdict.first_unmatched;
  } else {
    doc["first_unmatched"] = nullptr;
  }
  doc["keystates"] = nlohmann::ordered_json::array();
  for (const KeyStateResult& ks : verdict.keystate_results) {
    nlohmann::ordered_json entry;
    entry["gt_step"] = ks.gt_step;
    if (ks.matched_observation) {
      entry["matched_observation"] = *ks.matched_observation;
    } else {
      entry["matched_observation"] = nullptr;
    }
    entry["primitives"] = nlohmann::ordered_json::array();
    for (const PrimitiveResult& pr : ks.primitives) {
      nlohmann::ordered_json row;
      row["primitive"] = annotation::primitive_to_string(pr.primitive);
      row["matched"] = pr.matched;
      row["evidence"] = pr.evidence;
      entry["primitives"].push_back(std::move(row));
    }
    doc["keystates"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace touchstone::matcher
