#include "touchstone/metrics.hpp"

#include <algorithm>
#include <sstream>

#include "touchstone/error.hpp"
#include "touchstone/util.hpp"

namespace touchstone::metrics {

double compute_tcr(std::span<const LabeledOutcome> outcomes) {
  if (outcomes.empty()) fail(Errc::empty_input, "no outcomes");
  std::size_t completed = 0;
  for (const LabeledOutcome& outcome : outcomes) {
    if (outcome.evaluator_verdict) ++completed;
  }
  return static_cast<double>(completed) / static_cast<double>(outcomes.size());
}

double compute_accuracy(std::span<const LabeledOutcome> outcomes) {
  if (outcomes.empty()) fail(Errc::empty_input, "no outcomes");
  std::size_t agree = 0;
  for (const LabeledOutcome& outcome : outcomes) {
    if (!outcome.human_label) {
      fail(Errc::missing_label, "task '" + outcome.task_id + "' has no human label");
    }
    if (outcome.evaluator_verdict == *outcome.human_label) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(outcomes.size());
}

Report build_report(std::span<const LabeledOutcome> outcomes, std::string label) {
  Report report;
  report.label = std::move(label);
  report.total = static_cast<int>(outcomes.size());
  bool all_labeled = !outcomes.empty();
  for (const LabeledOutcome& outcome : outcomes) {
    if (outcome.evaluator_verdict) ++report.completed;
    if (outcome.human_label) {
      bool e = outcome.evaluator_verdict;
      bool h = *outcome.human_label;
      if (e && h) ++report.confusion.tp;
      else if (e && !h) ++report.confusion.fp;
      else if (!e && !h) ++report.confusion.tn;
      else ++report.confusion.fn;
    } else {
      all_labeled = false;
    }
  }
  report.tcr = outcomes.empty() ? 0.0 : compute_tcr(outcomes);
  if (all_labeled) report.accuracy = compute_accuracy(outcomes);

  std::map<std::string, std::vector<LabeledOutcome>> by_tag;
  for (const LabeledOutcome& outcome : outcomes) {
    for (const std::string& tag : outcome.tags) {
      by_tag[tag].push_back(outcome);
    }
  }
  for (const auto& [tag, group] : by_tag) {
    CategoryStats stats;
    stats.count = static_cast<int>(group.size());
    stats.tcr = compute_tcr(group);
    if (std::all_of(group.begin(), group.end(),
                    [](const LabeledOutcome& o) { return o.human_label.has_value(); })) {
      stats.accuracy = compute_accuracy(group);
    }
    report.categories[tag] = stats;
  }
  return report;
}

std::map<std::string, bool> load_labels(const std::filesystem::path& path) {
  std::map<std::string, bool> labels;
  std::string content = util::read_file(path);
  std::size_t start = 0;
  int line_no = 0;
  while (start <= content.size()) {
    std::size_t end = content.find('\n', start);
    std::string line = content.substr(
        start, end == std::string::npos ? std::string::npos : end - start);
    ++line_no;
    while (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) {
      std::size_t tab = line.find('\t');
      std::string value = tab == std::string::npos ? "" : line.substr(tab + 1);
      if (tab == std::string::npos || (value != "true" && value != "false")) {
        fail(Errc::missing_label,
             path.string() + ":" + std::to_string(line_no) +
                 ": expected 'task_id<TAB>true|false'");
      }
      labels[line.substr(0, tab)] = value == "true";
    }
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return labels;
}

std::string step_bucket(std::size_t steps) {
  if (steps <= 4) return "steps<=4";
  if (steps <= 8) return "steps5-8";
  return "steps>8";
}

namespace {

std::string percent(double fraction) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(2);
  out << fraction * 100.0;
  return out.str();
}

}  // namespace

std::string report_markdown(std::span<const Report> reports) {
  std::ostringstream out;
  out << "| Evaluation design | Tasks | TCR % | Acc. % |\n";
  out << "|---|---|---|---|\n";
  for (const Report& report : reports) {
    out << "| " << report.label << " | " << report.total << " | "
        << percent(report.tcr) << " | "
        << (report.accuracy ? percent(*report.accuracy) : std::string("-"))
        << " |\n";
  }
  return out.str();
}

std::vector<AblationRow> standard_ablation_rows() {
  using matcher::Category;
  const std::set<Category> exact = {Category::activity, Category::ui_component_exact,
                                    Category::action, Category::system};
  const std::set<Category> fuzzy = {Category::screen_fuzzy, Category::textbox_fuzzy};

  auto without = [](std::set<Category> base, Category keep) {
    base.erase(keep);
    return base;
  };

  std::vector<AblationRow> rows;
  rows.push_back({"complete", {}});
  rows.push_back({"w/o exact match", exact});
  rows.push_back({"+ activity exact match", without(exact, Category::activity)});
  rows.push_back({"+ action exact match", without(exact, Category::action)});
  rows.push_back({"+ UI component exact match", without(exact, Category::ui_component_exact)});
  rows.push_back({"+ system state exact match", without(exact, Category::system)});
  rows.push_back({"w/o fuzzy match", fuzzy});
  rows.push_back({"+ screen-level fuzzy match", without(fuzzy, Category::screen_fuzzy)});
  rows.push_back({"+ textbox fuzzy match", without(fuzzy, Category::textbox_fuzzy)});
  return rows;
}

Report evaluate_cases(std::span<const EvalCase> cases,
                      const matcher::MatchConfig& cfg, std::string label) {
  std::vector<LabeledOutcome> outcomes;
  outcomes.reserve(cases.size());
  for (const EvalCase& item : cases) {
    matcher::Verdict verdict =
        matcher::evaluate_trace(*item.exec, *item.gt, *item.annotation, cfg);
    LabeledOutcome outcome;
    outcome.task_id = item.task_id;
    outcome.evaluator_verdict = verdict.completed;
    outcome.human_label = item.human_label;
    outcome.tags = item.tags;
    outcomes.push_back(std::move(outcome));
  }
  return build_report(outcomes, std::move(label));
}

std::vector<Report> ablation_run(std::span<const EvalCase> cases,
                                 std::span<const AblationRow> rows,
                                 const matcher::MatchConfig& base) {
  std::vector<Report> reports;
  reports.reserve(rows.size());
  for (const AblationRow& row : rows) {
    matcher::MatchConfig cfg = base;
    cfg.ablation = row.disabled;
    reports.push_back(evaluate_cases(cases, cfg, row.name));
  }
  return reports;
}

}  // namespace touchstone::metrics
