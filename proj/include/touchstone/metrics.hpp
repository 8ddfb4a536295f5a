#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "touchstone/annotation.hpp"
#include "touchstone/matcher.hpp"
#include "touchstone/trace.hpp"

namespace touchstone::metrics {

struct LabeledOutcome {
  std::string task_id;
  bool evaluator_verdict = false;          // E_n
  std::optional<bool> human_label;         // H_n
  std::vector<std::string> tags;           // per-category breakdown keys
};

struct Confusion {
  int tp = 0;
  int fp = 0;
  int tn = 0;
  int fn = 0;

  int total() const { return tp + fp + tn + fn; }
};

struct CategoryStats {
  int count = 0;
  double tcr = 0.0;
  std::optional<double> accuracy;
};

struct Report {
  std::string label;
  int total = 0;
  int completed = 0;
  double tcr = 0.0;
  std::optional<double> accuracy;
  Confusion confusion;
  std::map<std::string, CategoryStats> categories;
};

// |{E_n = true}| / |N|. raises EmptyInput
double compute_tcr(std::span<const LabeledOutcome> outcomes);

// Fraction of outcomes where E_n equals H_n. raises EmptyInput, MissingLabel
double compute_accuracy(std::span<const LabeledOutcome> outcomes);

Report build_report(std::span<const LabeledOutcome> outcomes, std::string label);

// Labels file: one "task_id<TAB>true|false" per line.
std::map<std::string, bool> load_labels(const std::filesystem::path& path);

// Difficulty bucket from ground-truth step count: <=4, 5-8, >8.
std::string step_bucket(std::size_t steps);

std::string report_markdown(std::span<const Report> reports);

// --- ablation harness ------------------------------------------------------

struct EvalCase {
  std::string task_id;
  const trace::Trace* exec = nullptr;
  const trace::Trace* gt = nullptr;
  const annotation::Annotation* annotation = nullptr;
  std::optional<bool> human_label;
  std::vector<std::string> tags;
};

struct AblationRow {
  std::string name;
  std::set<matcher::Category> disabled;
};

// The nine-row ablation structure: full pipeline, all-exact disabled,
// exact categories re-enabled one at a time, all-fuzzy disabled, fuzzy
// categories re-enabled one at a time.
std::vector<AblationRow> standard_ablation_rows();

Report evaluate_cases(std::span<const EvalCase> cases,
                      const matcher::MatchConfig& cfg, std::string label);

std::vector<Report> ablation_run(std::span<const EvalCase> cases,
                                 std::span<const AblationRow> rows,
                                 const matcher::MatchConfig& base);

}  // namespace touchstone::metrics
