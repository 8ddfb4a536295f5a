#include <doctest.h>

#include <json.hpp>

#include "synthetic.hpp"
#include "test_support.hpp"
#include "touchstone/dataset.hpp"
#include "touchstone/error.hpp"
#include "touchstone/metrics.hpp"
#include "touchstone/util.hpp"

using namespace touchstone;
using test_support::fixtures_dir;

namespace {

metrics::LabeledOutcome outcome(const std::string& id, bool e,
                                std::optional<bool> h = std::nullopt) {
  metrics::LabeledOutcome o;
  o.task_id = id;
  o.evaluator_verdict = e;
  o.human_label = h;
  return o;
}

}  // namespace

TEST_CASE("compute_tcr: fractions and the empty-input error") {
  std::vector<metrics::LabeledOutcome> one_of_four{
      outcome("a", true), outcome("b", false), outcome("c", false),
      outcome("d", false)};
  CHECK(metrics::compute_tcr(one_of_four) == doctest::Approx(0.25));

  std::vector<metrics::LabeledOutcome> none{outcome("a", false), outcome("b", false)};
  CHECK(metrics::compute_tcr(none) == 0.0);

  try {
    metrics::compute_tcr({});
    FAIL("expected EmptyInput");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_input);
  }
}

TEST_CASE("compute_tcr: 43-of-496 proportion matches the hand count") {
  std::vector<metrics::LabeledOutcome> suite;
  for (int i = 0; i < 496; ++i) {
    suite.push_back(outcome("t" + std::to_string(i), i < 43));
  }
  CHECK(metrics::compute_tcr(suite) == doctest::Approx(43.0 / 496.0).epsilon(1e-15));
  CHECK(metrics::compute_tcr(suite) * 100.0 == doctest::Approx(8.669).epsilon(1e-3));
}

TEST_CASE("compute_accuracy: agreement fraction and label errors") {
  std::vector<metrics::LabeledOutcome> two_of_three{
      outcome("a", true, true), outcome("b", false, false),
      outcome("c", false, true)};
  CHECK(metrics::compute_accuracy(two_of_three) == doctest::Approx(2.0 / 3.0));

  std::vector<metrics::LabeledOutcome> perfect{
      outcome("a", true, true), outcome("b", false, false)};
  CHECK(metrics::compute_accuracy(perfect) == 1.0);

  std::vector<metrics::LabeledOutcome> unlabeled{outcome("a", true)};
  try {
    metrics::compute_accuracy(unlabeled);
    FAIL("expected MissingLabel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_label);
  }
}

TEST_CASE("labels fixture: twenty tasks, hand-computed 19/20 agreement") {
  std::map<std::string, bool> labels =
      metrics::load_labels(fixtures_dir() / "labels" / "labels_20.tsv");
  REQUIRE(labels.size() == 20);

  nlohmann::json verdicts = nlohmann::json::parse(
      util::read_file(fixtures_dir() / "labels" / "verdicts_20.json"));
  std::vector<metrics::LabeledOutcome> outcomes;
  for (const auto& row : verdicts["tasks"]) {
    std::string id = row["task_id"].get<std::string>();
    outcomes.push_back(outcome(id, row["completed"].get<bool>(), labels.at(id)));
  }
  REQUIRE(outcomes.size() == 20);
  CHECK(metrics::compute_accuracy(outcomes) == 0.95);
}

TEST_CASE("build_report: confusion counts reconcile with accuracy") {
  std::vector<metrics::LabeledOutcome> outcomes{
      outcome("a", true, true),   outcome("b", true, false),
      outcome("c", false, false), outcome("d", false, true),
      outcome("e", true, true),
  };
  metrics::Report report = metrics::build_report(outcomes, "test");
  CHECK(report.confusion.tp == 2);
  CHECK(report.confusion.fp == 1);
  CHECK(report.confusion.tn == 1);
  CHECK(report.confusion.fn == 1);
  CHECK(report.confusion.total() == 5);
  REQUIRE(report.accuracy.has_value());
  CHECK(*report.accuracy ==
        doctest::Approx(1.0 - (report.confusion.fp + report.confusion.fn) / 5.0));
  CHECK(report.tcr == doctest::Approx(3.0 / 5.0));
}

TEST_CASE("build_report: per-category breakdowns") {
  std::vector<metrics::LabeledOutcome> outcomes{
      outcome("a", true), outcome("b", false), outcome("c", true)};
  outcomes[0].tags = {"source:aitw", "steps<=4"};
  outcomes[1].tags = {"source:aitw", "steps5-8"};
  outcomes[2].tags = {"source:generated", "steps<=4"};

  metrics::Report report = metrics::build_report(outcomes, "test");
  CHECK(report.categories.at("source:aitw").count == 2);
  CHECK(report.categories.at("source:aitw").tcr == doctest::Approx(0.5));
  CHECK(report.categories.at("steps<=4").tcr == doctest::Approx(1.0));
  CHECK(report.categories.at("steps5-8").tcr == doctest::Approx(0.0));
}

TEST_CASE("step buckets follow the difficulty split") {
  CHECK(metrics::step_bucket(2) == "steps<=4");
  CHECK(metrics::step_bucket(4) == "steps<=4");
  CHECK(metrics::step_bucket(5) == "steps5-8");
  CHECK(metrics::step_bucket(8) == "steps5-8");
  CHECK(metrics::step_bucket(9) == "steps>8");
  CHECK(metrics::step_bucket(42) == "steps>8");
}

TEST_CASE("load_labels: malformed lines rejected") {
  test_support::TempDir tmp("labels");
  util::write_file(tmp / "bad.tsv", "task1\tmaybe\n");
  try {
    metrics::load_labels(tmp / "bad.tsv");
    FAIL("expected MissingLabel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::missing_label);
  }
}

TEST_CASE("ablation_run: nine-row structure, vacuity row, and monotone direction") {
  std::vector<dataset::DatasetTask> tasks =
      dataset::load_dataset(fixtures_dir() / "dataset");
  std::vector<metrics::EvalCase> cases;
  for (const auto& task : tasks) {
    metrics::EvalCase c;
    c.task_id = task.task_id;
    c.exec = &task.gt;  // self-evaluation suite
    c.gt = &task.gt;
    c.annotation = &task.annotation;
    cases.push_back(c);
  }

  std::vector<metrics::AblationRow> rows = metrics::standard_ablation_rows();
  REQUIRE(rows.size() == 9);
  CHECK(rows[0].name == "complete");
  CHECK(rows[1].name == "w/o exact match");
  CHECK(rows[6].name == "w/o fuzzy match");

  matcher::MatchConfig base;
  std::vector<metrics::Report> reports = metrics::ablation_run(cases, rows, base);
  REQUIRE(reports.size() == 9);

  // self-evaluation completes everything, so every row reports TCR 1
  for (const metrics::Report& report : reports) CHECK(report.tcr == 1.0);

  // on traces that do NOT all self-complete, disabling exact match can
  // only raise TCR; build such a suite from mismatched pairings
  std::vector<metrics::EvalCase> crossed;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    metrics::EvalCase c;
    c.task_id = tasks[i].task_id;
    c.exec = &tasks[(i + 1) % tasks.size()].gt;  // wrong trace on purpose
    c.gt = &tasks[i].gt;
    c.annotation = &tasks[i].annotation;
    crossed.push_back(c);
  }
  metrics::Report full = metrics::evaluate_cases(crossed, base, "full");
  matcher::MatchConfig no_exact = base;
  no_exact.ablation = rows[1].disabled;
  metrics::Report wo_exact = metrics::evaluate_cases(crossed, no_exact, "wo");
  CHECK(wo_exact.tcr >= full.tcr);

  // disable-all vacuity: TCR equals the share of pairings with enough steps
  matcher::MatchConfig all_off = base;
  all_off.ablation = rows[1].disabled;
  for (matcher::Category category : rows[6].disabled) all_off.ablation.insert(category);
  metrics::Report vacuous = metrics::evaluate_cases(crossed, all_off, "vacuous");
  std::size_t enough = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (crossed[i].exec->observations.size() >=
        tasks[i].annotation.keystates.size()) {
      ++enough;
    }
  }
  CHECK(vacuous.tcr ==
        doctest::Approx(static_cast<double>(enough) / tasks.size()).epsilon(1e-12));
}

TEST_CASE("report_markdown: one row per report") {
  std::vector<metrics::LabeledOutcome> outcomes{outcome("a", true, true)};
  std::vector<metrics::Report> reports{metrics::build_report(outcomes, "complete"),
                                       metrics::build_report(outcomes, "w/o exact match")};
  std::string md = metrics::report_markdown(reports);
  CHECK(md.find("| complete |") != std::string::npos);
  CHECK(md.find("| w/o exact match |") != std::string::npos);
  CHECK(md.find("100.00") != std::string::npos);
}
