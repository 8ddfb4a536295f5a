#include "touchstone/cli.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "touchstone/agentenv.hpp"
#include "touchstone/agentenv_http.hpp"
#include "touchstone/dataset.hpp"
#include "touchstone/error.hpp"
#include "touchstone/metrics.hpp"
#include "touchstone/util.hpp"

namespace touchstone::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

const char* evaluator_name(Evaluator evaluator) {
  switch (evaluator) {
    case Evaluator::essential: return "essential";
    case Evaluator::stepwise: return "stepwise";
    case Evaluator::lcs: return "lcs";
  }
  return "essential";
}

int exit_code_for(const Error& e) {
  return e.code() == Errc::config_error ? kExitUsage : kExitData;
}

void check_flag_compatibility(const RunConfig& cfg) {
  const bool essential = cfg.evaluator == Evaluator::essential;
  for (const std::string& flag : cfg.evaluator_specific_flags) {
    bool essential_only = flag == "--theta-screen" || flag == "--theta-textbox" ||
                          flag == "--ablate" || flag == "--embed-endpoint";
    bool baseline_only = flag == "--click-tolerance";
    if (essential_only && !essential) {
      fail(Errc::config_error, flag + " applies only to the essential evaluator");
    }
    if (baseline_only && essential) {
      fail(Errc::config_error,
           flag + " applies only to the stepwise/lcs evaluators");
    }
  }
}

struct TaskResult {
  std::string task_id;
  bool completed = false;
  std::optional<matcher::Verdict> verdict;  // essential evaluator only
  std::vector<std::string> tags;
};

TaskResult evaluate_one(const dataset::DatasetTask& task, const trace::Trace& exec,
                        const RunConfig& cfg) {
  TaskResult result;
  result.task_id = task.task_id;
  result.tags = {std::string("source:") + trace::source_tag_name(task.gt.task.source_tag),
                 metrics::step_bucket(task.gt.observations.size())};
  switch (cfg.evaluator) {
    case Evaluator::essential: {
      matcher::Verdict verdict =
          matcher::evaluate_trace(exec, task.gt, task.annotation, cfg.match);
      result.completed = verdict.completed;
      result.verdict = std::move(verdict);
      break;
    }
    case Evaluator::stepwise: {
      auto gt_actions = trace::action_sequence(task.gt);
      auto exec_actions = trace::action_sequence(exec);
      result.completed =
          baselines::stepwise_match(gt_actions, exec_actions, cfg.action_match);
      break;
    }
    case Evaluator::lcs: {
      auto gt_actions = trace::action_sequence(task.gt);
      auto exec_actions = trace::action_sequence(exec);
      result.completed =
          baselines::lcs_match(gt_actions, exec_actions, cfg.action_match);
      break;
    }
  }
  return result;
}

ordered_json config_json(const RunConfig& cfg) {
  ordered_json out;
  out["dataset"] = cfg.dataset_dir.string();
  out["traces"] = cfg.traces_dir.string();
  out["evaluator"] = evaluator_name(cfg.evaluator);
  out["theta_screen"] = cfg.match.similarity.theta_screen;
  out["theta_textbox"] = cfg.match.similarity.theta_textbox;
  out["click_tolerance"] = cfg.action_match.click_tolerance;
  out["backend"] =
      cfg.match.similarity.backend == similarity::Backend::lexical ? "lexical" : "external";
  if (cfg.match.similarity.external_endpoint) {
    out["embed_endpoint"] = *cfg.match.similarity.external_endpoint;
  }
  ordered_json ablation = ordered_json::array();
  for (matcher::Category category : cfg.match.ablation) {
    ablation.push_back(matcher::category_name(category));
  }
  out["ablation"] = std::move(ablation);
  ordered_json attrs = ordered_json::array();
  for (const std::string& attr : cfg.match.compared_attrs) attrs.push_back(attr);
  out["compared_attrs"] = std::move(attrs);
  out["labels"] = cfg.labels_file ? cfg.labels_file->string() : "";
  out["jobs"] = cfg.jobs;
  return out;
}

std::string timestamp_utc() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

int cmd_eval(const RunConfig& cfg) {
  try {
    check_flag_compatibility(cfg);
    if (cfg.jobs < 1) fail(Errc::config_error, "--jobs must be >= 1");

    std::vector<dataset::DatasetTask> tasks = dataset::load_dataset(cfg.dataset_dir);
    if (!cfg.task_filter.empty()) {
      std::vector<dataset::DatasetTask> filtered;
      for (auto& task : tasks) {
        for (const std::string& wanted : cfg.task_filter) {
          if (task.task_id == wanted) {
            filtered.push_back(std::move(task));
            break;
          }
        }
      }
      if (filtered.size() != cfg.task_filter.size()) {
        fail(Errc::dataset_trace_mismatch, "a task in --tasks is not in the dataset");
      }
      tasks = std::move(filtered);
    }

    std::map<std::string, bool> labels;
    if (cfg.labels_file) labels = metrics::load_labels(*cfg.labels_file);

    std::vector<TaskResult> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto worker = [&]() {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        try {
          trace::Trace exec =
              dataset::load_candidate_trace(cfg.traces_dir, tasks[i].task_id);
          if (exec.task.task_id != tasks[i].task_id) {
            fail(Errc::dataset_trace_mismatch,
                 "trace task_id '" + exec.task.task_id + "' does not match '" +
                     tasks[i].task_id + "'");
          }
          results[i] = evaluate_one(tasks[i], exec, cfg);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };

    std::vector<std::thread> pool;
    int width = std::min<int>(cfg.jobs, static_cast<int>(tasks.size()));
    for (int t = 0; t < std::max(1, width); ++t) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
    if (first_error) std::rethrow_exception(first_error);

    std::vector<metrics::LabeledOutcome> outcomes;
    outcomes.reserve(results.size());
    for (const TaskResult& result : results) {
      metrics::LabeledOutcome outcome;
      outcome.task_id = result.task_id;
      outcome.evaluator_verdict = result.completed;
      outcome.tags = result.tags;
      if (cfg.labels_file) {
        auto it = labels.find(result.task_id);
        if (it == labels.end()) {
          fail(Errc::missing_label, "no human label for task '" + result.task_id + "'");
        }
        outcome.human_label = it->second;
      }
      outcomes.push_back(std::move(outcome));
    }
    metrics::Report report =
        metrics::build_report(outcomes, evaluator_name(cfg.evaluator));

    ordered_json doc;
    doc["tool"] = "touchstone";
    if (!cfg.deterministic) doc["generated_at"] = timestamp_utc();
    doc["config"] = config_json(cfg);
    ordered_json summary;
    summary["total"] = report.total;
    summary["completed"] = report.completed;
    summary["tcr"] = report.tcr;
    if (report.accuracy) summary["accuracy"] = *report.accuracy;
    else summary["accuracy"] = nullptr;
    summary["confusion"] = {{"tp", report.confusion.tp},
                            {"fp", report.confusion.fp},
                            {"tn", report.confusion.tn},
                            {"fn", report.confusion.fn}};
    doc["summary"] = std::move(summary);
    ordered_json categories = ordered_json::object();
    for (const auto& [tag, stats] : report.categories) {
      ordered_json entry;
      entry["count"] = stats.count;
      entry["tcr"] = stats.tcr;
      if (stats.accuracy) entry["accuracy"] = *stats.accuracy;
      else entry["accuracy"] = nullptr;
      categories[tag] = std::move(entry);
    }
    doc["categories"] = std::move(categories);
    ordered_json task_rows = ordered_json::array();
    for (std::size_t i = 0; i < results.size(); ++i) {
      ordered_json row;
      row["task_id"] = results[i].task_id;
      row["completed"] = results[i].completed;
      if (outcomes[i].human_label) row["human_label"] = *outcomes[i].human_label;
      if (results[i].verdict) {
        row["verdict"] = ordered_json::parse(
            matcher::verdict_to_json(*results[i].verdict, results[i].task_id));
      }
      task_rows.push_back(std::move(row));
    }
    doc["tasks"] = std::move(task_rows);

    std::string json_text = doc.dump(2) + "\n";
    if (cfg.report_json) util::write_file(*cfg.report_json, json_text);

    if (cfg.report_md) {
      std::ostringstream md;
      md << "# touchstone evaluation report\n\n";
      md << "- evaluator: " << evaluator_name(cfg.evaluator) << "\n";
      md << "- tasks: " << report.total << "\n";
      md << "- TCR: " << report.tcr * 100.0 << "%\n";
      if (report.accuracy) md << "- accuracy: " << *report.accuracy * 100.0 << "%\n";
      md << "\n| task | completed |" << (cfg.labels_file ? " human |" : "") << "\n";
      md << "|---|---|" << (cfg.labels_file ? "---|" : "") << "\n";
      for (std::size_t i = 0; i < results.size(); ++i) {
        md << "| " << results[i].task_id << " | "
           << (results[i].completed ? "yes" : "no") << " |";
        if (cfg.labels_file) {
          md << ' ' << (*outcomes[i].human_label ? "yes" : "no") << " |";
        }
        md << "\n";
      }
      util::write_file(*cfg.report_md, md.str());
    }

    std::cout << "evaluated " << report.total << " task(s), TCR "
              << report.tcr * 100.0 << "%";
    if (report.accuracy) std::cout << ", accuracy " << *report.accuracy * 100.0 << "%";
    std::cout << std::endl;
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  }
}

int cmd_validate(const fs::path& dataset_dir) {
  try {
    std::vector<dataset::DatasetTask> tasks = dataset::load_dataset(dataset_dir);
    std::size_t issue_count = 0;
    for (const dataset::DatasetTask& task : tasks) {
      std::vector<annotation::LintIssue> issues =
          annotation::lint_annotation(task.annotation, task.gt);
      for (const annotation::LintIssue& issue : issues) {
        std::cout << task.task_id << ": keystate " << issue.keystate << ": "
                  << issue.message << "\n";
        ++issue_count;
      }
    }
    if (issue_count == 0) {
      std::cout << "dataset clean: " << tasks.size() << " task(s)" << std::endl;
      return kExitOk;
    }
    std::cout << issue_count << " issue(s)" << std::endl;
    return kExitData;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  }
}

int cmd_overlay(const fs::path& trace_dir,
                const std::optional<fs::path>& annotation_file,
                const fs::path& out_file) {
  try {
    trace::Trace gt = trace::load_trace(trace_dir);
    std::optional<annotation::Annotation> ann;
    if (annotation_file) {
      ann = annotation::parse_annotation(util::read_file(*annotation_file));
    }
    std::string html = annotation::render_overlay(gt, ann ? &*ann : nullptr);
    util::write_file(out_file, html);
    std::cout << "wrote " << out_file.string() << std::endl;
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  }
}

int cmd_simplify(const fs::path& vh_file) {
  try {
    vh::UiTree tree = vh::parse_vh(util::read_file(vh_file));
    std::cout << vh::simplify_to_html(tree) << std::endl;
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  }
}

namespace {

struct Script {
  trace::TaskRecord task;
  std::set<std::string> initial_packages;
  std::vector<trace::Action> actions;
};

Script load_script(const fs::path& path) {
  ordered_json doc = ordered_json::parse(util::read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("task")) {
    fail(Errc::config_error, path.string() + " is not a script object with 'task'");
  }
  Script script;
  const auto& task = doc["task"];
  script.task.task_id = task.value("task_id", "");
  script.task.instruction = task.value("instruction", "");
  script.task.source_tag =
      trace::source_tag_from(task.value("source_tag", "synthetic"));
  if (script.task.task_id.empty() || script.task.instruction.empty()) {
    fail(Errc::config_error, "script task needs task_id and instruction");
  }
  if (doc.contains("initial_packages")) {
    for (const auto& item : doc["initial_packages"]) {
      script.initial_packages.insert(item.get<std::string>());
    }
  }
  if (doc.contains("actions")) {
    for (const auto& item : doc["actions"]) {
      script.actions.push_back(trace::action_from_json(item.dump()));
    }
  }
  return script;
}

}  // namespace

int cmd_record(const fs::path& pack_file, const fs::path& script_file,
               const fs::path& out_dir) {
  try {
    agentenv::DeviceModel model = agentenv::load_app_pack(pack_file);
    Script script = load_script(script_file);
    if (script.actions.empty()) {
      fail(Errc::config_error, "script has no actions to replay");
    }
    agentenv::Session session(model, script.task, script.initial_packages);
    for (const trace::Action& action : script.actions) session.apply(action);
    if (session.status() == agentenv::SessionStatus::running) {
      fail(Errc::config_error, "script did not end with a status action");
    }
    session.record(out_dir);
    std::cout << "recorded " << session.steps_recorded() << " step(s) to "
              << out_dir.string() << std::endl;
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  }
}

int cmd_serve(const fs::path& pack_file, const fs::path& script_file, int port,
              const std::optional<fs::path>& record_dir) {
  try {
    agentenv::DeviceModel model = agentenv::load_app_pack(pack_file);
    Script script = load_script(script_file);
    agentenv::EnvServer server(model, script.task, script.initial_packages,
                               record_dir);
    bool ok = server.serve(port, [](int bound) {
      std::cout << "listening on " << bound << std::endl;
    });
    if (!ok) {
      std::cerr << "error: cannot bind port " << port << std::endl;
      return kExitData;
    }
    return kExitOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return kExitData;
  }
}

}  // namespace touchstone::cli
