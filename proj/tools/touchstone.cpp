// touchstone CLI: evaluation, dataset validation, annotation overlays,
// VH simplification, scripted recording, and the agent-facing HTTP
// service. Exit codes: 0 success, 1 usage/config error, 2 data error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "touchstone/cli.hpp"
#include "touchstone/error.hpp"

namespace {

using touchstone::cli::RunConfig;

// --ablate accepts the six category names plus the grouping aliases
// "exact" (activity, ui_component_exact, action, system), "fuzzy"
// (screen_fuzzy, textbox_fuzzy) and "all".
std::set<touchstone::matcher::Category> parse_ablation(
    const std::vector<std::string>& specs) {
  using touchstone::matcher::Category;
  std::set<Category> out;
  for (const std::string& spec : specs) {
    std::size_t start = 0;
    while (start <= spec.size()) {
      std::size_t comma = spec.find(',', start);
      std::string name = spec.substr(
          start, comma == std::string::npos ? std::string::npos : comma - start);
      if (!name.empty()) {
        if (name == "exact") {
          out.insert({Category::activity, Category::ui_component_exact,
                      Category::action, Category::system});
        } else if (name == "fuzzy") {
          out.insert({Category::screen_fuzzy, Category::textbox_fuzzy});
        } else if (name == "all") {
          for (Category c : {Category::activity, Category::ui_component_exact,
                             Category::action, Category::system,
                             Category::screen_fuzzy, Category::textbox_fuzzy}) {
            out.insert(c);
          }
        } else if (auto category = touchstone::matcher::category_from(name)) {
          out.insert(*category);
        } else {
          throw CLI::ValidationError("--ablate", "unknown category '" + name + "'");
        }
      }
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"touchstone: essential-state evaluation for mobile UI task traces"};
  app.require_subcommand(1);

  // --- eval ---------------------------------------------------------------
  RunConfig run;
  std::string evaluator = "essential";
  std::vector<std::string> ablate_specs;
  std::string embed_endpoint;
  std::string labels, report_json, report_md;
  std::vector<std::string> task_filter;

  CLI::App* eval = app.add_subcommand("eval", "evaluate traces against a dataset");
  eval->add_option("--dataset", run.dataset_dir, "dataset directory")->required();
  eval->add_option("--traces", run.traces_dir, "candidate traces root")->required();
  eval->add_option("--evaluator", evaluator, "essential|stepwise|lcs")
      ->check(CLI::IsMember({"essential", "stepwise", "lcs"}));
  auto* theta_screen = eval->add_option("--theta-screen",
                                        run.match.similarity.theta_screen,
                                        "fuzzy screen threshold [0,1]");
  auto* theta_textbox = eval->add_option("--theta-textbox",
                                         run.match.similarity.theta_textbox,
                                         "fuzzy textbox threshold [0,1]");
  auto* click_tol = eval->add_option("--click-tolerance",
                                     run.action_match.click_tolerance,
                                     "baseline click distance tolerance");
  auto* ablate = eval->add_option("--ablate", ablate_specs,
                                  "disable matcher categories (comma separated)");
  auto* endpoint = eval->add_option("--embed-endpoint", embed_endpoint,
                                    "external embedding service URL")
                       ->envname("TOUCHSTONE_EMBED_ENDPOINT");
  eval->add_option("--labels", labels, "human labels file (task_id<TAB>true|false)");
  eval->add_option("--report-json", report_json, "write JSON report here");
  eval->add_option("--report-md", report_md, "write Markdown report here");
  eval->add_option("--tasks", task_filter, "evaluate only these task ids");
  eval->add_option("--jobs", run.jobs, "worker threads")->check(CLI::PositiveNumber);
  eval->add_flag("--deterministic", run.deterministic,
                 "omit timestamps for byte-identical reports");

  // --- validate -----------------------------------------------------------
  std::string validate_dataset;
  CLI::App* validate = app.add_subcommand("validate", "lint a dataset");
  validate->add_option("--dataset", validate_dataset, "dataset directory")->required();

  // --- overlay ------------------------------------------------------------
  std::string overlay_trace, overlay_annotation, overlay_out;
  CLI::App* overlay = app.add_subcommand("overlay", "render an annotation report");
  overlay->add_option("--trace", overlay_trace, "trace directory")->required();
  overlay->add_option("--annotation", overlay_annotation, "annotation file");
  overlay->add_option("--out", overlay_out, "output HTML file")->required();

  // --- simplify -----------------------------------------------------------
  std::string simplify_file;
  CLI::App* simplify = app.add_subcommand("simplify", "print the HTML view of a VH dump");
  simplify->add_option("vh_file", simplify_file, "UIAutomator XML dump")->required();

  // --- record -------------------------------------------------------------
  std::string record_pack, record_script, record_out;
  CLI::App* record = app.add_subcommand("record", "replay a script against an app pack");
  record->add_option("--pack", record_pack, "app pack JSON")->required();
  record->add_option("--script", record_script, "action script JSON")->required();
  record->add_option("--out", record_out, "output trace directory")->required();

  // --- serve --------------------------------------------------------------
  std::string serve_pack, serve_script, serve_out;
  int serve_port = 0;
  CLI::App* serve = app.add_subcommand("serve", "host the agent-facing HTTP API");
  serve->add_option("--pack", serve_pack, "app pack JSON")->required();
  serve->add_option("--script", serve_script, "session script (task + initial packages)")
      ->required();
  serve->add_option("--port", serve_port, "port (0 = any free port)");
  serve->add_option("--out", serve_out, "record the trace here on completion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // keep the exit-code contract: 0 for --help, 1 for any usage error
    int rc = app.exit(e);
    return rc == 0 ? touchstone::cli::kExitOk : touchstone::cli::kExitUsage;
  }

  try {
    if (eval->parsed()) {
      run.evaluator = evaluator == "stepwise" ? touchstone::cli::Evaluator::stepwise
                      : evaluator == "lcs"    ? touchstone::cli::Evaluator::lcs
                                              : touchstone::cli::Evaluator::essential;
      run.match.ablation = parse_ablation(ablate_specs);
      if (!embed_endpoint.empty()) {
        run.match.similarity.backend = touchstone::similarity::Backend::external;
        run.match.similarity.external_endpoint = embed_endpoint;
      }
      if (!labels.empty()) run.labels_file = labels;
      if (!report_json.empty()) run.report_json = report_json;
      if (!report_md.empty()) run.report_md = report_md;
      run.task_filter = task_filter;
      for (const auto& [option, name] :
           {std::pair<CLI::Option*, const char*>{theta_screen, "--theta-screen"},
            {theta_textbox, "--theta-textbox"},
            {click_tol, "--click-tolerance"},
            {ablate, "--ablate"},
            {endpoint, "--embed-endpoint"}}) {
        if (option->count() > 0) run.evaluator_specific_flags.push_back(name);
      }
      return touchstone::cli::cmd_eval(run);
    }
    if (validate->parsed()) return touchstone::cli::cmd_validate(validate_dataset);
    if (overlay->parsed()) {
      std::optional<std::filesystem::path> ann;
      if (!overlay_annotation.empty()) ann = overlay_annotation;
      return touchstone::cli::cmd_overlay(overlay_trace, ann, overlay_out);
    }
    if (simplify->parsed()) return touchstone::cli::cmd_simplify(simplify_file);
    if (record->parsed()) {
      return touchstone::cli::cmd_record(record_pack, record_script, record_out);
    }
    if (serve->parsed()) {
      std::optional<std::filesystem::path> out;
      if (!serve_out.empty()) out = serve_out;
      return touchstone::cli::cmd_serve(serve_pack, serve_script, serve_port, out);
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const touchstone::Error& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return e.code() == touchstone::Errc::config_error ? touchstone::cli::kExitUsage
                                                      : touchstone::cli::kExitData;
  }
  return touchstone::cli::kExitUsage;
}
