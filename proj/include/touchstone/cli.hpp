#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "touchstone/baselines.hpp"
#include "touchstone/matcher.hpp"

namespace touchstone::cli {

// Stable exit-code contract.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

enum class Evaluator { essential, stepwise, lcs };

struct RunConfig {
  std::filesystem::path dataset_dir;
  std::filesystem::path traces_dir;
  Evaluator evaluator = Evaluator::essential;

  matcher::MatchConfig match;
  baselines::ActionMatchConfig action_match;
  // flags the operator actually set, for evaluator compatibility checks
  std::vector<std::string> evaluator_specific_flags;

  std::optional<std::filesystem::path> labels_file;
  std::optional<std::filesystem::path> report_json;
  std::optional<std::filesystem::path> report_md;
  std::vector<std::string> task_filter;  // empty = all tasks
  int jobs = 1;
  bool deterministic = false;
};

// Evaluates every dataset task's candidate trace and writes the
// requested reports. Returns an exit code; TCR never affects it.
int cmd_eval(const RunConfig& cfg);

// Loads each task, lints its annotation against its own ground truth,
// prints issues. Exit 0 iff the dataset is clean.
int cmd_validate(const std::filesystem::path& dataset_dir);

int cmd_overlay(const std::filesystem::path& trace_dir,
                const std::optional<std::filesystem::path>& annotation_file,
                const std::filesystem::path& out_file);

int cmd_simplify(const std::filesystem::path& vh_file);

// Replays a scripted action sequence against an app pack and records
// the trace. Script schema:
//   {"task": {...}, "initial_packages": [...], "actions": [action...]}
int cmd_record(const std::filesystem::path& pack_file,
               const std::filesystem::path& script_file,
               const std::filesystem::path& out_dir);

// Serves the agent-facing HTTP API for one session; prints
// "listening on <port>" once bound. Blocks until POST /shutdown.
int cmd_serve(const std::filesystem::path& pack_file,
              const std::filesystem::path& script_file, int port,
              const std::optional<std::filesystem::path>& record_dir);

}  // namespace touchstone::cli
