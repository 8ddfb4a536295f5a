#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "touchstone/annotation.hpp"
#include "touchstone/trace.hpp"

namespace touchstone::dataset {

// One annotated task: <dataset>/<task_id>/{gt/, annotation.txt}
struct DatasetTask {
  std::string task_id;
  std::filesystem::path dir;
  trace::Trace gt;
  annotation::Annotation annotation;
};

std::vector<DatasetTask> load_dataset(const std::filesystem::path& dir);

// Candidate trace for a task: <traces>/<task_id> itself, or its gt/
// subdirectory (so a dataset root can serve as its own trace root for
// self-evaluation). raises DatasetTraceMismatch when neither exists.
trace::Trace load_candidate_trace(const std::filesystem::path& traces_root,
                                  const std::string& task_id);

}  // namespace touchstone::dataset
