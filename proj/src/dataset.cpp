#include "touchstone/dataset.hpp"

#include <algorithm>

#include "touchstone/error.hpp"
#include "touchstone/util.hpp"

namespace touchstone::dataset {

namespace fs = std::filesystem;

std::vector<DatasetTask> load_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    fail(Errc::missing_file, "dataset directory " + dir.string() + " not found");
  }
  std::vector<fs::path> entries;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_directory()) entries.push_back(entry.path());
  }
  std::sort(entries.begin(), entries.end());

  std::vector<DatasetTask> tasks;
  for (const fs::path& task_dir : entries) {
    DatasetTask task;
    task.task_id = task_dir.filename().string();
    task.dir = task_dir;
    task.gt = trace::load_trace(task_dir / "gt");
    task.annotation =
        annotation::parse_annotation(util::read_file(task_dir / "annotation.txt"));
    tasks.push_back(std::move(task));
  }
  if (tasks.empty()) {
    fail(Errc::missing_file, "dataset " + dir.string() + " has no task directories");
  }
  return tasks;
}

trace::Trace load_candidate_trace(const fs::path& traces_root,
                                  const std::string& task_id) {
  fs::path direct = traces_root / task_id;
  if (fs::exists(direct / "task.json")) return trace::load_trace(direct);
  if (fs::exists(direct / "gt" / "task.json")) return trace::load_trace(direct / "gt");
  fail(Errc::dataset_trace_mismatch,
       "no trace for task '" + task_id + "' under " + traces_root.string());
}

}  // namespace touchstone::dataset
