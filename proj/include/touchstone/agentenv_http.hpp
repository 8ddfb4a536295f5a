#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "touchstone/agentenv.hpp"

namespace touchstone::agentenv {

// HTTP binding mirroring the agent-facing API one endpoint per call:
//   GET  /task_instruction /screenshot /view_hierarchy
//   POST /click /swipe /type /press_home /press_back
//        /task_complete /task_impossible
// plus two harness endpoints: GET /status and POST /shutdown.
// JSON request/response bodies; screenshots are base64 strings.
class EnvServer {
 public:
  EnvServer(const DeviceModel& model, trace::TaskRecord task,
            std::set<std::string> extra_initial_packages = {},
            std::optional<std::filesystem::path> record_dir = std::nullopt);
  ~EnvServer();

  // Binds 127.0.0.1:<port> (port 0 picks a free port) and serves until
  // /shutdown or stop(). Returns the bound port via on_ready before
  // blocking. Returns false when binding fails.
  bool serve(int port, const std::function<void(int)>& on_ready);
  void stop();

  Session& session() { return *session_; }

 private:
  std::unique_ptr<Session> session_;
  std::optional<std::filesystem::path> record_dir_;
  bool recorded_ = false;
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace touchstone::agentenv
