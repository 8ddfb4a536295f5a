#include "touchstone/agentenv_http.hpp"

#include <mutex>

#include <httplib.h>
#include <json.hpp>

#include "touchstone/error.hpp"

namespace touchstone::agentenv {

using nlohmann::json;

// httplib serves requests from a thread pool; the single session is
// serialized behind one mutex.
struct EnvServer::Impl {
  httplib::Server server;
  std::mutex session_mutex;
};

namespace {

void reply_json(httplib::Response& res, const json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply_json(res, json{{"error", message}}, status);
}

double number_field(const json& body, const char* field) {
  if (!body.contains(field) || !body[field].is_number()) {
    throw Error(Errc::coordinates_out_of_range,
                std::string("missing numeric field '") + field + "'");
  }
  return body[field].get<double>();
}

const char* status_name(SessionStatus status) {
  switch (status) {
    case SessionStatus::running: return "running";
    case SessionStatus::complete: return "complete";
    case SessionStatus::impossible: return "impossible";
  }
  return "running";
}

}  // namespace

EnvServer::EnvServer(const DeviceModel& model, trace::TaskRecord task,
                     std::set<std::string> extra_initial_packages,
                     std::optional<std::filesystem::path> record_dir)
    : session_(std::make_unique<Session>(model, std::move(task),
                                         std::move(extra_initial_packages))),
      record_dir_(std::move(record_dir)),
      impl_(std::make_unique<Impl>()) {
  httplib::Server& server = impl_->server;

  auto handle_post = [this](httplib::Response& res, const std::function<void(const json&)>& fn,
                            const std::string& body_text) {
    json body;
    if (!body_text.empty()) {
      body = json::parse(body_text, nullptr, false);
      if (body.is_discarded()) {
        reply_error(res, 400, "request body is not valid JSON");
        return;
      }
    }
    try {
      std::lock_guard<std::mutex> lock(impl_->session_mutex);
      fn(body);
      // record once the session reaches a terminal state
      if (session_->status() != SessionStatus::running && record_dir_ && !recorded_) {
        session_->record(*record_dir_);
        recorded_ = true;
      }
      reply_json(res, json::object());
    } catch (const Error& e) {
      int status = e.code() == Errc::session_terminated ? 409 : 400;
      reply_error(res, status, e.what());
    }
  };

  server.Get("/task_instruction", [this](const httplib::Request&, httplib::Response& res) {
    std::lock_guard<std::mutex> lock(impl_->session_mutex);
    reply_json(res, json{{"task_instruction", session_->task_instruction()}});
  });
  server.Get("/screenshot", [this](const httplib::Request&, httplib::Response& res) {
    std::lock_guard<std::mutex> lock(impl_->session_mutex);
    try {
      reply_json(res, json{{"screenshot", session_->screenshot_base64()}});
    } catch (const Error& e) {
      reply_error(res, 409, e.what());
    }
  });
  server.Get("/view_hierarchy", [this](const httplib::Request&, httplib::Response& res) {
    std::lock_guard<std::mutex> lock(impl_->session_mutex);
    try {
      reply_json(res, json{{"view_hierarchy", session_->view_hierarchy()}});
    } catch (const Error& e) {
      reply_error(res, 409, e.what());
    }
  });
  server.Get("/status", [this](const httplib::Request&, httplib::Response& res) {
    std::lock_guard<std::mutex> lock(impl_->session_mutex);
    reply_json(res, json{{"status", status_name(session_->status())}});
  });

  server.Post("/click", [this, handle_post](const httplib::Request& req, httplib::Response& res) {
    handle_post(res, [this](const json& body) {
      session_->post_click(number_field(body, "x"), number_field(body, "y"));
    }, req.body);
  });
  server.Post("/swipe", [this, handle_post](const httplib::Request& req, httplib::Response& res) {
    handle_post(res, [this](const json& body) {
      session_->post_swipe(number_field(body, "touch_x"), number_field(body, "touch_y"),
                           number_field(body, "lift_x"), number_field(body, "lift_y"),
                           static_cast<long>(number_field(body, "duration")));
    }, req.body);
  });
  server.Post("/type", [this, handle_post](const httplib::Request& req, httplib::Response& res) {
    handle_post(res, [this](const json& body) {
      if (!body.contains("text") || !body["text"].is_string()) {
        throw Error(Errc::coordinates_out_of_range, "missing string field 'text'");
      }
      session_->post_type(body["text"].get<std::string>());
    }, req.body);
  });
  server.Post("/press_home", [this, handle_post](const httplib::Request& req, httplib::Response& res) {
    handle_post(res, [this](const json&) { session_->post_press_home(); }, req.body);
  });
  server.Post("/press_back", [this, handle_post](const httplib::Request& req, httplib::Response& res) {
    handle_post(res, [this](const json&) { session_->post_press_back(); }, req.body);
  });
  server.Post("/task_complete", [this, handle_post](const httplib::Request& req, httplib::Response& res) {
    handle_post(res, [this](const json&) { session_->post_task_complete(); }, req.body);
  });
  server.Post("/task_impossible", [this, handle_post](const httplib::Request& req, httplib::Response& res) {
    handle_post(res, [this](const json&) { session_->post_task_impossible(); }, req.body);
  });
  server.Post("/shutdown", [this](const httplib::Request&, httplib::Response& res) {
    reply_json(res, json::object());
    impl_->server.stop();
  });
}

EnvServer::~EnvServer() = default;

bool EnvServer::serve(int port, const std::function<void(int)>& on_ready) {
  httplib::Server& server = impl_->server;
  int bound = port;
  if (port == 0) {
    bound = server.bind_to_any_port("127.0.0.1");
    if (bound <= 0) return false;
  } else {
    if (!server.bind_to_port("127.0.0.1", port)) return false;
  }
  if (on_ready) on_ready(bound);
  return server.listen_after_bind();
}

void EnvServer::stop() { impl_->server.stop(); }

}  // namespace touchstone::agentenv
