#include <doctest.h>

#include <queue>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "test_support.hpp"
#include "touchstone/agentenv.hpp"
#include "touchstone/agentenv_http.hpp"
#include "touchstone/dataset.hpp"
#include "touchstone/error.hpp"
#include "touchstone/matcher.hpp"
#include "touchstone/util.hpp"

using namespace touchstone;
using test_support::fixtures_dir;
using test_support::TempDir;

namespace {

std::string tiny_screen(const std::string& label) {
  return "<hierarchy rotation=\"0\">"
         "<node class=\"android.widget.FrameLayout\" text=\"\" "
         "bounds=\"[0,0][100,100]\">"
         "<node class=\"android.widget.Button\" text=\"" + label +
         "\" clickable=\"true\" focused=\"false\" bounds=\"[0,0][100,50]\"/>"
         "</node></hierarchy>";
}

std::string two_screen_pack(const std::string& to_screen) {
  nlohmann::json pack;
  pack["app_id"] = "com.demo";
  pack["initial_screen"] = "first";
  pack["initial_packages"] = {"com.demo"};
  pack["screens"]["first"] = {{"activity", "com.demo.First"},
                              {"vh", tiny_screen("Go")}};
  pack["screens"]["second"] = {{"activity", "com.demo.Second"},
                               {"vh", tiny_screen("Done")}};
  pack["transitions"] = {{{"from", "first"},
                          {"to", to_screen},
                          {"trigger", {{"action", "click"},
                                       {"xpath", "/hierarchy/node[1]/node[1]"}}}}};
  return pack.dump();
}

trace::TaskRecord demo_task() {
  return {"demo_task", "poke around", trace::SourceTag::synthetic};
}

}  // namespace

TEST_CASE("parse_app_pack: minimal two-screen pack") {
  agentenv::DeviceModel model = agentenv::parse_app_pack(two_screen_pack("second"));
  CHECK(model.screens.size() == 2);
  CHECK(model.initial_screen == "first");
  CHECK(model.transitions.size() == 1);
  CHECK(model.screens.at("first").activity == "com.demo.First");
  // generated screenshots are valid, distinct-per-screen PNGs
  CHECK(model.screens.at("first").screenshot_png.size() > 8);
  CHECK(model.screens.at("first").screenshot_png !=
        model.screens.at("second").screenshot_png);
}

TEST_CASE("parse_app_pack: dangling screen and ambiguity rejected") {
  try {
    agentenv::parse_app_pack(two_screen_pack("nowhere"));
    FAIL("expected DanglingScreen");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dangling_screen);
  }

  nlohmann::json pack = nlohmann::json::parse(two_screen_pack("second"));
  pack["transitions"].push_back(
      {{"from", "first"},
       {"to", "second"},
       {"trigger", {{"action", "click"}}}});  // any-click overlaps the xpath click
  try {
    agentenv::parse_app_pack(pack.dump());
    FAIL("expected AmbiguousTransition");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ambiguous_transition);
  }

  // package-exclusive triggers are not ambiguous
  nlohmann::json gated = nlohmann::json::parse(two_screen_pack("second"));
  gated["transitions"][0]["trigger"]["requires_package"] = "com.flag";
  gated["transitions"].push_back(
      {{"from", "first"},
       {"to", "second"},
       {"trigger", {{"action", "click"},
                    {"xpath", "/hierarchy/node[1]/node[1]"},
                    {"requires_package_absent", "com.flag"}}}});
  CHECK(agentenv::parse_app_pack(gated.dump()).transitions.size() == 2);

  try {
    agentenv::parse_app_pack("{\"app_id\": 3}");
    FAIL("expected PackSyntax");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::pack_syntax);
  }
}

TEST_CASE("excel pack: both branches reach the login screen (graph walk)") {
  agentenv::DeviceModel model =
      agentenv::load_app_pack(fixtures_dir() / "packs" / "excel.pack.json");

  // breadth-first reachability ignoring trigger predicates
  auto reachable_from = [&](const std::string& start) {
    std::set<std::string> seen{start};
    std::queue<std::string> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      std::string at = frontier.front();
      frontier.pop();
      for (const agentenv::Transition& t : model.transitions) {
        if (t.from == at && seen.insert(t.to).second) frontier.push(t.to);
      }
    }
    return seen;
  };
  std::set<std::string> reachable = reachable_from("home");
  CHECK(reachable.count("excel_login") == 1);

  // two distinct first hops out of home lead to login: the store branch
  // and the direct icon branch
  int branches_reaching_login = 0;
  for (const agentenv::Transition& t : model.transitions) {
    if (t.from != "home") continue;
    if (reachable_from(t.to).count("excel_login")) ++branches_reaching_login;
  }
  CHECK(branches_reaching_login == 2);
}

TEST_CASE("session: get_* calls are pure") {
  agentenv::DeviceModel model = agentenv::parse_app_pack(two_screen_pack("second"));
  agentenv::Session session(model, demo_task());

  std::string before = session.view_hierarchy();
  std::uint64_t shot_before = util::fnv1a64(session.screenshot_base64());
  CHECK(session.task_instruction() == "poke around");
  CHECK(session.view_hierarchy() == before);
  CHECK(util::fnv1a64(session.screenshot_base64()) == shot_before);
  CHECK(session.steps_recorded() == 0);
}

TEST_CASE("session: transitions update the observed hierarchy") {
  agentenv::DeviceModel model = agentenv::parse_app_pack(two_screen_pack("second"));
  agentenv::Session session(model, demo_task());
  CHECK(session.view_hierarchy().find(">Go<") == std::string::npos);  // attr form
  CHECK(session.view_hierarchy().find("text=\"Go\"") != std::string::npos);

  session.post_click(0.5, 0.25);  // the Go button
  CHECK(session.view_hierarchy().find("text=\"Done\"") != std::string::npos);

  // a stray tap is recorded but changes nothing
  std::string stable = session.view_hierarchy();
  session.post_click(0.5, 0.9);
  CHECK(session.view_hierarchy() == stable);
  CHECK(session.steps_recorded() == 2);
}

TEST_CASE("session: typed text lands in the focused editable node and parses back") {
  agentenv::DeviceModel model =
      agentenv::load_app_pack(fixtures_dir() / "packs" / "notes.pack.json");
  agentenv::Session session(model, demo_task());
  session.post_click(0.5, 0.245);  // New note
  session.post_type("Buy milk");

  std::string xml = session.view_hierarchy();
  vh::UiTree tree = vh::parse_vh(xml);  // parse-back oracle
  bool found = false;
  auto walk = [&](const vh::UiNode& node, const auto& self) -> void {
    if (node.attr_or("text") == "Buy milk" &&
        node.attr_or("class") == "android.widget.EditText") {
      found = true;
      CHECK(node.attr_true("focused"));
    }
    for (const vh::UiNode& child : node.children) self(child, self);
  };
  for (const vh::UiNode& top : tree.root.children) walk(top, walk);
  CHECK(found);

  // appending keeps going
  session.post_type(" and eggs");
  CHECK(session.view_hierarchy().find("Buy milk and eggs") != std::string::npos);
}

TEST_CASE("session: coordinate validation and terminal-state rejection") {
  agentenv::DeviceModel model = agentenv::parse_app_pack(two_screen_pack("second"));
  agentenv::Session session(model, demo_task());
  try {
    session.post_click(1.2, 0.5);
    FAIL("expected CoordinatesOutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::coordinates_out_of_range);
  }

  session.post_task_complete();
  CHECK(session.status() == agentenv::SessionStatus::complete);
  for (auto poke : {0, 1, 2}) {
    try {
      if (poke == 0) session.post_click(0.5, 0.5);
      if (poke == 1) session.post_type("x");
      if (poke == 2) (void)session.view_hierarchy();
      FAIL("expected SessionTerminated");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::session_terminated);
    }
  }
}

TEST_CASE("session: recording produces one observation per action") {
  agentenv::DeviceModel model = agentenv::parse_app_pack(two_screen_pack("second"));
  agentenv::Session session(model, demo_task());
  session.post_click(0.5, 0.25);
  session.post_press_home();
  session.post_task_complete();

  TempDir tmp("record3");
  trace::Trace t = session.record(tmp / "out");
  REQUIRE(t.observations.size() == 3);
  CHECK(t.observations[0].action.kind == trace::ActionKind::click);
  CHECK(t.observations[1].action.kind == trace::ActionKind::press_home);
  CHECK(t.observations[2].action.kind == trace::ActionKind::status_complete);
  // the click was resolved to the Go button at record time
  CHECK(t.observations[0].action.xpath == "/hierarchy/node[1]/node[1]");
  REQUIRE(t.final_packages.has_value());
  CHECK(t.final_packages->count("com.demo") == 1);
}

TEST_CASE("session: install branch lands in the final packages snapshot") {
  agentenv::DeviceModel model =
      agentenv::load_app_pack(fixtures_dir() / "packs" / "excel.pack.json");
  trace::TaskRecord task{"excel_open", "open excel", trace::SourceTag::generated};
  agentenv::Session session(model, task);

  // install path: store, search box, query, install, open, sign in
  session.post_click(0.1667, 0.2604);
  session.post_click(0.5, 0.0990);
  session.post_type("Microsoft Excel");
  session.post_click(0.8241, 0.2083);
  const auto& state = session.device_state();
  CHECK(state.packages.count("com.microsoft.office.excel") == 1);
  session.post_click(0.8241, 0.2083);
  session.post_click(0.5, 0.5104);
  session.post_task_complete();

  TempDir tmp("excel");
  trace::Trace t = session.record(tmp / "out");
  CHECK(t.final_packages->count("com.microsoft.office.excel") == 1);
  // the first step's snapshot predates the install
  REQUIRE(t.observations[0].packages.has_value());
  CHECK(t.observations[0].packages->count("com.microsoft.office.excel") == 0);
}

TEST_CASE("session: deterministic dumps and recordings across runs") {
  agentenv::DeviceModel model =
      agentenv::load_app_pack(fixtures_dir() / "packs" / "notes.pack.json");
  auto run = [&](const std::filesystem::path& dir) {
    agentenv::Session session(model, demo_task());
    session.post_click(0.5, 0.245);
    session.post_type("Same text");
    session.post_click(0.824, 0.057);
    session.post_task_complete();
    return session.record(dir);
  };
  TempDir tmp("det");
  trace::Trace a = run(tmp / "a");
  trace::Trace b = run(tmp / "b");
  CHECK(trace::traces_equal(a, b));
  for (std::size_t i = 0; i < a.observations.size(); ++i) {
    CHECK(a.observations[i].vh_xml == b.observations[i].vh_xml);  // byte identical
  }
}

TEST_CASE("session: full excel run evaluates completed against the annotation") {
  agentenv::DeviceModel model =
      agentenv::load_app_pack(fixtures_dir() / "packs" / "excel.pack.json");
  dataset::DatasetTask task = [] {
    for (auto& t : dataset::load_dataset(fixtures_dir() / "dataset")) {
      if (t.task_id == "excel_open") return std::move(t);
    }
    throw std::runtime_error("fixture missing");
  }();

  agentenv::Session session(model, task.gt.task);
  for (const trace::Action& action : trace::action_sequence(task.gt)) {
    session.apply(action);
  }
  TempDir tmp("selfeval");
  trace::Trace recorded = session.record(tmp / "out");

  matcher::MatchConfig cfg;
  matcher::Verdict verdict =
      matcher::evaluate_trace(recorded, task.gt, task.annotation, cfg);
  CHECK(verdict.completed);
}

TEST_CASE("env server: the full agent API over loopback") {
  agentenv::DeviceModel model = agentenv::parse_app_pack(two_screen_pack("second"));
  TempDir tmp("http");
  agentenv::EnvServer server(model, demo_task(), {}, tmp / "recorded");

  int port = 0;
  std::thread pump([&] {
    server.serve(0, [&](int bound) { port = bound; });
  });
  while (port == 0) std::this_thread::yield();

  httplib::Client client("127.0.0.1", port);
  client.set_read_timeout(5, 0);

  auto instruction = client.Get("/task_instruction");
  REQUIRE(instruction);
  CHECK(nlohmann::json::parse(instruction->body)["task_instruction"] == "poke around");

  auto vh_reply = client.Get("/view_hierarchy");
  REQUIRE(vh_reply);
  std::string xml = nlohmann::json::parse(vh_reply->body)["view_hierarchy"];
  CHECK(xml.find("text=\"Go\"") != std::string::npos);

  auto shot = client.Get("/screenshot");
  REQUIRE(shot);
  std::string b64 = nlohmann::json::parse(shot->body)["screenshot"];
  std::vector<unsigned char> png = util::base64_decode(b64);
  REQUIRE(png.size() > 8);
  CHECK(png[1] == 'P');  // PNG signature
  CHECK(png[2] == 'N');

  auto click = client.Post("/click", nlohmann::json{{"x", 0.5}, {"y", 0.25}}.dump(),
                           "application/json");
  REQUIRE(click);
  CHECK(click->status == 200);

  auto bad = client.Post("/click", nlohmann::json{{"x", 7.0}, {"y", 0.0}}.dump(),
                         "application/json");
  REQUIRE(bad);
  CHECK(bad->status == 400);

  auto swipe = client.Post(
      "/swipe",
      nlohmann::json{{"touch_x", 0.5}, {"touch_y", 0.8}, {"lift_x", 0.5},
                     {"lift_y", 0.2}, {"duration", 200}}.dump(),
      "application/json");
  REQUIRE(swipe);
  CHECK(swipe->status == 200);

  for (const char* endpoint : {"/press_home", "/press_back"}) {
    auto pressed = client.Post(endpoint, "", "application/json");
    REQUIRE(pressed);
    CHECK(pressed->status == 200);
  }
  auto typed = client.Post("/type", nlohmann::json{{"text", "hi"}}.dump(),
                           "application/json");
  REQUIRE(typed);
  CHECK(typed->status == 200);

  auto done = client.Post("/task_complete", "", "application/json");
  REQUIRE(done);
  CHECK(done->status == 200);

  // terminal session: posts now conflict, status reports complete
  auto late = client.Post("/click", nlohmann::json{{"x", 0.5}, {"y", 0.5}}.dump(),
                          "application/json");
  REQUIRE(late);
  CHECK(late->status == 409);
  auto session_status = client.Get("/status");
  REQUIRE(session_status);
  CHECK(nlohmann::json::parse(session_status->body)["status"] == "complete");

  auto shutdown = client.Post("/shutdown", "", "application/json");
  REQUIRE(shutdown);
  pump.join();

  // the terminal post triggered recording into the requested directory
  trace::Trace recorded = trace::load_trace(tmp / "recorded");
  CHECK(recorded.observations.size() == 6);
  CHECK(recorded.observations[2].action.kind == trace::ActionKind::press_home);
  CHECK(recorded.observations[4].action.kind == trace::ActionKind::type);
}
