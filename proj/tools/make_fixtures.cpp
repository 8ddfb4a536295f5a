// Regenerates the fixtures/ tree: app packs, record scripts, recorded
// ground-truth and alternate-path traces, annotations, labels, and
// standalone VH dumps. Output is deterministic; run from the repo root:
//   make_fixtures <repo_root>/fixtures

#include <array>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "touchstone/agentenv.hpp"
#include "touchstone/annotation.hpp"
#include "touchstone/error.hpp"
#include "touchstone/trace.hpp"
#include "touchstone/util.hpp"
#include "touchstone/vh.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;
using namespace touchstone;

namespace {

constexpr int kScreenW = 1080;
constexpr int kScreenH = 1920;

// ---------------------------------------------------------------------------
// VH template builder emitting the full UIAutomator attribute set.

struct N {
  std::string cls = "android.widget.TextView";
  std::string text;
  std::string desc;
  std::string res;
  bool clickable = false;
  bool checkable = false;
  bool checked = false;
  bool scrollable = false;
  bool long_clickable = false;
  bool focusable = false;
  bool focused = false;
  bool selected = false;
  std::array<int, 4> box{0, 0, 0, 0};
  std::vector<N> kids;

  N& at(int l, int t, int r, int b) {
    box = {l, t, r, b};
    return *this;
  }
};

N text_node(const std::string& text, int l, int t, int r, int b,
            const std::string& res = "") {
  N n;
  n.text = text;
  n.res = res;
  n.box = {l, t, r, b};
  return n;
}

N button(const std::string& text, int l, int t, int r, int b,
         const std::string& res = "") {
  N n;
  n.cls = "android.widget.Button";
  n.text = text;
  n.res = res;
  n.clickable = true;
  n.focusable = true;
  n.box = {l, t, r, b};
  return n;
}

N edit_text(const std::string& text, int l, int t, int r, int b,
            const std::string& res = "", bool focused = false) {
  N n;
  n.cls = "android.widget.EditText";
  n.text = text;
  n.res = res;
  n.clickable = true;
  n.focusable = true;
  n.focused = focused;
  n.box = {l, t, r, b};
  return n;
}

N icon(const std::string& desc, int l, int t, int r, int b,
       const std::string& res = "") {
  N n;
  n.cls = "android.widget.ImageView";
  n.desc = desc;
  n.res = res;
  n.clickable = true;
  n.box = {l, t, r, b};
  return n;
}

N check_box(const std::string& text, bool checked, int l, int t, int r, int b) {
  N n;
  n.cls = "android.widget.CheckBox";
  n.text = text;
  n.clickable = true;
  n.checkable = true;
  n.checked = checked;
  n.box = {l, t, r, b};
  return n;
}

N row(const std::string& text, int l, int t, int r, int b) {
  N n;
  n.text = text;
  n.clickable = true;
  n.box = {l, t, r, b};
  return n;
}

void render_node(std::ostringstream& out, const N& n, const std::string& pkg,
                 int index, int depth) {
  auto flag = [](bool v) { return v ? "true" : "false"; };
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ');
  out << "<node index=\"" << index << "\" text=\"";
  for (char c : n.text) {
    if (c == '&') out << "&amp;";
    else if (c == '<') out << "&lt;";
    else if (c == '"') out << "&quot;";
    else out << c;
  }
  out << "\" resource-id=\"" << n.res << "\" class=\"" << n.cls
      << "\" package=\"" << pkg << "\" content-desc=\"" << n.desc << "\""
      << " checkable=\"" << flag(n.checkable) << "\" checked=\"" << flag(n.checked)
      << "\" clickable=\"" << flag(n.clickable) << "\" enabled=\"true\""
      << " focusable=\"" << flag(n.focusable) << "\" focused=\"" << flag(n.focused)
      << "\" scrollable=\"" << flag(n.scrollable) << "\" long-clickable=\""
      << flag(n.long_clickable) << "\" password=\"false\" selected=\""
      << flag(n.selected) << "\" bounds=\"[" << n.box[0] << "," << n.box[1]
      << "][" << n.box[2] << "," << n.box[3] << "]\"";
  if (n.kids.empty()) {
    out << " />\n";
    return;
  }
  out << ">\n";
  int child_index = 0;
  for (const N& kid : n.kids) render_node(out, kid, pkg, child_index++, depth + 1);
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "</node>\n";
}

std::string screen_xml(const std::string& pkg, std::vector<N> content) {
  N root;
  root.cls = "android.widget.FrameLayout";
  root.box = {0, 0, kScreenW, kScreenH};
  root.kids = std::move(content);
  std::ostringstream out;
  out << "<?xml version='1.0' encoding='UTF-8' standalone='yes' ?>\n";
  out << "<hierarchy rotation=\"0\">\n";
  render_node(out, root, pkg, 0, 1);
  out << "</hierarchy>\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Pack assembly helpers.

struct PackBuilder {
  ordered_json doc;

  PackBuilder(const std::string& app_id, const std::string& initial_screen,
              std::vector<std::string> initial_packages) {
    doc["app_id"] = app_id;
    doc["initial_screen"] = initial_screen;
    doc["initial_packages"] = initial_packages;
    doc["screens"] = ordered_json::object();
    doc["transitions"] = ordered_json::array();
  }

  void screen(const std::string& id, const std::string& activity,
              const std::string& vh) {
    doc["screens"][id] = {{"activity", activity}, {"vh", vh}};
  }

  void transition(const std::string& from, const std::string& to, json trigger,
                  json effects = json::array()) {
    ordered_json t;
    t["from"] = from;
    t["to"] = to;
    t["trigger"] = std::move(trigger);
    if (!effects.empty()) t["effects"] = std::move(effects);
    doc["transitions"].push_back(std::move(t));
  }

  std::string dump() const { return doc.dump(2) + "\n"; }
};

// xpath of the first node matching a predicate, for wiring triggers
std::string xpath_where(const std::string& vh_text,
                        const std::function<bool(const vh::UiNode&)>& pred) {
  vh::UiTree tree = vh::parse_vh(vh_text);
  std::string found;
  auto walk = [&](const vh::UiNode& node, const auto& self) -> void {
    if (!found.empty()) return;
    if (pred(node)) {
      found = vh::xpath_of(tree, node);
      return;
    }
    for (const vh::UiNode& child : node.children) self(child, self);
  };
  for (const vh::UiNode& top : tree.root.children) walk(top, walk);
  if (found.empty()) fail(Errc::pack_syntax, "xpath_where: no node matched");
  return found;
}

std::string xpath_of_text(const std::string& vh, const std::string& text) {
  return xpath_where(vh, [&](const vh::UiNode& n) { return n.attr_or("text") == text; });
}

std::string xpath_of_desc(const std::string& vh, const std::string& desc) {
  return xpath_where(vh, [&](const vh::UiNode& n) { return n.attr_or("content-desc") == desc; });
}

std::string xpath_of_class(const std::string& vh, const std::string& cls_part) {
  return xpath_where(vh, [&](const vh::UiNode& n) {
    return n.attr_or("class").find(cls_part) != std::string_view::npos;
  });
}

// normalized center of a node, for scripting clicks
std::pair<double, double> center_of(const std::string& vh, const std::string& xpath) {
  vh::UiTree tree = vh::parse_vh(vh);
  const vh::UiNode* node = vh::resolve_xpath(tree, xpath);
  if (!node) fail(Errc::pack_syntax, "center_of: " + xpath + " unresolved");
  double cx = (node->bounds.left + node->bounds.right) / 2.0 / tree.screen_w;
  double cy = (node->bounds.top + node->bounds.bottom) / 2.0 / tree.screen_h;
  return {cx, cy};
}

json click_at(const std::string& vh, const std::string& xpath) {
  auto [x, y] = center_of(vh, xpath);
  return {{"kind", "click"}, {"x", x}, {"y", y}};
}

json type_text(const std::string& text) { return {{"kind", "type"}, {"text", text}}; }

json act(const char* kind) { return {{"kind", kind}}; }

// ---------------------------------------------------------------------------
// Fixture task assembly.

struct FixtureTask {
  std::string task_id;
  std::string instruction;
  std::string source_tag = "generated";
  std::string pack_file;                  // relative to fixtures/packs
  json gt_script_actions = json::array();
  std::vector<std::string> gt_initial_packages;
  // alternate-path runs: (run name, pack file, initial packages, actions)
  struct AltRun {
    std::string name;
    std::string pack_file;
    std::vector<std::string> initial_packages;
    json actions;
  };
  std::vector<AltRun> alts;
  // invoked with the recorded ground truth to author the annotation
  std::function<annotation::Annotation(const trace::Trace&)> annotate;
};

int component_index_where(const trace::Observation& obs,
                          const std::function<bool(const vh::UiNode&)>& pred) {
  vh::ComponentIndex index = vh::functional_components(obs.ui_tree);
  for (std::size_t k = 0; k < index.size(); ++k) {
    if (pred(*index.entries[k])) return static_cast<int>(k);
  }
  fail(Errc::pack_syntax, "component_index_where: no component matched");
}

int index_of_text(const trace::Observation& obs, const std::string& text) {
  return component_index_where(
      obs, [&](const vh::UiNode& n) { return n.attr_or("text") == text; });
}

annotation::Primitive prim_activity() {
  annotation::Primitive p;
  p.keyword = annotation::Keyword::activity;
  return p;
}

annotation::Primitive prim_component(annotation::Keyword keyword, int index) {
  annotation::Primitive p;
  p.keyword = keyword;
  p.component_index = index;
  return p;
}

annotation::Primitive prim_app(annotation::Keyword keyword, const std::string& app) {
  annotation::Primitive p;
  p.keyword = keyword;
  p.app_id = app;
  return p;
}

annotation::Primitive prim_type(const std::string& text) {
  annotation::Primitive p;
  p.keyword = annotation::Keyword::type;
  p.input_text = text;
  return p;
}

annotation::Primitive prim_fuzzy_screen() {
  annotation::Primitive p;
  p.keyword = annotation::Keyword::fuzzy_screen;
  return p;
}

void run_script(agentenv::Session& session, const json& actions) {
  for (const auto& item : actions) {
    session.apply(trace::action_from_json(item.dump()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <fixtures_dir>" << std::endl;
    return 1;
  }
  fs::path out_root = argv[1];
  // golden/ is owned by the reference scripts in tests/oracles, keep it
  for (const char* sub : {"packs", "scripts", "dataset", "runs", "labels", "vh"}) {
    fs::remove_all(out_root / sub);
  }
  fs::create_directories(out_root / "packs");
  fs::create_directories(out_root / "scripts");
  fs::create_directories(out_root / "dataset");
  fs::create_directories(out_root / "runs" / "alt");
  fs::create_directories(out_root / "runs" / "truncated");
  fs::create_directories(out_root / "labels");
  fs::create_directories(out_root / "vh");

  std::vector<FixtureTask> tasks;

  // --- excel_open: the two-path install scenario ---------------------------
  {
    const std::string excel_pkg = "com.microsoft.office.excel";
    std::string home = screen_xml("com.android.launcher", {
        text_node("Friday 9:41", 40, 80, 400, 140, "com.android.launcher:id/clock"),
        icon("Play Store", 80, 400, 280, 600, "com.android.launcher:id/play_store"),
        icon("Excel", 400, 400, 600, 600, "com.android.launcher:id/excel"),
        icon("Camera", 720, 400, 920, 600, "com.android.launcher:id/camera"),
    });
    std::string ps_home = screen_xml("com.android.vending", {
        edit_text("", 40, 120, 1040, 260, "com.android.vending:id/search_box"),
        text_node("For you", 40, 320, 400, 400),
        text_node("Top charts", 40, 420, 400, 500),
    });
    std::string ps_search = screen_xml("com.android.vending", {
        edit_text("", 40, 120, 1040, 260, "com.android.vending:id/search_box", true),
        text_node("Trending searches", 40, 320, 600, 400),
    });
    std::string ps_results = screen_xml("com.android.vending", {
        edit_text("", 40, 120, 1040, 260, "com.android.vending:id/search_box"),
        row("Microsoft Excel", 40, 320, 700, 480),
        button("Install", 760, 340, 1020, 460, "com.android.vending:id/install"),
        text_node("4.5 stars", 40, 500, 400, 560),
    });
    std::string ps_installed = screen_xml("com.android.vending", {
        edit_text("", 40, 120, 1040, 260, "com.android.vending:id/search_box"),
        row("Microsoft Excel", 40, 320, 700, 480),
        button("Open", 760, 340, 1020, 460, "com.android.vending:id/open"),
        text_node("4.5 stars", 40, 500, 400, 560),
    });
    std::string excel_home = screen_xml(excel_pkg, {
        text_node("Microsoft Excel", 40, 200, 1040, 320, "excel:id/title"),
        button("Sign in", 240, 900, 840, 1060, "excel:id/sign_in"),
        button("Use offline", 240, 1120, 840, 1280, "excel:id/offline"),
    });
    std::string excel_login = screen_xml(excel_pkg, {
        text_node("Sign in to your account", 40, 200, 1040, 320, "excel:id/header"),
        edit_text("", 120, 420, 960, 560, "excel:id/email"),
        button("Next", 240, 640, 840, 780, "excel:id/next"),
    });

    PackBuilder pack("com.android.vending", "home", {"com.android.vending"});
    pack.screen("home", "com.android.launcher.Home", home);
    pack.screen("ps_home", "com.android.vending.AssetBrowserActivity", ps_home);
    pack.screen("ps_search", "com.android.vending.SearchActivity", ps_search);
    pack.screen("ps_results", "com.android.vending.SearchActivity", ps_results);
    pack.screen("ps_installed", "com.android.vending.SearchActivity", ps_installed);
    pack.screen("excel_home", "com.microsoft.office.excel.MainActivity", excel_home);
    pack.screen("excel_login", "com.microsoft.office.excel.LoginActivity", excel_login);

    std::string search_box_results = xpath_of_class(ps_results, "EditText");
    pack.transition("home", "ps_home",
                    {{"action", "click"}, {"xpath", xpath_of_desc(home, "Play Store")}});
    pack.transition("home", "excel_home",
                    {{"action", "click"},
                     {"xpath", xpath_of_desc(home, "Excel")},
                     {"requires_package", excel_pkg}});
    pack.transition("ps_home", "ps_search",
                    {{"action", "click"}, {"xpath", xpath_of_class(ps_home, "EditText")}});
    pack.transition("ps_search", "ps_results", {{"action", "type"}},
                    json::array({{{"kind", "copy_focused_text"},
                                  {"target_xpath", search_box_results}}}));
    pack.transition("ps_results", "ps_installed",
                    {{"action", "click"}, {"xpath", xpath_of_text(ps_results, "Install")}},
                    json::array({{{"kind", "install"}, {"package", excel_pkg}}}));
    pack.transition("ps_installed", "excel_home",
                    {{"action", "click"}, {"xpath", xpath_of_text(ps_installed, "Open")}});
    pack.transition("excel_home", "excel_login",
                    {{"action", "click"}, {"xpath", xpath_of_text(excel_home, "Sign in")}});
    util::write_file(out_root / "packs" / "excel.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "excel_open";
    task.instruction =
        "Open the app Microsoft Excel (install it if not already installed) and go "
        "to the login page.";
    task.pack_file = "excel.pack.json";
    task.gt_initial_packages = {};
    task.gt_script_actions = json::array({
        click_at(home, xpath_of_desc(home, "Play Store")),
        click_at(ps_home, xpath_of_class(ps_home, "EditText")),
        type_text("Microsoft Excel"),
        click_at(ps_results, xpath_of_text(ps_results, "Install")),
        click_at(ps_installed, xpath_of_text(ps_installed, "Open")),
        click_at(excel_home, xpath_of_text(excel_home, "Sign in")),
        act("status_complete"),
    });
    task.alts.push_back({"alt", "excel.pack.json", {excel_pkg},
                         json::array({
                             click_at(home, xpath_of_desc(home, "Excel")),
                             click_at(excel_home, xpath_of_text(excel_home, "Sign in")),
                             act("status_complete"),
                         })});
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back({5, {prim_activity()}});
      ann.keystates.push_back(
          {6,
           {prim_activity(),
            prim_component(annotation::Keyword::exact,
                           index_of_text(gt.observations[6], "Sign in to your account")),
            prim_app(annotation::Keyword::installed, "com.microsoft.office.excel")}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- bestbuy_empty_cart: five clicks to an empty cart ---------------------
  {
    std::string bb_home = screen_xml("com.bestbuy.android", {
        text_node("Deals of the day", 40, 160, 800, 260),
        icon("Cart", 900, 60, 1040, 200, "com.bestbuy.android:id/cart"),
        row("55\" 4K TV — $399.99", 40, 320, 1040, 480),
    });
    std::string bb_cart2 = screen_xml("com.bestbuy.android", {
        text_node("Cart", 40, 120, 400, 220, "com.bestbuy.android:id/title"),
        row("HP Laptop 14\" — $479.00", 40, 300, 760, 460),
        button("Remove", 800, 320, 1040, 440, "com.bestbuy.android:id/remove_0"),
        row("Fire TV Stick 4K — $49.99", 40, 500, 760, 660),
        button("Remove", 800, 520, 1040, 640, "com.bestbuy.android:id/remove_1"),
    });
    std::string bb_confirm = screen_xml("com.bestbuy.android", {
        text_node("Remove this item?", 200, 700, 880, 820),
        button("Confirm", 200, 880, 520, 1000, "com.bestbuy.android:id/confirm"),
        button("Cancel", 560, 880, 880, 1000, "com.bestbuy.android:id/cancel"),
    });
    std::string bb_cart1 = screen_xml("com.bestbuy.android", {
        text_node("Cart", 40, 120, 400, 220, "com.bestbuy.android:id/title"),
        row("Fire TV Stick 4K — $49.99", 40, 300, 760, 460),
        button("Remove", 800, 320, 1040, 440, "com.bestbuy.android:id/remove_0"),
    });
    std::string bb_empty = screen_xml("com.bestbuy.android", {
        text_node("Cart", 40, 120, 400, 220, "com.bestbuy.android:id/title"),
        text_node("Your cart is empty", 40, 500, 1040, 640,
                  "com.bestbuy.android:id/empty_message"),
        button("Continue shopping", 240, 760, 840, 900),
    });

    PackBuilder pack("com.bestbuy.android", "bb_home", {"com.bestbuy.android"});
    pack.screen("bb_home", "com.bestbuy.android.MainActivity", bb_home);
    pack.screen("bb_cart2", "com.bestbuy.android.CartActivity", bb_cart2);
    pack.screen("bb_confirm1", "com.bestbuy.android.ConfirmRemoveDialog", bb_confirm);
    pack.screen("bb_cart1", "com.bestbuy.android.CartActivity", bb_cart1);
    pack.screen("bb_confirm2", "com.bestbuy.android.ConfirmRemoveDialog", bb_confirm);
    pack.screen("bb_empty", "com.bestbuy.android.CartActivity", bb_empty);

    pack.transition("bb_home", "bb_cart2",
                    {{"action", "click"}, {"xpath", xpath_of_desc(bb_home, "Cart")}});
    pack.transition("bb_cart2", "bb_confirm1",
                    {{"action", "click"},
                     {"xpath", xpath_where(bb_cart2, [](const vh::UiNode& n) {
                        return n.attr_or("resource-id") ==
                               "com.bestbuy.android:id/remove_0";
                      })}});
    pack.transition("bb_confirm1", "bb_cart1",
                    {{"action", "click"}, {"xpath", xpath_of_text(bb_confirm, "Confirm")}});
    pack.transition("bb_cart1", "bb_confirm2",
                    {{"action", "click"},
                     {"xpath", xpath_where(bb_cart1, [](const vh::UiNode& n) {
                        return n.attr_or("resource-id") ==
                               "com.bestbuy.android:id/remove_0";
                      })}});
    pack.transition("bb_confirm2", "bb_empty",
                    {{"action", "click"}, {"xpath", xpath_of_text(bb_confirm, "Confirm")}});
    util::write_file(out_root / "packs" / "bestbuy.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "bestbuy_empty_cart";
    task.instruction = "Empty the shopping cart on bestbuy.";
    task.pack_file = "bestbuy.pack.json";
    task.gt_initial_packages = {};
    auto remove_xpath = [](const std::string& screen) {
      return xpath_where(screen, [](const vh::UiNode& n) {
        return n.attr_or("resource-id") == "com.bestbuy.android:id/remove_0";
      });
    };
    task.gt_script_actions = json::array({
        click_at(bb_home, xpath_of_desc(bb_home, "Cart")),
        click_at(bb_cart2, remove_xpath(bb_cart2)),
        click_at(bb_confirm, xpath_of_text(bb_confirm, "Confirm")),
        click_at(bb_cart1, remove_xpath(bb_cart1)),
        click_at(bb_confirm, xpath_of_text(bb_confirm, "Confirm")),
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      const trace::Observation& last = gt.observations[5];
      ann.keystates.push_back(
          {5,
           {prim_component(annotation::Keyword::exact,
                           index_of_text(last, "Your cart is empty")),
            prim_component(annotation::Keyword::exact, index_of_text(last, "Cart"))}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- bestbuy_remove_item: exclude<n> --------------------------------------
  {
    std::string rm_home = screen_xml("com.bestbuy.android", {
        text_node("Deals of the day", 40, 160, 800, 260),
        icon("Cart", 900, 60, 1040, 200, "com.bestbuy.android:id/cart"),
    });
    std::string rm_cart = screen_xml("com.bestbuy.android", {
        text_node("Cart", 40, 120, 400, 220, "com.bestbuy.android:id/title"),
        row("Fire TV Stick 4K — $49.99", 40, 300, 760, 460),
        button("Remove", 800, 320, 1040, 440, "com.bestbuy.android:id/remove_0"),
    });
    std::string rm_confirm = screen_xml("com.bestbuy.android", {
        text_node("Remove this item?", 200, 700, 880, 820),
        button("Confirm", 200, 880, 520, 1000),
        button("Cancel", 560, 880, 880, 1000),
    });
    std::string rm_after = screen_xml("com.bestbuy.android", {
        text_node("Cart", 40, 120, 400, 220, "com.bestbuy.android:id/title"),
        text_node("Your cart is empty", 40, 500, 1040, 640),
    });

    PackBuilder pack("com.bestbuy.android", "rm_home", {"com.bestbuy.android"});
    pack.screen("rm_home", "com.bestbuy.android.MainActivity", rm_home);
    pack.screen("rm_cart", "com.bestbuy.android.CartActivity", rm_cart);
    pack.screen("rm_confirm", "com.bestbuy.android.ConfirmRemoveDialog", rm_confirm);
    pack.screen("rm_after", "com.bestbuy.android.CartActivity", rm_after);
    pack.transition("rm_home", "rm_cart",
                    {{"action", "click"}, {"xpath", xpath_of_desc(rm_home, "Cart")}});
    pack.transition("rm_cart", "rm_confirm",
                    {{"action", "click"}, {"xpath", xpath_of_text(rm_cart, "Remove")}});
    pack.transition("rm_confirm", "rm_after",
                    {{"action", "click"}, {"xpath", xpath_of_text(rm_confirm, "Confirm")}});
    util::write_file(out_root / "packs" / "bestbuy_remove.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "bestbuy_remove_item";
    task.instruction = "Remove the Fire TV Stick from the bestbuy shopping cart.";
    task.pack_file = "bestbuy_remove.pack.json";
    task.gt_script_actions = json::array({
        click_at(rm_home, xpath_of_desc(rm_home, "Cart")),
        click_at(rm_cart, xpath_of_text(rm_cart, "Remove")),
        click_at(rm_confirm, xpath_of_text(rm_confirm, "Confirm")),
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back(
          {1,
           {prim_activity(),
            prim_component(annotation::Keyword::exclude,
                           index_of_text(gt.observations[1],
                                         "Fire TV Stick 4K — $49.99"))}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- settings_wifi_on: activity gate plus checked-state exact -------------
  {
    std::string set_home = screen_xml("com.android.settings", {
        text_node("Settings", 40, 120, 500, 220),
        row("Network & internet", 40, 300, 1040, 440),
        row("Display", 40, 460, 1040, 600),
        row("Battery", 40, 620, 1040, 760),
    });
    N wifi_switch_off;
    wifi_switch_off.cls = "android.widget.Switch";
    wifi_switch_off.clickable = true;
    wifi_switch_off.checkable = true;
    wifi_switch_off.checked = false;
    wifi_switch_off.res = "com.android.settings:id/wifi_toggle";
    wifi_switch_off.box = {880, 300, 1040, 420};
    N wifi_switch_on = wifi_switch_off;
    wifi_switch_on.checked = true;
    std::string wifi_off = screen_xml("com.android.settings", {
        text_node("Wi-Fi", 40, 120, 400, 220),
        wifi_switch_off,
        text_node("Wi-Fi is off", 40, 460, 1040, 560),
    });
    std::string wifi_on = screen_xml("com.android.settings", {
        text_node("Wi-Fi", 40, 120, 400, 220),
        wifi_switch_on,
        text_node("Connected to HomeNet", 40, 460, 1040, 560),
    });

    PackBuilder pack("com.android.settings", "set_home", {"com.android.settings"});
    pack.screen("set_home", "com.android.settings.Settings", set_home);
    pack.screen("wifi_off", "com.android.settings.wifi.WifiSettingsActivity", wifi_off);
    pack.screen("wifi_on", "com.android.settings.wifi.WifiSettingsActivity", wifi_on);
    pack.transition("set_home", "wifi_off",
                    {{"action", "click"},
                     {"xpath", xpath_of_text(set_home, "Network & internet")}});
    pack.transition("wifi_off", "wifi_on",
                    {{"action", "click"}, {"xpath", xpath_of_class(wifi_off, "Switch")}});
    util::write_file(out_root / "packs" / "settings_wifi.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "settings_wifi_on";
    task.instruction = "Turn on Wi-Fi in the settings app.";
    task.source_tag = "aitw";
    task.pack_file = "settings_wifi.pack.json";
    task.gt_script_actions = json::array({
        click_at(set_home, xpath_of_text(set_home, "Network & internet")),
        click_at(wifi_off, xpath_of_class(wifi_off, "Switch")),
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back({1, {prim_activity()}});
      ann.keystates.push_back(
          {2,
           {prim_component(annotation::Keyword::exact,
                           component_index_where(gt.observations[2],
                                                 [](const vh::UiNode& n) {
                                                   return n.attr_or("class") ==
                                                          "android.widget.Switch";
                                                 }))}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- install_youtube_kids: installed<app> ---------------------------------
  {
    const std::string ytk_pkg = "com.google.android.apps.youtube.kids";
    std::string home = screen_xml("com.android.launcher", {
        icon("Play Store", 80, 400, 280, 600),
        icon("Chrome", 400, 400, 600, 600),
    });
    std::string ps_home = screen_xml("com.android.vending", {
        edit_text("", 40, 120, 1040, 260, "com.android.vending:id/search_box"),
        text_node("For you", 40, 320, 400, 400),
    });
    std::string ps_search = screen_xml("com.android.vending", {
        edit_text("", 40, 120, 1040, 260, "com.android.vending:id/search_box", true),
    });
    std::string ps_results = screen_xml("com.android.vending", {
        edit_text("", 40, 120, 1040, 260, "com.android.vending:id/search_box"),
        row("YouTube Kids", 40, 320, 700, 480),
        button("Install", 760, 340, 1020, 460),
    });
    std::string ps_installed = screen_xml("com.android.vending", {
        edit_text("", 40, 120, 1040, 260, "com.android.vending:id/search_box"),
        row("YouTube Kids", 40, 320, 700, 480),
        button("Open", 760, 340, 1020, 460),
    });

    PackBuilder pack("com.android.vending", "home", {"com.android.vending"});
    pack.screen("home", "com.android.launcher.Home", home);
    pack.screen("ps_home", "com.android.vending.AssetBrowserActivity", ps_home);
    pack.screen("ps_search", "com.android.vending.SearchActivity", ps_search);
    pack.screen("ps_results", "com.android.vending.SearchActivity", ps_results);
    pack.screen("ps_installed", "com.android.vending.SearchActivity", ps_installed);
    pack.transition("home", "ps_home",
                    {{"action", "click"}, {"xpath", xpath_of_desc(home, "Play Store")}});
    pack.transition("ps_home", "ps_search",
                    {{"action", "click"}, {"xpath", xpath_of_class(ps_home, "EditText")}});
    pack.transition("ps_search", "ps_results", {{"action", "type"}},
                    json::array({{{"kind", "copy_focused_text"},
                                  {"target_xpath", xpath_of_class(ps_results, "EditText")}}}));
    pack.transition("ps_results", "ps_installed",
                    {{"action", "click"}, {"xpath", xpath_of_text(ps_results, "Install")}},
                    json::array({{{"kind", "install"}, {"package", ytk_pkg}}}));
    util::write_file(out_root / "packs" / "playstore_ytk.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "install_youtube_kids";
    task.instruction = "Install the app YouTube Kids from the Play Store.";
    task.source_tag = "aitw";
    task.pack_file = "playstore_ytk.pack.json";
    task.gt_script_actions = json::array({
        click_at(home, xpath_of_desc(home, "Play Store")),
        click_at(ps_home, xpath_of_class(ps_home, "EditText")),
        type_text("YouTube Kids"),
        click_at(ps_results, xpath_of_text(ps_results, "Install")),
        act("status_complete"),
    });
    task.annotate = [ytk_pkg](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back(
          {4,
           {prim_activity(),
            prim_component(annotation::Keyword::exact,
                           index_of_text(gt.observations[4], "Open")),
            prim_app(annotation::Keyword::installed, ytk_pkg)}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- uninstall_slack: uninstalled<app> -------------------------------------
  {
    std::string sa_home = screen_xml("com.android.settings", {
        text_node("Settings", 40, 120, 500, 220),
        row("Apps", 40, 300, 1040, 440),
        row("Storage", 40, 460, 1040, 600),
    });
    std::string sa_apps = screen_xml("com.android.settings", {
        text_node("All apps", 40, 120, 500, 220),
        row("Slack", 40, 300, 1040, 440),
        row("Zoom", 40, 460, 1040, 600),
    });
    std::string sa_info = screen_xml("com.android.settings", {
        text_node("Slack", 40, 120, 500, 220),
        button("Uninstall", 120, 400, 520, 540),
        button("Force stop", 560, 400, 960, 540),
    });
    std::string sa_confirm = screen_xml("com.android.settings", {
        text_node("Do you want to uninstall this app?", 120, 700, 960, 820),
        button("OK", 200, 880, 520, 1000),
        button("Cancel", 560, 880, 880, 1000),
    });
    std::string sa_after = screen_xml("com.android.settings", {
        text_node("All apps", 40, 120, 500, 220),
        row("Zoom", 40, 300, 1040, 440),
    });

    PackBuilder pack("com.android.settings", "sa_home",
                     {"com.android.settings", "com.slack", "us.zoom.videomeetings"});
    pack.screen("sa_home", "com.android.settings.Settings", sa_home);
    pack.screen("sa_apps", "com.android.settings.applications.ManageApplications", sa_apps);
    pack.screen("sa_info", "com.android.settings.applications.InstalledAppDetails", sa_info);
    pack.screen("sa_confirm", "com.android.settings.applications.UninstallDialog", sa_confirm);
    pack.screen("sa_after", "com.android.settings.applications.ManageApplications", sa_after);
    pack.transition("sa_home", "sa_apps",
                    {{"action", "click"}, {"xpath", xpath_of_text(sa_home, "Apps")}});
    pack.transition("sa_apps", "sa_info",
                    {{"action", "click"}, {"xpath", xpath_of_text(sa_apps, "Slack")}});
    pack.transition("sa_info", "sa_confirm",
                    {{"action", "click"}, {"xpath", xpath_of_text(sa_info, "Uninstall")}});
    pack.transition("sa_confirm", "sa_after",
                    {{"action", "click"}, {"xpath", xpath_of_text(sa_confirm, "OK")}},
                    json::array({{{"kind", "uninstall"}, {"package", "com.slack"}}}));
    util::write_file(out_root / "packs" / "settings_apps.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "uninstall_slack";
    task.instruction = "Uninstall the Slack app.";
    task.source_tag = "aitw";
    task.pack_file = "settings_apps.pack.json";
    task.gt_script_actions = json::array({
        click_at(sa_home, xpath_of_text(sa_home, "Apps")),
        click_at(sa_apps, xpath_of_text(sa_apps, "Slack")),
        click_at(sa_info, xpath_of_text(sa_info, "Uninstall")),
        click_at(sa_confirm, xpath_of_text(sa_confirm, "OK")),
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back(
          {4, {prim_activity(), prim_app(annotation::Keyword::uninstalled, "com.slack")}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- note_type_save: type<text> and click<n> -------------------------------
  {
    std::string n_home = screen_xml("com.notes.app", {
        text_node("Notes", 40, 120, 400, 220),
        button("New note", 240, 400, 840, 540, "com.notes.app:id/new_note"),
    });
    std::string n_editor = screen_xml("com.notes.app", {
        edit_text("", 40, 200, 1040, 800, "com.notes.app:id/body", true),
        button("Save", 760, 60, 1020, 160, "com.notes.app:id/save"),
    });
    std::string n_saved = screen_xml("com.notes.app", {
        text_node("Saved notes", 40, 120, 500, 220),
        text_node("", 40, 300, 1040, 440, "com.notes.app:id/note_0"),
    });
    std::string note_target = xpath_where(n_saved, [](const vh::UiNode& n) {
      return n.attr_or("resource-id") == "com.notes.app:id/note_0";
    });

    PackBuilder pack("com.notes.app", "n_home", {"com.notes.app"});
    pack.screen("n_home", "com.notes.app.MainActivity", n_home);
    pack.screen("n_editor", "com.notes.app.EditorActivity", n_editor);
    pack.screen("n_saved", "com.notes.app.SavedActivity", n_saved);
    pack.transition("n_home", "n_editor",
                    {{"action", "click"}, {"xpath", xpath_of_text(n_home, "New note")}});
    pack.transition("n_editor", "n_saved",
                    {{"action", "click"}, {"xpath", xpath_of_text(n_editor, "Save")}},
                    json::array({{{"kind", "copy_focused_text"},
                                  {"target_xpath", note_target}}}));
    util::write_file(out_root / "packs" / "notes.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "note_type_save";
    task.instruction = "Create a new note that says Buy milk and save it.";
    task.pack_file = "notes.pack.json";
    task.gt_script_actions = json::array({
        click_at(n_home, xpath_of_text(n_home, "New note")),
        type_text("Buy milk"),
        click_at(n_editor, xpath_of_text(n_editor, "Save")),
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back({1, {prim_activity(), prim_type("Buy milk")}});
      ann.keystates.push_back(
          {2, {prim_component(annotation::Keyword::click,
                              index_of_text(gt.observations[2], "Save"))}});
      ann.keystates.push_back(
          {3, {prim_activity(),
               prim_component(annotation::Keyword::exact,
                              index_of_text(gt.observations[3], "Buy milk"))}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- news_headlines: fuzzy<-1> under content dynamics ----------------------
  {
    auto news_pack = [&](const std::string& third_row) {
      std::string n2_home = screen_xml("com.news.reader", {
          text_node("Daily Reader", 40, 200, 800, 320),
          button("Headlines", 240, 600, 840, 740, "com.news.reader:id/headlines"),
      });
      std::string n2_feed = screen_xml("com.news.reader", {
          text_node("Top stories", 40, 120, 500, 220),
          row("Markets rally as rates hold steady", 40, 300, 1040, 440),
          row("Local marathon sets attendance record", 40, 460, 1040, 600),
          row(third_row, 40, 620, 1040, 760),
      });
      PackBuilder pack("com.news.reader", "n2_home", {"com.news.reader"});
      pack.screen("n2_home", "com.news.reader.SplashActivity", n2_home);
      pack.screen("n2_feed", "com.news.reader.FeedActivity", n2_feed);
      pack.transition("n2_home", "n2_feed",
                      {{"action", "click"}, {"xpath", xpath_of_text(n2_home, "Headlines")}});
      return std::make_pair(pack.dump(), n2_home);
    };
    auto [gt_pack, n2_home] = news_pack("New flagship phone launches today");
    auto [alt_pack, n2_home_alt] = news_pack("New flagship phone launches this week");
    util::write_file(out_root / "packs" / "news.pack.json", gt_pack);
    util::write_file(out_root / "packs" / "news_variant.pack.json", alt_pack);

    json actions = json::array({
        click_at(n2_home, xpath_of_text(n2_home, "Headlines")),
        act("status_complete"),
    });
    FixtureTask task;
    task.task_id = "news_headlines";
    task.instruction = "Open the news reader and show the headlines page.";
    task.pack_file = "news.pack.json";
    task.gt_script_actions = actions;
    task.alts.push_back({"alt", "news_variant.pack.json", {}, actions});
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back({1, {prim_activity(), prim_fuzzy_screen()}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- play_search_mouse: fuzzy<n> textbox -----------------------------------
  {
    std::string sm_home = screen_xml("com.shopmart.app", {
        text_node("Shopmart", 40, 120, 500, 220),
        edit_text("", 40, 300, 1040, 420, "com.shopmart.app:id/search"),
        row("Today's picks", 40, 500, 1040, 640),
    });
    std::string sm_search = screen_xml("com.shopmart.app", {
        edit_text("", 40, 120, 1040, 240, "com.shopmart.app:id/search", true),
        text_node("Recent searches", 40, 320, 600, 400),
    });
    std::string sm_results = screen_xml("com.shopmart.app", {
        edit_text("", 40, 120, 1040, 240, "com.shopmart.app:id/search"),
        row("Logitech M185 wireless mouse — $14.99", 40, 320, 1040, 460),
        row("Anker vertical wireless mouse — $22.95", 40, 480, 1040, 620),
    });

    PackBuilder pack("com.shopmart.app", "sm_home", {"com.shopmart.app"});
    pack.screen("sm_home", "com.shopmart.app.MainActivity", sm_home);
    pack.screen("sm_search", "com.shopmart.app.SearchActivity", sm_search);
    pack.screen("sm_results", "com.shopmart.app.SearchActivity", sm_results);
    pack.transition("sm_home", "sm_search",
                    {{"action", "click"}, {"xpath", xpath_of_class(sm_home, "EditText")}});
    pack.transition("sm_search", "sm_results", {{"action", "type"}},
                    json::array({{{"kind", "copy_focused_text"},
                                  {"target_xpath", xpath_of_class(sm_results, "EditText")}}}));
    util::write_file(out_root / "packs" / "shopmart.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "play_search_mouse";
    task.instruction = "Search for a wireless mouse under $25 on Shopmart.";
    task.pack_file = "shopmart.pack.json";
    task.gt_script_actions = json::array({
        click_at(sm_home, xpath_of_class(sm_home, "EditText")),
        type_text("wireless mouse under $25"),
        act("status_complete"),
    });
    task.alts.push_back({"alt", "shopmart.pack.json", {},
                         json::array({
                             click_at(sm_home, xpath_of_class(sm_home, "EditText")),
                             type_text("wireless mouse under $20"),
                             act("status_complete"),
                         })});
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back(
          {2,
           {prim_activity(),
            prim_component(annotation::Keyword::fuzzy_textbox,
                           component_index_where(gt.observations[2],
                                                 [](const vh::UiNode& n) {
                                                   return n.attr_or("class") ==
                                                          "android.widget.EditText";
                                                 }))}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- feed_scroll: swipe action in the trace --------------------------------
  {
    std::string s_home = screen_xml("com.social.app", {
        text_node("Welcome back", 40, 200, 800, 320),
        button("Feed", 240, 600, 840, 740),
    });
    N list_top;
    list_top.cls = "androidx.recyclerview.widget.RecyclerView";
    list_top.scrollable = true;
    list_top.box = {0, 240, 1080, 1920};
    list_top.kids = {
        row("Post by Ana: sunrise hike", 40, 300, 1040, 460),
        row("Post by Bo: new recipe", 40, 480, 1040, 640),
    };
    N list_bottom = list_top;
    list_bottom.kids = {
        row("Post by Yun: weekend market", 40, 300, 1040, 460),
        text_node("End of feed", 40, 500, 1040, 640),
    };
    std::string s_feed_top = screen_xml("com.social.app", {
        text_node("Feed", 40, 120, 400, 220),
        list_top,
    });
    std::string s_feed_bottom = screen_xml("com.social.app", {
        text_node("Feed", 40, 120, 400, 220),
        list_bottom,
    });

    PackBuilder pack("com.social.app", "s_home", {"com.social.app"});
    pack.screen("s_home", "com.social.app.HomeActivity", s_home);
    pack.screen("s_feed_top", "com.social.app.FeedActivity", s_feed_top);
    pack.screen("s_feed_bottom", "com.social.app.FeedActivity", s_feed_bottom);
    pack.transition("s_home", "s_feed_top",
                    {{"action", "click"}, {"xpath", xpath_of_text(s_home, "Feed")}});
    pack.transition("s_feed_top", "s_feed_bottom",
                    {{"action", "swipe"}, {"direction", "up"}});
    util::write_file(out_root / "packs" / "social.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "feed_scroll";
    task.instruction = "Open the social feed and scroll to the end.";
    task.pack_file = "social.pack.json";
    json swipe_up = {{"kind", "swipe"}, {"touch_x", 0.5}, {"touch_y", 0.8},
                     {"lift_x", 0.5},   {"lift_y", 0.2},  {"duration_ms", 300}};
    task.gt_script_actions = json::array({
        click_at(s_home, xpath_of_text(s_home, "Feed")),
        swipe_up,
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back(
          {2, {prim_activity(),
               prim_component(annotation::Keyword::exact,
                              index_of_text(gt.observations[2], "End of feed"))}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- check_notifications: press_back navigation ----------------------------
  {
    std::string y_home = screen_xml("com.android.launcher", {
        text_node("Home", 40, 120, 400, 220),
        icon("Notifications", 900, 60, 1040, 200),
    });
    std::string y_panel = screen_xml("com.android.systemui", {
        text_node("No new notifications", 40, 300, 1040, 440),
        button("Clear all", 240, 600, 840, 740),
    });

    PackBuilder pack("com.android.systemui", "y_home", {"com.android.systemui"});
    pack.screen("y_home", "com.android.launcher.Home", y_home);
    pack.screen("y_panel", "com.android.systemui.NotificationPanelActivity", y_panel);
    pack.transition("y_home", "y_panel",
                    {{"action", "click"}, {"xpath", xpath_of_desc(y_home, "Notifications")}});
    pack.transition("y_panel", "y_home", {{"action", "press_back"}});
    util::write_file(out_root / "packs" / "sysui.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "check_notifications";
    task.instruction = "Check the notification panel, then go back home.";
    task.source_tag = "aitw";
    task.pack_file = "sysui.pack.json";
    task.gt_script_actions = json::array({
        click_at(y_home, xpath_of_desc(y_home, "Notifications")),
        act("press_back"),
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back({1, {prim_activity()}});
      ann.keystates.push_back({2, {prim_activity()}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- calc_order_pizza: an impossible task ----------------------------------
  {
    std::string c_home = screen_xml("com.calculator.app", {
        text_node("0", 40, 200, 1040, 400, "com.calculator.app:id/display"),
        button("1", 40, 500, 380, 700),
        button("2", 400, 500, 740, 700),
        button("+", 760, 500, 1040, 700),
        button("=", 760, 720, 1040, 920),
    });
    PackBuilder pack("com.calculator.app", "c_home", {"com.calculator.app"});
    pack.screen("c_home", "com.calculator.app.MainActivity", c_home);
    util::write_file(out_root / "packs" / "calculator.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "calc_order_pizza";
    task.instruction = "Order a pepperoni pizza using the calculator app.";
    task.pack_file = "calculator.pack.json";
    task.gt_script_actions = json::array({act("status_impossible")});
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back({0, {prim_activity()}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- todo_check_item: checkbox state ----------------------------------------
  {
    std::string t_list = screen_xml("com.todo.app", {
        text_node("Today", 40, 120, 400, 220),
        check_box("Water plants", false, 40, 300, 1040, 440),
        check_box("Pay rent", false, 40, 460, 1040, 600),
    });
    std::string t_done = screen_xml("com.todo.app", {
        text_node("Today", 40, 120, 400, 220),
        check_box("Water plants", true, 40, 300, 1040, 440),
        check_box("Pay rent", false, 40, 460, 1040, 600),
    });
    PackBuilder pack("com.todo.app", "t_list", {"com.todo.app"});
    pack.screen("t_list", "com.todo.app.ListActivity", t_list);
    pack.screen("t_done", "com.todo.app.ListActivity", t_done);
    pack.transition("t_list", "t_done",
                    {{"action", "click"}, {"xpath", xpath_of_text(t_list, "Water plants")}});
    util::write_file(out_root / "packs" / "todo.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "todo_check_item";
    task.instruction = "Mark the Water plants task as done in the todo app.";
    task.pack_file = "todo.pack.json";
    task.gt_script_actions = json::array({
        click_at(t_list, xpath_of_text(t_list, "Water plants")),
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back(
          {1, {prim_component(annotation::Keyword::exact,
                              index_of_text(gt.observations[1], "Water plants"))}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // --- gallery_open_photo: image nodes ----------------------------------------
  {
    std::string g_grid = screen_xml("com.gallery.app", {
        text_node("Photos", 40, 120, 400, 220),
        icon("Beach sunset", 40, 300, 520, 780),
        icon("Mountain trail", 560, 300, 1040, 780),
    });
    N photo;
    photo.cls = "android.widget.ImageView";
    photo.desc = "Beach sunset";
    photo.box = {0, 200, 1080, 1600};
    std::string g_photo = screen_xml("com.gallery.app", {
        photo,
        button("Share", 240, 1700, 840, 1840),
    });
    PackBuilder pack("com.gallery.app", "g_grid", {"com.gallery.app"});
    pack.screen("g_grid", "com.gallery.app.GridActivity", g_grid);
    pack.screen("g_photo", "com.gallery.app.PhotoActivity", g_photo);
    pack.transition("g_grid", "g_photo",
                    {{"action", "click"}, {"xpath", xpath_of_desc(g_grid, "Beach sunset")}});
    util::write_file(out_root / "packs" / "gallery.pack.json", pack.dump());

    FixtureTask task;
    task.task_id = "gallery_open_photo";
    task.instruction = "Open the beach sunset photo in the gallery.";
    task.pack_file = "gallery.pack.json";
    task.gt_script_actions = json::array({
        click_at(g_grid, xpath_of_desc(g_grid, "Beach sunset")),
        act("status_complete"),
    });
    task.annotate = [](const trace::Trace& gt) {
      annotation::Annotation ann;
      ann.task_id = gt.task.task_id;
      ann.keystates.push_back(
          {1, {prim_activity(),
               prim_component(annotation::Keyword::exact,
                              component_index_where(
                                  gt.observations[1], [](const vh::UiNode& n) {
                                    return n.attr_or("content-desc") == "Beach sunset" &&
                                           n.attr_or("clickable") == "false";
                                  }))}});
      return ann;
    };
    tasks.push_back(std::move(task));
  }

  // ---------------------------------------------------------------------------
  // Record every task: ground truth, annotation, alternates.

  for (const FixtureTask& task : tasks) {
    agentenv::DeviceModel model =
        agentenv::load_app_pack(out_root / "packs" / task.pack_file);

    trace::TaskRecord record;
    record.task_id = task.task_id;
    record.instruction = task.instruction;
    record.source_tag = trace::source_tag_from(task.source_tag);

    // persist the script for cmd_record reproducibility
    ordered_json script;
    script["task"] = {{"task_id", record.task_id},
                      {"instruction", record.instruction},
                      {"source_tag", task.source_tag}};
    script["initial_packages"] = task.gt_initial_packages;
    script["actions"] = task.gt_script_actions;
    util::write_file(out_root / "scripts" / (task.task_id + ".json"),
                     script.dump(2) + "\n");

    std::set<std::string> extra(task.gt_initial_packages.begin(),
                                task.gt_initial_packages.end());
    agentenv::Session session(model, record, extra);
    run_script(session, task.gt_script_actions);
    fs::path task_dir = out_root / "dataset" / task.task_id;
    fs::create_directories(task_dir);
    trace::Trace gt = session.record(task_dir / "gt");

    annotation::Annotation ann = task.annotate(gt);
    std::vector<annotation::LintIssue> issues = annotation::lint_annotation(ann, gt);
    for (const auto& issue : issues) {
      std::cerr << task.task_id << ": lint: " << issue.message << std::endl;
    }
    if (!issues.empty()) return 1;
    util::write_file(task_dir / "annotation.txt", annotation::print_annotation(ann));

    for (const FixtureTask::AltRun& alt : task.alts) {
      agentenv::DeviceModel alt_model =
          agentenv::load_app_pack(out_root / "packs" / alt.pack_file);
      std::set<std::string> alt_extra(alt.initial_packages.begin(),
                                      alt.initial_packages.end());
      agentenv::Session alt_session(alt_model, record, alt_extra);
      run_script(alt_session, alt.actions);
      alt_session.record(out_root / "runs" / alt.name / task.task_id);
    }
  }

  // Truncated excel run: install path that stops at the Play Store.
  {
    agentenv::DeviceModel model =
        agentenv::load_app_pack(out_root / "packs" / "excel.pack.json");
    trace::TaskRecord record;
    record.task_id = "excel_open";
    record.instruction = "Open the app Microsoft Excel (install it if not already "
                         "installed) and go to the login page.";
    record.source_tag = trace::SourceTag::generated;
    agentenv::Session session(model, record, {});
    // replay the first four ground-truth actions, then give up
    ordered_json gt_script = ordered_json::parse(
        util::read_file(out_root / "scripts" / "excel_open.json"));
    json actions = gt_script["actions"];
    json truncated = json::array({actions[0], actions[1], actions[2], actions[3],
                                  act("status_complete")});
    run_script(session, truncated);
    session.record(out_root / "runs" / "truncated" / "excel_open");
  }

  // ---------------------------------------------------------------------------
  // Labels fixtures.

  {
    // 20 synthetic outcomes, exactly one disagreement (task 07)
    std::string labels;
    ordered_json verdicts = ordered_json::array();
    for (int i = 1; i <= 20; ++i) {
      char id[32];
      std::snprintf(id, sizeof(id), "label_task_%02d", i);
      bool evaluator = i <= 10;
      bool human = i == 7 ? !evaluator : evaluator;
      labels += std::string(id) + "\t" + (human ? "true" : "false") + "\n";
      verdicts.push_back({{"task_id", id}, {"completed", evaluator}});
    }
    util::write_file(out_root / "labels" / "labels_20.tsv", labels);
    ordered_json doc;
    doc["tasks"] = std::move(verdicts);
    util::write_file(out_root / "labels" / "verdicts_20.json", doc.dump(2) + "\n");

    // all ground-truth traces validate as completed
    std::string dataset_labels;
    for (const FixtureTask& task : tasks) {
      dataset_labels += task.task_id + "\ttrue\n";
    }
    util::write_file(out_root / "labels" / "labels_dataset.tsv", dataset_labels);
  }

  // ---------------------------------------------------------------------------
  // Standalone VH dumps.

  {
    std::string one_button = screen_xml("com.example", {
        button("OK", 0, 0, 100, 50),
    });
    util::write_file(out_root / "vh" / "one_button.xml", one_button);

    // 50 node elements exactly: 1 root frame + 49 below
    std::vector<N> content;
    content.push_back(text_node("Inventory", 40, 80, 500, 160));
    N toolbar;
    toolbar.cls = "android.widget.LinearLayout";
    toolbar.box = {0, 180, 1080, 320};
    toolbar.kids = {
        button("Back", 20, 200, 220, 300),
        button("Forward", 240, 200, 440, 300),
        edit_text("query", 460, 200, 900, 300, "com.example:id/query"),
        icon("Refresh", 920, 200, 1060, 300),
    };
    content.push_back(toolbar);
    N list;
    list.cls = "androidx.recyclerview.widget.RecyclerView";
    list.scrollable = true;
    list.box = {0, 340, 1080, 1500};
    for (int i = 0; i < 8; ++i) {
      int top = 360 + i * 140;
      N item;
      item.cls = "android.widget.LinearLayout";
      item.box = {20, top, 1060, top + 120};
      item.clickable = true;
      item.kids = {
          text_node("Item " + std::to_string(i), 40, top + 10, 700, top + 110),
          check_box("", i % 2 == 0, 720, top + 10, 860, top + 110),
      };
      list.kids.push_back(item);
    }
    content.push_back(list);
    N nested;
    nested.cls = "android.widget.FrameLayout";
    nested.clickable = true;
    nested.box = {100, 1520, 700, 1800};
    N inner;
    inner.cls = "android.widget.FrameLayout";
    inner.clickable = true;
    inner.box = {150, 1560, 650, 1760};
    inner.kids = {button("Deep", 200, 1600, 600, 1720)};
    nested.kids = {inner};
    content.push_back(nested);
    content.push_back(text_node("", 0, 0, 0, 0));
    N offscreen = text_node("Ghost", 1200, 2000, 1400, 2100);
    content.push_back(offscreen);
    N sw;
    sw.cls = "android.widget.Switch";
    sw.clickable = true;
    sw.checkable = true;
    sw.checked = true;
    sw.box = {760, 1540, 1040, 1640};
    content.push_back(sw);
    content.push_back(icon("Profile picture", 760, 1660, 1040, 1800));
    N plain;
    plain.cls = "android.view.View";
    plain.box = {0, 1820, 1080, 1880};
    content.push_back(plain);
    for (int i = 0; i < 10; ++i) {
      content.push_back(text_node("Footer " + std::to_string(i), 40 + i * 100,
                                  1880, 120 + i * 100, 1910));
    }
    std::string fifty = screen_xml("com.example", std::move(content));
    util::write_file(out_root / "vh" / "fifty_nodes.xml", fifty);

    // sanity: the file must really contain 50 node elements
    vh::UiTree tree = vh::parse_vh(fifty);
    std::size_t count = 0;
    auto count_nodes = [&](const vh::UiNode& node, const auto& self) -> void {
      ++count;
      for (const vh::UiNode& child : node.children) self(child, self);
    };
    for (const vh::UiNode& top : tree.root.children) count_nodes(top, count_nodes);
    if (count != 50) {
      std::cerr << "fifty_nodes.xml has " << count << " nodes" << std::endl;
      return 1;
    }
  }

  std::cout << "fixtures written to " << out_root.string() << std::endl;
  return 0;
}
