#include <doctest.h>

#include <algorithm>
#include <set>

#include "test_support.hpp"
#include "touchstone/error.hpp"
#include "touchstone/util.hpp"
#include "touchstone/vh.hpp"

using namespace touchstone;
using test_support::fixtures_dir;

namespace {

std::string minimal(const std::string& nodes) {
  return "<hierarchy rotation=\"0\">" + nodes + "</hierarchy>";
}

std::string button_xml(const std::string& text, const std::string& bounds,
                       const std::string& extra = "") {
  return "<node class=\"android.widget.Button\" text=\"" + text +
         "\" bounds=\"" + bounds + "\" clickable=\"true\" " + extra + "/>";
}

std::vector<const vh::UiNode*> all_nodes(const vh::UiTree& tree) {
  std::vector<const vh::UiNode*> out;
  auto walk = [&](const vh::UiNode& node, const auto& self) -> void {
    out.push_back(&node);
    for (const vh::UiNode& child : node.children) self(child, self);
  };
  for (const vh::UiNode& top : tree.root.children) walk(top, walk);
  return out;
}

int depth_of(const vh::UiTree& tree, const vh::UiNode* node) {
  // depth via the canonical xpath: one /node[i] step per level
  std::string path = vh::xpath_of(tree, *node);
  return static_cast<int>(std::count(path.begin(), path.end(), '['));
}

}  // namespace

TEST_CASE("parse_vh: single button dump") {
  vh::UiTree tree = vh::parse_vh(minimal(button_xml("OK", "[0,0][100,50]")));
  REQUIRE(tree.root.children.size() == 1);
  const vh::UiNode& node = tree.root.children[0];
  CHECK(node.attr_or("text") == "OK");
  CHECK(node.attr_or("class") == "android.widget.Button");
  CHECK(node.bounds == vh::Rect{0, 0, 100, 50});
  CHECK(tree.screen_w == 100);
  CHECK(tree.screen_h == 50);
}

TEST_CASE("parse_vh: inverted bounds rejected") {
  try {
    vh::parse_vh(minimal(button_xml("OK", "[100,50][0,0]")));
    FAIL("expected BadBounds");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_bounds);
  }
}

TEST_CASE("parse_vh: error cases") {
  try {
    vh::parse_vh("<hierarchy rotation=\"0\"></hierarchy>");
    FAIL("expected EmptyHierarchy");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_hierarchy);
  }
  try {
    vh::parse_vh("<hierarchy><node bounds=\"[0,0][10,10]\">");
    FAIL("expected XmlSyntax");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::xml_syntax);
  }
  try {
    vh::parse_vh("<widget/>");
    FAIL("expected XmlSyntax");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::xml_syntax);
  }
  try {
    vh::parse_vh("<hierarchy><node class=\"a.B\"/></hierarchy>");
    FAIL("expected BadBounds for missing bounds");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::bad_bounds);
  }
}

TEST_CASE("parse_vh: entity decoding and attribute escaping round-trip") {
  std::string xml = minimal(
      "<node text=\"a &amp; b &lt;c&gt; &quot;d&quot; &#65;\" "
      "bounds=\"[0,0][10,10]\" clickable=\"true\"/>");
  vh::UiTree tree = vh::parse_vh(xml);
  CHECK(tree.root.children[0].attr_or("text") == "a & b <c> \"d\" A");

  vh::UiTree again = vh::parse_vh(vh::serialize_vh(tree));
  CHECK(again.root.children[0].attr_or("text") == "a & b <c> \"d\" A");
}

TEST_CASE("parse_vh: fifty-node fixture matches the reference counter") {
  vh::UiTree tree =
      vh::parse_vh(util::read_file(fixtures_dir() / "vh" / "fifty_nodes.xml"));
  // frozen from tests/oracles/vh_reference.py
  CHECK(all_nodes(tree).size() == 50);
  CHECK(vh::functional_components(tree).size() == 45);
}

TEST_CASE("parse -> serialize -> parse preserves every attribute multiset") {
  for (const char* name : {"fifty_nodes.xml", "one_button.xml"}) {
    vh::UiTree tree = vh::parse_vh(util::read_file(fixtures_dir() / "vh" / name));
    vh::UiTree again = vh::parse_vh(vh::serialize_vh(tree));
    auto a = all_nodes(tree);
    auto b = all_nodes(again);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::multiset<std::pair<std::string, std::string>> ma(a[i]->attrs.begin(),
                                                            a[i]->attrs.end());
      std::multiset<std::pair<std::string, std::string>> mb(b[i]->attrs.begin(),
                                                            b[i]->attrs.end());
      CHECK(ma == mb);
    }
  }
}

TEST_CASE("functional_components: predicate edges") {
  // clickable button plus a zero-area node: only the button is indexed
  vh::UiTree tree = vh::parse_vh(minimal(
      button_xml("OK", "[0,0][100,50]") +
      "<node class=\"android.widget.TextView\" text=\"ghost\" bounds=\"[5,5][5,5]\"/>"));
  vh::ComponentIndex index = vh::functional_components(tree);
  REQUIRE(index.size() == 1);
  CHECK(index.at(0)->attr_or("text") == "OK");

  vh::UiTree bare = vh::parse_vh(minimal(
      "<node class=\"android.view.View\" bounds=\"[0,0][100,100]\"/>"));
  CHECK(vh::functional_components(bare).size() == 0);
}

TEST_CASE("functional_components: indices are pre-order, idempotent, bijective") {
  vh::UiTree tree =
      vh::parse_vh(util::read_file(fixtures_dir() / "vh" / "fifty_nodes.xml"));
  vh::ComponentIndex a = vh::functional_components(tree);
  vh::ComponentIndex b = vh::functional_components(tree);
  REQUIRE(a.size() == b.size());
  std::set<const vh::UiNode*> seen;
  std::size_t cursor = 0;
  auto nodes = all_nodes(tree);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.entries[k] == b.entries[k]);
    CHECK(seen.insert(a.entries[k]).second);
    CHECK(vh::is_functional(*a.entries[k], tree));
    // pre-order: each indexed node sits at or after the previous one
    std::size_t at = static_cast<std::size_t>(
        std::find(nodes.begin(), nodes.end(), a.entries[k]) - nodes.begin());
    CHECK(at >= cursor);
    cursor = at;
  }
  for (const vh::UiNode* node : nodes) {
    if (vh::is_functional(*node, tree)) CHECK(seen.count(node) == 1);
  }
}

TEST_CASE("functional_components: bestbuy cart index frozen by oracle") {
  vh::UiTree tree = vh::parse_vh(util::read_file(
      fixtures_dir() / "dataset" / "bestbuy_empty_cart" / "gt" / "steps" / "0005" /
      "vh.xml"));
  vh::ComponentIndex index = vh::functional_components(tree);
  // frozen from tests/oracles/vh_reference.py (index mode)
  REQUIRE(index.size() >= 2);
  CHECK(index.at(1)->attr_or("text") == "Your cart is empty");
  CHECK(index.at(1)->bounds == vh::Rect{40, 500, 1040, 640});
}

TEST_CASE("xpath_of: canonical forms") {
  vh::UiTree tree = vh::parse_vh(minimal(
      "<node class=\"a.Layout\" bounds=\"[0,0][100,100]\">" +
      button_xml("A", "[0,0][50,50]") + button_xml("B", "[50,0][100,50]") +
      "</node>"));
  CHECK(vh::xpath_of(tree, tree.root.children[0]) == "/hierarchy/node[1]");
  CHECK(vh::xpath_of(tree, tree.root.children[0].children[1]) ==
        "/hierarchy/node[1]/node[2]");

  vh::UiNode stranger;
  try {
    vh::xpath_of(tree, stranger);
    FAIL("expected NodeNotInTree");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::node_not_in_tree);
  }
}

TEST_CASE("resolve_xpath: hits, misses, and bad syntax") {
  vh::UiTree tree = vh::parse_vh(minimal(button_xml("OK", "[0,0][100,50]")));
  CHECK(vh::resolve_xpath(tree, "/hierarchy/node[1]") == &tree.root.children[0]);
  CHECK(vh::resolve_xpath(tree, "/hierarchy/node[9]") == nullptr);
  CHECK(vh::resolve_xpath(tree, "/hierarchy") == &tree.root);
  for (const char* bad : {"/hier", "/hierarchy/node[0]", "/hierarchy/node[x]",
                          "/hierarchy/node[1", "node[1]"}) {
    CHECK_THROWS_AS(vh::resolve_xpath(tree, bad), Error);
  }
}

TEST_CASE("xpath round-trips over every fixture node") {
  for (const char* name : {"fifty_nodes.xml", "one_button.xml"}) {
    vh::UiTree tree = vh::parse_vh(util::read_file(fixtures_dir() / "vh" / name));
    for (const vh::UiNode* node : all_nodes(tree)) {
      CHECK(vh::resolve_xpath(tree, vh::xpath_of(tree, *node)) == node);
    }
  }
}

TEST_CASE("node_at_point: full-screen button and empty space") {
  vh::UiTree tree = vh::parse_vh(minimal(button_xml("OK", "[0,0][100,50]")));
  CHECK(vh::node_at_point(tree, 0.5, 0.5) == &tree.root.children[0]);

  vh::UiTree split = vh::parse_vh(minimal(
      button_xml("A", "[0,0][40,40]") +
      "<node class=\"a.View\" bounds=\"[0,40][100,100]\"/>"));
  CHECK(vh::node_at_point(split, 0.9, 0.9) == nullptr);
}

TEST_CASE("node_at_point: brute-force containment oracle over a probe grid") {
  vh::UiTree tree =
      vh::parse_vh(util::read_file(fixtures_dir() / "vh" / "fifty_nodes.xml"));
  const vh::UiNode* deep = nullptr;
  for (const vh::UiNode* node : all_nodes(tree)) {
    if (node->attr_or("text") == "Deep") deep = node;
  }
  REQUIRE(deep != nullptr);
  double cx = (deep->bounds.left + deep->bounds.right) / 2.0 / tree.screen_w;
  double cy = (deep->bounds.top + deep->bounds.bottom) / 2.0 / tree.screen_h;
  CHECK(vh::node_at_point(tree, cx, cy) == deep);

  vh::ComponentIndex index = vh::functional_components(tree);
  for (int gx = 0; gx <= 20; ++gx) {
    for (int gy = 0; gy <= 20; ++gy) {
      double x = gx / 20.0;
      double y = gy / 20.0;
      double px = x * tree.screen_w;
      double py = y * tree.screen_h;
      const vh::UiNode* expected = nullptr;
      int best_depth = -1;
      for (const vh::UiNode* node : index.entries) {  // pre-order scan
        if (!node->bounds.contains(px, py)) continue;
        int depth = depth_of(tree, node);
        if (depth >= best_depth) {
          expected = node;
          best_depth = depth;
        }
      }
      CHECK(vh::node_at_point(tree, x, y) == expected);
    }
  }
}

TEST_CASE("simplify_to_html: element mapping") {
  vh::UiTree single = vh::parse_vh(minimal(button_xml("OK", "[0,0][100,50]")));
  CHECK(vh::simplify_to_html(single) == "<button id=0>OK</button>");

  vh::UiTree empty = vh::parse_vh(minimal(
      "<node class=\"android.view.View\" bounds=\"[0,0][100,100]\"/>"));
  CHECK(vh::simplify_to_html(empty) == "");

  vh::UiTree mixed = vh::parse_vh(minimal(
      "<node class=\"a.Layout\" bounds=\"[0,0][100,200]\">"
      "<node class=\"android.widget.EditText\" text=\"hi\" bounds=\"[0,0][100,20]\"/>"
      "<node class=\"android.widget.CheckBox\" checked=\"true\" checkable=\"true\" bounds=\"[0,20][100,40]\"/>"
      "<node class=\"android.widget.Switch\" checked=\"false\" checkable=\"true\" bounds=\"[0,40][100,60]\"/>"
      "<node class=\"android.widget.ImageView\" content-desc=\"pic\" bounds=\"[0,60][100,80]\"/>"
      "<node class=\"android.widget.TextView\" text=\"\" content-desc=\"fallback\" bounds=\"[0,80][100,100]\"/>"
      "<node class=\"android.widget.ImageButton\" content-desc=\"send\" clickable=\"true\" bounds=\"[0,100][100,120]\"/>"
      "</node>"));
  CHECK(vh::simplify_to_html(mixed) ==
        "<input id=0 value=\"hi\">\n"
        "<checkbox id=1 checked=true>\n"
        "<checkbox id=2 checked=false>\n"
        "<img id=3 alt=\"pic\">\n"
        "<p id=4>fallback</p>\n"
        "<button id=5>send</button>");
}

TEST_CASE("simplify_to_html: line count equals component count on fixtures") {
  for (const char* name : {"fifty_nodes.xml", "one_button.xml"}) {
    vh::UiTree tree = vh::parse_vh(util::read_file(fixtures_dir() / "vh" / name));
    std::string html = vh::simplify_to_html(tree);
    std::size_t lines =
        html.empty() ? 0 : static_cast<std::size_t>(std::count(html.begin(), html.end(), '\n')) + 1;
    CHECK(lines == vh::functional_components(tree).size());
  }
}

TEST_CASE("simplify_to_html: bestbuy golden file from the reference walk") {
  vh::UiTree tree = vh::parse_vh(util::read_file(
      fixtures_dir() / "dataset" / "bestbuy_empty_cart" / "gt" / "steps" / "0005" /
      "vh.xml"));
  std::string golden =
      util::read_file(fixtures_dir() / "golden" / "bestbuy_cart_simplified.html");
  while (!golden.empty() && golden.back() == '\n') golden.pop_back();
  CHECK(vh::simplify_to_html(tree) == golden);
}
