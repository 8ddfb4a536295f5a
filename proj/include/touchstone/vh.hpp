#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace touchstone::vh {

struct Rect {
  int left = 0;
  int top = 0;
  int right = 0;
  int bottom = 0;

  int width() const { return right - left; }
  int height() const { return bottom - top; }
  long long area() const {
    return static_cast<long long>(width()) * height();
  }
  bool contains(double x, double y) const {
    return x >= left && x <= right && y >= top && y <= bottom;
  }
  bool intersects(const Rect& other) const {
    return left < other.right && other.left < right && top < other.bottom &&
           other.top < bottom;
  }
  bool operator==(const Rect&) const = default;
};

// One <node> element from a UIAutomator dump. Attributes are kept in
// document order with verbatim values so a dump can be re-emitted.
struct UiNode {
  std::vector<std::pair<std::string, std::string>> attrs;
  Rect bounds;
  std::vector<UiNode> children;

  const std::string* find_attr(std::string_view name) const;
  std::string_view attr_or(std::string_view name,
                           std::string_view fallback = "") const;
  bool attr_true(std::string_view name) const;
};

// Parsed dump. `root` is the <hierarchy> container itself; the dump's
// top-level <node> elements are its children, which keeps canonical
// XPaths of the form /hierarchy/node[i]/... invertible.
struct UiTree {
  UiNode root;
  int screen_w = 0;
  int screen_h = 0;
};

// raises XmlSyntax, BadBounds, EmptyHierarchy
UiTree parse_vh(std::string_view xml_text);

// Emits the UIAutomator dump schema (indented); parse(serialize(t))
// preserves every node's attribute multiset.
std::string serialize_vh(const UiTree& tree);

// Dense 0-based pre-order indices over functional components: visible
// nodes that are interactive (clickable/checkable/long-clickable/
// scrollable), editable, or carry text / content-desc.
struct ComponentIndex {
  std::vector<const UiNode*> entries;

  std::size_t size() const { return entries.size(); }
  const UiNode* at(std::size_t k) const { return entries.at(k); }
  std::optional<std::size_t> index_of(const UiNode* node) const;
};

bool is_functional(const UiNode& node, const UiTree& tree);
ComponentIndex functional_components(const UiTree& tree);

// Canonical positional XPath "/hierarchy/node[i]/..." with 1-based
// sibling positions. raises NodeNotInTree
std::string xpath_of(const UiTree& tree, const UiNode& node);

// Inverse of xpath_of; nullptr when the path addresses nothing.
// raises BadXPathSyntax
const UiNode* resolve_xpath(const UiTree& tree, std::string_view xpath);

// Deepest functional component containing the normalized point, ties
// broken toward the latest node in pre-order. nullptr when no
// functional component contains it.
const UiNode* node_at_point(const UiTree& tree, double x, double y);

// One line per functional component, in index order:
//   class contains "Button"              -> <button id=K>TEXT</button>
//   class contains "EditText"            -> <input id=K value="TEXT">
//   class contains "CheckBox"/"Switch"   -> <checkbox id=K checked=BOOL>
//   class contains "Image"               -> <img id=K alt="CONTENT-DESC">
//   otherwise                            -> <p id=K>TEXT</p>
// TEXT falls back to content-desc when text is empty.
std::string simplify_to_html(const UiTree& tree);

}  // namespace touchstone::vh
