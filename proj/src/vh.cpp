#include "touchstone/vh.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "touchstone/error.hpp"

namespace touchstone::vh {

const std::string* UiNode::find_attr(std::string_view name) const {
  for (const auto& [key, value] : attrs) {
    if (key == name) return &value;
  }
  return nullptr;
}

std::string_view UiNode::attr_or(std::string_view name,
                                 std::string_view fallback) const {
  const std::string* value = find_attr(name);
  return value ? std::string_view(*value) : fallback;
}

bool UiNode::attr_true(std::string_view name) const {
  return attr_or(name) == "true";
}

namespace {

// ---------------------------------------------------------------------------
// XML subset parser for UIAutomator dumps: one <hierarchy> root whose
// element children are <node>. Handles declarations, comments,
// self-closing tags, single/double quoted attributes and the five
// named entities plus numeric character references.

struct XmlCursor {
  std::string_view text;
  std::size_t pos = 0;

  bool eof() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  bool starts_with(std::string_view prefix) const {
    return text.substr(pos, prefix.size()) == prefix;
  }
  void skip_ws() {
    while (!eof() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  [[noreturn]] void error(const std::string& message) const {
    fail(Errc::xml_syntax, message + " at offset " + std::to_string(pos));
  }
};

void append_codepoint(std::string& out, unsigned long cp) {
  if (cp <= 0x7F) {
    out += static_cast<char>(cp);
  } else if (cp <= 0x7FF) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp <= 0xFFFF) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

std::string decode_entities(XmlCursor& cur, std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '&') {
      out += raw[i];
      continue;
    }
    std::size_t end = raw.find(';', i);
    if (end == std::string_view::npos) cur.error("unterminated entity");
    std::string_view name = raw.substr(i + 1, end - i - 1);
    if (name == "amp") out += '&';
    else if (name == "lt") out += '<';
    else if (name == "gt") out += '>';
    else if (name == "quot") out += '"';
    else if (name == "apos") out += '\'';
    else if (!name.empty() && name[0] == '#') {
      int base = 10;
      std::string_view digits = name.substr(1);
      if (!digits.empty() && (digits[0] == 'x' || digits[0] == 'X')) {
        base = 16;
        digits = digits.substr(1);
      }
      unsigned long cp = 0;
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, base);
      if (ec != std::errc() || ptr != digits.data() + digits.size()) {
        cur.error("bad character reference");
      }
      append_codepoint(out, cp);
    } else {
      cur.error("unknown entity &" + std::string(name) + ";");
    }
    i = end;
  }
  return out;
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
         c == ':' || c == '.';
}

std::string read_name(XmlCursor& cur) {
  std::size_t start = cur.pos;
  while (!cur.eof() && is_name_char(cur.peek())) ++cur.pos;
  if (cur.pos == start) cur.error("expected name");
  return std::string(cur.text.substr(start, cur.pos - start));
}

std::vector<std::pair<std::string, std::string>> read_attrs(XmlCursor& cur) {
  std::vector<std::pair<std::string, std::string>> attrs;
  for (;;) {
    cur.skip_ws();
    if (cur.eof()) cur.error("unterminated tag");
    if (cur.peek() == '>' || cur.peek() == '/' || cur.peek() == '?') break;
    std::string name = read_name(cur);
    cur.skip_ws();
    if (cur.eof() || cur.peek() != '=') cur.error("expected '='");
    ++cur.pos;
    cur.skip_ws();
    if (cur.eof() || (cur.peek() != '"' && cur.peek() != '\'')) {
      cur.error("expected quoted value");
    }
    char quote = cur.peek();
    ++cur.pos;
    std::size_t start = cur.pos;
    while (!cur.eof() && cur.peek() != quote) ++cur.pos;
    if (cur.eof()) cur.error("unterminated attribute value");
    std::string value = decode_entities(cur, cur.text.substr(start, cur.pos - start));
    ++cur.pos;
    attrs.emplace_back(std::move(name), std::move(value));
  }
  return attrs;
}

void skip_misc(XmlCursor& cur) {
  for (;;) {
    cur.skip_ws();
    if (cur.starts_with("<?")) {
      std::size_t end = cur.text.find("?>", cur.pos);
      if (end == std::string_view::npos) cur.error("unterminated declaration");
      cur.pos = end + 2;
    } else if (cur.starts_with("<!--")) {
      std::size_t end = cur.text.find("-->", cur.pos);
      if (end == std::string_view::npos) cur.error("unterminated comment");
      cur.pos = end + 3;
    } else {
      return;
    }
  }
}

Rect parse_bounds(const std::string& literal) {
  // literal form: [l,t][r,b]
  auto bad = [&]() {
    fail(Errc::bad_bounds, "bounds '" + literal + "' does not match [l,t][r,b]");
  };
  Rect rect;
  const char* p = literal.data();
  const char* end = p + literal.size();
  auto expect = [&](char c) {
    if (p >= end || *p != c) bad();
    ++p;
  };
  auto number = [&]() {
    int value = 0;
    auto [ptr, ec] = std::from_chars(p, end, value);
    if (ec != std::errc()) bad();
    p = ptr;
    return value;
  };
  expect('[');
  rect.left = number();
  expect(',');
  rect.top = number();
  expect(']');
  expect('[');
  rect.right = number();
  expect(',');
  rect.bottom = number();
  expect(']');
  if (p != end) bad();
  if (rect.left > rect.right || rect.top > rect.bottom) {
    fail(Errc::bad_bounds, "bounds '" + literal + "' inverted");
  }
  return rect;
}

UiNode parse_node_element(XmlCursor& cur);

void parse_children(XmlCursor& cur, UiNode& parent, const std::string& tag) {
  for (;;) {
    skip_misc(cur);
    if (cur.eof()) cur.error("unterminated <" + tag + ">");
    if (cur.starts_with("</")) {
      cur.pos += 2;
      std::string name = read_name(cur);
      if (name != tag) cur.error("mismatched close tag </" + name + ">");
      cur.skip_ws();
      if (cur.eof() || cur.peek() != '>') cur.error("expected '>'");
      ++cur.pos;
      return;
    }
    if (cur.peek() != '<') cur.error("unexpected text content");
    parent.children.push_back(parse_node_element(cur));
  }
}

UiNode parse_node_element(XmlCursor& cur) {
  if (cur.eof() || cur.peek() != '<') cur.error("expected element");
  ++cur.pos;
  std::string name = read_name(cur);
  if (name != "node") cur.error("unexpected element <" + name + ">");
  UiNode node;
  node.attrs = read_attrs(cur);
  const std::string* bounds = node.find_attr("bounds");
  if (!bounds) fail(Errc::bad_bounds, "node missing bounds attribute");
  node.bounds = parse_bounds(*bounds);
  if (cur.starts_with("/>")) {
    cur.pos += 2;
    return node;
  }
  if (cur.peek() != '>') cur.error("expected '>'");
  ++cur.pos;
  parse_children(cur, node, "node");
  return node;
}

std::string encode_attr(std::string_view value) {
  std::string out;
  out.reserve(value.size());
  for (char c : value) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void serialize_node(std::ostringstream& out, const UiNode& node, int depth) {
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "<node";
  for (const auto& [key, value] : node.attrs) {
    out << ' ' << key << "=\"" << encode_attr(value) << '"';
  }
  if (node.children.empty()) {
    out << " />\n";
    return;
  }
  out << ">\n";
  for (const UiNode& child : node.children) {
    serialize_node(out, child, depth + 1);
  }
  out << std::string(static_cast<std::size_t>(depth) * 2, ' ') << "</node>\n";
}

void preorder(const UiNode& node, int depth,
              const auto& visit) {  // visit(node, depth)
  visit(node, depth);
  for (const UiNode& child : node.children) preorder(child, depth + 1, visit);
}

}  // namespace

UiTree parse_vh(std::string_view xml_text) {
  XmlCursor cur{xml_text};
  skip_misc(cur);
  if (cur.eof() || cur.peek() != '<') cur.error("expected <hierarchy>");
  ++cur.pos;
  std::string name = read_name(cur);
  if (name != "hierarchy") cur.error("root element must be <hierarchy>");

  UiTree tree;
  tree.root.attrs = read_attrs(cur);
  if (cur.starts_with("/>")) {
    cur.pos += 2;
  } else {
    if (cur.eof() || cur.peek() != '>') cur.error("expected '>'");
    ++cur.pos;
    parse_children(cur, tree.root, "hierarchy");
  }
  skip_misc(cur);
  if (!cur.eof()) cur.error("trailing content after </hierarchy>");

  if (tree.root.children.empty()) {
    fail(Errc::empty_hierarchy, "hierarchy has no node children");
  }
  for (const UiNode& top : tree.root.children) {
    tree.screen_w = std::max(tree.screen_w, top.bounds.right);
    tree.screen_h = std::max(tree.screen_h, top.bounds.bottom);
  }
  if (tree.screen_w <= 0 || tree.screen_h <= 0) {
    fail(Errc::bad_bounds, "screen rectangle derived from root nodes is empty");
  }
  tree.root.bounds = Rect{0, 0, tree.screen_w, tree.screen_h};
  return tree;
}

std::string serialize_vh(const UiTree& tree) {
  std::ostringstream out;
  out << "<?xml version='1.0' encoding='UTF-8' standalone='yes' ?>\n";
  out << "<hierarchy";
  for (const auto& [key, value] : tree.root.attrs) {
    out << ' ' << key << "=\"" << encode_attr(value) << '"';
  }
  out << ">\n";
  for (const UiNode& top : tree.root.children) {
    serialize_node(out, top, 1);
  }
  out << "</hierarchy>\n";
  return out.str();
}

std::optional<std::size_t> ComponentIndex::index_of(const UiNode* node) const {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (entries[k] == node) return k;
  }
  return std::nullopt;
}

bool is_functional(const UiNode& node, const UiTree& tree) {
  if (&node == &tree.root) return false;
  Rect screen{0, 0, tree.screen_w, tree.screen_h};
  bool visible = node.bounds.area() > 0 && node.bounds.intersects(screen);
  if (!visible) return false;
  return node.attr_true("clickable") || node.attr_true("checkable") ||
         node.attr_true("long-clickable") || node.attr_true("scrollable") ||
         node.attr_or("class").find("EditText") != std::string_view::npos ||
         !node.attr_or("text").empty() || !node.attr_or("content-desc").empty();
}

ComponentIndex functional_components(const UiTree& tree) {
  ComponentIndex index;
  preorder(tree.root, 0, [&](const UiNode& node, int) {
    if (is_functional(node, tree)) index.entries.push_back(&node);
  });
  return index;
}

std::string xpath_of(const UiTree& tree, const UiNode& node) {
  if (&node == &tree.root) return "/hierarchy";
  std::vector<std::size_t> positions;
  auto descend = [&](const UiNode& parent, const auto& self) -> bool {
    for (std::size_t i = 0; i < parent.children.size(); ++i) {
      positions.push_back(i + 1);
      if (&parent.children[i] == &node) return true;
      if (self(parent.children[i], self)) return true;
      positions.pop_back();
    }
    return false;
  };
  if (!descend(tree.root, descend)) {
    fail(Errc::node_not_in_tree, "node is not part of this tree");
  }
  std::string path = "/hierarchy";
  for (std::size_t pos : positions) {
    path += "/node[" + std::to_string(pos) + "]";
  }
  return path;
}

const UiNode* resolve_xpath(const UiTree& tree, std::string_view xpath) {
  constexpr std::string_view kRoot = "/hierarchy";
  if (!xpath.starts_with(kRoot)) {
    fail(Errc::bad_xpath_syntax, "xpath must start with /hierarchy");
  }
  std::string_view rest = xpath.substr(kRoot.size());
  const UiNode* node = &tree.root;
  while (!rest.empty()) {
    constexpr std::string_view kStep = "/node[";
    if (!rest.starts_with(kStep)) {
      fail(Errc::bad_xpath_syntax, "expected /node[i] step in '" + std::string(xpath) + "'");
    }
    rest = rest.substr(kStep.size());
    std::size_t close = rest.find(']');
    if (close == std::string_view::npos) {
      fail(Errc::bad_xpath_syntax, "unterminated position in '" + std::string(xpath) + "'");
    }
    std::string_view digits = rest.substr(0, close);
    std::size_t position = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), position);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || position == 0) {
      fail(Errc::bad_xpath_syntax, "bad position '" + std::string(digits) + "'");
    }
    rest = rest.substr(close + 1);
    if (position > node->children.size()) return nullptr;
    node = &node->children[position - 1];
  }
  return node;
}

const UiNode* node_at_point(const UiTree& tree, double x, double y) {
  double px = x * tree.screen_w;
  double py = y * tree.screen_h;
  const UiNode* best = nullptr;
  int best_depth = -1;
  preorder(tree.root, 0, [&](const UiNode& node, int depth) {
    if (!is_functional(node, tree)) return;
    if (!node.bounds.contains(px, py)) return;
    // ties toward the latest pre-order visit at equal depth
    if (depth >= best_depth) {
      best = &node;
      best_depth = depth;
    }
  });
  return best;
}

std::string simplify_to_html(const UiTree& tree) {
  ComponentIndex index = functional_components(tree);
  std::ostringstream out;
  for (std::size_t k = 0; k < index.size(); ++k) {
    const UiNode& node = *index.entries[k];
    std::string_view cls = node.attr_or("class");
    std::string_view text = node.attr_or("text");
    std::string_view desc = node.attr_or("content-desc");
    std::string_view label = text.empty() ? desc : text;
    if (k > 0) out << '\n';
    if (cls.find("Button") != std::string_view::npos) {
      out << "<button id=" << k << ">" << label << "</button>";
    } else if (cls.find("EditText") != std::string_view::npos) {
      out << "<input id=" << k << " value=\"" << label << "\">";
    } else if (cls.find("CheckBox") != std::string_view::npos ||
               cls.find("Switch") != std::string_view::npos) {
      out << "<checkbox id=" << k << " checked="
          << (node.attr_true("checked") ? "true" : "false") << ">";
    } else if (cls.find("Image") != std::string_view::npos) {
      out << "<img id=" << k << " alt=\"" << desc << "\">";
    } else {
      out << "<p id=" << k << ">" << label << "</p>";
    }
  }
  return out.str();
}

}  // namespace touchstone::vh
