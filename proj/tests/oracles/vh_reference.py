#!/usr/bin/env python3
"""Independent view-hierarchy reference walk.

Re-implements, on top of xml.etree only, the functional-component
predicate, pre-order indexing, and the HTML simplification mapping.
Used to freeze expected values into the C++ tests and to emit the
golden simplified screen for the bestbuy cart fixture.

Usage:
  vh_reference.py count <vh.xml>              # node element count
  vh_reference.py index <vh.xml> <text>       # component index of a text node
  vh_reference.py components <vh.xml>         # index, bounds, class, text
  vh_reference.py simplify <vh.xml>           # reference HTML simplification
"""

import re
import sys
import xml.etree.ElementTree as ET


def parse_bounds(raw):
    m = re.fullmatch(r"\[(-?\d+),(-?\d+)\]\[(-?\d+),(-?\d+)\]", raw)
    if not m:
        raise ValueError(f"bad bounds {raw!r}")
    return tuple(int(g) for g in m.groups())


def screen_rect(root):
    w = h = 0
    for node in root:
        _, _, r, b = parse_bounds(node.get("bounds"))
        w, h = max(w, r), max(h, b)
    return w, h


def is_functional(node, screen_w, screen_h):
    l, t, r, b = parse_bounds(node.get("bounds"))
    if (r - l) * (b - t) <= 0:
        return False
    if not (l < screen_w and 0 < r and t < screen_h and 0 < b):
        return False
    if node.get("clickable") == "true" or node.get("checkable") == "true":
        return True
    if node.get("long-clickable") == "true" or node.get("scrollable") == "true":
        return True
    if "EditText" in node.get("class", ""):
        return True
    return bool(node.get("text")) or bool(node.get("content-desc"))


def preorder(element):
    for child in element:
        yield child
        yield from preorder(child)


def components(root):
    w, h = screen_rect(root)
    out = []
    for node in preorder(root):
        if node.tag == "node" and is_functional(node, w, h):
            out.append(node)
    return out


def simplify(root):
    lines = []
    for k, node in enumerate(components(root)):
        cls = node.get("class", "")
        text = node.get("text", "")
        desc = node.get("content-desc", "")
        label = text if text else desc
        if "Button" in cls:
            lines.append(f"<button id={k}>{label}</button>")
        elif "EditText" in cls:
            lines.append(f'<input id={k} value="{label}">')
        elif "CheckBox" in cls or "Switch" in cls:
            lines.append(f"<checkbox id={k} checked={node.get('checked', 'false')}>")
        elif "Image" in cls:
            lines.append(f'<img id={k} alt="{desc}">')
        else:
            lines.append(f"<p id={k}>{label}</p>")
    return "\n".join(lines)


def main():
    mode, path = sys.argv[1], sys.argv[2]
    root = ET.parse(path).getroot()
    if mode == "count":
        print(sum(1 for n in root.iter("node")))
    elif mode == "index":
        wanted = sys.argv[3]
        for k, node in enumerate(components(root)):
            if node.get("text") == wanted:
                print(k)
                return
        sys.exit(f"no component with text {wanted!r}")
    elif mode == "components":
        for k, node in enumerate(components(root)):
            print(k, node.get("bounds"), node.get("class"), repr(node.get("text")))
    elif mode == "simplify":
        print(simplify(root))
    else:
        sys.exit(f"unknown mode {mode}")


if __name__ == "__main__":
    main()
