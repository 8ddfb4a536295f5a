#!/usr/bin/env python3
"""Computes every fixture-derived expected value frozen into the C++
test suites, end to end, using only the independent reference
implementations in this directory. Run from the repo root after
regenerating fixtures; paste updated constants into the tests if any
fixture content changes.
"""

import json
import subprocess
import sys
import xml.etree.ElementTree as ET
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
import trigram_cosine as tc
import vh_reference as vr

ROOT = Path(__file__).resolve().parents[2]
FIX = ROOT / "fixtures"


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) % (1 << 64)
    return h


def count_click_actions(trace_dir: Path) -> int:
    total = 0
    for action_file in sorted(trace_dir.glob("steps/*/action.json")):
        if json.loads(action_file.read_text())["kind"] == "click":
            total += 1
    return total


def main() -> None:
    print("# excel_open ground-truth click count")
    print("excel_gt_clicks =", count_click_actions(FIX / "dataset/excel_open/gt"))

    print("\n# fifty-node dump")
    fifty = ET.parse(FIX / "vh/fifty_nodes.xml").getroot()
    print("node_count =", sum(1 for _ in fifty.iter("node")))
    print("functional_count =", len(vr.components(fifty)))

    print("\n# bestbuy cart-empty screen (ground-truth final observation)")
    bb_final = FIX / "dataset/bestbuy_empty_cart/gt/steps/0005/vh.xml"
    bb_root = ET.parse(bb_final).getroot()
    for k, node in enumerate(vr.components(bb_root)):
        if node.get("text") == "Your cart is empty":
            print("empty_cart_index =", k)
            print("empty_cart_bounds =", node.get("bounds"))
    simplified = vr.simplify(bb_root)
    print("simplified golden:")
    print(simplified)
    vec = tc.trigrams(simplified)
    digest = b";".join(k + b":" + str(int(v)).encode() for k, v in sorted(vec.items()))
    print("embed_hash = 0x%016x" % fnv1a64(digest))

    print("\n# cart variant screens: fuzzy screen decision at theta 0.85")
    cart2 = vr.simplify(ET.parse(FIX / "dataset/bestbuy_empty_cart/gt/steps/0001/vh.xml").getroot())
    cart1 = vr.simplify(ET.parse(FIX / "dataset/bestbuy_empty_cart/gt/steps/0003/vh.xml").getroot())
    score = tc.cosine(tc.trigrams(cart2), tc.trigrams(cart1))
    print(f"cart2_vs_cart1_cosine = {score:.17g}  -> similar@0.85 = {score >= 0.85}")

    print("\n# news feed variant: fuzzy screen decision at theta 0.85")
    gt_feed = vr.simplify(ET.parse(FIX / "dataset/news_headlines/gt/steps/0001/vh.xml").getroot())
    alt_feed = vr.simplify(ET.parse(FIX / "runs/alt/news_headlines/steps/0001/vh.xml").getroot())
    score = tc.cosine(tc.trigrams(gt_feed), tc.trigrams(alt_feed))
    print(f"news_cosine = {score:.17g}  -> similar@0.85 = {score >= 0.85}")

    print("\n# search text pairs")
    for a, b in [("Microsoft Excel", "Excel"),
                 ("wireless mouse under $25", "wireless mouse under $20")]:
        score = tc.cosine(tc.trigrams(a), tc.trigrams(b))
        print(f"cosine({a!r}, {b!r}) = {score:.17g}  -> similar@0.85 = {score >= 0.85}")

    print("\n# labels fixture agreement")
    labels = {}
    for line in (FIX / "labels/labels_20.tsv").read_text().splitlines():
        task, value = line.split("\t")
        labels[task] = value == "true"
    verdicts = json.loads((FIX / "labels/verdicts_20.json").read_text())["tasks"]
    agree = sum(1 for v in verdicts if labels[v["task_id"]] == v["completed"])
    print(f"agreement = {agree}/{len(verdicts)} = {agree / len(verdicts)}")


if __name__ == "__main__":
    main()
