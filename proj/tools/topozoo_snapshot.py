#!/usr/bin/env python3
"""Write Topology Zoo style GraphML files from the topohub JSON export.

    pip download topohub==1.5.1 --no-deps -d /tmp/th
    python3 -m zipfile -e /tmp/th/topohub-1.5.1-py3-none-any.whl /tmp/th/x
    tools/topozoo_snapshot.py /tmp/th/x/topohub/data/topozoo data/topologyzoo
"""

import argparse
import json
import pathlib
from xml.sax.saxutils import escape, quoteattr

HEADER = """<?xml version="1.0" encoding="utf-8"?>
<graphml xmlns="http://graphml.graphdrawing.org/xmlns">
  <key attr.name="Latitude" attr.type="double" for="node" id="d29" />
  <key attr.name="Longitude" attr.type="double" for="node" id="d32" />
  <key attr.name="label" attr.type="string" for="node" id="d33" />
  <key attr.name="Network" attr.type="string" for="graph" id="d5" />
  <graph edgedefault="undirected">
"""


def convert(src: pathlib.Path, dst: pathlib.Path) -> tuple[int, int]:
    doc = json.loads(src.read_text())
    lines = [HEADER, f"    <data key=\"d5\">{escape(src.stem)}</data>\n"]
    for node in doc["nodes"]:
        lines.append(f"    <node id={quoteattr(str(node['id']))}>\n")
        pos = node.get("pos")
        if pos is not None and len(pos) == 2:
            lon, lat = pos
            lines.append(f"      <data key=\"d29\">{lat!r}</data>\n")
            lines.append(f"      <data key=\"d32\">{lon!r}</data>\n")
        if node.get("name"):
            lines.append(f"      <data key=\"d33\">{escape(str(node['name']))}</data>\n")
        lines.append("    </node>\n")
    for edge in doc["edges"]:
        lines.append(f"    <edge source={quoteattr(str(edge['source']))} target={quoteattr(str(edge['target']))} />\n")
    lines.append("  </graph>\n</graphml>\n")
    dst.write_text("".join(lines))
    return len(doc["nodes"]), len(doc["edges"])


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("src", type=pathlib.Path, help="directory of topohub topozoo/*.json")
    ap.add_argument("out", type=pathlib.Path)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    files = sorted(args.src.glob("*.json"))
    for f in files:
        convert(f, args.out / (f.stem + ".graphml"))
    print(f"{len(files)} graphs written to {args.out}")


if __name__ == "__main__":
    main()
