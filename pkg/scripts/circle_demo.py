#!/usr/bin/env python3
"""Build the gapped-circle-with-bar cloud, map it, and write the artifacts.

Writes graph JSON, a DOT file and a laid-out SVG into ``out/`` so the shape
recovery can be eyeballed end to end.

Run: python scripts/circle_demo.py [seed]
"""

import sys
from pathlib import Path

from ballmapper.mapper import build, color_by, cycle_rank, graph_to_json, layout
from ballmapper.render import export_dot, export_svg
from ballmapper.synthetic import circle_with_bar

OUT = Path(__file__).resolve().parent.parent / "out"


def main() -> None:
    seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
    shape = circle_with_bar(200, gap_halfwidth=0.6, bar_heights=(-0.4, 0.4))
    epsilon = 7.0 * shape.sampling_gap
    graph = build(shape.cloud, epsilon, seed)
    components = graph.connected_components()
    print(
        f"epsilon={epsilon:.4f} balls={len(graph.balls)} edges={len(graph.edges)} "
        f"components={len(components)} cycle_rank={cycle_rank(graph)}"
    )
    heights = shape.cloud.values[:, 1].tolist()
    coloring = color_by(graph, heights, "mean", label="height_mean")
    OUT.mkdir(exist_ok=True)
    (OUT / "circle_graph.json").write_text(
        graph_to_json(graph, shape.cloud, [coloring]), encoding="utf-8"
    )
    positions = layout(graph, seed)
    (OUT / "circle_graph.dot").write_text(export_dot(graph, coloring), encoding="utf-8")
    (OUT / "circle_graph.svg").write_text(
        export_svg(graph, positions, coloring), encoding="utf-8"
    )
    print(f"artifacts in {OUT}")


if __name__ == "__main__":
    main()
