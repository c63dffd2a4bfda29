"""Color ramp, DOT export and static SVG rendering of graphs.

The ramp runs red (minimum) through orange, yellow and green to blue
(maximum) with these documented stops, interpolated linearly in RGB:

    #FF0000  #FFA500  #FFFF00  #00FF00  #0000FF

Balls without a color value render grey (#C0C0C0).
"""

from __future__ import annotations

import math
from typing import Mapping

from .errors import ConsistencyError
from .mapper import BallMapperGraph, Coloring

RAMP_STOPS = ("#FF0000", "#FFA500", "#FFFF00", "#00FF00", "#0000FF")
ABSENT_COLOR = "#C0C0C0"


def _hex_to_rgb(color: str) -> tuple[int, int, int]:
    return int(color[1:3], 16), int(color[3:5], 16), int(color[5:7], 16)


def ramp_color(value: float, low: float, high: float) -> str:
    """Hex color for a value on the documented red-to-blue ramp."""
    if high <= low:
        t = 0.5
    else:
        t = min(max((value - low) / (high - low), 0.0), 1.0)
    scaled = t * (len(RAMP_STOPS) - 1)
    i = min(int(scaled), len(RAMP_STOPS) - 2)
    frac = scaled - i
    r0, g0, b0 = _hex_to_rgb(RAMP_STOPS[i])
    r1, g1, b1 = _hex_to_rgb(RAMP_STOPS[i + 1])
    return "#{:02X}{:02X}{:02X}".format(
        round(r0 + (r1 - r0) * frac),
        round(g0 + (g1 - g0) * frac),
        round(b0 + (b1 - b0) * frac),
    )


def _check_coloring(graph: BallMapperGraph, coloring: Coloring | None) -> None:
    if coloring is None:
        return
    known = set(graph.ball_ids)
    if not set(coloring.values).issubset(known):
        raise ConsistencyError("coloring refers to balls missing from the graph")


def _node_styles(graph: BallMapperGraph, coloring: Coloring | None):
    max_size = max(ball.size for ball in graph.balls)
    for ball in graph.balls:
        if coloring is not None and ball.ball_id in coloring.values:
            color = ramp_color(
                coloring.values[ball.ball_id],
                coloring.scale_min if coloring.scale_min is not None else 0.0,
                coloring.scale_max if coloring.scale_max is not None else 1.0,
            )
        elif coloring is not None:
            color = ABSENT_COLOR
        else:
            color = ABSENT_COLOR
        yield ball, math.sqrt(ball.size / max_size), color


def export_dot(graph: BallMapperGraph, coloring: Coloring | None = None) -> str:
    """Undirected DOT output; node width scales with member count."""
    _check_coloring(graph, coloring)
    lines = ["graph ballmapper {", "  node [shape=circle style=filled];"]
    for ball, scale, color in _node_styles(graph, coloring):
        width = 0.3 + 0.7 * scale
        lines.append(
            f'  {ball.ball_id} [label="{ball.ball_id}" width={width:.3f} '
            f'fillcolor="{color}"];'
        )
    for a, b in sorted(graph.edges):
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_svg(
    graph: BallMapperGraph,
    positions: Mapping[int, tuple[float, float]],
    coloring: Coloring | None = None,
    size: int = 640,
) -> str:
    """Static SVG of a laid-out graph with a legend when colored."""
    _check_coloring(graph, coloring)
    xs = [positions[b.ball_id][0] for b in graph.balls]
    ys = [positions[b.ball_id][1] for b in graph.balls]
    span = max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
    margin = 40.0
    scale = (size - 2 * margin) / span

    def place(ball_id: int) -> tuple[float, float]:
        x, y = positions[ball_id]
        return margin + (x - min(xs)) * scale, margin + (y - min(ys)) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for a, b in sorted(graph.edges):
        xa, ya = place(a)
        xb, yb = place(b)
        parts.append(
            f'<line x1="{xa:.2f}" y1="{ya:.2f}" x2="{xb:.2f}" y2="{yb:.2f}" '
            'stroke="#888888" stroke-width="1"/>'
        )
    for ball, radius_scale, color in _node_styles(graph, coloring):
        x, y = place(ball.ball_id)
        r = 4.0 + 14.0 * radius_scale
        parts.append(
            f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r:.2f}" fill="{color}" '
            'stroke="#333333" stroke-width="0.8"/>'
        )
        parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-size="9" text-anchor="middle" '
            f'dy="3">{ball.ball_id}</text>'
        )
    if coloring is not None and coloring.scale_min is not None:
        parts.append(
            f'<text x="{margin}" y="{size - 10}" font-size="11">'
            f"{coloring.label}: {coloring.scale_min:.4g} (red) to "
            f"{coloring.scale_max:.4g} (blue)</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
