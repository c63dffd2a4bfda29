"""Synthetic clouds with known topology, used by demos and acceptance checks.

The main generator draws a circle with a gap at the top and a straight
chordal bar across the interior.  Sampling is deterministic (even spacing),
so the only randomness in any downstream build is the cover seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .pointcloud import PointCloud


@dataclass(frozen=True)
class ShapeCloud:
    cloud: PointCloud
    sampling_gap: float
    top_gap: float
    gap_tip_rows: tuple[int, int]


def circle_with_bar(
    n_points: int = 200,
    radius: float = 1.0,
    gap_halfwidth: float = 0.5,
    bar_heights: tuple[float, ...] = (0.0,),
    junction_clear: float = 0.0,
) -> ShapeCloud:
    """Gapped circle plus horizontal chordal bar(s), evenly sampled.

    The gap removes the arc within ``gap_halfwidth`` radians of the top.
    Each entry of ``bar_heights`` places one straight chord at that height
    (as a fraction of ``radius``); a thick bar can be modelled by two nearby
    heights.  ``junction_clear`` removes circle samples closer than that
    distance to any bar attachment point, which keeps the attachment regions
    from oversampling.

    Returns the cloud together with the two gap tip rows and the realised
    sampling gap (largest spacing between adjacent samples on one stroke).
    """
    if not 0.0 < gap_halfwidth < math.pi / 2:
        raise ValueError("gap_halfwidth must be in (0, pi/2)")
    start = math.pi / 2 + gap_halfwidth
    arc_span = 2.0 * math.pi - 2.0 * gap_halfwidth
    chords = []
    for height in bar_heights:
        if not -1.0 < height < 1.0:
            raise ValueError("bar heights must be strictly inside the circle")
        half = radius * math.sqrt(1.0 - height * height)
        chords.append(((-half, height * radius), (half, height * radius)))
    arc_length = radius * arc_span
    chord_lengths = [right[0] - left[0] for left, right in chords]
    total = arc_length + sum(chord_lengths)
    n_arc = max(2, round(n_points * arc_length / total))
    points: list[tuple[float, float]] = []
    strokes: list[str] = []

    attachments = [pt for chord in chords for pt in chord]
    spacing = []
    for i in range(n_arc):
        theta = start + arc_span * i / (n_arc - 1)
        x = radius * math.cos(theta)
        y = radius * math.sin(theta)
        if junction_clear > 0.0 and any(
            math.hypot(x - ax, y - ay) < junction_clear for ax, ay in attachments
        ):
            points.append(None)  # placeholder keeps tip indexing simple
            strokes.append("dropped")
            continue
        points.append((x, y))
        strokes.append("circle")
    spacing.append(radius * arc_span / (n_arc - 1))

    remaining = max(n_points - n_arc, 2 * len(chords))
    for (left, right), length in zip(chords, chord_lengths):
        n_bar = max(2, round(remaining * length / sum(chord_lengths)))
        for i in range(n_bar):
            t = i / (n_bar - 1)
            points.append((left[0] + t * (right[0] - left[0]), left[1]))
            strokes.append("bar")
        spacing.append(length / (n_bar - 1))

    tip_first = 0
    tip_last = n_arc - 1
    rows = [
        (i, pt, stroke)
        for i, (pt, stroke) in enumerate(zip(points, strokes))
        if pt is not None
    ]
    index_of = {original: new for new, (original, _, _) in enumerate(rows)}
    coords = np.array([pt for _, pt, _ in rows], dtype=np.float64)
    row_ids = tuple(f"p{original:03d}" for original, _, _ in rows)
    stroke_attr = tuple(stroke for _, _, stroke in rows)
    cloud = PointCloud(
        row_ids=row_ids,
        axis_names=("x", "y"),
        values=coords,
        attributes={"stroke": stroke_attr},
    )
    tip_a = (-radius * math.sin(gap_halfwidth), radius * math.cos(gap_halfwidth))
    tip_g = (radius * math.sin(gap_halfwidth), radius * math.cos(gap_halfwidth))
    top_gap = math.dist(tip_a, tip_g)
    return ShapeCloud(
        cloud=cloud,
        sampling_gap=max(spacing),
        top_gap=top_gap,
        gap_tip_rows=(index_of[tip_first], index_of[tip_last]),
    )


def gaussian_blobs(
    n_per_blob: int,
    centers: list[tuple[float, ...]],
    spread: float,
    seed: int,
) -> PointCloud:
    """Isotropic Gaussian blobs; handy for sweep demos on synthetic data."""
    rng = np.random.default_rng(seed)
    blocks = []
    for center in centers:
        blocks.append(rng.normal(0.0, spread, (n_per_blob, len(center))) + center)
    values = np.vstack(blocks)
    n, d = values.shape
    return PointCloud(
        row_ids=tuple(f"r{i:04d}" for i in range(n)),
        axis_names=tuple(f"axis{j}" for j in range(d)),
        values=values,
    )
