"""Post-construction analysis: sweeps, summaries, group contrasts, distances.

Everything here is a pure function over an immutable cloud/graph pair; the
sigma-normalized distance (sum of per-axis absolute differences divided by
that axis's population standard deviation) is the workhorse shared by the
distance colorings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegenerateScaleError,
    IncompleteFunctionError,
    ParameterError,
    UnknownBallError,
)
from .mapper import BallMapperGraph, Coloring, build, color_by
from .pointcloud import AxisStats, PointCloud, axis_stats
from .rng import child_seed
from .stats import TTestResult, ttest_two_sample  # noqa: F401  (re-export)


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    ball_count: int
    size_mean: float
    size_sd: float
    edges_per_ball: float


@dataclass(frozen=True)
class BallCentroid:
    ball_id: int
    coordinates: tuple[float, ...]


@dataclass(frozen=True)
class ComparisonRow:
    axis: str
    mean_a: float
    mean_b: float
    diff: float
    std_diff: float


@dataclass(frozen=True)
class ComparisonReport:
    group_a_balls: tuple[int, ...]
    group_b_balls: tuple[int, ...]
    rows: tuple[ComparisonRow, ...]
    size_a: int
    size_b: int


@dataclass(frozen=True)
class BallSummary:
    ball_id: int
    axis_means: tuple[float, ...]
    axis_sds: tuple[float, ...]
    attribute_mean: float
    size: int


def radius_sweep(
    cloud: PointCloud, epsilons: Sequence[float], seed: int
) -> list[SweepRow]:
    """One fresh build per radius; per-radius seeds derive from (seed, index).

    Size statistics are over ball member counts (population sd), and
    ``edges_per_ball`` is the edge count divided by the ball count.
    """
    rows = []
    for index, epsilon in enumerate(epsilons):
        graph = build(cloud, epsilon, child_seed(seed, index))
        sizes = np.array([ball.size for ball in graph.balls], dtype=np.float64)
        rows.append(
            SweepRow(
                epsilon=float(epsilon),
                ball_count=len(graph.balls),
                size_mean=float(sizes.mean()),
                size_sd=float(sizes.std()),
                edges_per_ball=len(graph.edges) / len(graph.balls),
            )
        )
    return rows


def _group_rows(graph: BallMapperGraph, ball_ids: Iterable[int]) -> set[int]:
    rows: set[int] = set()
    for ball_id in ball_ids:
        rows |= graph.ball(ball_id).member_rows
    return rows


def ball_summary(
    graph: BallMapperGraph, cloud: PointCloud, attribute: str
) -> list[BallSummary]:
    """Per-ball axis means/sds plus the mean of a numeric attribute."""
    attr = cloud.numeric_attribute(attribute)
    out = []
    for ball in graph.balls:
        rows = sorted(ball.member_rows)
        block = cloud.values[rows]
        out.append(
            BallSummary(
                ball_id=ball.ball_id,
                axis_means=tuple(float(x) for x in block.mean(axis=0)),
                axis_sds=tuple(float(x) for x in block.std(axis=0)),
                attribute_mean=float(attr[rows].mean()),
                size=ball.size,
            )
        )
    return out


def compare_groups(
    graph: BallMapperGraph,
    cloud: PointCloud,
    group_a: Sequence[int],
    group_b: Sequence[int],
    sigmas: Sequence[AxisStats] | None = None,
) -> ComparisonReport:
    """Axis-by-axis contrast of two ball groups.

    Member rows are deduplicated within each group before averaging (a row
    appearing in several balls of a group counts once).  The standardized
    column divides the mean difference by the population sd of the axis over
    the whole cloud; a zero-sd axis is only legal when its difference is
    exactly zero.
    """
    if not group_a or not group_b:
        raise ParameterError("both groups must be non-empty")
    sigmas = list(sigmas) if sigmas is not None else axis_stats(cloud)
    if [s.axis_name for s in sigmas] != list(cloud.axis_names):
        raise ParameterError("sigmas do not match the cloud axes")
    rows_a = sorted(_group_rows(graph, group_a))
    rows_b = sorted(_group_rows(graph, group_b))
    means_a = cloud.values[rows_a].mean(axis=0)
    means_b = cloud.values[rows_b].mean(axis=0)
    rows = []
    for j, stats in enumerate(sigmas):
        diff = float(means_a[j] - means_b[j])
        if stats.sd == 0.0:
            if diff != 0.0:
                raise DegenerateScaleError(
                    f"axis {stats.axis_name!r} has zero sd but nonzero diff"
                )
            std_diff = 0.0
        else:
            std_diff = diff / stats.sd
        rows.append(
            ComparisonRow(
                axis=stats.axis_name,
                mean_a=float(means_a[j]),
                mean_b=float(means_b[j]),
                diff=diff,
                std_diff=std_diff,
            )
        )
    return ComparisonReport(
        group_a_balls=tuple(group_a),
        group_b_balls=tuple(group_b),
        rows=tuple(rows),
        size_a=len(rows_a),
        size_b=len(rows_b),
    )


def centroid(graph: BallMapperGraph, cloud: PointCloud, ball_id: int) -> BallCentroid:
    ball = graph.ball(ball_id)
    rows = sorted(ball.member_rows)
    coords = cloud.values[rows].mean(axis=0)
    return BallCentroid(ball_id=ball_id, coordinates=tuple(float(x) for x in coords))


def normalized_distance(
    a: Sequence[float],
    b: Sequence[float],
    sigmas: Sequence[float],
    skip_zero_sigma: bool = False,
) -> float:
    """Sum over axes of |a_j - b_j| / sigma_j.

    A zero sigma raises by default; ``skip_zero_sigma`` drops such axes
    instead (a constant axis carries no information about separation).
    """
    av = np.asarray(a, dtype=np.float64)
    bv = np.asarray(b, dtype=np.float64)
    sv = np.asarray(sigmas, dtype=np.float64)
    if av.shape != bv.shape or av.shape != sv.shape:
        raise ParameterError("coordinates and sigmas must share one dimension")
    if np.any(sv == 0.0):
        if not skip_zero_sigma:
            raise DegenerateScaleError("sigma is zero on at least one axis")
        keep = sv != 0.0
        av, bv, sv = av[keep], bv[keep], sv[keep]
    return float(np.sum(np.abs(av - bv) / sv))


def distance_coloring(
    graph: BallMapperGraph,
    cloud: PointCloud,
    target_balls: Sequence[int],
    sigmas: Sequence[AxisStats] | None = None,
    label: str = "",
    skip_zero_sigma: bool = False,
) -> Coloring:
    """Mean normalized distance from each ball's rows to the target centroids.

    Per ball, every member row's distance to each target-ball centroid is
    computed, averaged over targets with equal weight, then averaged over the
    member rows.  Target balls are colored by the same rule, so their own
    spread contributes.
    """
    if not target_balls:
        raise ParameterError("target_balls must be non-empty")
    sigmas = list(sigmas) if sigmas is not None else axis_stats(cloud)
    sigma_values = np.array([s.sd for s in sigmas], dtype=np.float64)
    if sigma_values.shape[0] != cloud.n_axes:
        raise ParameterError("sigmas do not match the cloud axes")
    if np.any(sigma_values == 0.0) and not skip_zero_sigma:
        raise DegenerateScaleError("sigma is zero on at least one axis")
    keep = sigma_values != 0.0
    sigma_kept = sigma_values[keep]
    centroids = np.array(
        [centroid(graph, cloud, ball_id).coordinates for ball_id in target_balls]
    )[:, keep]
    values: dict[int, float] = {}
    coords = cloud.values[:, keep]
    for ball in graph.balls:
        rows = sorted(ball.member_rows)
        # rows x targets matrix of Eq-style sums, then average over both
        diffs = np.abs(coords[rows][:, None, :] - centroids[None, :, :]) / sigma_kept
        per_row = diffs.sum(axis=2).mean(axis=1)
        values[ball.ball_id] = float(per_row.mean())
    present = list(values.values())
    return Coloring(
        graph=graph,
        label=label or "distance_to_selection",
        values=values,
        scale_min=min(present),
        scale_max=max(present),
    )


def subgroup_fraction(
    graph: BallMapperGraph,
    flags: Sequence[bool] | dict[int, bool],
    label: str = "",
) -> Coloring:
    """Fraction of member rows flagged true, per ball; flags must cover rows."""
    max_row = max((max(b.member_rows) for b in graph.balls), default=-1)
    if isinstance(flags, dict):
        lookup = flags
    else:
        lookup = {i: bool(v) for i, v in enumerate(flags)}
    for row in range(max_row + 1):
        covered = any(row in ball.member_rows for ball in graph.balls)
        if covered and row not in lookup:
            raise IncompleteFunctionError(f"row {row} has no membership flag")
    return color_by(
        graph,
        {row: bool(v) for row, v in lookup.items()},
        aggregator="fraction",
        label=label or "subgroup_fraction",
    )


def region_flags(cloud: PointCloud, attribute: str, value: str) -> list[bool]:
    column = cloud.attribute(attribute)
    return [cell == value for cell in column]


def validate_ball_ids(graph: BallMapperGraph, ball_ids: Iterable[int]) -> None:
    known = set(graph.ball_ids)
    for ball_id in ball_ids:
        if ball_id not in known:
            raise UnknownBallError(f"no ball with id {ball_id}")
