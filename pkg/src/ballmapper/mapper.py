"""Greedy ball-cover graphs over point clouds.

Construction follows the usual two phases: a seeded greedy cover picks
landmark rows until every row sits within ``epsilon`` of some landmark, then
balls become vertices and two vertices join exactly when their member sets
share a row.  Membership uses closed balls (distance <= epsilon) under the
Euclidean metric on the raw axis values; both choices are configuration
defaults, not facts about the data.

Distance comparisons are done on squared distances throughout so the kernel
and any re-implementation agree bit-for-bit on boundary rows.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Literal, Mapping, Sequence

import numpy as np

from .errors import (
    ConsistencyError,
    IncompleteFunctionError,
    ParameterError,
    UnknownBallError,
)
from .pointcloud import PointCloud
from .rng import SplitMix64

# Candidate edge pairs are prefiltered by landmark distance <= 2*epsilon; a
# pair farther apart cannot share a member.  The slack guards the exact-2eps
# boundary against rounding in the pairwise kernel.
_PREFILTER_SLACK = 1e-9

Aggregator = Literal["mean", "sd", "fraction"]


@dataclass(frozen=True)
class EpsilonNet:
    epsilon: float
    seed: int
    landmark_rows: tuple[int, ...]


@dataclass(frozen=True)
class Ball:
    ball_id: int
    landmark_row: int
    member_rows: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.member_rows)


@dataclass(frozen=True)
class BallMapperGraph:
    balls: tuple[Ball, ...]
    edges: frozenset[tuple[int, int]]
    epsilon: float
    seed: int
    axis_names: tuple[str, ...]

    @property
    def ball_ids(self) -> tuple[int, ...]:
        return tuple(ball.ball_id for ball in self.balls)

    def ball(self, ball_id: int) -> Ball:
        for ball in self.balls:
            if ball.ball_id == ball_id:
                return ball
        raise UnknownBallError(f"no ball with id {ball_id}")

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {b.ball_id: set() for b in self.balls}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def connected_components(self) -> list[set[int]]:
        adj = self.adjacency()
        seen: set[int] = set()
        components = []
        for start in sorted(adj):
            if start in seen:
                continue
            stack = [start]
            comp = set()
            while stack:
                node = stack.pop()
                if node in comp:
                    continue
                comp.add(node)
                stack.extend(adj[node] - comp)
            seen |= comp
            components.append(comp)
        return components


@dataclass(frozen=True)
class Coloring:
    graph: BallMapperGraph
    label: str
    values: dict[int, float]
    scale_min: float | None
    scale_max: float | None


def _squared_distances(values: np.ndarray, row: int) -> np.ndarray:
    delta = values - values[row]
    return np.einsum("ij,ij->i", delta, delta)


def build_net(cloud: PointCloud, epsilon: float, seed: int) -> EpsilonNet:
    """Seeded greedy cover of the cloud.

    Repeatedly draws a uniform row among the currently uncovered ones (see
    :mod:`ballmapper.rng` for the exact draw scheme) and covers everything
    within ``epsilon`` of it.  Deterministic for a fixed (cloud, epsilon,
    seed) triple; the resulting landmarks are pairwise more than ``epsilon``
    apart and jointly cover every row.
    """
    if not (epsilon > 0):
        raise ParameterError("epsilon must be positive")
    if cloud.n_rows == 0:
        raise ParameterError("cloud is empty")
    eps2 = float(epsilon) * float(epsilon)
    rng = SplitMix64(seed)
    uncovered = np.ones(cloud.n_rows, dtype=bool)
    landmarks: list[int] = []
    while True:
        candidates = np.flatnonzero(uncovered)
        if candidates.size == 0:
            break
        pick = int(candidates[rng.below(candidates.size)])
        landmarks.append(pick)
        uncovered &= _squared_distances(cloud.values, pick) > eps2
    return EpsilonNet(epsilon=float(epsilon), seed=seed, landmark_rows=tuple(landmarks))


def build_graph(cloud: PointCloud, net: EpsilonNet) -> BallMapperGraph:
    """Vertices from the net's balls, edges wherever member sets intersect.

    Ball ids run in landmark discovery order, 1-based.  Edge detection
    intersects member hash sets per candidate pair, with candidates
    prefiltered by landmark distance <= 2*epsilon.
    """
    n = cloud.n_rows
    for row in net.landmark_rows:
        if not 0 <= row < n:
            raise ConsistencyError(f"landmark row {row} outside cloud of {n} rows")
    eps2 = net.epsilon * net.epsilon
    balls = []
    member_sets: list[frozenset[int]] = []
    for i, row in enumerate(net.landmark_rows):
        members = frozenset(
            np.flatnonzero(_squared_distances(cloud.values, row) <= eps2).tolist()
        )
        balls.append(Ball(ball_id=i + 1, landmark_row=row, member_rows=members))
        member_sets.append(members)

    landmark_coords = cloud.values[list(net.landmark_rows)]
    m = len(balls)
    edges: set[tuple[int, int]] = set()
    if m > 1:
        gram = landmark_coords @ landmark_coords.T
        norms = np.einsum("ij,ij->i", landmark_coords, landmark_coords)
        pair_d2 = norms[:, None] + norms[None, :] - 2.0 * gram
        cutoff = (2.0 * net.epsilon) ** 2 * (1.0 + _PREFILTER_SLACK)
        for a in range(m):
            for b in range(a + 1, m):
                if pair_d2[a, b] > cutoff:
                    continue
                if member_sets[a] & member_sets[b]:
                    edges.add((a + 1, b + 1))
    return BallMapperGraph(
        balls=tuple(balls),
        edges=frozenset(edges),
        epsilon=net.epsilon,
        seed=net.seed,
        axis_names=cloud.axis_names,
    )


def build(cloud: PointCloud, epsilon: float, seed: int) -> BallMapperGraph:
    return build_graph(cloud, build_net(cloud, epsilon, seed))


def _population_sd(values: Sequence[float]) -> float:
    arr = np.asarray(values, dtype=np.float64)
    return float(arr.std())


def color_by(
    graph: BallMapperGraph,
    row_values: Sequence[float | bool | None] | Mapping[int, float | bool | None],
    aggregator: Aggregator = "mean",
    label: str = "",
) -> Coloring:
    """Aggregate a per-row function into one value per ball.

    ``mean`` and ``sd`` (population) require a value for every member row.
    ``fraction`` treats values as booleans, ignores rows whose flag is None
    and leaves balls with no flagged rows absent rather than zero.
    """
    if aggregator not in ("mean", "sd", "fraction"):
        raise ParameterError(f"unknown aggregator {aggregator!r}")

    def value_for(row: int):
        if isinstance(row_values, Mapping):
            return row_values.get(row)
        if row >= len(row_values):
            return None
        return row_values[row]

    values: dict[int, float] = {}
    for ball in graph.balls:
        if aggregator == "fraction":
            flags = [value_for(r) for r in ball.member_rows]
            present = [bool(f) for f in flags if f is not None]
            if not present:
                continue
            values[ball.ball_id] = sum(present) / len(present)
            continue
        member_values = []
        for row in sorted(ball.member_rows):
            v = value_for(row)
            if v is None:
                raise IncompleteFunctionError(
                    f"row {row} has no value for coloring {label!r}"
                )
            member_values.append(float(v))
        if aggregator == "mean":
            values[ball.ball_id] = float(np.mean(member_values))
        else:
            values[ball.ball_id] = _population_sd(member_values)
    present_values = list(values.values())
    scale_min = min(present_values) if present_values else None
    scale_max = max(present_values) if present_values else None
    return Coloring(
        graph=graph,
        label=label,
        values=values,
        scale_min=scale_min,
        scale_max=scale_max,
    )


# --- layout -----------------------------------------------------------------

REST_LENGTH = 1.0
_LAYOUT_ITERATIONS = 300


def layout(graph: BallMapperGraph, seed: int = 0) -> dict[int, tuple[float, float]]:
    """Deterministic force-directed 2D positions.

    Fruchterman-Reingold with rest length :data:`REST_LENGTH`, run per
    connected component from seeded initial positions; components are then
    shifted side by side so their bounding boxes stay disjoint.  A single
    ball lands at the origin.
    """
    if not graph.balls:
        raise ParameterError("graph has no balls")
    components = graph.connected_components()
    adj = graph.adjacency()
    positions: dict[int, tuple[float, float]] = {}
    offset_x = 0.0
    for comp_index, comp in enumerate(components):
        ids = sorted(comp)
        coords = _layout_component(ids, adj, seed, comp_index)
        width = coords[:, 0].max() - coords[:, 0].min() if len(ids) > 1 else 0.0
        shift = offset_x - (coords[:, 0].min() if len(ids) > 1 else 0.0)
        for i, ball_id in enumerate(ids):
            positions[ball_id] = (float(coords[i, 0] + shift), float(coords[i, 1]))
        offset_x += width + 2.0 * REST_LENGTH
    return positions


def _layout_component(
    ids: list[int], adj: dict[int, set[int]], seed: int, comp_index: int
) -> np.ndarray:
    m = len(ids)
    if m == 1:
        return np.zeros((1, 2))
    rng = SplitMix64((seed << 8) ^ comp_index)
    pos = np.empty((m, 2))
    for i in range(m):
        # initial positions uniform in [-1, 1)^2 from the documented stream
        pos[i, 0] = rng.below(1 << 30) / float(1 << 29) - 1.0
        pos[i, 1] = rng.below(1 << 30) / float(1 << 29) - 1.0
    index = {ball_id: i for i, ball_id in enumerate(ids)}
    edge_pairs = [
        (index[a], index[b]) for a in ids for b in adj[a] if a < b and b in index
    ]
    k = REST_LENGTH
    temperature = max(1.0, math.sqrt(m)) * k
    cooling = temperature / (_LAYOUT_ITERATIONS + 1)
    for _ in range(_LAYOUT_ITERATIONS):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt(np.einsum("ijk,ijk->ij", delta, delta))
        np.fill_diagonal(dist, 1.0)
        dist = np.maximum(dist, 1e-9)
        repulse = (k * k) / dist
        disp = np.einsum("ij,ijk->ik", repulse / dist, delta)
        for a, b in edge_pairs:
            d = pos[a] - pos[b]
            norm = max(math.sqrt(d[0] * d[0] + d[1] * d[1]), 1e-9)
            pull = (norm * norm / k) * (d / norm)
            disp[a] -= pull
            disp[b] += pull
        lengths = np.maximum(np.sqrt(np.einsum("ij,ij->i", disp, disp)), 1e-9)
        step = np.minimum(lengths, temperature)
        pos += disp / lengths[:, None] * step[:, None]
        temperature -= cooling
    pos -= pos.mean(axis=0)
    return pos


# --- canonical JSON ----------------------------------------------------------


def graph_to_doc(
    graph: BallMapperGraph,
    cloud: PointCloud,
    colorings: Iterable[Coloring] = (),
) -> dict:
    """Plain-dict form of the graph, ready for canonical serialization."""
    balls = []
    for ball in graph.balls:
        balls.append(
            {
                "id": ball.ball_id,
                "landmark": cloud.row_ids[ball.landmark_row],
                "members": [cloud.row_ids[r] for r in sorted(ball.member_rows)],
                "size": ball.size,
            }
        )
    doc = {
        "epsilon": graph.epsilon,
        "seed": graph.seed,
        "axes": list(graph.axis_names),
        "balls": balls,
        "edges": sorted([list(edge) for edge in graph.edges]),
    }
    coloring_doc = {}
    for coloring in colorings:
        coloring_doc[coloring.label] = {
            str(ball_id): value for ball_id, value in sorted(coloring.values.items())
        }
    if coloring_doc:
        doc["colorings"] = coloring_doc
    return doc


def doc_to_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def graph_to_json(
    graph: BallMapperGraph, cloud: PointCloud, colorings: Iterable[Coloring] = ()
) -> str:
    return doc_to_json(graph_to_doc(graph, cloud, colorings))


def graph_from_doc(doc: dict, cloud: PointCloud) -> BallMapperGraph:
    """Rebuild a graph from its JSON document against the owning cloud."""
    row_index = {row_id: i for i, row_id in enumerate(cloud.row_ids)}
    balls = []
    for entry in doc["balls"]:
        try:
            landmark = row_index[entry["landmark"]]
            members = frozenset(row_index[r] for r in entry["members"])
        except KeyError as exc:
            raise ConsistencyError(f"graph references unknown row {exc}") from None
        balls.append(
            Ball(ball_id=int(entry["id"]), landmark_row=landmark, member_rows=members)
        )
    edges = frozenset((min(a, b), max(a, b)) for a, b in doc["edges"])
    axes = tuple(doc["axes"])
    if axes != cloud.axis_names:
        raise ConsistencyError("graph axes do not match the cloud")
    return BallMapperGraph(
        balls=tuple(balls),
        edges=edges,
        epsilon=float(doc["epsilon"]),
        seed=int(doc["seed"]),
        axis_names=axes,
    )


def graph_from_json(text: str, cloud: PointCloud) -> BallMapperGraph:
    return graph_from_doc(json.loads(text), cloud)


def cycle_rank(graph: BallMapperGraph) -> int:
    return len(graph.edges) - len(graph.balls) + len(graph.connected_components())
