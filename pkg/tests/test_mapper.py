import itertools
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballmapper.errors import (
    ConsistencyError,
    IncompleteFunctionError,
    ParameterError,
)
from ballmapper.mapper import (
    EpsilonNet,
    build,
    build_graph,
    build_net,
    color_by,
    cycle_rank,
    graph_from_json,
    graph_to_json,
    layout,
    REST_LENGTH,
)
from ballmapper.rng import SplitMix64

from conftest import make_cloud, random_cloud


def greedy_oracle(values: np.ndarray, epsilon: float, seed: int) -> list[int]:
    """Row-by-row greedy cover using the same documented draw sequence."""
    rng = SplitMix64(seed)
    n = len(values)
    uncovered = list(range(n))
    landmarks = []
    while uncovered:
        pick = uncovered[rng.below(len(uncovered))]
        landmarks.append(pick)
        survivors = []
        for row in uncovered:
            dist2 = sum((values[row][k] - values[pick][k]) ** 2 for k in range(values.shape[1]))
            if dist2 > epsilon * epsilon:
                survivors.append(row)
        uncovered = survivors
    return landmarks


def brute_force_edges(values: np.ndarray, net: EpsilonNet) -> set[tuple[int, int]]:
    eps2 = net.epsilon**2
    members = []
    for row in net.landmark_rows:
        inside = {
            i
            for i in range(len(values))
            if sum((values[i][k] - values[row][k]) ** 2 for k in range(values.shape[1])) <= eps2
        }
        members.append(inside)
    edges = set()
    for a, b in itertools.combinations(range(len(members)), 2):
        if members[a] & members[b]:
            edges.add((a + 1, b + 1))
    return edges


# --- net construction ---------------------------------------------------------


def test_single_row_cloud_single_landmark():
    cloud = make_cloud([[2.0, 3.0]])
    net = build_net(cloud, 0.5, seed=1)
    assert net.landmark_rows == (0,)


def test_epsilon_at_least_diameter_one_landmark():
    cloud = make_cloud([[0.0], [1.0], [2.0]])
    net = build_net(cloud, 2.0, seed=9)
    assert len(net.landmark_rows) == 1


def test_nonpositive_epsilon_rejected():
    cloud = make_cloud([[0.0]])
    with pytest.raises(ParameterError):
        build_net(cloud, 0.0, seed=0)
    with pytest.raises(ParameterError):
        build_net(cloud, -1.0, seed=0)


def test_grid_matches_greedy_oracle_replay():
    xs, ys = np.meshgrid(np.arange(10.0), np.arange(10.0))
    cloud = make_cloud(np.column_stack([xs.ravel(), ys.ravel()]))
    net = build_net(cloud, 1.5, seed=42)
    assert list(net.landmark_rows) == greedy_oracle(cloud.values, 1.5, 42)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 60), st.floats(0.3, 12.0), st.integers(0, 2**32))
def test_coverage_and_separation(n, epsilon, seed):
    rng = np.random.default_rng(n * 31 + 7)
    cloud = random_cloud(rng, n, 3)
    net = build_net(cloud, epsilon, seed)
    coords = cloud.values
    eps2 = epsilon * epsilon
    for i in range(n):
        assert any(
            np.sum((coords[i] - coords[l]) ** 2) <= eps2 for l in net.landmark_rows
        )
    for a, b in itertools.combinations(net.landmark_rows, 2):
        assert np.sum((coords[a] - coords[b]) ** 2) > eps2


# --- graph construction -------------------------------------------------------


def test_one_landmark_no_edges():
    cloud = make_cloud([[0.0], [0.2]])
    graph = build(cloud, 1.0, seed=0)
    assert len(graph.balls) == 1
    assert not graph.edges


def test_two_far_balls_no_edges():
    cloud = make_cloud([[0.0], [10.0]])
    graph = build(cloud, 1.0, seed=3)
    assert len(graph.balls) == 2
    assert not graph.edges


def test_shared_middle_row_single_edge():
    cloud = make_cloud([[0.0], [1.0], [2.0]])
    net = EpsilonNet(epsilon=1.2, seed=0, landmark_rows=(0, 2))
    graph = build_graph(cloud, net)
    assert graph.edges == frozenset({(1, 2)})
    assert graph.ball(1).member_rows == frozenset({0, 1})
    assert graph.ball(2).member_rows == frozenset({1, 2})


def test_out_of_range_net_rejected():
    cloud = make_cloud([[0.0]])
    with pytest.raises(ConsistencyError):
        build_graph(cloud, EpsilonNet(epsilon=1.0, seed=0, landmark_rows=(5,)))


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 80), st.floats(0.2, 15.0), st.integers(0, 2**32))
def test_edges_match_brute_force(n, epsilon, seed):
    rng = np.random.default_rng(n * 131 + 5)
    cloud = random_cloud(rng, n, 2)
    net = build_net(cloud, epsilon, seed)
    graph = build_graph(cloud, net)
    assert set(graph.edges) == brute_force_edges(cloud.values, net)


def test_extreme_radii():
    rng = np.random.default_rng(0)
    cloud = random_cloud(rng, 40, 3)
    big = build(cloud, 1e6, seed=1)
    assert len(big.balls) == 1 and not big.edges
    assert big.balls[0].size == 40

    pairwise = [
        math.dist(cloud.values[a], cloud.values[b])
        for a, b in itertools.combinations(range(40), 2)
    ]
    tiny = build(cloud, min(pairwise) / 2.01, seed=1)
    assert len(tiny.balls) == 40
    assert not tiny.edges


def test_weights_consistent():
    rng = np.random.default_rng(4)
    cloud = random_cloud(rng, 50, 2)
    graph = build(cloud, 2.0, seed=8)
    sizes = [ball.size for ball in graph.balls]
    assert all(s >= 1 for s in sizes)
    assert sum(sizes) >= cloud.n_rows
    covered = set().union(*(ball.member_rows for ball in graph.balls))
    assert covered == set(range(cloud.n_rows))


def test_ball_ids_are_discovery_order_one_based():
    rng = np.random.default_rng(11)
    cloud = random_cloud(rng, 30, 2)
    net = build_net(cloud, 3.0, seed=2)
    graph = build_graph(cloud, net)
    assert graph.ball_ids == tuple(range(1, len(net.landmark_rows) + 1))
    for ball, row in zip(graph.balls, net.landmark_rows):
        assert ball.landmark_row == row


def test_determinism_byte_for_byte():
    rng = np.random.default_rng(21)
    cloud = random_cloud(rng, 60, 3)
    first = graph_to_json(build(cloud, 2.5, seed=77), cloud)
    second = graph_to_json(build(cloud, 2.5, seed=77), cloud)
    assert first == second
    different = graph_to_json(build(cloud, 2.5, seed=78), cloud)
    assert first != different


def test_graph_json_golden_format():
    cloud = make_cloud([[0.0], [1.0], [2.0]], row_ids=["a", "b", "c"], axis_names=["x"])
    net = EpsilonNet(epsilon=1.2, seed=9, landmark_rows=(0, 2))
    graph = build_graph(cloud, net)
    assert graph_to_json(graph, cloud) == (
        '{"axes":["x"],"balls":[{"id":1,"landmark":"a","members":["a","b"],'
        '"size":2},{"id":2,"landmark":"c","members":["b","c"],"size":2}],'
        '"edges":[[1,2]],"epsilon":1.2,"seed":9}\n'
    )
    coloring = color_by(graph, [10.0, 20.0, 30.0], "mean", label="score_mean")
    assert graph_to_json(graph, cloud, [coloring]) == (
        '{"axes":["x"],"balls":[{"id":1,"landmark":"a","members":["a","b"],'
        '"size":2},{"id":2,"landmark":"c","members":["b","c"],"size":2}],'
        '"colorings":{"score_mean":{"1":15.0,"2":25.0}},'
        '"edges":[[1,2]],"epsilon":1.2,"seed":9}\n'
    )


def test_graph_json_round_trip():
    rng = np.random.default_rng(5)
    cloud = random_cloud(rng, 25, 2)
    graph = build(cloud, 2.0, seed=1)
    text = graph_to_json(graph, cloud)
    loaded = graph_from_json(text, cloud)
    assert loaded.edges == graph.edges
    assert [b.member_rows for b in loaded.balls] == [b.member_rows for b in graph.balls]
    doc = json.loads(text)
    assert doc["edges"] == sorted(doc["edges"])
    assert all(b["size"] == len(b["members"]) for b in doc["balls"])


# --- coloring -----------------------------------------------------------------


def _three_ball_graph():
    cloud = make_cloud([[0.0], [1.0], [2.0]])
    net = EpsilonNet(epsilon=1.2, seed=0, landmark_rows=(0, 2))
    return cloud, build_graph(cloud, net)


def test_constant_function_constant_coloring():
    _, graph = _three_ball_graph()
    coloring = color_by(graph, [7.0, 7.0, 7.0], "mean")
    assert set(coloring.values.values()) == {7.0}
    assert coloring.scale_min == coloring.scale_max == 7.0


def test_singleton_ball_mean_is_value():
    cloud = make_cloud([[0.0], [5.0]])
    graph = build(cloud, 1.0, seed=0)
    coloring = color_by(graph, [3.0, 9.0], "mean")
    by_landmark = {
        graph.balls[i].landmark_row: coloring.values[graph.balls[i].ball_id]
        for i in range(2)
    }
    assert by_landmark == {0: 3.0, 1: 9.0}


def test_mean_and_sd_hand_oracle():
    cloud = make_cloud([[0.0], [0.1], [0.2]])
    net = EpsilonNet(epsilon=0.5, seed=0, landmark_rows=(1,))
    graph = build_graph(cloud, net)
    mean = color_by(graph, [60.0, 50.0, 40.0], "mean")
    assert mean.values[1] == pytest.approx(50.0)
    sd = color_by(graph, [60.0, 50.0, 40.0], "sd")
    assert sd.values[1] == pytest.approx(math.sqrt(200.0 / 3.0))  # ~8.165


def test_missing_value_under_mean_raises():
    _, graph = _three_ball_graph()
    with pytest.raises(IncompleteFunctionError):
        color_by(graph, {0: 1.0, 2: 2.0}, "mean")


def test_fraction_skips_missing_and_leaves_absent():
    _, graph = _three_ball_graph()
    coloring = color_by(graph, {0: True, 1: None, 2: None}, "fraction")
    assert coloring.values == {1: 1.0}  # ball 2 has no flagged rows: absent


def test_mean_coloring_within_member_range():
    rng = np.random.default_rng(3)
    cloud = random_cloud(rng, 40, 2)
    f = rng.uniform(-5, 5, 40)
    graph = build(cloud, 2.0, seed=5)
    coloring = color_by(graph, f.tolist(), "mean")
    for ball in graph.balls:
        members = [f[i] for i in ball.member_rows]
        assert min(members) - 1e-12 <= coloring.values[ball.ball_id] <= max(members) + 1e-12


# --- layout -------------------------------------------------------------------


def test_layout_single_ball_origin():
    cloud = make_cloud([[0.0]])
    graph = build(cloud, 1.0, seed=0)
    positions = layout(graph, seed=0)
    assert positions[1] == (0.0, 0.0)


def test_layout_two_connected_balls_rest_length():
    cloud, graph = _three_ball_graph()
    positions = layout(graph, seed=4)
    d = math.dist(positions[1], positions[2])
    assert abs(d - REST_LENGTH) <= 0.1 * REST_LENGTH


def test_layout_components_disjoint_boxes():
    cloud = make_cloud([[0.0], [0.5], [10.0], [10.5]])
    net = EpsilonNet(epsilon=0.6, seed=0, landmark_rows=(0, 1, 2, 3))
    graph = build_graph(cloud, net)
    positions = layout(graph, seed=0)
    comps = graph.connected_components()
    assert len(comps) == 2
    boxes = []
    for comp in comps:
        xs = [positions[b][0] for b in comp]
        boxes.append((min(xs), max(xs)))
    boxes.sort()
    assert boxes[0][1] < boxes[1][0]


def test_layout_deterministic():
    rng = np.random.default_rng(9)
    cloud = random_cloud(rng, 30, 2)
    graph = build(cloud, 2.5, seed=3)
    assert layout(graph, seed=11) == layout(graph, seed=11)


def test_cycle_rank_triangle():
    cloud = make_cloud([[0.0], [1.0], [2.0]])
    net = EpsilonNet(epsilon=1.2, seed=0, landmark_rows=(0, 2))
    graph = build_graph(cloud, net)
    assert cycle_rank(graph) == 0
