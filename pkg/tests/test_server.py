import json

import numpy as np
import pytest
from fastapi.testclient import TestClient

from ballmapper.server import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


@pytest.fixture
def csv_text():
    rng = np.random.default_rng(3)
    lines = ["id,x,y,leave,region"]
    for i in range(30):
        x, y = rng.uniform(0, 10, 2)
        leave = 40 + x + rng.normal(0, 1)
        region = "North" if i % 2 == 0 else "South"
        lines.append(f"c{i:02d},{x:.4f},{y:.4f},{leave:.4f},{region}")
    return "\n".join(lines) + "\n"


@pytest.fixture
def session_id(client, csv_text):
    response = client.post(
        "/sessions",
        json={
            "csv_text": csv_text,
            "axes": ["x", "y"],
            "id_column": "id",
            "attribute_columns": ["leave", "region"],
        },
    )
    assert response.status_code == 200
    body = response.json()
    assert body["rows"] == 30
    return body["session_id"]


def test_build_graph_and_idempotent_cache(client, session_id):
    first = client.post(
        f"/sessions/{session_id}/graphs", json={"epsilon": 3.0, "seed": 5}
    )
    second = client.post(
        f"/sessions/{session_id}/graphs", json={"epsilon": 3.0, "seed": 5}
    )
    assert first.status_code == second.status_code == 200
    assert first.content == second.content
    doc = json.loads(first.content)
    assert doc["epsilon"] == 3.0 and doc["seed"] == 5


def test_huge_epsilon_single_ball(client, session_id):
    response = client.post(
        f"/sessions/{session_id}/graphs", json={"epsilon": 1e6, "seed": 0}
    )
    doc = response.json()
    assert len(doc["balls"]) == 1
    assert doc["edges"] == []


def test_epsilon_must_be_positive(client, session_id):
    response = client.post(
        f"/sessions/{session_id}/graphs", json={"epsilon": -1.0, "seed": 0}
    )
    assert response.status_code == 422
    assert response.json()["code"] == "bad_parameter"


def test_sweep_endpoint(client, session_id):
    response = client.get(
        f"/sessions/{session_id}/sweep", params={"epsilons": "1,3,9", "seed": 2}
    )
    assert response.status_code == 200
    rows = response.json()["rows"]
    assert [r["epsilon"] for r in rows] == [1.0, 3.0, 9.0]


def test_attribute_coloring_constant_uniform(client, csv_text):
    constant_csv = "id,x,c\n" + "".join(f"r{i},{i},5\n" for i in range(10))
    session = client.post(
        "/sessions",
        json={
            "csv_text": constant_csv,
            "axes": ["x"],
            "id_column": "id",
            "attribute_columns": ["c"],
        },
    ).json()["session_id"]
    response = client.post(
        f"/sessions/{session}/colorings",
        json={
            "graph": {"epsilon": 2.0, "seed": 0},
            "kind": "attribute",
            "attribute": "c",
        },
    )
    body = response.json()
    assert set(body["values"].values()) == {5.0}
    assert body["scale_min"] == body["scale_max"] == 5.0


def test_region_and_distance_and_residual_colorings(client, session_id):
    region = client.post(
        f"/sessions/{session_id}/colorings",
        json={
            "graph": {"epsilon": 3.0, "seed": 0},
            "kind": "region",
            "attribute": "region",
            "value": "North",
        },
    )
    assert region.status_code == 200
    assert all(0.0 <= v <= 1.0 for v in region.json()["values"].values())

    distance = client.post(
        f"/sessions/{session_id}/colorings",
        json={
            "graph": {"epsilon": 3.0, "seed": 0},
            "kind": "distance-to-balls",
            "targets": [1],
        },
    )
    assert distance.status_code == 200

    residual = client.post(
        f"/sessions/{session_id}/colorings",
        json={
            "graph": {"epsilon": 3.0, "seed": 0},
            "kind": "residual-threshold",
            "outcome": "leave",
            "regressors": ["x", "y"],
            "threshold": 2.0,
        },
    )
    assert residual.status_code == 200
    assert residual.json()["label"] == "abs_resid_gt_2"


def test_coloring_requests_are_cached(client, session_id):
    body = {
        "graph": {"epsilon": 3.0, "seed": 0},
        "kind": "attribute",
        "attribute": "leave",
        "aggregator": "mean",
    }
    first = client.post(f"/sessions/{session_id}/colorings", json=body)
    second = client.post(f"/sessions/{session_id}/colorings", json=body)
    assert first.status_code == second.status_code == 200
    assert first.content == second.content


def test_self_comparison_zero_diffs(client, session_id):
    graph = client.post(
        f"/sessions/{session_id}/graphs", json={"epsilon": 3.0, "seed": 0}
    ).json()
    ids = [b["id"] for b in graph["balls"]]
    response = client.post(
        f"/sessions/{session_id}/comparisons",
        json={
            "graph": {"epsilon": 3.0, "seed": 0},
            "group_a": ids,
            "group_b": ids,
        },
    )
    assert response.status_code == 200
    assert all(r["diff"] == 0.0 for r in response.json()["rows"])


def test_unknown_session_404(client):
    assert client.post("/sessions/nope/graphs", json={"epsilon": 1.0}).status_code == 404
    assert (
        client.get("/sessions/nope/sweep", params={"epsilons": "1"}).status_code == 404
    )


def test_unknown_ball_404(client, session_id):
    response = client.post(
        f"/sessions/{session_id}/comparisons",
        json={"graph": {"epsilon": 3.0, "seed": 0}, "group_a": [999], "group_b": [1]},
    )
    assert response.status_code == 404
    assert response.json()["code"] == "unknown_ball"


def test_malformed_body_400(client, session_id):
    response = client.post(f"/sessions/{session_id}/graphs", json={"seed": 0})
    assert response.status_code == 400
    assert response.json()["code"] == "malformed_request"


def test_unknown_column_422(client, csv_text):
    response = client.post(
        "/sessions",
        json={
            "csv_text": csv_text,
            "axes": ["x", "nope"],
            "id_column": "id",
        },
    )
    assert response.status_code == 422
    assert response.json()["code"] == "unknown_column"


def test_row_cap(client, csv_text):
    app = create_app(row_cap=5)
    with TestClient(app) as small:
        response = small.post(
            "/sessions",
            json={"csv_text": csv_text, "axes": ["x"], "id_column": "id"},
        )
        assert response.status_code == 422
        assert response.json()["code"] == "row_cap_exceeded"


def test_layout_endpoint(client, session_id):
    response = client.get(
        f"/sessions/{session_id}/layout",
        params={"graph": "3.0,0", "layout_seed": 4},
    )
    assert response.status_code == 200
    positions = response.json()["positions"]
    graph = client.post(
        f"/sessions/{session_id}/graphs", json={"epsilon": 3.0, "seed": 0}
    ).json()
    assert set(positions) == {str(b["id"]) for b in graph["balls"]}
    bad = client.get(f"/sessions/{session_id}/layout", params={"graph": "x"})
    assert bad.status_code == 400


def test_sessions_are_isolated(client, csv_text):
    a = client.post(
        "/sessions",
        json={"csv_text": csv_text, "axes": ["x"], "id_column": "id"},
    ).json()["session_id"]
    other_csv = "id,x\nr0,1\nr1,2\n"
    b = client.post(
        "/sessions",
        json={"csv_text": other_csv, "axes": ["x"], "id_column": "id"},
    ).json()["session_id"]
    assert a != b
    graph_a = client.post(f"/sessions/{a}/graphs", json={"epsilon": 1e6}).json()
    graph_b = client.post(f"/sessions/{b}/graphs", json={"epsilon": 1e6}).json()
    assert graph_a["balls"][0]["size"] == 30
    assert graph_b["balls"][0]["size"] == 2
