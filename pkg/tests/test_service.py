"""HTTP API: endpoints, error mapping, isolation of concurrent jobs."""

import json
import time
from concurrent.futures import ThreadPoolExecutor

import pytest
from fastapi.testclient import TestClient

from geodiscover.service import create_app

MIDLINE = """\
point A 0 0
point B 4 0
point C 2 2
midpoint D B C
midpoint E A C
"""

HEXAGON = """\
point A 0 0
point B 2 0
regular_polygon A B 6 C D E F
intersect G line(A,D) line(B,E)
intersect H line(B,E) line(C,F)
intersect I line(A,D) line(C,F)
"""

TWO_BRANCH = """\
point A 0 0
point B 6 0
point O 3 1
circle k O A
intersect2 P1 line(A,B) k near 5.5 0
intersect2 P2 line(A,B) k near 5.5 0
"""


@pytest.fixture(scope="module")
def client():
    return TestClient(create_app(wall_cap_s=60.0))


def test_health(client):
    resp = client.get("/api/health")
    assert resp.status_code == 200
    body = resp.json()
    assert body["name"] == "geodiscover"
    assert "version" in body


def test_evaluate_midline(client):
    resp = client.post("/api/evaluate", json={"construction": MIDLINE})
    assert resp.status_code == 200
    body = resp.json()
    assert body["coordinates"]["D"] == [3.0, 1.0]
    assert body["coordinates"]["E"] == [1.0, 1.0]
    assert body["request_hash"]


def test_evaluate_latency_under_50ms(client):
    # 20-point construction: pure coordinate arithmetic, no symbolic work
    text = "point A 0 0\npoint B 7 0\npoint C 2 5\n" + "".join(
        f"midpoint M{i} {'ABC'[i % 3]} {'BCA'[i % 3]}\n" for i in range(17)
    )
    client.post("/api/evaluate", json={"construction": text})  # warm up
    t0 = time.perf_counter()
    resp = client.post("/api/evaluate", json={"construction": text})
    elapsed = time.perf_counter() - t0
    assert resp.status_code == 200
    assert len(resp.json()["coordinates"]) == 20
    assert elapsed < 0.050


def test_discover_midline(client):
    resp = client.post("/api/discover", json={"construction": MIDLINE, "target": "D"})
    assert resp.status_code == 200
    body = resp.json()
    assert len(body["report"]["theorems"]) == 2
    assert body["coordinates"]["A"] == [0.0, 0.0]
    assert not body["report"]["halted"]


def test_discover_step_list_json(client):
    steps = {
        "steps": [
            {"op": "point", "name": "A", "x": "0", "y": "0"},
            {"op": "point", "name": "B", "x": "4", "y": "0"},
            {"op": "point", "name": "C", "x": "2", "y": "2"},
            {"op": "midpoint", "name": "D", "a": "B", "b": "C"},
            {"op": "midpoint", "name": "E", "a": "A", "b": "C"},
        ],
        "hidden": [],
    }
    resp = client.post("/api/discover", json={"construction": steps, "target": "D"})
    assert resp.status_code == 200
    assert len(resp.json()["report"]["theorems"]) == 2


def test_malformed_dsl_400_with_position(client):
    resp = client.post("/api/evaluate", json={"construction": "midpoint D B\n"})
    assert resp.status_code == 400
    detail = resp.json()["detail"]
    assert detail["line"] == 1
    assert detail["column"] == 1


def test_degenerate_construction_422(client):
    text = "point A 0 0\npoint B 4 0\nintersect G line(A,B) line(A,B)\n"
    resp = client.post("/api/evaluate", json={"construction": text})
    assert resp.status_code == 422


def test_unknown_target_400(client):
    resp = client.post("/api/discover", json={"construction": MIDLINE, "target": "Z"})
    assert resp.status_code == 400


def test_wall_cap_408():
    app = create_app(wall_cap_s=1e-9)
    local = TestClient(app)
    resp = local.post("/api/discover", json={"construction": HEXAGON, "target": "F"})
    assert resp.status_code == 408


def test_halted_run_is_a_normal_response(client):
    resp = client.post(
        "/api/discover",
        json={
            "construction": TWO_BRANCH,
            "target": "P1",
            "config": {"timeout_s": 1e-6},
        },
    )
    assert resp.status_code == 200
    report = resp.json()["report"]
    assert report["halted"]
    assert "halt_reason" in report


def test_request_hash_stable_for_identical_requests(client):
    payload = {"construction": MIDLINE, "target": "D"}
    h1 = client.post("/api/discover", json=payload).json()["request_hash"]
    h2 = client.post("/api/discover", json=payload).json()["request_hash"]
    assert h1 == h2
    other = client.post(
        "/api/discover", json={"construction": MIDLINE, "target": "E"}
    ).json()["request_hash"]
    assert other != h1


def test_concurrent_discoveries_match_serial(client):
    jobs = [
        {"construction": MIDLINE, "target": "D"},
        {"construction": MIDLINE, "target": "E"},
        {"construction": HEXAGON, "target": "F"},
        {"construction": HEXAGON, "target": "A"},
    ]
    serial = [client.post("/api/discover", json=j).json()["report"] for j in jobs]
    with ThreadPoolExecutor(max_workers=4) as pool:
        concurrent = list(
            pool.map(lambda j: client.post("/api/discover", json=j).json()["report"], jobs)
        )
    for s, c in zip(serial, concurrent):
        s.pop("timings", None)
        c.pop("timings", None)
        assert s == c
