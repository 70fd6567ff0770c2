import pytest
from fastapi.testclient import TestClient

from tests.conftest import EXAMPLE1_A, EXAMPLE3_C
from troprank.service import create_app


@pytest.fixture
def client():
    return TestClient(create_app())


def make_problem(client, **extra):
    body = {"scale": "max-times", "matrices": [EXAMPLE1_A], **extra}
    resp = client.post("/api/problems", json=body)
    assert resp.status_code == 200, resp.text
    return resp.json()["id"]


class TestLifecycle:
    def test_create_solve_fetch(self, client):
        pid = make_problem(client)
        solved = client.post(f"/api/problems/{pid}/solve")
        assert solved.status_code == 200
        body = solved.json()
        assert body["minimum"] == "2"
        assert body["candidates"][0]["scores"] == ["1", "1/6", "1/4", "1/2"]
        assert body["revision"] == 0 and body["stale"] is False

        state = client.get(f"/api/problems/{pid}").json()
        assert state["revision"] == 0
        assert state["last_result"]["minimum"] == "2"
        assert state["last_result"]["stale"] is False

    def test_constraints_then_solve(self, client):
        pid = make_problem(client)
        rev = 0
        for i in range(4):
            for j in range(4):
                value = EXAMPLE3_C[i][j]
                if value != "0":
                    resp = client.put(
                        f"/api/problems/{pid}/constraint",
                        json={"i": i, "j": j, "value": value},
                    )
                    assert resp.status_code == 200
                    rev = resp.json()["revision"]
        assert rev == 3
        solved = client.post(f"/api/problems/{pid}/solve").json()
        assert solved["minimum"] == "4"
        assert solved["ranking"] == [["alt1"], ["alt2", "alt3", "alt4"]]
        assert solved["candidates"][0]["scores"] == ["1", "1/8", "1/8", "1/8"]
        assert solved["candidates"][1]["is_uniform"] is True

    def test_one_by_one_problem(self, client):
        resp = client.post(
            "/api/problems", json={"scale": "max-times", "matrices": [[["1"]]]}
        )
        pid = resp.json()["id"]
        solved = client.post(f"/api/problems/{pid}/solve").json()
        assert solved["minimum"] == "1"
        assert solved["candidates"][0]["scores"] == ["1"]

    def test_multi_matrix_problem_with_indexed_entry(self, client):
        unit = [["1"] * 4 for _ in range(4)]
        resp = client.post(
            "/api/problems", json={"scale": "max-times", "matrices": [EXAMPLE1_A, unit]}
        )
        pid = resp.json()["id"]
        resp = client.put(
            f"/api/problems/{pid}/entry",
            json={"i": 0, "j": 1, "value": "8", "matrix": 1},
        )
        assert resp.status_code == 200
        state = client.get(f"/api/problems/{pid}").json()
        assert state["matrices"][1][0][1] == "8"
        assert state["matrices"][1][1][0] == "1/8"  # auto-reciprocal per matrix
        assert state["matrices"][0][0][1] == "3"  # first matrix untouched
        solved = client.post(f"/api/problems/{pid}/solve")
        assert solved.status_code == 200
        # the second matrix's stronger judgment pushes the combined optimum up
        assert solved.json()["minimum"] != "2"
        bad = client.put(
            f"/api/problems/{pid}/entry",
            json={"i": 0, "j": 1, "value": "8", "matrix": 5},
        )
        assert bad.status_code == 400

    def test_float_backend_problem(self, client):
        resp = client.post(
            "/api/problems",
            json={
                "scale": "max-times",
                "backend": "float",
                "matrices": [[["1", "4"], ["0.25", "1"]]],
            },
        )
        pid = resp.json()["id"]
        solved = client.post(f"/api/problems/{pid}/solve").json()
        assert float(solved["minimum"]) == pytest.approx(1.0)
        assert [float(s) for s in solved["candidates"][0]["scores"]] == pytest.approx(
            [1.0, 0.25]
        )


class TestEntryUpdates:
    def test_auto_reciprocal_mirrors_inverse(self, client):
        pid = make_problem(client)
        resp = client.put(
            f"/api/problems/{pid}/entry", json={"i": 0, "j": 1, "value": "5"}
        )
        assert resp.status_code == 200
        assert resp.json()["revision"] == 1
        state = client.get(f"/api/problems/{pid}").json()
        assert state["matrices"][0][0][1] == "5"
        assert state["matrices"][0][1][0] == "1/5"

    def test_manual_mode_leaves_mirror_alone(self, client):
        pid = make_problem(client, auto_reciprocal=False)
        client.put(f"/api/problems/{pid}/entry", json={"i": 0, "j": 1, "value": "5"})
        state = client.get(f"/api/problems/{pid}").json()
        assert state["matrices"][0][0][1] == "5"
        assert state["matrices"][0][1][0] == "1/3"  # original value kept

    def test_solve_marks_stale_after_edit(self, client):
        pid = make_problem(client)
        client.post(f"/api/problems/{pid}/solve")
        client.put(f"/api/problems/{pid}/entry", json={"i": 0, "j": 1, "value": "9"})
        state = client.get(f"/api/problems/{pid}").json()
        assert state["last_result"]["stale"] is True
        resolved = client.post(f"/api/problems/{pid}/solve").json()
        assert resolved["revision"] == 1 and resolved["stale"] is False

    def test_repeated_solve_same_revision_identical(self, client):
        pid = make_problem(client)
        first = client.post(f"/api/problems/{pid}/solve").json()
        second = client.post(f"/api/problems/{pid}/solve").json()
        assert first == second

    def test_index_out_of_range(self, client):
        pid = make_problem(client)
        resp = client.put(
            f"/api/problems/{pid}/entry", json={"i": 7, "j": 0, "value": "2"}
        )
        assert resp.status_code == 400


class TestErrors:
    def test_unknown_id_404(self, client):
        assert client.get("/api/problems/missing").status_code == 404
        assert client.post("/api/problems/missing/solve").status_code == 404

    def test_malformed_json_400(self, client):
        resp = client.post(
            "/api/problems",
            content=b"{not json",
            headers={"content-type": "application/json"},
        )
        assert resp.status_code == 400

    def test_bad_problem_json_400(self, client):
        resp = client.post("/api/problems", json={"scale": "max-times"})
        assert resp.status_code == 400

    def test_infeasible_constraints_422_with_cycle(self, client):
        pid = make_problem(client)
        for i, j, v in ((1, 2, "2"), (2, 3, "2"), (3, 1, "2")):
            client.put(
                f"/api/problems/{pid}/constraint", json={"i": i, "j": j, "value": v}
            )
        resp = client.post(f"/api/problems/{pid}/solve")
        assert resp.status_code == 422
        body = resp.json()
        assert body["cycle"] is not None
        assert body["cycle"][0] == body["cycle"][-1]
        assert body["cycle_value"] == "8"

    def test_solve_with_zero_pair_422(self, client):
        resp = client.post(
            "/api/problems",
            json={
                "scale": "max-times",
                "matrices": [[["1", "0"], ["0", "1"]]],
                "auto_reciprocal": False,
            },
        )
        pid = resp.json()["id"]
        solved = client.post(f"/api/problems/{pid}/solve")
        assert solved.status_code == 422


class TestPersistence:
    def test_problems_survive_restart(self, tmp_path):
        d = str(tmp_path / "store")
        app = create_app(persist_dir=d)
        with TestClient(app) as client:
            pid = make_problem(client)
            client.put(
                f"/api/problems/{pid}/entry", json={"i": 0, "j": 1, "value": "7"}
            )
        app2 = create_app(persist_dir=d)
        with TestClient(app2) as client2:
            state = client2.get(f"/api/problems/{pid}").json()
            assert state["matrices"][0][0][1] == "7"
            assert state["revision"] == 1
            solved = client2.post(f"/api/problems/{pid}/solve")
            assert solved.status_code == 200
