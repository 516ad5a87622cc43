from fastapi.testclient import TestClient

from hlorentz.main import app

client = TestClient(app)


def test_health():
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


def test_suites():
    response = client.get("/api/suites")
    assert response.status_code == 200
    names = [s["name"] for s in response.json()]
    assert "repn" in names
    assert "ybe" in names


def test_matrix():
    response = client.get("/api/matrices/rh")
    assert response.status_code == 200
    body = response.json()
    assert body["name"] == "rh"
    assert len(body["matrices"][0]["entries"]) == 16


def test_matrix_unknown():
    assert client.get("/api/matrices/nope").status_code == 404


def test_matrix_bad_deformation():
    assert client.get("/api/matrices/r3", params={"deformation": 3}).status_code == 400


def test_check_projectors():
    response = client.post("/api/checks/projectors", json={})
    assert response.status_code == 200
    results = response.json()
    assert len(results) == 1
    assert results[0]["pass"] is True


def test_check_unknown_suite():
    assert client.post("/api/checks/nope", json={}).status_code == 404


def test_check_bad_order():
    assert client.post("/api/checks/planewave", json={"order": 0}).status_code == 400


def test_matrix_specialized():
    response = client.get("/api/matrices/r3", params={"deformation": 1, "h": "1/2", "r": "1/2"})
    assert response.status_code == 200
    entries = response.json()["matrices"][0]["entries"]
    assert all("h" not in e and "r" not in e for e in entries)


def test_matrix_bad_rational():
    assert client.get("/api/matrices/r3", params={"h": "1/0"}).status_code == 400


def test_check_specialized():
    response = client.post("/api/checks/frt", json={"deformations": [1], "h": "1/2", "r": "1/2"})
    assert response.status_code == 200
    assert response.json()[0]["pass"] is True


def test_check_bad_rational():
    assert client.post("/api/checks/frt", json={"h": "1/0"}).status_code == 400
    assert client.post("/api/checks/repn", json={"zeta": "1/0"}).status_code == 400
