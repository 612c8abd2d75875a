"""Tests for the HTTP service."""
import pytest
from fastapi.testclient import TestClient

from app import app
from src.errors import InternalInconsistencyError
from src.extensions.extensions import fibre_enumerate


@pytest.fixture
def client():
    with TestClient(app) as test_client:
        yield test_client


class TestHealth:
    def test_health(self, client):
        response = client.get("/health")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestReports:
    """Report endpoints"""

    def test_h2(self, client):
        response = client.get("/api/h2", params={"C": "Z2", "B": "Z2"})
        assert response.status_code == 200
        data = response.json()
        assert data["pi0"]["invariants"] == [2]
        assert data["status"] == "AGREE"

    def test_h2_inversion(self, client):
        response = client.get("/api/h2", params={"C": "Z2", "B": "Z3", "action": "inv"})
        assert response.status_code == 200
        assert response.json()["action"] == "inv"

    def test_torsors(self, client):
        response = client.get("/api/torsors", params={"B": "Z3"})
        assert response.status_code == 200
        assert response.json()["count"] == 6

    def test_baer(self, client, trivial_z2_module):
        twisted = fibre_enumerate(trivial_z2_module)[1].to_dict()
        response = client.post("/api/baer", json={"first": twisted, "second": twisted})
        assert response.status_code == 200
        assert response.json()["split"] is True


class TestVerify:
    """Suite endpoint"""

    def test_groupal(self, client):
        response = client.get("/api/verify/groupal", params={"max": 1})
        assert response.status_code == 200
        data = response.json()
        assert data["passed"] is True
        assert data["counts"]["failed"] == 0

    def test_unknown_suite(self, client):
        response = client.get("/api/verify/nope", params={"max": 1})
        assert response.status_code == 404
        assert "unknown suite" in response.json()["detail"]

    def test_max_must_be_positive(self, client):
        assert client.get("/api/verify/groupal", params={"max": 0}).status_code == 422


class TestErrors:
    """Error mapping onto status codes"""

    def test_parse_error(self, client):
        response = client.get("/api/h2", params={"C": "Q2", "B": "Z2"})
        assert response.status_code == 400
        assert "column 1" in response.json()["detail"]

    def test_file_specs_are_refused(self, client):
        assert client.get("/api/torsors", params={"B": "@/etc/passwd"}).status_code == 400
        assert client.get("/api/h2", params={"B": "Z2", "action": "@x.json"}).status_code == 400

    def test_budget_exceeded(self, client):
        response = client.get("/api/h2", params={"C": "Z4", "B": "Z4", "budget": 10})
        assert response.status_code == 413

    def test_inconsistency(self, client, mocker):
        mocker.patch("app.build_torsors_report", side_effect=InternalInconsistencyError("broken oracle"))
        response = client.get("/api/torsors", params={"B": "Z2"})
        assert response.status_code == 500

    def test_non_associative_extension(self, client, z2, z3):
        bad = {
            "module": {"C": z3.to_dict(), "B": z2.to_dict(), "xi": [[0, 1], [0, 1], [0, 1]]},
            "cocycle": [[0, 0, 0], [0, 1, 0], [0, 0, 0]],
        }
        response = client.post("/api/baer", json={"first": bad, "second": bad})
        assert response.status_code == 400

    def test_malformed_body(self, client):
        assert client.post("/api/baer", json={"first": {}}).status_code == 422
