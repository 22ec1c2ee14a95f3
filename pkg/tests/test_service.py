import pytest
from fastapi.testclient import TestClient

from quarantine_release.service import create_app

SCHOOL_P_ANY = 3 / 21


@pytest.fixture(scope="module")
def client(tmp_path_factory):
    app = create_app(str(tmp_path_factory.mktemp("store")))
    with TestClient(app) as c:
        yield c


@pytest.fixture(scope="module")
def fixture_body(school_cohort_csv):
    return {"scenario_id": "school_class", "cohort_csv": school_cohort_csv}


class TestPosteriorEndpoint:
    def test_school_cohort_releases(self, client, fixture_body):
        resp = client.post("/v1/posterior", json=fixture_body)
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["p0"] == pytest.approx(0.98, abs=0.01)
        assert doc["decision"]["action"] == "release_quarantine"
        assert doc["schedule"]["groups"] == [
            {"day": 8, "count": 1},
            {"day": 9, "count": 10},
            {"day": 10, "count": 1},
        ]
        assert len(doc["diagnostics"]["exclusions"]) == 2
        assert doc["prior"]["fit_status"] == "ok"

    def test_referential_transparency(self, client, fixture_body):
        a = client.post("/v1/posterior", json=fixture_body)
        b = client.post("/v1/posterior", json=fixture_body)
        assert a.content == b.content

    def test_empty_schedule_returns_prior_mass(self, client):
        body = {"scenario_id": "school_class", "group_size": 25, "schedule": []}
        resp = client.post("/v1/posterior", json=body)
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["p0"] == pytest.approx(1 - SCHOOL_P_ANY, abs=1e-3)
        assert doc["p0"] == doc["diagnostics"]["prior_p0"]

    def test_inline_prior_targets(self, client):
        body = {
            "prior_targets": {"p_any_transmission": 0.8, "mean_given_transmission": 2.5},
            "group_size": 4,
            "schedule": [{"day": 8, "count": 2}],
        }
        resp = client.post("/v1/posterior", json=body)
        assert resp.status_code == 200
        assert resp.json()["prior"]["alpha"] == pytest.approx(1.0, rel=1e-2)

    def test_unknown_scenario_404(self, client):
        resp = client.post(
            "/v1/posterior",
            json={"scenario_id": "nope", "group_size": 5, "schedule": []},
        )
        assert resp.status_code == 404
        assert resp.json()["code"] == "scenario_not_found"

    def test_unknown_curve_404(self, client):
        resp = client.post(
            "/v1/posterior",
            json={
                "scenario_id": "school_class",
                "curve_id": "missing",
                "group_size": 5,
                "schedule": [],
            },
        )
        assert resp.status_code == 404
        assert resp.json()["code"] == "curve_not_found"

    def test_schedule_and_cohort_together_400(self, client, school_cohort_csv):
        resp = client.post(
            "/v1/posterior",
            json={
                "scenario_id": "school_class",
                "group_size": 5,
                "schedule": [],
                "cohort_csv": school_cohort_csv,
            },
        )
        assert resp.status_code == 400
        assert resp.json()["code"] == "schema_violation"

    def test_threshold_out_of_range_400(self, client):
        resp = client.post(
            "/v1/posterior",
            json={
                "scenario_id": "school_class",
                "group_size": 5,
                "schedule": [],
                "threshold": 1.5,
            },
        )
        assert resp.status_code == 400
        assert resp.json()["field_path"] == "threshold"

    def test_group_size_mismatch_422(self, client, school_cohort_csv):
        resp = client.post(
            "/v1/posterior",
            json={
                "scenario_id": "school_class",
                "cohort_csv": school_cohort_csv,
                "group_size": 99,
            },
        )
        assert resp.status_code == 422
        assert resp.json()["code"] == "configuration_error"

    def test_fit_failure_422_without_override(self, client):
        body = {
            "prior_targets": {"p_any_transmission": 0.95, "mean_given_transmission": 1.01},
            "group_size": 8,
            "schedule": [],
        }
        resp = client.post("/v1/posterior", json=body)
        assert resp.status_code == 422
        assert resp.json()["code"] == "fit_failed"

    def test_fit_failure_override_proceeds(self, client):
        body = {
            "prior_targets": {"p_any_transmission": 0.95, "mean_given_transmission": 1.01},
            "group_size": 8,
            "schedule": [],
            "allow_fit_failure": True,
        }
        resp = client.post("/v1/posterior", json=body)
        assert resp.status_code == 200
        assert resp.json()["prior"]["fit_status"] == "fit_failed"

    def test_positive_cohort_holds(self, client):
        csv_text = (
            "case_id,last_contact,test_date,test_result\n"
            "a,2020-08-10,2020-08-18,positive\n"
            "b,2020-08-10,2020-08-18,negative\n"
            "c,2020-08-10,2020-08-19,negative\n"
            "d,2020-08-10,2020-08-19,negative\n"
            "e,2020-08-10,,\n"
            "f,2020-08-10,,\n"
        )
        resp = client.post(
            "/v1/posterior", json={"scenario_id": "school_class", "cohort_csv": csv_text}
        )
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["decision"]["action"] == "hold_positive_case"
        assert doc["diagnostics"]["any_positive"] is True

    def test_malformed_json_400(self, client):
        resp = client.post(
            "/v1/posterior", content=b"{not json", headers={"content-type": "application/json"}
        )
        assert resp.status_code == 400

    def test_cohort_validation_422(self, client):
        bad = "case_id,last_contact,test_date,test_result\na,2020-08-10,2020-08-10,negative\n"
        resp = client.post(
            "/v1/posterior", json={"scenario_id": "school_class", "cohort_csv": bad}
        )
        assert resp.status_code == 422
        assert resp.json()["code"] == "cohort_invalid"


class TestWhatIfEndpoint:
    def test_school_day4(self, client):
        resp = client.post(
            "/v1/what-if/min-tests",
            json={"scenario_id": "school_class", "group_size": 25, "day": 4},
        )
        assert resp.status_code == 200
        doc = resp.json()
        assert 0.2 <= doc["fraction_of_group"] <= 0.4
        assert doc["min_tests"] == round(doc["fraction_of_group"] * 25)

    def test_threshold_below_prior_gives_zero(self, client):
        resp = client.post(
            "/v1/what-if/min-tests",
            json={
                "scenario_id": "school_class",
                "group_size": 25,
                "day": 4,
                "threshold": 0.5,
            },
        )
        assert resp.json() == {"min_tests": 0, "fraction_of_group": 0.0}

    def test_not_achievable(self, client):
        resp = client.post(
            "/v1/what-if/min-tests",
            json={
                "scenario_id": "school_class",
                "group_size": 15,
                "day": 8,
                "threshold": 0.999999,
            },
        )
        assert resp.status_code == 200
        doc = resp.json()
        assert doc["min_tests"] is None
        assert doc["reason"] == "not_achievable"

    def test_missing_day_400(self, client):
        resp = client.post(
            "/v1/what-if/min-tests",
            json={"scenario_id": "school_class", "group_size": 25},
        )
        assert resp.status_code == 400


class TestScenarioStore:
    def test_seeded_school_class(self, client):
        resp = client.get("/v1/scenarios")
        assert resp.status_code == 200
        docs = {d["id"]: d for d in resp.json()["scenarios"]}
        school = docs["school_class"]
        assert school["p_any_transmission"] == pytest.approx(SCHOOL_P_ANY, rel=1e-12)
        assert school["mean_given_transmission"] == 4.8
        assert school["threshold"] == 0.9
        assert school["version"] == 1

    def test_put_create_update_conflict_cycle(self, client):
        body = {
            "name": "office floor",
            "p_any_transmission": 0.25,
            "mean_given_transmission": 3.0,
        }
        created = client.put("/v1/scenarios/office", json=body)
        assert created.status_code == 200
        assert created.json()["version"] == 1

        update = dict(body, threshold=0.95, version=1)
        updated = client.put("/v1/scenarios/office", json=update)
        assert updated.status_code == 200
        assert updated.json()["version"] == 2
        assert updated.json()["threshold"] == 0.95

        stale = client.put("/v1/scenarios/office", json=dict(body, version=1))
        assert stale.status_code == 409
        assert stale.json()["code"] == "version_conflict"

        # the conflicting write left version 2 intact
        listing = client.get("/v1/scenarios").json()["scenarios"]
        office = next(d for d in listing if d["id"] == "office")
        assert office["version"] == 2
        assert office["threshold"] == 0.95

    def test_put_invalid_threshold_400(self, client):
        resp = client.put(
            "/v1/scenarios/bad",
            json={
                "name": "x",
                "p_any_transmission": 0.3,
                "mean_given_transmission": 2.0,
                "threshold": 1.5,
            },
        )
        assert resp.status_code == 400

    def test_put_unknown_curve_400(self, client):
        resp = client.put(
            "/v1/scenarios/bad2",
            json={
                "name": "x",
                "p_any_transmission": 0.3,
                "mean_given_transmission": 2.0,
                "curve_id": "ghost",
            },
        )
        assert resp.status_code == 400
        assert resp.json()["field_path"] == "curve_id"

    def test_computation_does_not_mutate_store(self, client, fixture_body, tmp_path_factory):
        before = client.get("/v1/scenarios").content
        client.post("/v1/posterior", json=fixture_body)
        client.post(
            "/v1/what-if/min-tests",
            json={"scenario_id": "school_class", "group_size": 15, "day": 8},
        )
        assert client.get("/v1/scenarios").content == before


class TestCurveEndpoints:
    def test_listing_contains_default(self, client):
        resp = client.get("/v1/curves")
        ids = [c["id"] for c in resp.json()["curves"]]
        assert "pcr_default" in ids

    def test_default_curve_shape(self, client):
        resp = client.get("/v1/curves/pcr_default")
        assert resp.status_code == 200
        doc = resp.json()
        points = {p["day"]: p["sensitivity"] for p in doc["points"]}
        assert len(points) == 21
        assert points[1] <= 0.05
        assert all(points[d] >= 0.75 for d in range(6, 11))
        assert max(points, key=points.get) == 8
        assert doc["specificity"] == 1.0

    def test_unknown_curve_404(self, client):
        resp = client.get("/v1/curves/nope")
        assert resp.status_code == 404
        assert resp.json()["code"] == "curve_not_found"
