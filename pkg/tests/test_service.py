"""HTTP API: endpoints, status codes, error bodies, statelessness."""

from __future__ import annotations

import json

import pytest


def _store_case1(client, case1_doc) -> str:
    response = client.post("/assessments", json=case1_doc)
    assert response.status_code == 200, response.text
    return response.json()["id"]


class TestAssessments:
    def test_create_returns_id_and_scores(self, client, case1_doc):
        response = client.post("/assessments", json=case1_doc)
        assert response.status_code == 200
        body = response.json()
        assert body["assessment"]["total"]["display"] == "0.551"
        assert len(body["id"]) == 64

    def test_create_is_idempotent_on_content(self, client, case1_doc):
        first = client.post("/assessments", json=case1_doc).json()["id"]
        second = client.post("/assessments", json=case1_doc).json()["id"]
        assert first == second

    def test_get_round_trips_document(self, client, case1_doc):
        assessment_id = _store_case1(client, case1_doc)
        response = client.get(f"/assessments/{assessment_id}")
        assert response.status_code == 200
        assert response.json()["document"]["answers"] == case1_doc["answers"]

    def test_get_unknown_id_is_404(self, client):
        response = client.get("/assessments/" + "0" * 64)
        assert response.status_code == 404
        assert response.json()["code"] == "unknown_id"

    def test_invalid_sheet_is_400_with_field(self, client, case1_doc):
        del case1_doc["answers"]["traceability"]
        response = client.post("/assessments", json=case1_doc)
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "validation_error"
        assert body["field"] == "answers.traceability"

    def test_foreign_schema_version_is_409(self, client, case1_doc):
        case1_doc["schema_version"] = "0"
        response = client.post("/assessments", json=case1_doc)
        assert response.status_code == 409
        assert response.json()["code"] == "schema_version_mismatch"
        assert "migrate" in response.json()["message"]

    def test_malformed_body_is_400(self, client):
        response = client.post(
            "/assessments",
            content=b"{nope",
            headers={"content-type": "application/json"},
        )
        assert response.status_code == 400
        assert response.json()["code"] == "validation_error"

    def test_empty_body_is_400(self, client):
        response = client.post("/assessments")
        assert response.status_code == 400


class TestRescore:
    def test_score_stored_assessment(self, client, case1_doc):
        assessment_id = _store_case1(client, case1_doc)
        response = client.post(f"/assessments/{assessment_id}/score")
        assert response.status_code == 200
        assert response.json()["assessment"]["total"]["display"] == "0.551"

    def test_score_with_custom_weights(self, client, case1_doc):
        from contestkit.scoring import default_weight_config, weights_to_json

        assessment_id = _store_case1(client, case1_doc)
        response = client.post(
            f"/assessments/{assessment_id}/score",
            json={"weights": weights_to_json(default_weight_config())},
        )
        assert response.status_code == 200
        assert response.json()["assessment"]["total"]["display"] == "0.551"

    def test_invalid_weights_is_400(self, client, case1_doc):
        from contestkit.scoring import default_weight_config, weights_to_json

        weights_doc = weights_to_json(default_weight_config())
        weights_doc["entries"][0]["weight"] = 0.31
        assessment_id = _store_case1(client, case1_doc)
        response = client.post(
            f"/assessments/{assessment_id}/score", json={"weights": weights_doc}
        )
        assert response.status_code == 400

    def test_rescoring_is_stateless(self, client, case1_doc):
        """Two rescores of the same stored sheet agree to the digit."""
        assessment_id = _store_case1(client, case1_doc)
        first = client.post(f"/assessments/{assessment_id}/score").json()
        second = client.post(f"/assessments/{assessment_id}/score").json()
        assert first == second


class TestScenarios:
    def test_evaluate_with_embedded_sheet(
        self, client, case1_doc, case1_scenario_doc
    ):
        case1_scenario_doc["baseline"] = {"sheet": case1_doc}
        response = client.post("/scenarios/evaluate", json=case1_scenario_doc)
        assert response.status_code == 200
        result = response.json()["result"]
        assert result["policy"] == "up_to_moderately"
        assert result["baseline_total"]["display"] == "0.551"
        assert result["new_total"]["display"] == "0.927"

    def test_evaluate_with_stored_baseline(
        self, client, case1_doc, case1_scenario_doc
    ):
        assessment_id = _store_case1(client, case1_doc)
        case1_scenario_doc["baseline"] = {"id": assessment_id}
        case1_scenario_doc["policy"] = "only_highly"
        response = client.post("/scenarios/evaluate", json=case1_scenario_doc)
        assert response.status_code == 200
        assert response.json()["result"]["new_total"]["display"] == "0.622"

    def test_changes_cover_all_properties(
        self, client, case1_doc, case1_scenario_doc
    ):
        case1_scenario_doc["baseline"] = {"sheet": case1_doc}
        response = client.post("/scenarios/evaluate", json=case1_scenario_doc)
        changes = response.json()["result"]["changes"]
        assert len(changes) == 8

    def test_missing_baseline_is_400_on_baseline_field(
        self, client, case1_scenario_doc
    ):
        case1_scenario_doc["baseline"] = {}
        response = client.post("/scenarios/evaluate", json=case1_scenario_doc)
        assert response.status_code == 400
        assert response.json()["field"] == "baseline"

    def test_unknown_stored_baseline_is_400_not_404(
        self, client, case1_scenario_doc
    ):
        case1_scenario_doc["baseline"] = {"id": "f" * 64}
        response = client.post("/scenarios/evaluate", json=case1_scenario_doc)
        assert response.status_code == 400
        assert response.json()["field"] == "baseline"


class TestInterventionRanking:
    def test_ranked_by_delta(self, client, case1_doc):
        response = client.post(
            "/interventions/rank",
            json={
                "baseline": {"sheet": case1_doc},
                "candidates": [
                    {"property": "ease", "new_score": 4},
                    {"property": "explainability", "new_score": 2},
                ],
            },
        )
        assert response.status_code == 200
        body = response.json()
        assert [item["property"] for item in body["ranked"]] == [
            "explainability",
            "ease",
        ]
        assert body["ranked"][0]["delta"]["value"] > 0

    def test_empty_candidates_is_400(self, client, case1_doc):
        response = client.post(
            "/interventions/rank",
            json={"baseline": {"sheet": case1_doc}, "candidates": []},
        )
        assert response.status_code == 400
        assert response.json()["field"] == "candidates"


class TestTaxonomyEndpoint:
    def test_warning_cell_payload(self, client):
        response = client.get("/taxonomy/high/low")
        assert response.status_code == 200
        body = response.json()
        assert body["flags"] == ["regulatory_warning"]
        assert body["criteria"], "cell should list its cumulative criteria"

    def test_high_high_requires_everything(self, client):
        response = client.get("/taxonomy/high/high")
        assert response.status_code == 200
        assert len(response.json()["criteria"]) == 21

    def test_low_low_is_smallest(self, client):
        low = client.get("/taxonomy/low/low").json()
        high = client.get("/taxonomy/low/high").json()
        assert len(low["criteria"]) < len(high["criteria"])

    @pytest.mark.parametrize(
        "path,field",
        [("/taxonomy/extreme/low", "reliance"), ("/taxonomy/high/extreme", "level")],
    )
    def test_unknown_axis_value_is_400(self, client, path, field):
        response = client.get(path)
        assert response.status_code == 400
        assert response.json()["field"] == field


class TestLedgerEndpoint:
    def _template(self):
        from contestkit.formal import template_ledger

        return template_ledger()

    def test_template_ledger_evaluates(self, client):
        response = client.post("/ledgers/evaluate", json=self._template())
        assert response.status_code == 200
        body = response.json()
        assert body["xlc"]["holds"] is True
        assert body["total"]["value"] == 1.0

    def test_custom_aggregate_weights(self, client):
        doc = self._template()
        doc["aggregate_weights"] = {"alpha": 0.5, "beta": 0.5, "gamma": 0}
        response = client.post("/ledgers/evaluate", json=doc)
        assert response.status_code == 200
        assert response.json()["weights"]["gamma"] == 0.0

    def test_undefined_success_rate_is_400(self, client):
        doc = self._template()
        doc["events"] = []
        response = client.post("/ledgers/evaluate", json=doc)
        assert response.status_code == 400
        assert response.json()["code"] == "undefined_value"

    def test_mode_tallies_present(self, client):
        response = client.post("/ledgers/evaluate", json=self._template())
        modes = response.json()["modes"]
        assert set(modes) <= {"by_design", "post_hoc"}
        for tally in modes.values():
            assert tally["attempts"] >= tally["successes"]


class TestReports:
    def test_markdown_report(self, client, case1_doc):
        assessment_id = _store_case1(client, case1_doc)
        response = client.get(f"/reports/{assessment_id}")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/markdown")
        assert "**0.551**" in response.text

    def test_json_report(self, client, case1_doc):
        assessment_id = _store_case1(client, case1_doc)
        response = client.get(f"/reports/{assessment_id}?format=json")
        assert response.status_code == 200
        doc = json.loads(response.content)
        assert doc["assessment"]["total"]["display"] == "0.551"

    def test_csv_report(self, client, case1_doc):
        assessment_id = _store_case1(client, case1_doc)
        response = client.get(f"/reports/{assessment_id}?format=csv")
        assert response.status_code == 200
        assert response.headers["content-type"].startswith("text/csv")
        assert response.text.startswith("section,property,max,weight,score,cas,note")

    def test_unknown_format_is_400(self, client, case1_doc):
        assessment_id = _store_case1(client, case1_doc)
        response = client.get(f"/reports/{assessment_id}?format=pdf")
        assert response.status_code == 400
        assert response.json()["field"] == "format"

    def test_unknown_assessment_is_404(self, client):
        response = client.get("/reports/" + "0" * 64)
        assert response.status_code == 404


class TestReferenceData:
    def test_rubrics_catalog(self, client):
        response = client.get("/rubrics")
        assert response.status_code == 200
        body = response.json()
        assert len(body["properties"]) == 8

    def test_default_config(self, client):
        response = client.get("/configs/default")
        assert response.status_code == 200
        entries = response.json()["entries"]
        assert len(entries) == 8
        assert abs(sum(entry["weight"] for entry in entries) - 1.0) < 1e-12

    def test_healthz(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}


class TestParityWithLibrary:
    def test_api_total_matches_direct_scoring(self, client, case1_doc):
        from contestkit.questionnaire import score_assessment, sheet_from_json

        direct = score_assessment(sheet_from_json(case1_doc))
        response = client.post("/assessments", json=case1_doc)
        assert response.json()["assessment"]["total"]["value"] == float(
            direct.cas.total
        )

    def test_api_radar_matches_normalized_scores(self, client, case1_doc):
        response = client.post("/assessments", json=case1_doc)
        radar = response.json()["assessment"]["radar"]
        values = [axis["value"] for axis in radar]
        assert values == [0.5, 0.5, 0.6, 1.0, 0.5, 0.5, 0.2, 0.5]
