"""Command-line interface: subcommands, output shapes, exit codes."""

from __future__ import annotations

import json

import pytest

from contestkit.cli import main


class TestTemplate:
    def test_sheet_template_is_valid_and_scores_zero(self, capsys):
        assert main(["template"]) == 0
        doc = json.loads(capsys.readouterr().out)
        from contestkit.questionnaire import score_assessment, sheet_from_json

        assert score_assessment(sheet_from_json(doc)).cas.total == 0

    @pytest.mark.parametrize("kind", ["sheet", "weights", "scenario", "ledger"])
    def test_every_template_kind_emits_versioned_json(self, capsys, kind):
        assert main(["template", "--kind", kind]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["schema_version"] == "1"

    def test_unknown_kind_is_usage_error(self, capsys):
        assert main(["template", "--kind", "poem"]) == 2


class TestScore:
    def test_case1_prints_table_with_total(self, capsys, case_dir):
        assert main(["score", str(case_dir / "case1_sheet.json")]) == 0
        out = capsys.readouterr().out
        assert "| Property | Max | Weight | Score | CAS |" in out
        assert "**0.551**" in out

    def test_case2_prints_discrepancy_note(self, capsys, case_dir):
        assert main(["score", str(case_dir / "case2_sheet.json")]) == 0
        out = capsys.readouterr().out
        assert "**0.513**" in out
        assert "0.440" in out and "Note:" in out

    def test_missing_file_is_validation_failure(self, capsys, tmp_path):
        assert main(["score", str(tmp_path / "nope.json")]) == 1
        assert "error" in capsys.readouterr().err

    def test_malformed_json_reports_diagnostics(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{broken", encoding="utf-8")
        assert main(["score", str(bad)]) == 1
        assert "line" in capsys.readouterr().err

    def test_custom_weights_file(self, capsys, case_dir, tmp_path):
        from contestkit.scoring import default_weight_config, weights_to_json

        weights_path = tmp_path / "weights.json"
        weights_path.write_text(json.dumps(weights_to_json(default_weight_config())))
        code = main(
            ["score", str(case_dir / "case1_sheet.json"), "--weights", str(weights_path)]
        )
        assert code == 0
        assert "**0.551**" in capsys.readouterr().out

    def test_invalid_weights_file_fails_validation(self, capsys, case_dir, tmp_path):
        from contestkit.scoring import default_weight_config, weights_to_json

        doc = weights_to_json(default_weight_config())
        doc["entries"][0]["weight"] = 0.31
        weights_path = tmp_path / "weights.json"
        weights_path.write_text(json.dumps(doc))
        code = main(
            ["score", str(case_dir / "case1_sheet.json"), "--weights", str(weights_path)]
        )
        assert code == 1


class TestWhatif:
    def test_case1_comparison_table(self, capsys, case_dir):
        assert main(["whatif", str(case_dir / "case1_scenario.json")]) == 0
        out = capsys.readouterr().out
        assert "**0.551**" in out
        assert "**0.622**" in out
        assert "**0.927**" in out
        assert "Scenario policy up_to_moderately: total 0.927" in out

    def test_case3_prints_published_divergence(self, capsys, case_dir):
        assert main(["whatif", str(case_dir / "case3_scenario.json")]) == 0
        out = capsys.readouterr().out
        assert "**0.872**" in out and "0.600" in out

    def test_scenario_with_missing_baseline_file(self, capsys, tmp_path, case_dir):
        doc = json.loads((case_dir / "case1_scenario.json").read_text())
        doc["baseline"] = {"path": "gone.json"}
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps(doc))
        assert main(["whatif", str(path)]) == 1


class TestTaxonomyCommand:
    def test_grid_by_default(self, capsys):
        assert main(["taxonomy"]) == 0
        assert "Cluster key" in capsys.readouterr().out

    def test_cell_lookup(self, capsys):
        assert main(["taxonomy", "--reliance", "high", "--level", "low"]) == 0
        out = capsys.readouterr().out
        assert "regulatory_warning" in out

    def test_lookup_needs_both_axes(self, capsys):
        assert main(["taxonomy", "--reliance", "high"]) == 2

    def test_classify_sheet(self, capsys, case_dir):
        code = main(
            ["taxonomy", "--classify", str(case_dir / "case1_sheet.json"),
             "--reliance", "high"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "Contestability level: medium" in out

    def test_classify_without_reliance_is_usage_error(self, capsys, case_dir):
        code = main(["taxonomy", "--classify", str(case_dir / "case1_sheet.json")])
        assert code == 2


class TestLedgerCommand:
    def _write_template(self, tmp_path):
        from contestkit.formal import template_ledger

        path = tmp_path / "ledger.json"
        path.write_text(json.dumps(template_ledger()))
        return path

    def test_eval_prints_breakdown(self, capsys, tmp_path):
        path = self._write_template(tmp_path)
        assert main(["ledger", "eval", str(path)]) == 0
        out = capsys.readouterr().out
        assert "XLC:" in out and "SLC:" in out and "Aggregate:" in out

    def test_custom_weights(self, capsys, tmp_path):
        path = self._write_template(tmp_path)
        code = main(
            ["ledger", "eval", str(path), "--alpha", "0.5", "--beta", "0.5",
             "--gamma", "0"]
        )
        assert code == 0

    def test_partial_weights_is_usage_error(self, capsys, tmp_path):
        path = self._write_template(tmp_path)
        assert main(["ledger", "eval", str(path), "--alpha", "0.5"]) == 2

    def test_bad_weight_sum_is_validation_failure(self, capsys, tmp_path):
        path = self._write_template(tmp_path)
        code = main(
            ["ledger", "eval", str(path), "--alpha", "0.9", "--beta", "0.9",
             "--gamma", "0.9"]
        )
        assert code == 1

    def test_never_contested_stakeholder_fails_cleanly(self, capsys, tmp_path):
        from contestkit.formal import template_ledger

        doc = template_ledger()
        doc["instance"]["stakeholders"].append({"id": "silent", "capabilities": []})
        path = tmp_path / "ledger.json"
        path.write_text(json.dumps(doc))
        assert main(["ledger", "eval", str(path)]) == 1
        assert "silent" in capsys.readouterr().err


class TestReportCommand:
    def test_markdown_default(self, capsysbinary, case_dir):
        assert main(["report", str(case_dir / "case1_sheet.json")]) == 0
        out = capsysbinary.readouterr().out.decode()
        assert out.startswith("# Contestability assessment:")
        assert "**0.551**" in out

    def test_json_format(self, capsysbinary, case_dir):
        code = main(
            ["report", str(case_dir / "case2_sheet.json"), "--format", "json"]
        )
        assert code == 0
        doc = json.loads(capsysbinary.readouterr().out)
        assert doc["assessment"]["total"]["display"] == "0.513"
        assert doc["notes"], "expected a published-total discrepancy note"

    def test_csv_format(self, capsysbinary, case_dir):
        code = main(
            ["report", str(case_dir / "case3_sheet.json"), "--format", "csv"]
        )
        assert code == 0
        out = capsysbinary.readouterr().out.decode()
        assert out.startswith("section,property,max,weight,score,cas,note")


class TestValidateCommand:
    def test_valid_sheet(self, capsys, case_dir):
        assert main(["validate", str(case_dir / "case1_sheet.json")]) == 0
        assert "valid answer sheet" in capsys.readouterr().out

    def test_sheet_missing_traceability_names_property(self, capsys, tmp_path, case_dir):
        doc = json.loads((case_dir / "case1_sheet.json").read_text())
        del doc["answers"]["traceability"]
        path = tmp_path / "partial.json"
        path.write_text(json.dumps(doc))
        assert main(["validate", str(path)]) == 1
        assert "traceability" in capsys.readouterr().err

    def test_valid_scenario(self, capsys, case_dir):
        assert main(["validate", str(case_dir / "case2_scenario.json")]) == 0
        assert "valid scenario" in capsys.readouterr().out

    def test_valid_ledger(self, capsys, tmp_path):
        from contestkit.formal import template_ledger

        path = tmp_path / "ledger.json"
        path.write_text(json.dumps(template_ledger()))
        assert main(["validate", str(path)]) == 0

    def test_weight_config_violations_listed(self, capsys, tmp_path):
        from contestkit.scoring import default_weight_config, weights_to_json

        doc = weights_to_json(default_weight_config())
        doc["entries"][0]["weight"] = 0.31
        path = tmp_path / "weights.json"
        path.write_text(json.dumps(doc))
        assert main(["validate", str(path)]) == 1
        assert "invalid" in capsys.readouterr().err

    def test_unrecognized_document(self, capsys, tmp_path):
        path = tmp_path / "what.json"
        path.write_text(json.dumps({"schema_version": "1", "things": []}))
        assert main(["validate", str(path)]) == 1


class TestServe:
    def test_bad_addr_is_usage_error(self, capsys, tmp_path):
        code = main(
            ["serve", "--addr", "nonsense", "--workspace", str(tmp_path / "ws")]
        )
        assert code == 2


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 2

    def test_no_arguments_prints_help(self, capsys):
        assert main([]) == 2
        assert "COMMAND" in capsys.readouterr().err

    def test_missing_required_argument(self, capsys):
        assert main(["score"]) == 2
