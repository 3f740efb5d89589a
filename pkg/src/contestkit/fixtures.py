"""Loaders for the three shipped worked-case fixtures.

Each case consists of an answer sheet and an improvement scenario whose
modification sets carry highly/moderately feasibility tags.  The documents
also carry the totals published alongside the original tables so reports
can surface any disagreement with the recomputed values.
"""

from __future__ import annotations

import json
from importlib import resources

from contestkit.errors import InputError
from contestkit.questionnaire import (
    AnswerSheet,
    ScoredAssessment,
    score_assessment,
    sheet_from_json,
)
from contestkit.scoring import WeightConfig
from contestkit.whatif import Scenario, scenario_from_json

CASE_NUMBERS = (1, 2, 3)


def _read_case_file(name: str) -> dict:
    return json.loads(
        resources.files("contestkit.data.cases")
        .joinpath(name)
        .read_text(encoding="utf-8")
    )


def case_sheet_doc(case: int) -> dict:
    if case not in CASE_NUMBERS:
        raise InputError(f"no such case fixture: {case}")
    return _read_case_file(f"case{case}_sheet.json")


def case_scenario_doc(case: int) -> dict:
    if case not in CASE_NUMBERS:
        raise InputError(f"no such case fixture: {case}")
    return _read_case_file(f"case{case}_scenario.json")


def case_sheet(case: int) -> AnswerSheet:
    return sheet_from_json(case_sheet_doc(case), f"case {case} sheet")


def case_scored(case: int, config: WeightConfig | None = None) -> ScoredAssessment:
    return score_assessment(case_sheet(case), config)


def case_scenario(case: int, config: WeightConfig | None = None) -> Scenario:
    doc = case_scenario_doc(case)

    def resolve(baseline_spec: dict) -> ScoredAssessment:
        path = baseline_spec.get("path", "")
        if path != f"case{case}_sheet.json":
            raise InputError(
                f"case fixture baseline must reference its own sheet, got {path!r}",
                "baseline",
            )
        return case_scored(case, config)

    return scenario_from_json(doc, resolve, f"case {case} scenario")
