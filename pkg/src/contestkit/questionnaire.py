"""Self-assessment questionnaire: data-driven rubrics and sheet scoring.

Rubrics ship as JSON package data.  Four rubric kinds exist: single-choice
options, a five-subcriterion 0/1/2 sum (traceability), a ten-item checklist
(ease), and a ten-statement Likert battery averaged per item across raters
(explanation quality).  Scoring a complete sheet produces a RawScoreVector,
runs the weighted score, and carries metadata through untouched; metadata
never influences the score.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from typing import Mapping, Union

from contestkit.errors import InputError
from contestkit.jsonio import (
    SCHEMA_VERSION,
    as_fraction,
    check_schema_version,
    expect_type,
)
from contestkit.properties import CANONICAL_ORDER, canonical_sort_key
from contestkit.scoring import (
    CasResult,
    RawScoreVector,
    WeightConfig,
    compute_cas,
    default_weight_config,
)

OPACITY_VALUES = ("open", "partial", "proprietary")


# ---- rubric model ----


@dataclass(frozen=True)
class RubricOption:
    label: str
    points: int
    description: str


@dataclass(frozen=True)
class SingleChoiceRubric:
    property_id: str
    title: str
    question: str
    options: tuple[RubricOption, ...]
    kind: str = "single-choice"

    @property
    def max_points(self) -> int:
        return max(option.points for option in self.options)

    def labels(self) -> tuple[str, ...]:
        return tuple(option.label for option in self.options)


@dataclass(frozen=True)
class Subcriterion:
    key: str
    name: str
    levels: tuple[RubricOption, ...]


@dataclass(frozen=True)
class SubcriteriaRubric:
    property_id: str
    title: str
    question: str
    subcriteria: tuple[Subcriterion, ...]
    kind: str = "subcriteria-sum"

    @property
    def max_points(self) -> int:
        return sum(max(level.points for level in sub.levels) for sub in self.subcriteria)


@dataclass(frozen=True)
class ChecklistItem:
    key: str
    label: str
    description: str


@dataclass(frozen=True)
class ChecklistRubric:
    property_id: str
    title: str
    question: str
    instruction: str
    items: tuple[ChecklistItem, ...]
    kind: str = "checklist-sum"

    @property
    def max_points(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class LikertRubric:
    property_id: str
    title: str
    question: str
    instruction: str
    statements: tuple[str, ...]
    scale_min: int
    scale_max: int
    kind: str = "likert-battery"

    @property
    def max_points(self) -> int:
        return len(self.statements) * self.scale_max


PropertyRubric = Union[SingleChoiceRubric, SubcriteriaRubric, ChecklistRubric, LikertRubric]

_RUBRICS: dict[str, PropertyRubric] | None = None
_RUBRIC_DOC: dict | None = None


def _rubric_doc() -> dict:
    global _RUBRIC_DOC
    if _RUBRIC_DOC is None:
        text = (
            resources.files("contestkit.data")
            .joinpath("rubrics.json")
            .read_text(encoding="utf-8")
        )
        _RUBRIC_DOC = check_schema_version(json.loads(text), "rubrics data")
    return _RUBRIC_DOC


def load_rubrics() -> dict[str, PropertyRubric]:
    """The eight shipped property rubrics, keyed by canonical property id."""
    global _RUBRICS
    if _RUBRICS is not None:
        return _RUBRICS
    doc = _rubric_doc()
    rubrics: dict[str, PropertyRubric] = {}
    for property_id, body in doc["properties"].items():
        kind = body["kind"]
        if kind == "single-choice":
            rubrics[property_id] = SingleChoiceRubric(
                property_id,
                body["title"],
                body["question"],
                tuple(
                    RubricOption(o["label"], o["points"], o["description"])
                    for o in body["options"]
                ),
            )
        elif kind == "subcriteria-sum":
            rubrics[property_id] = SubcriteriaRubric(
                property_id,
                body["title"],
                body["question"],
                tuple(
                    Subcriterion(
                        s["key"],
                        s["name"],
                        tuple(
                            RubricOption(lv["label"], lv["points"], lv["description"])
                            for lv in s["levels"]
                        ),
                    )
                    for s in body["subcriteria"]
                ),
            )
        elif kind == "checklist-sum":
            rubrics[property_id] = ChecklistRubric(
                property_id,
                body["title"],
                body["question"],
                body["instruction"],
                tuple(
                    ChecklistItem(i["key"], i["label"], i["description"])
                    for i in body["items"]
                ),
            )
        elif kind == "likert-battery":
            rubrics[property_id] = LikertRubric(
                property_id,
                body["title"],
                body["question"],
                body["instruction"],
                tuple(body["statements"]),
                body["scale"]["min"],
                body["scale"]["max"],
            )
        else:
            raise InputError(f"unknown rubric kind {kind!r} for {property_id}")
    _RUBRICS = rubrics
    return rubrics


def rubric_maxima() -> dict[str, Fraction]:
    return {pid: Fraction(rubric.max_points) for pid, rubric in load_rubrics().items()}


def metadata_rubrics() -> dict:
    """Raw metadata blocks (impact severity, autonomy, context factors)."""
    return _rubric_doc()["metadata"]


# ---- answers ----


@dataclass(frozen=True)
class SingleChoiceAnswer:
    choice: str


@dataclass(frozen=True)
class LevelsAnswer:
    levels: tuple[int, ...]


@dataclass(frozen=True)
class ChecklistAnswer:
    checks: tuple[bool, ...]


@dataclass(frozen=True)
class LikertAnswer:
    assessed: bool
    ratings: tuple[tuple[int, ...], ...] = ()


Answer = Union[SingleChoiceAnswer, LevelsAnswer, ChecklistAnswer, LikertAnswer]


@dataclass(frozen=True)
class ContextFactors:
    latency: str | None = None
    opacity: str | None = None
    capability_disparity: str | None = None
    adaptivity_constraint: str | None = None


@dataclass(frozen=True)
class AssessmentMetadata:
    impact_severity: int
    autonomy_level: int
    context_factors: ContextFactors | None = None


@dataclass(frozen=True)
class AnswerSheet:
    answers: Mapping[str, Answer]
    metadata: AssessmentMetadata
    system_name: str = ""
    system_description: str = ""
    published_total: Fraction | None = None


@dataclass(frozen=True)
class Provenance:
    schema_version: str = SCHEMA_VERSION
    scored_at: str | None = None


@dataclass(frozen=True)
class ScoredAssessment:
    raw: RawScoreVector
    cas: CasResult
    metadata: AssessmentMetadata
    provenance: Provenance = field(default_factory=Provenance)
    system_name: str = ""
    system_description: str = ""
    quality_assessed: bool = True
    published_total: Fraction | None = None


# ---- scorers ----


def score_single_choice(rubric: SingleChoiceRubric, chosen: str) -> int:
    """Points for the chosen option label; unknown labels are rejected."""
    if rubric.kind != "single-choice":
        raise InputError(f"{rubric.property_id} is not a single-choice rubric")
    for option in rubric.options:
        if option.label == chosen:
            return option.points
    raise InputError(
        f"unknown {rubric.property_id} option {chosen!r}; valid options: "
        + ", ".join(rubric.labels()),
        rubric.property_id,
    )


def score_traceability(levels: tuple[int, ...] | list[int]) -> int:
    """Sum of the five subcriterion levels, each in {0, 1, 2}."""
    if len(levels) != 5:
        raise InputError(
            f"traceability needs exactly 5 subcriterion levels, got {len(levels)}",
            "traceability",
        )
    for index, level in enumerate(levels):
        if isinstance(level, bool) or not isinstance(level, int) or level not in (0, 1, 2):
            raise InputError(
                f"traceability level must be 0, 1, or 2, got {level!r}",
                f"traceability.levels[{index}]",
            )
    return sum(levels)


def score_ease(checks: tuple[bool, ...] | list[bool]) -> int:
    """Count of checked items out of the ten canonical checklist entries."""
    if len(checks) != 10:
        raise InputError(
            f"ease needs exactly 10 checklist answers, got {len(checks)}", "ease"
        )
    for index, value in enumerate(checks):
        if not isinstance(value, bool):
            raise InputError(
                f"ease checklist answers must be booleans, got {value!r}",
                f"ease.checks[{index}]",
            )
    return sum(1 for value in checks if value)


def score_scs(ratings) -> Fraction:
    """Likert battery: per-item mean across raters, summed over the 10 items.

    With at least one rater the result lies in [10, 50]; fractional values
    are kept exact.
    """
    rows = [tuple(row) for row in ratings]
    if not rows:
        raise InputError(
            "explanation_quality is marked assessed but has no rater rows",
            "explanation_quality.ratings",
        )
    for user_index, row in enumerate(rows):
        if len(row) != 10:
            raise InputError(
                f"each rater row needs exactly 10 ratings, got {len(row)}",
                f"explanation_quality.ratings[{user_index}]",
            )
        for item_index, rating in enumerate(row):
            if (
                isinstance(rating, bool)
                or not isinstance(rating, int)
                or not 1 <= rating <= 5
            ):
                raise InputError(
                    f"ratings must be integers in 1..5, got {rating!r}",
                    f"explanation_quality.ratings[{user_index}][{item_index}]",
                )
    users = len(rows)
    total = Fraction(0)
    for item_index in range(10):
        item_sum = sum(row[item_index] for row in rows)
        total += Fraction(item_sum, users)
    return total


def _score_answer(property_id: str, answer: Answer) -> Fraction:
    rubric = load_rubrics()[property_id]
    if isinstance(rubric, SingleChoiceRubric):
        if not isinstance(answer, SingleChoiceAnswer):
            raise InputError(f"{property_id} expects a single choice", property_id)
        return Fraction(score_single_choice(rubric, answer.choice))
    if isinstance(rubric, SubcriteriaRubric):
        if not isinstance(answer, LevelsAnswer):
            raise InputError(f"{property_id} expects subcriterion levels", property_id)
        return Fraction(score_traceability(answer.levels))
    if isinstance(rubric, ChecklistRubric):
        if not isinstance(answer, ChecklistAnswer):
            raise InputError(f"{property_id} expects checklist answers", property_id)
        return Fraction(score_ease(answer.checks))
    if isinstance(rubric, LikertRubric):
        if not isinstance(answer, LikertAnswer):
            raise InputError(f"{property_id} expects Likert ratings", property_id)
        if not answer.assessed:
            # No user study means no evidence of explanation quality: score 0
            # and let reports flag the property as not assessed.
            return Fraction(0)
        return score_scs(answer.ratings)
    raise InputError(f"no rubric for property {property_id!r}", property_id)


def score_assessment(
    sheet: AnswerSheet,
    config: WeightConfig | None = None,
    scored_at: str | None = None,
) -> ScoredAssessment:
    """Score a complete sheet: per-property rubrics, then the weighted total."""
    if config is None:
        config = default_weight_config()
    rubrics = load_rubrics()

    scores: dict[str, Fraction] = {}
    maxima: dict[str, Fraction] = {}
    for property_id in config.property_ids():
        if property_id not in rubrics:
            raise InputError(
                f"weight config references {property_id!r} but no rubric defines it",
                property_id,
            )
        if property_id not in sheet.answers:
            raise InputError(
                f"sheet is missing answers for {property_id!r}",
                f"answers.{property_id}",
            )
        scores[property_id] = _score_answer(property_id, sheet.answers[property_id])
        maxima[property_id] = Fraction(rubrics[property_id].max_points)

    raw = RawScoreVector.build(scores, maxima)
    cas = compute_cas(raw, config)

    quality_answer = sheet.answers.get("explanation_quality")
    quality_assessed = (
        quality_answer.assessed if isinstance(quality_answer, LikertAnswer) else True
    )
    return ScoredAssessment(
        raw=raw,
        cas=cas,
        metadata=sheet.metadata,
        provenance=Provenance(scored_at=scored_at),
        system_name=sheet.system_name,
        system_description=sheet.system_description,
        quality_assessed=quality_assessed,
        published_total=sheet.published_total,
    )


# ---- sheet file format ----


def _parse_keyed_values(raw, keys: tuple[str, ...], field_name: str, what: str) -> list:
    """Accept either a canonical-order array or an object keyed by item key."""
    if isinstance(raw, list):
        if len(raw) != len(keys):
            raise InputError(
                f"{field_name} needs exactly {len(keys)} {what}, got {len(raw)}",
                field_name,
            )
        return list(raw)
    if isinstance(raw, dict):
        unknown = sorted(set(raw) - set(keys))
        if unknown:
            raise InputError(
                f"{field_name} has unknown keys: {', '.join(unknown)}", field_name
            )
        missing = sorted(set(keys) - set(raw))
        if missing:
            raise InputError(
                f"{field_name} is missing keys: {', '.join(missing)}", field_name
            )
        return [raw[key] for key in keys]
    raise InputError(
        f"{field_name} must be an array in canonical order or an object keyed "
        f"by item key",
        field_name,
    )


def _parse_answer(property_id: str, body: object) -> Answer:
    rubric = load_rubrics()[property_id]
    prefix = f"answers.{property_id}"
    expect_type(body, dict, f"{prefix} must be an object", prefix)

    if isinstance(rubric, SingleChoiceRubric):
        choice = body.get("choice")
        expect_type(choice, str, f"{prefix}.choice must be an option label", f"{prefix}.choice")
        score_single_choice(rubric, choice)  # validate label now
        return SingleChoiceAnswer(choice)

    if isinstance(rubric, SubcriteriaRubric):
        keys = tuple(sub.key for sub in rubric.subcriteria)
        values = _parse_keyed_values(
            body.get("levels"), keys, f"{prefix}.levels", "subcriterion levels"
        )
        for index, value in enumerate(values):
            if isinstance(value, bool) or not isinstance(value, int):
                raise InputError(
                    f"{prefix}.levels[{index}] must be an integer 0..2",
                    f"{prefix}.levels[{index}]",
                )
        answer = LevelsAnswer(tuple(values))
        score_traceability(answer.levels)
        return answer

    if isinstance(rubric, ChecklistRubric):
        keys = tuple(item.key for item in rubric.items)
        values = _parse_keyed_values(
            body.get("checks"), keys, f"{prefix}.checks", "checklist answers"
        )
        for index, value in enumerate(values):
            if not isinstance(value, bool):
                raise InputError(
                    f"{prefix}.checks[{index}] must be a boolean",
                    f"{prefix}.checks[{index}]",
                )
        return ChecklistAnswer(tuple(values))

    if isinstance(rubric, LikertRubric):
        assessed = body.get("assessed")
        if not isinstance(assessed, bool):
            raise InputError(
                f"{prefix}.assessed must be true or false", f"{prefix}.assessed"
            )
        raw_ratings = body.get("ratings", [])
        expect_type(
            raw_ratings, list, f"{prefix}.ratings must be an array of rater rows",
            f"{prefix}.ratings",
        )
        rows = []
        for user_index, row in enumerate(raw_ratings):
            expect_type(
                row, list, f"{prefix}.ratings[{user_index}] must be an array",
                f"{prefix}.ratings[{user_index}]",
            )
            rows.append(tuple(row))
        answer = LikertAnswer(assessed, tuple(rows))
        if assessed:
            score_scs(answer.ratings)
        elif rows:
            raise InputError(
                f"{prefix} is marked not assessed but carries rating rows",
                f"{prefix}.ratings",
            )
        return answer

    raise InputError(f"no rubric for property {property_id!r}", property_id)


def _parse_metadata(body: object) -> AssessmentMetadata:
    expect_type(body, dict, "metadata must be an object", "metadata")
    severity = body.get("impact_severity")
    if isinstance(severity, bool) or not isinstance(severity, int) or severity not in (0, 1, 2, 3):
        raise InputError(
            f"metadata.impact_severity must be an integer 0..3, got {severity!r}",
            "metadata.impact_severity",
        )
    autonomy = body.get("autonomy_level")
    if isinstance(autonomy, bool) or not isinstance(autonomy, int) or not 0 <= autonomy <= 10:
        raise InputError(
            f"metadata.autonomy_level must be an integer 0..10, got {autonomy!r}",
            "metadata.autonomy_level",
        )
    context = None
    raw_context = body.get("context_factors")
    if raw_context is not None:
        expect_type(
            raw_context, dict, "metadata.context_factors must be an object",
            "metadata.context_factors",
        )
        opacity = raw_context.get("opacity")
        if opacity is not None and opacity not in OPACITY_VALUES:
            raise InputError(
                f"metadata.context_factors.opacity must be one of "
                f"{', '.join(OPACITY_VALUES)}; got {opacity!r}",
                "metadata.context_factors.opacity",
            )
        context = ContextFactors(
            latency=raw_context.get("latency"),
            opacity=opacity,
            capability_disparity=raw_context.get("capability_disparity"),
            adaptivity_constraint=raw_context.get("adaptivity_constraint"),
        )
    return AssessmentMetadata(severity, autonomy, context)


def sheet_from_json(doc: object, source: str = "answer sheet") -> AnswerSheet:
    body = check_schema_version(doc, source)
    answers_raw = body.get("answers")
    expect_type(answers_raw, dict, f"{source}: 'answers' must be an object", "answers")

    rubrics = load_rubrics()
    unknown = sorted(set(answers_raw) - set(rubrics))
    if unknown:
        raise InputError(
            f"answers for unknown properties: {', '.join(unknown)}",
            f"answers.{unknown[0]}",
        )
    missing = [pid for pid in CANONICAL_ORDER if pid not in answers_raw]
    if missing:
        raise InputError(
            f"sheet is missing answers for: {', '.join(missing)}",
            f"answers.{missing[0]}",
        )

    answers = {
        property_id: _parse_answer(property_id, answers_raw[property_id])
        for property_id in sorted(answers_raw, key=canonical_sort_key)
    }

    if "metadata" not in body:
        raise InputError("sheet is missing the metadata block", "metadata")
    metadata = _parse_metadata(body["metadata"])

    system = body.get("system", {})
    expect_type(system, dict, "'system' must be an object", "system")

    published = body.get("published_total")
    published_total = (
        as_fraction(published, "published_total") if published is not None else None
    )

    return AnswerSheet(
        answers=answers,
        metadata=metadata,
        system_name=str(system.get("name", "")),
        system_description=str(system.get("description", "")),
        published_total=published_total,
    )


def sheet_to_json(sheet: AnswerSheet) -> dict:
    rubrics = load_rubrics()
    answers: dict[str, dict] = {}
    for property_id in sorted(sheet.answers, key=canonical_sort_key):
        answer = sheet.answers[property_id]
        rubric = rubrics[property_id]
        if isinstance(answer, SingleChoiceAnswer):
            answers[property_id] = {"choice": answer.choice}
        elif isinstance(answer, LevelsAnswer):
            keys = tuple(sub.key for sub in rubric.subcriteria)
            answers[property_id] = {"levels": dict(zip(keys, answer.levels))}
        elif isinstance(answer, ChecklistAnswer):
            keys = tuple(item.key for item in rubric.items)
            answers[property_id] = {"checks": dict(zip(keys, answer.checks))}
        elif isinstance(answer, LikertAnswer):
            payload: dict = {"assessed": answer.assessed}
            if answer.assessed:
                payload["ratings"] = [list(row) for row in answer.ratings]
            answers[property_id] = payload

    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "system": {"name": sheet.system_name, "description": sheet.system_description},
        "answers": answers,
        "metadata": _metadata_to_json(sheet.metadata),
    }
    if sheet.published_total is not None:
        doc["published_total"] = float(sheet.published_total)
    return doc


def _metadata_to_json(metadata: AssessmentMetadata) -> dict:
    body: dict = {
        "impact_severity": metadata.impact_severity,
        "autonomy_level": metadata.autonomy_level,
    }
    if metadata.context_factors is not None:
        factors = {
            "latency": metadata.context_factors.latency,
            "opacity": metadata.context_factors.opacity,
            "capability_disparity": metadata.context_factors.capability_disparity,
            "adaptivity_constraint": metadata.context_factors.adaptivity_constraint,
        }
        body["context_factors"] = {k: v for k, v in factors.items() if v is not None}
    return body


def blank_sheet() -> dict:
    """A fillable template: every property at its minimum, quality unassessed."""
    rubrics = load_rubrics()
    answers: dict[str, dict] = {}
    for property_id in CANONICAL_ORDER:
        rubric = rubrics[property_id]
        if isinstance(rubric, SingleChoiceRubric):
            zero = min(rubric.options, key=lambda option: option.points)
            answers[property_id] = {"choice": zero.label}
        elif isinstance(rubric, SubcriteriaRubric):
            answers[property_id] = {
                "levels": {sub.key: 0 for sub in rubric.subcriteria}
            }
        elif isinstance(rubric, ChecklistRubric):
            answers[property_id] = {
                "checks": {item.key: False for item in rubric.items}
            }
        elif isinstance(rubric, LikertRubric):
            answers[property_id] = {"assessed": False}
    return {
        "schema_version": SCHEMA_VERSION,
        "system": {"name": "", "description": ""},
        "answers": answers,
        "metadata": {
            "impact_severity": 0,
            "autonomy_level": 0,
            "context_factors": {
                "latency": "",
                "opacity": "open",
                "capability_disparity": "",
                "adaptivity_constraint": "",
            },
        },
    }
