"""What-if scenario engine over scored assessments.

A scenario is a set of raw-score modifications tagged highly or moderately
feasible.  The policy picks which tier applies: only_highly uses just the
highly-feasible set; up_to_moderately applies both, and where both tiers
touch the same property the moderately-feasible value wins (it stands for
the larger program of change).  Baselines are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping

from contestkit.errors import InputError
from contestkit.jsonio import as_fraction, check_schema_version, expect_type
from contestkit.properties import canonical_sort_key
from contestkit.questionnaire import ScoredAssessment
from contestkit.scoring import (
    CasResult,
    RawScoreVector,
    WeightConfig,
    compute_cas,
    default_weight_config,
)
from contestkit.taxonomy import DIMENSIONS

FEASIBILITY_TIERS = ("highly", "moderately")
POLICIES = ("only_highly", "up_to_moderately")


@dataclass(frozen=True)
class Modification:
    property_id: str
    new_score: Fraction
    feasibility: str
    rationale: str = ""
    dimension: str | None = None


@dataclass(frozen=True)
class Scenario:
    name: str
    baseline: ScoredAssessment
    modifications: tuple[Modification, ...]
    policy: str = "up_to_moderately"
    published_totals: Mapping[str, Fraction] | None = None


@dataclass(frozen=True)
class PropertyChange:
    property_id: str
    maximum: Fraction
    baseline_score: Fraction
    new_score: Fraction
    baseline_contribution: Fraction
    new_contribution: Fraction
    changed: bool


@dataclass(frozen=True)
class ScenarioResult:
    scenario_name: str
    policy: str
    changes: tuple[PropertyChange, ...]
    baseline_total: Fraction
    new_total: Fraction
    delta: Fraction
    config_fingerprint: str
    published_total: Fraction | None = None


@dataclass(frozen=True)
class RankedIntervention:
    modification: Modification
    delta: Fraction
    new_total: Fraction


@dataclass(frozen=True)
class ComparisonRow:
    system_name: str
    normalized: Mapping[str, Fraction]
    total: Fraction


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple[ComparisonRow, ...]
    config_fingerprint: str


# ---- construction helpers ----


def make_modification(
    property_id: str,
    new_score,
    feasibility: str,
    rationale: str = "",
    dimension: str | None = None,
) -> Modification:
    if feasibility not in FEASIBILITY_TIERS:
        raise InputError(
            f"feasibility must be one of {', '.join(FEASIBILITY_TIERS)}; got "
            f"{feasibility!r}",
            "feasibility",
        )
    if dimension is not None and dimension not in DIMENSIONS:
        raise InputError(
            f"dimension must be one of {', '.join(DIMENSIONS)}; got {dimension!r}",
            "dimension",
        )
    return Modification(
        property_id,
        as_fraction(new_score, "new_score"),
        feasibility,
        rationale,
        dimension,
    )


def make_scenario(
    name: str,
    baseline: ScoredAssessment,
    modifications: tuple[Modification, ...],
    policy: str = "up_to_moderately",
    published_totals: Mapping[str, Fraction] | None = None,
) -> Scenario:
    if policy not in POLICIES:
        raise InputError(
            f"policy must be one of {', '.join(POLICIES)}; got {policy!r}", "policy"
        )
    seen: set[tuple[str, str]] = set()
    for mod in modifications:
        key = (mod.property_id, mod.feasibility)
        if key in seen:
            raise InputError(
                f"duplicate {mod.feasibility}-feasible modification for "
                f"{mod.property_id!r}",
                "modifications",
            )
        seen.add(key)
    return Scenario(name, baseline, tuple(modifications), policy, published_totals)


def effective_modifications(
    modifications: tuple[Modification, ...], policy: str
) -> dict[str, Modification]:
    """Per-property modification after applying the policy's tier rules."""
    if policy not in POLICIES:
        raise InputError(
            f"policy must be one of {', '.join(POLICIES)}; got {policy!r}", "policy"
        )
    effective: dict[str, Modification] = {}
    for mod in modifications:
        if mod.feasibility == "highly":
            effective[mod.property_id] = mod
    if policy == "up_to_moderately":
        for mod in modifications:
            if mod.feasibility == "moderately":
                effective[mod.property_id] = mod
    return effective


# ---- evaluation ----


def _modified_vector(
    baseline: ScoredAssessment, mods: Mapping[str, Modification]
) -> RawScoreVector:
    entries = dict(baseline.raw.entries)
    for property_id, mod in mods.items():
        if property_id not in entries:
            raise InputError(
                f"modification targets unknown property {property_id!r}",
                property_id,
            )
        cell = entries[property_id]
        if not 0 <= mod.new_score <= cell.maximum:
            raise InputError(
                f"{property_id}: modified score {mod.new_score} outside "
                f"[0, {cell.maximum}]",
                property_id,
            )
        entries[property_id] = type(cell)(mod.new_score, cell.maximum)
    return RawScoreVector(entries)


def apply_scenario(
    scenario: Scenario, config: WeightConfig | None = None
) -> ScenarioResult:
    """Recompute the score with the scenario's effective modifications."""
    if config is None:
        config = default_weight_config()
    if config.fingerprint() != scenario.baseline.cas.config_fingerprint:
        raise InputError(
            "scenario baseline was scored under a different weight config",
            "baseline",
        )

    mods = effective_modifications(scenario.modifications, scenario.policy)
    new_vector = _modified_vector(scenario.baseline, mods)
    new_cas: CasResult = compute_cas(new_vector, config)

    changes = []
    for property_id in sorted(new_vector.entries, key=canonical_sort_key):
        baseline_cell = scenario.baseline.raw.entries[property_id]
        new_cell = new_vector.entries[property_id]
        changes.append(
            PropertyChange(
                property_id=property_id,
                maximum=baseline_cell.maximum,
                baseline_score=baseline_cell.score,
                new_score=new_cell.score,
                baseline_contribution=scenario.baseline.cas.contributions[property_id],
                new_contribution=new_cas.contributions[property_id],
                changed=new_cell.score != baseline_cell.score,
            )
        )

    published = None
    if scenario.published_totals is not None:
        published = scenario.published_totals.get(scenario.policy)

    baseline_total = scenario.baseline.cas.total
    return ScenarioResult(
        scenario_name=scenario.name,
        policy=scenario.policy,
        changes=tuple(changes),
        baseline_total=baseline_total,
        new_total=new_cas.total,
        delta=new_cas.total - baseline_total,
        config_fingerprint=new_cas.config_fingerprint,
        published_total=published,
    )


def with_policy(scenario: Scenario, policy: str) -> Scenario:
    """The same scenario evaluated under a different policy."""
    return make_scenario(
        scenario.name,
        scenario.baseline,
        scenario.modifications,
        policy,
        scenario.published_totals,
    )


def rank_interventions(
    baseline: ScoredAssessment,
    candidates: tuple[Modification, ...] | list[Modification],
    config: WeightConfig | None = None,
) -> list[RankedIntervention]:
    """Sort candidate modifications by the score delta each one alone yields.

    Ties break by feasibility (highly before moderately), then canonical
    property order.
    """
    if config is None:
        config = default_weight_config()
    if config.fingerprint() != baseline.cas.config_fingerprint:
        raise InputError(
            "baseline was scored under a different weight config", "baseline"
        )
    ranked = []
    for mod in candidates:
        vector = _modified_vector(baseline, {mod.property_id: mod})
        new_cas = compute_cas(vector, config)
        ranked.append(
            RankedIntervention(mod, new_cas.total - baseline.cas.total, new_cas.total)
        )
    ranked.sort(
        key=lambda item: (
            -item.delta,
            FEASIBILITY_TIERS.index(item.modification.feasibility),
            canonical_sort_key(item.modification.property_id),
        )
    )
    return ranked


def compare_systems(
    assessments: list[ScoredAssessment] | tuple[ScoredAssessment, ...],
) -> ComparisonTable:
    """Side-by-side rows with per-property normalized scores, input order."""
    if not assessments:
        raise InputError("nothing to compare: no assessments given")
    fingerprints = {a.cas.config_fingerprint for a in assessments}
    if len(fingerprints) > 1:
        raise InputError(
            "assessments were scored under different weight configs and "
            "cannot be compared",
        )
    rows = []
    for assessment in assessments:
        normalized = {
            property_id: cell.score / cell.maximum
            for property_id, cell in sorted(
                assessment.raw.entries.items(), key=lambda kv: canonical_sort_key(kv[0])
            )
        }
        rows.append(
            ComparisonRow(assessment.system_name, normalized, assessment.cas.total)
        )
    return ComparisonTable(tuple(rows), next(iter(fingerprints)))


# ---- scenario file format ----


def scenario_from_json(
    doc: object,
    resolve_baseline: Callable[[dict], ScoredAssessment],
    source: str = "scenario",
) -> Scenario:
    """Parse a scenario document; the caller supplies baseline resolution.

    The baseline block may reference a sheet by path (CLI), by stored id
    (service), or embed the sheet document; ``resolve_baseline`` receives
    the block and must return the scored baseline or raise InputError.
    """
    body = check_schema_version(doc, source)

    baseline_spec = body.get("baseline")
    if not isinstance(baseline_spec, dict) or not baseline_spec:
        raise InputError(
            f"{source} needs a baseline block (path, id, or embedded sheet)",
            "baseline",
        )
    baseline = resolve_baseline(baseline_spec)

    policy = body.get("policy", "up_to_moderately")

    raw_mods = body.get("modifications")
    expect_type(
        raw_mods, list, f"{source}: 'modifications' must be an array", "modifications"
    )
    modifications = []
    for index, item in enumerate(raw_mods):
        prefix = f"modifications[{index}]"
        expect_type(item, dict, f"{prefix} must be an object", prefix)
        property_id = item.get("property")
        expect_type(
            property_id, str, f"{prefix}.property must be a property id",
            f"{prefix}.property",
        )
        if "new_score" not in item:
            raise InputError(f"{prefix} is missing new_score", f"{prefix}.new_score")
        modifications.append(
            make_modification(
                property_id,
                as_fraction(item["new_score"], f"{prefix}.new_score"),
                item.get("feasibility", "highly"),
                item.get("rationale", ""),
                item.get("dimension"),
            )
        )

    published_totals = None
    raw_published = body.get("published_totals")
    if raw_published is not None:
        expect_type(
            raw_published, dict, "published_totals must be an object",
            "published_totals",
        )
        published_totals = {
            key: as_fraction(value, f"published_totals.{key}")
            for key, value in raw_published.items()
        }

    return make_scenario(
        str(body.get("name", "")),
        baseline,
        tuple(modifications),
        policy,
        published_totals,
    )


def scenario_to_json(scenario: Scenario, baseline_ref: dict) -> dict:
    """Serialize a scenario; ``baseline_ref`` is the caller's baseline block."""
    from contestkit.jsonio import SCHEMA_VERSION

    doc: dict = {
        "schema_version": SCHEMA_VERSION,
        "name": scenario.name,
        "baseline": baseline_ref,
        "policy": scenario.policy,
        "modifications": [
            {
                "property": mod.property_id,
                "new_score": (
                    int(mod.new_score)
                    if mod.new_score.denominator == 1
                    else float(mod.new_score)
                ),
                "feasibility": mod.feasibility,
                "rationale": mod.rationale,
                **({"dimension": mod.dimension} if mod.dimension else {}),
            }
            for mod in scenario.modifications
        ],
    }
    if scenario.published_totals is not None:
        doc["published_totals"] = {
            key: float(value) for key, value in scenario.published_totals.items()
        }
    return doc


def template_scenario() -> dict:
    from contestkit.jsonio import SCHEMA_VERSION

    return {
        "schema_version": SCHEMA_VERSION,
        "name": "example scenario",
        "baseline": {"path": "sheet.json"},
        "policy": "up_to_moderately",
        "modifications": [
            {
                "property": "explainability",
                "new_score": 2,
                "feasibility": "highly",
                "rationale": "why this change is plausible",
                "dimension": "technical",
            }
        ],
    }
