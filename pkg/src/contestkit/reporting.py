"""Report rendering: markdown, JSON, and CSV views of assessment results.

Every displayed number is rounded half-away-from-zero to 3 decimals; the
table layout is Property | Max | Weight | Score | CAS with a trailing total
row.  Rendering is deterministic: identical bundles produce identical
bytes.  When a fixture carries a published total that disagrees with the
recomputed value by more than 0.002, the bundle grows a mandatory
discrepancy note; disagreement with the source is surfaced, never hidden.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from contestkit.errors import InputError
from contestkit.formal import AggregateResult, ModeTally
from contestkit.jsonio import display_number
from contestkit.properties import PROPERTY_TITLES, canonical_sort_key
from contestkit.questionnaire import ScoredAssessment, metadata_rubrics
from contestkit.scoring import WeightConfig, default_weight_config
from contestkit.taxonomy import Classification, TaxonomyCatalog, default_catalog
from contestkit.whatif import ComparisonTable, ScenarioResult

REPORT_FORMATS = ("markdown", "json", "csv")
DISCREPANCY_THRESHOLD = Fraction(2, 1000)


@dataclass(frozen=True)
class DiscrepancyNote:
    subject: str
    computed: Fraction
    published: Fraction

    def message(self) -> str:
        gap = abs(self.computed - self.published)
        return (
            f"{self.subject}: computed {display_number(self.computed)} differs "
            f"from the published value {display_number(self.published)} by "
            f"{display_number(gap)}; the formula result is authoritative"
        )


@dataclass(frozen=True)
class ReportBundle:
    assessment: ScoredAssessment
    config: WeightConfig
    scenario_results: tuple[ScenarioResult, ...] = ()
    classification: Classification | None = None
    formal: AggregateResult | None = None
    mode_tallies: Mapping[str, ModeTally] | None = None
    notes: tuple[DiscrepancyNote, ...] = ()
    catalog: TaxonomyCatalog | None = field(default=None, compare=False)


def build_bundle(
    assessment: ScoredAssessment,
    config: WeightConfig | None = None,
    scenario_results: tuple[ScenarioResult, ...] | list[ScenarioResult] = (),
    classification: Classification | None = None,
    formal: AggregateResult | None = None,
    mode_tallies: Mapping[str, ModeTally] | None = None,
    catalog: TaxonomyCatalog | None = None,
) -> ReportBundle:
    """Assemble a bundle and auto-generate any discrepancy notes."""
    if config is None:
        config = default_weight_config()
    if config.fingerprint() != assessment.cas.config_fingerprint:
        raise InputError(
            "report config does not match the config the assessment was "
            "scored with",
            "config",
        )
    for result in scenario_results:
        if result.config_fingerprint != assessment.cas.config_fingerprint:
            raise InputError(
                f"scenario {result.scenario_name!r} was evaluated under a "
                f"different weight config",
                "scenario_results",
            )

    notes: list[DiscrepancyNote] = []
    if assessment.published_total is not None:
        gap = abs(assessment.cas.total - assessment.published_total)
        if gap > DISCREPANCY_THRESHOLD:
            notes.append(
                DiscrepancyNote(
                    "baseline total", assessment.cas.total, assessment.published_total
                )
            )
    for result in scenario_results:
        if result.published_total is not None:
            gap = abs(result.new_total - result.published_total)
            if gap > DISCREPANCY_THRESHOLD:
                notes.append(
                    DiscrepancyNote(
                        f"scenario {result.scenario_name!r} ({result.policy}) total",
                        result.new_total,
                        result.published_total,
                    )
                )

    return ReportBundle(
        assessment=assessment,
        config=config,
        scenario_results=tuple(scenario_results),
        classification=classification,
        formal=formal,
        mode_tallies=mode_tallies,
        notes=tuple(notes),
        catalog=catalog,
    )


# ---- shared formatting ----


def _trim_number(value: Fraction) -> str:
    """Integers print bare; fractional values print at 3 decimals."""
    if value.denominator == 1:
        return str(int(value))
    return display_number(value)


def _ordered_properties(assessment: ScoredAssessment) -> list[str]:
    return sorted(assessment.raw.entries, key=canonical_sort_key)


def _property_title(property_id: str) -> str:
    return PROPERTY_TITLES.get(property_id, property_id)


def _metadata_label(kind: str, points: int) -> str:
    for option in metadata_rubrics()[kind]["options"]:
        if option["points"] == points:
            return option["label"]
    return str(points)


# ---- markdown ----


def _markdown_score_table(bundle: ReportBundle) -> list[str]:
    assessment = bundle.assessment
    weights = {entry.property_id: entry.weight for entry in bundle.config.entries}
    lines = [
        "| Property | Max | Weight | Score | CAS |",
        "| --- | ---: | ---: | ---: | ---: |",
    ]
    for property_id in _ordered_properties(assessment):
        cell = assessment.raw.entries[property_id]
        contribution = assessment.cas.contributions[property_id]
        title = _property_title(property_id)
        if property_id == "explanation_quality" and not assessment.quality_assessed:
            title += " (not assessed)"
        lines.append(
            f"| {title} | {_trim_number(cell.maximum)} | "
            f"{display_number(weights[property_id])} | {_trim_number(cell.score)} | "
            f"{display_number(contribution)} |"
        )
    lines.append(
        f"| **Total CAS** |  |  |  | **{display_number(assessment.cas.total)}** |"
    )
    return lines


def _markdown_scenario_table(bundle: ReportBundle) -> list[str]:
    assessment = bundle.assessment
    results = bundle.scenario_results
    header = "| Property | Max | Score | CAS |"
    divider = "| --- | ---: | ---: | ---: |"
    for result in results:
        header += f" Score ({result.policy}) | CAS ({result.policy}) |"
        divider += " ---: | ---: |"
    lines = [header, divider]
    for property_id in _ordered_properties(assessment):
        cell = assessment.raw.entries[property_id]
        row = (
            f"| {_property_title(property_id)} | {_trim_number(cell.maximum)} | "
            f"{_trim_number(cell.score)} | "
            f"{display_number(assessment.cas.contributions[property_id])} |"
        )
        for result in results:
            change = next(
                c for c in result.changes if c.property_id == property_id
            )
            row += (
                f" {_trim_number(change.new_score)} | "
                f"{display_number(change.new_contribution)} |"
            )
        lines.append(row)
    total_row = f"| **Total CAS** |  |  | **{display_number(assessment.cas.total)}** |"
    for result in results:
        total_row += f"  | **{display_number(result.new_total)}** |"
    lines.append(total_row)
    return lines


def render_markdown(bundle: ReportBundle) -> str:
    assessment = bundle.assessment
    title = assessment.system_name or "Unnamed system"
    lines = [f"# Contestability assessment: {title}", ""]
    if assessment.system_description:
        lines += [assessment.system_description, ""]

    lines += ["## Scores", ""]
    lines += _markdown_score_table(bundle)
    lines.append("")
    if not assessment.quality_assessed:
        lines += [
            "Explanation quality was not assessed with users; it scores 0 "
            "until ratings exist.",
            "",
        ]

    metadata = assessment.metadata
    lines += [
        "## Assessment metadata",
        "",
        f"- Impact severity: {metadata.impact_severity} "
        f"({_metadata_label('impact_severity', metadata.impact_severity)})",
        f"- Autonomy level: {metadata.autonomy_level} "
        f"({_metadata_label('autonomy_level', metadata.autonomy_level)})",
    ]
    if metadata.context_factors is not None:
        factors = metadata.context_factors
        pairs = [
            ("latency", factors.latency),
            ("opacity", factors.opacity),
            ("capability disparity", factors.capability_disparity),
            ("adaptivity constraint", factors.adaptivity_constraint),
        ]
        shown = [f"{name}: {value}" for name, value in pairs if value]
        if shown:
            lines.append("- Context factors: " + "; ".join(shown))
    lines.append("")

    if bundle.scenario_results:
        lines += ["## Scenario comparison", ""]
        names = {result.scenario_name for result in bundle.scenario_results}
        for name in sorted(names):
            if name:
                lines.append(f"Scenario: {name}")
        if any(names):
            lines.append("")
        lines += _markdown_scenario_table(bundle)
        lines.append("")

    if bundle.classification is not None:
        placement = bundle.classification
        catalog = bundle.catalog or default_catalog()
        lines += [
            "## Taxonomy placement",
            "",
            f"- Reliance: {placement.reliance}",
            f"- Contestability level: {placement.level}",
        ]
        if placement.flags:
            lines.append(f"- Flags: {', '.join(sorted(placement.flags))}")
        if placement.cell.examples:
            lines.append(
                f"- Comparable systems: {'; '.join(placement.cell.examples)}"
            )
        lines.append("")
        cluster_names = {cluster.id: cluster.name for cluster in catalog.clusters}
        current_cluster = None
        for criterion_id in placement.cell.criteria_ids:
            criterion = catalog.criterion(criterion_id)
            if criterion.cluster != current_cluster:
                current_cluster = criterion.cluster
                lines += [f"### {cluster_names[current_cluster]}", ""]
            dims = ", ".join(criterion.dimensions)
            lines.append(f"- {criterion.name} ({dims}): {criterion.description}")
        lines.append("")

    if bundle.formal is not None:
        formal = bundle.formal
        lines += ["## Formal contestability", ""]
        xlc_text = "holds" if formal.xlc.holds else (
            f"fails at decision {formal.xlc.counterexample[0]!r} for "
            f"stakeholder {formal.xlc.counterexample[1]!r}"
        )
        slc_text = "holds" if formal.slc.holds else (
            f"fails: {formal.slc.missing_stakeholder!r} has no successful "
            f"contestation"
        )
        lines += [
            f"- Explanation-level contestability: {xlc_text}",
            f"- System-level contestability: {slc_text}",
            f"- Minimum success rate: {display_number(formal.min_success_rate)}",
            f"- Aggregate: {display_number(formal.total)}",
        ]
        if bundle.mode_tallies:
            for mode in sorted(bundle.mode_tallies):
                tally = bundle.mode_tallies[mode]
                rate = tally.success_rate
                rate_text = display_number(rate) if rate is not None else "undefined"
                lines.append(
                    f"- {mode}: {tally.successes}/{tally.attempts} successful "
                    f"(rate {rate_text})"
                )
        lines.append("")

    if bundle.notes:
        lines += ["## Discrepancy notes", ""]
        for note in bundle.notes:
            lines.append(f"- {note.message()}")
        lines.append("")

    return "\n".join(lines)


def score_table_markdown(bundle: ReportBundle) -> str:
    """Just the CAS score table (plus any discrepancy notes), for the CLI."""
    lines = _markdown_score_table(bundle)
    if not bundle.assessment.quality_assessed:
        lines += [
            "",
            "Explanation quality was not assessed with users; it scores 0 "
            "until ratings exist.",
        ]
    for note in bundle.notes:
        lines += ["", f"Note: {note.message()}"]
    return "\n".join(lines)


def scenario_table_markdown(bundle: ReportBundle) -> str:
    """Baseline-vs-scenarios comparison table, one column pair per result."""
    lines = _markdown_scenario_table(bundle)
    for result in bundle.scenario_results:
        sign = "+" if result.delta >= 0 else ""
        lines.append(
            f"\nPolicy {result.policy}: total "
            f"{display_number(result.new_total)} "
            f"(delta {sign}{display_number(result.delta)})"
        )
    for note in bundle.notes:
        lines += ["", f"Note: {note.message()}"]
    return "\n".join(lines)


# ---- json ----


def _number_payload(value: Fraction) -> dict:
    return {"value": float(value), "display": display_number(value)}


def scored_payload(assessment: ScoredAssessment, config: WeightConfig) -> dict:
    """Machine-readable view of a scored assessment (service responses)."""
    weights = {entry.property_id: entry.weight for entry in config.entries}
    properties = {}
    for property_id in _ordered_properties(assessment):
        cell = assessment.raw.entries[property_id]
        properties[property_id] = {
            "title": _property_title(property_id),
            "max": float(cell.maximum),
            "weight": _number_payload(weights[property_id]),
            "score": float(cell.score),
            "score_display": _trim_number(cell.score),
            "contribution": _number_payload(
                assessment.cas.contributions[property_id]
            ),
            "normalized": float(cell.score / cell.maximum),
        }
    payload = {
        "system": {
            "name": assessment.system_name,
            "description": assessment.system_description,
        },
        "properties": properties,
        "total": _number_payload(assessment.cas.total),
        "config_fingerprint": assessment.cas.config_fingerprint,
        "explanation_quality_assessed": assessment.quality_assessed,
        "metadata": {
            "impact_severity": assessment.metadata.impact_severity,
            "autonomy_level": assessment.metadata.autonomy_level,
        },
        "radar": [
            {
                "property": property_id,
                "value": float(
                    assessment.raw.entries[property_id].score
                    / assessment.raw.entries[property_id].maximum
                ),
            }
            for property_id in _ordered_properties(assessment)
        ],
    }
    factors = assessment.metadata.context_factors
    if factors is not None:
        payload["metadata"]["context_factors"] = {
            key: value
            for key, value in (
                ("latency", factors.latency),
                ("opacity", factors.opacity),
                ("capability_disparity", factors.capability_disparity),
                ("adaptivity_constraint", factors.adaptivity_constraint),
            )
            if value is not None
        }
    if assessment.published_total is not None:
        payload["published_total"] = float(assessment.published_total)
    return payload


def scenario_payload(result: ScenarioResult) -> dict:
    """Machine-readable view of one evaluated scenario."""
    return {
        "scenario": result.scenario_name,
        "policy": result.policy,
        "baseline_total": _number_payload(result.baseline_total),
        "new_total": _number_payload(result.new_total),
        "delta": _number_payload(result.delta),
        "config_fingerprint": result.config_fingerprint,
        "changes": [
            {
                "property": change.property_id,
                "max": float(change.maximum),
                "baseline_score": float(change.baseline_score),
                "new_score": float(change.new_score),
                "baseline_contribution": _number_payload(
                    change.baseline_contribution
                ),
                "new_contribution": _number_payload(change.new_contribution),
                "changed": change.changed,
            }
            for change in result.changes
        ],
        **(
            {"published_total": float(result.published_total)}
            if result.published_total is not None
            else {}
        ),
    }


def render_json_document(bundle: ReportBundle) -> dict:
    doc = {
        "report": "contestability-assessment",
        "assessment": scored_payload(bundle.assessment, bundle.config),
        "scenarios": [
            scenario_payload(result) for result in bundle.scenario_results
        ],
        "notes": [
            {
                "subject": note.subject,
                "computed": float(note.computed),
                "published": float(note.published),
                "message": note.message(),
            }
            for note in bundle.notes
        ],
    }
    if bundle.classification is not None:
        placement = bundle.classification
        catalog = bundle.catalog or default_catalog()
        doc["taxonomy"] = {
            "reliance": placement.reliance,
            "level": placement.level,
            "flags": sorted(placement.flags),
            "examples": list(placement.cell.examples),
            "criteria": [
                {
                    "id": criterion_id,
                    "name": catalog.criterion(criterion_id).name,
                    "cluster": catalog.criterion(criterion_id).cluster,
                    "dimensions": list(catalog.criterion(criterion_id).dimensions),
                }
                for criterion_id in placement.cell.criteria_ids
            ],
        }
    if bundle.formal is not None:
        formal = bundle.formal
        doc["formal"] = {
            "xlc": {
                "holds": formal.xlc.holds,
                "counterexample": (
                    list(formal.xlc.counterexample)
                    if formal.xlc.counterexample
                    else None
                ),
            },
            "slc": {
                "holds": formal.slc.holds,
                "missing_stakeholder": formal.slc.missing_stakeholder,
            },
            "min_success_rate": float(formal.min_success_rate),
            "success_rates": {
                sid: float(rate) for sid, rate in sorted(formal.success_rates.items())
            },
            "total": _number_payload(formal.total),
        }
        if bundle.mode_tallies:
            doc["formal"]["modes"] = {
                mode: {
                    "attempts": tally.attempts,
                    "successes": tally.successes,
                    "success_rate": (
                        float(tally.success_rate)
                        if tally.success_rate is not None
                        else None
                    ),
                }
                for mode, tally in sorted(bundle.mode_tallies.items())
            }
    return doc


# ---- csv ----


def render_csv(bundle: ReportBundle) -> str:
    assessment = bundle.assessment
    weights = {entry.property_id: entry.weight for entry in bundle.config.entries}
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["section", "property", "max", "weight", "score", "cas", "note"])
    for property_id in _ordered_properties(assessment):
        cell = assessment.raw.entries[property_id]
        writer.writerow(
            [
                "baseline",
                property_id,
                _trim_number(cell.maximum),
                display_number(weights[property_id]),
                _trim_number(cell.score),
                display_number(assessment.cas.contributions[property_id]),
                "",
            ]
        )
    writer.writerow(
        ["baseline", "total", "", "", "", display_number(assessment.cas.total), ""]
    )
    for result in bundle.scenario_results:
        section = f"scenario:{result.policy}"
        for change in result.changes:
            writer.writerow(
                [
                    section,
                    change.property_id,
                    _trim_number(change.maximum),
                    display_number(weights[change.property_id]),
                    _trim_number(change.new_score),
                    display_number(change.new_contribution),
                    "changed" if change.changed else "",
                ]
            )
        writer.writerow(
            [section, "total", "", "", "", display_number(result.new_total), ""]
        )
    for note in bundle.notes:
        writer.writerow(["discrepancy_note", note.subject, "", "", "", "", note.message()])
    return buffer.getvalue()


# ---- entry point ----


def render_report(bundle: ReportBundle, format: str = "markdown") -> bytes:
    """Render a bundle to document bytes in the requested format."""
    if format == "markdown":
        return render_markdown(bundle).encode("utf-8")
    if format == "json":
        return (
            json.dumps(render_json_document(bundle), indent=2, ensure_ascii=True)
            + "\n"
        ).encode("utf-8")
    if format == "csv":
        return render_csv(bundle).encode("utf-8")
    raise InputError(
        f"unsupported report format {format!r}; choose one of "
        + ", ".join(REPORT_FORMATS),
        "format",
    )


# ---- radar ----


@dataclass(frozen=True)
class RadarSeries:
    system_name: str
    axes: tuple[tuple[str, Fraction], ...]


def radar_data(comparison: ComparisonTable) -> list[RadarSeries]:
    """Plot-ready series: one per system, axes in canonical property order."""
    series = []
    for row in comparison.rows:
        axes = tuple(
            (property_id, row.normalized[property_id])
            for property_id in sorted(row.normalized, key=canonical_sort_key)
        )
        series.append(RadarSeries(row.system_name, axes))
    return series


def radar_csv(series: list[RadarSeries]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["system", "property", "value"])
    for item in series:
        for property_id, value in item.axes:
            writer.writerow([item.system_name, property_id, display_number(value)])
    return buffer.getvalue()
