"""Weighted contestability score (CAS) over exact rationals.

The score of a system is

    CAS = sum over properties p of  weight_p * raw_p / max_p

with weights that sum to 1, are equal inside a priority tier, and strictly
decrease from one tier to the next.  All arithmetic runs on
``fractions.Fraction`` so boundedness, monotonicity and corner values hold
exactly; floats appear only when results are rendered.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Mapping

from contestkit.errors import InputError
from contestkit.jsonio import (
    SCHEMA_VERSION,
    as_fraction,
    canonical_json_bytes,
    check_schema_version,
    expect_type,
)
from contestkit.properties import canonical_sort_key

DEFAULT_TOLERANCE = Fraction(1, 10**9)


# ---- weight configuration ----


@dataclass(frozen=True)
class WeightEntry:
    property_id: str
    weight: Fraction
    tier: int


@dataclass(frozen=True)
class WeightConfig:
    """An ordered weight vector with priority tiers and a sum tolerance."""

    entries: tuple[WeightEntry, ...]
    tolerance: Fraction = DEFAULT_TOLERANCE

    def weight_of(self, property_id: str) -> Fraction:
        for entry in self.entries:
            if entry.property_id == property_id:
                return entry.weight
        raise InputError(f"property {property_id!r} is not in the weight config")

    def property_ids(self) -> tuple[str, ...]:
        return tuple(entry.property_id for entry in self.entries)

    def fingerprint(self) -> str:
        """Content hash identifying this exact configuration."""
        payload = {
            "tolerance": str(self.tolerance),
            "entries": [
                {
                    "property": entry.property_id,
                    "weight": str(entry.weight),
                    "tier": entry.tier,
                }
                for entry in sorted(self.entries, key=lambda e: e.property_id)
            ],
        }
        return hashlib.sha256(canonical_json_bytes(payload)).hexdigest()


@dataclass(frozen=True)
class WeightViolation:
    kind: str
    message: str
    property_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class WeightReport:
    ok: bool
    violations: tuple[WeightViolation, ...] = ()

    def kinds(self) -> set[str]:
        return {violation.kind for violation in self.violations}


def make_weight_config(
    entries: Iterable[tuple[str, object, int]],
    tolerance: object = DEFAULT_TOLERANCE,
) -> WeightConfig:
    """Build a config from (property_id, weight, tier) triples."""
    built = tuple(
        WeightEntry(property_id, as_fraction(weight, f"entries[{property_id}].weight"), tier)
        for property_id, weight, tier in entries
    )
    return WeightConfig(built, as_fraction(tolerance, "tolerance"))


def validate_weights(config: WeightConfig) -> WeightReport:
    """Check every structural invariant; violations are returned, not raised.

    Checks: non-empty entries, unique property ids, positive tiers, each
    weight in (0, 1], the total within tolerance of 1, equal weights inside
    a tier, and strictly decreasing weights from lower to higher tier
    numbers.
    """
    violations: list[WeightViolation] = []

    if not config.entries:
        violations.append(WeightViolation("empty", "weight config has no entries"))
        return WeightReport(False, tuple(violations))

    seen: dict[str, int] = {}
    for entry in config.entries:
        seen[entry.property_id] = seen.get(entry.property_id, 0) + 1
    duplicates = tuple(sorted(pid for pid, count in seen.items() if count > 1))
    if duplicates:
        violations.append(
            WeightViolation(
                "duplicate_property",
                f"properties listed more than once: {', '.join(duplicates)}",
                duplicates,
            )
        )

    if config.tolerance < 0:
        violations.append(
            WeightViolation("bad_tolerance", "tolerance must be non-negative")
        )

    for entry in config.entries:
        if entry.tier < 1:
            violations.append(
                WeightViolation(
                    "bad_tier",
                    f"{entry.property_id}: tier must be a positive integer, "
                    f"got {entry.tier}",
                    (entry.property_id,),
                )
            )
        # Weights are shares of a unit total: 0 < weight <= 1.  The upper
        # bound is inclusive so a single-property config can carry the
        # whole unit; multi-property configs are pushed below 1 by the sum
        # constraint anyway.
        if not (0 < entry.weight <= 1):
            violations.append(
                WeightViolation(
                    "weight_out_of_range",
                    f"{entry.property_id}: weight {entry.weight} outside (0, 1]",
                    (entry.property_id,),
                )
            )

    total = sum((entry.weight for entry in config.entries), Fraction(0))
    if abs(total - 1) > config.tolerance:
        violations.append(
            WeightViolation(
                "sum_not_one",
                f"weights sum to {float(total)!r}, not 1 within tolerance "
                f"{float(config.tolerance)!r}",
            )
        )

    by_tier: dict[int, list[WeightEntry]] = {}
    for entry in config.entries:
        by_tier.setdefault(entry.tier, []).append(entry)

    for tier in sorted(by_tier):
        members = by_tier[tier]
        weights = {entry.weight for entry in members}
        if len(weights) > 1:
            violations.append(
                WeightViolation(
                    "intra_tier_mismatch",
                    f"tier {tier} carries unequal weights: "
                    + ", ".join(
                        f"{entry.property_id}={float(entry.weight)!r}"
                        for entry in members
                    ),
                    tuple(entry.property_id for entry in members),
                )
            )

    tiers = sorted(by_tier)
    for lower, higher in zip(tiers, tiers[1:]):
        max_higher = max(entry.weight for entry in by_tier[higher])
        min_lower = min(entry.weight for entry in by_tier[lower])
        if not (min_lower > max_higher):
            violations.append(
                WeightViolation(
                    "tier_order_violation",
                    f"tier {lower} weights must strictly exceed tier {higher} "
                    f"weights ({float(min_lower)!r} vs {float(max_higher)!r})",
                    tuple(
                        entry.property_id
                        for entry in by_tier[lower] + by_tier[higher]
                    ),
                )
            )

    return WeightReport(not violations, tuple(violations))


def _require_valid(config: WeightConfig) -> None:
    report = validate_weights(config)
    if not report.ok:
        details = "; ".join(violation.message for violation in report.violations)
        raise InputError(f"invalid weight config: {details}")


# ---- raw scores and the CAS ----


@dataclass(frozen=True)
class ScoreEntry:
    score: Fraction
    maximum: Fraction


@dataclass(frozen=True)
class RawScoreVector:
    """Raw per-property scores together with each property's maximum."""

    entries: Mapping[str, ScoreEntry]

    @staticmethod
    def build(
        scores: Mapping[str, object], maxima: Mapping[str, object]
    ) -> "RawScoreVector":
        built: dict[str, ScoreEntry] = {}
        for property_id, raw in scores.items():
            if property_id not in maxima:
                raise InputError(
                    f"no maximum supplied for property {property_id!r}",
                    property_id,
                )
            built[property_id] = ScoreEntry(
                as_fraction(raw, property_id),
                as_fraction(maxima[property_id], property_id),
            )
        return RawScoreVector(built)


@dataclass(frozen=True)
class CasResult:
    """Per-property contributions and their exact total, plus the config id."""

    contributions: Mapping[str, Fraction]
    total: Fraction
    config_fingerprint: str

    def contribution_items(self) -> tuple[tuple[str, Fraction], ...]:
        return tuple(
            sorted(self.contributions.items(), key=lambda kv: canonical_sort_key(kv[0]))
        )


def compute_cas(scores: RawScoreVector, config: WeightConfig) -> CasResult:
    """Score a system: sum of weight * raw / max over the config's properties.

    The score vector must cover exactly the configured properties, each raw
    score must sit in [0, max], and each maximum must be positive.
    """
    _require_valid(config)

    configured = set(config.property_ids())
    supplied = set(scores.entries)
    missing = sorted(configured - supplied)
    if missing:
        raise InputError(
            f"missing raw scores for: {', '.join(missing)}", missing[0]
        )
    extra = sorted(supplied - configured)
    if extra:
        raise InputError(
            f"raw scores for properties not in the weight config: "
            f"{', '.join(extra)}",
            extra[0],
        )

    contributions: dict[str, Fraction] = {}
    for entry in sorted(config.entries, key=lambda e: canonical_sort_key(e.property_id)):
        cell = scores.entries[entry.property_id]
        if cell.maximum <= 0:
            raise InputError(
                f"{entry.property_id}: maximum must be positive, got "
                f"{cell.maximum}",
                entry.property_id,
            )
        if not (0 <= cell.score <= cell.maximum):
            raise InputError(
                f"{entry.property_id}: raw score {cell.score} outside "
                f"[0, {cell.maximum}]",
                entry.property_id,
            )
        contributions[entry.property_id] = entry.weight * cell.score / cell.maximum

    total = sum(contributions.values(), Fraction(0))
    return CasResult(contributions, total, config.fingerprint())


def marginal_gains(
    config: WeightConfig, maxima: Mapping[str, object]
) -> list[tuple[str, Fraction]]:
    """CAS gain from one raw-score unit on each property, best first.

    The CAS is linear in each raw score, so the gain per unit is exactly
    weight / maximum.  Ties break by canonical property order.
    """
    _require_valid(config)
    gains: list[tuple[str, Fraction]] = []
    for entry in config.entries:
        if entry.property_id not in maxima:
            raise InputError(
                f"no maximum supplied for property {entry.property_id!r}",
                entry.property_id,
            )
        maximum = as_fraction(maxima[entry.property_id], entry.property_id)
        if maximum <= 0:
            raise InputError(
                f"{entry.property_id}: maximum must be positive, got {maximum}",
                entry.property_id,
            )
        gains.append((entry.property_id, entry.weight / maximum))
    gains.sort(key=lambda item: (-item[1], canonical_sort_key(item[0])))
    return gains


# ---- serialization ----


def weights_from_json(doc: object, source: str = "weight config") -> WeightConfig:
    body = check_schema_version(doc, source)
    raw_entries = body.get("entries")
    expect_type(raw_entries, list, f"{source}: 'entries' must be a list", "entries")
    entries: list[WeightEntry] = []
    for index, item in enumerate(raw_entries):
        expect_type(item, dict, f"entries[{index}] must be an object", f"entries[{index}]")
        property_id = item.get("id")
        expect_type(
            property_id,
            str,
            f"entries[{index}].id must be a string",
            f"entries[{index}].id",
        )
        weight = as_fraction(item.get("weight"), f"entries[{index}].weight")
        tier = expect_type(
            item.get("tier"),
            int,
            f"entries[{index}].tier must be an integer",
            f"entries[{index}].tier",
        )
        entries.append(WeightEntry(property_id, weight, tier))
    tolerance = body.get("tolerance", DEFAULT_TOLERANCE)
    return WeightConfig(tuple(entries), as_fraction(tolerance, "tolerance"))


def weights_to_json(config: WeightConfig) -> dict:
    """Serialize a config; weights become floats (exact for decimal weights)."""
    return {
        "schema_version": SCHEMA_VERSION,
        "tolerance": float(config.tolerance),
        "entries": [
            {
                "id": entry.property_id,
                "weight": float(entry.weight),
                "tier": entry.tier,
            }
            for entry in config.entries
        ],
    }


_DEFAULT_CONFIG: WeightConfig | None = None


def default_weight_config() -> WeightConfig:
    """The shipped weight configuration (embedded package data)."""
    global _DEFAULT_CONFIG
    if _DEFAULT_CONFIG is None:
        text = (
            resources.files("contestkit.data")
            .joinpath("weights_default.json")
            .read_text(encoding="utf-8")
        )
        _DEFAULT_CONFIG = weights_from_json(json.loads(text))
    return _DEFAULT_CONFIG
