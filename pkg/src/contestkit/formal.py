"""Formal contestability checks over finite contestation records.

Two predicates and one rate, combined into an aggregate:

- XLC: every (decision, stakeholder) pair has at least one explanation
  representation that is actionable for that stakeholder.
- SLC: every stakeholder has at least one successful contestation event
  (success means the outcome was corrected or system_adapted).
- SR(s): successes / attempts for stakeholder s, undefined at 0 attempts.
- aggregate = alpha * XLC + beta * SLC + gamma * min over s of SR(s),
  with the predicates entering as 0/1 indicators.

Events carry a mode (by_design or post_hoc) inherited from their contest
action, so tallies can be split by mode.  All evaluation is pure and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from contestkit.errors import InputError, UndefinedValueError
from contestkit.jsonio import (
    SCHEMA_VERSION,
    as_fraction,
    check_schema_version,
    expect_type,
)

MODES = ("by_design", "post_hoc")
OUTCOMES = ("corrected", "system_adapted", "rejected")
SUCCESS_OUTCOMES = frozenset({"corrected", "system_adapted"})

AGGREGATE_TOLERANCE = Fraction(1, 10**9)


# ---- domain types ----


@dataclass(frozen=True)
class Stakeholder:
    id: str
    capabilities: frozenset[str] = frozenset()


@dataclass(frozen=True)
class ContestAction:
    id: str
    mode: str


@dataclass(frozen=True)
class ContestabilityInstance:
    """A finite system snapshot: decisions, stakeholders, explanations.

    ``actionable`` holds the true pairs (representation, stakeholder id);
    any pair not listed is not actionable, which keeps the relation total.
    """

    decisions: tuple[str, ...]
    stakeholders: tuple[Stakeholder, ...]
    explanations: Mapping[str, tuple[str, ...]]
    actionable: frozenset[tuple[str, str]]
    actions: tuple[ContestAction, ...]

    def stakeholder_ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.stakeholders)

    def representations(self) -> tuple[str, ...]:
        seen: dict[str, None] = {}
        for reps in self.explanations.values():
            for rep in reps:
                seen.setdefault(rep)
        return tuple(seen)

    def action_modes(self) -> dict[str, str]:
        return {action.id: action.mode for action in self.actions}


@dataclass(frozen=True)
class ContestationEvent:
    stakeholder: str
    decision: str
    action: str
    outcome: str
    mode: str
    timestamp: str | None = None

    @property
    def success(self) -> bool:
        return self.outcome in SUCCESS_OUTCOMES


@dataclass(frozen=True)
class ContestationLedger:
    instance: ContestabilityInstance
    events: tuple[ContestationEvent, ...]


@dataclass(frozen=True)
class AggregateWeights:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.alpha, self.beta, self.gamma)


DEFAULT_AGGREGATE_WEIGHTS = AggregateWeights(
    Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)
)


def make_aggregate_weights(alpha, beta, gamma) -> AggregateWeights:
    return AggregateWeights(
        as_fraction(alpha, "alpha"), as_fraction(beta, "beta"), as_fraction(gamma, "gamma")
    )


def validate_aggregate_weights(weights: AggregateWeights) -> None:
    for name, value in zip(("alpha", "beta", "gamma"), weights.as_tuple()):
        if value < 0:
            raise InputError(f"{name} must be non-negative, got {value}", name)
    total = sum(weights.as_tuple(), Fraction(0))
    if abs(total - 1) > AGGREGATE_TOLERANCE:
        raise InputError(
            f"aggregate weights must sum to 1, got {float(total)!r}", "weights"
        )


# ---- results ----


@dataclass(frozen=True)
class XlcResult:
    holds: bool
    counterexample: tuple[str, str] | None = None  # (decision, stakeholder)


@dataclass(frozen=True)
class SlcResult:
    holds: bool
    missing_stakeholder: str | None = None


@dataclass(frozen=True)
class ModeTally:
    attempts: int
    successes: int

    @property
    def success_rate(self) -> Fraction | None:
        if self.attempts == 0:
            return None
        return Fraction(self.successes, self.attempts)


@dataclass(frozen=True)
class AggregateResult:
    total: Fraction
    xlc: XlcResult
    slc: SlcResult
    min_success_rate: Fraction
    success_rates: Mapping[str, Fraction]
    weights: AggregateWeights


# ---- evaluation ----


def evaluate_xlc(instance: ContestabilityInstance) -> XlcResult:
    """Does every (decision, stakeholder) pair have an actionable explanation?"""
    for decision in instance.decisions:
        representations = instance.explanations.get(decision, ())
        for stakeholder in instance.stakeholders:
            if not any(
                (rep, stakeholder.id) in instance.actionable
                for rep in representations
            ):
                return XlcResult(False, (decision, stakeholder.id))
    return XlcResult(True)


def evaluate_slc(ledger: ContestationLedger) -> SlcResult:
    """Has every stakeholder at least one successful contestation event?"""
    succeeded = {event.stakeholder for event in ledger.events if event.success}
    for stakeholder in ledger.instance.stakeholders:
        if stakeholder.id not in succeeded:
            return SlcResult(False, stakeholder.id)
    return SlcResult(True)


def success_rate(ledger: ContestationLedger, stakeholder_id: str) -> Fraction | None:
    """Successes over attempts for one stakeholder; None when never contested."""
    if stakeholder_id not in ledger.instance.stakeholder_ids():
        raise InputError(
            f"unknown stakeholder {stakeholder_id!r}", "stakeholder"
        )
    attempts = 0
    successes = 0
    for event in ledger.events:
        if event.stakeholder == stakeholder_id:
            attempts += 1
            if event.success:
                successes += 1
    if attempts == 0:
        return None
    return Fraction(successes, attempts)


def aggregate_contest(
    ledger: ContestationLedger,
    weights: AggregateWeights = DEFAULT_AGGREGATE_WEIGHTS,
) -> AggregateResult:
    """Weighted combination of XLC, SLC (as 0/1) and the worst success rate.

    Every stakeholder must have contested at least once; otherwise the
    minimum success rate is undefined and evaluation refuses to guess.
    """
    validate_aggregate_weights(weights)

    rates: dict[str, Fraction] = {}
    never_contested: list[str] = []
    for stakeholder_id in ledger.instance.stakeholder_ids():
        rate = success_rate(ledger, stakeholder_id)
        if rate is None:
            never_contested.append(stakeholder_id)
        else:
            rates[stakeholder_id] = rate
    if never_contested:
        raise UndefinedValueError(
            "minimum success rate is undefined: no contestation attempts from "
            + ", ".join(never_contested),
            tuple(never_contested),
        )

    xlc = evaluate_xlc(ledger.instance)
    slc = evaluate_slc(ledger)
    min_rate = min(rates.values())
    total = (
        weights.alpha * (1 if xlc.holds else 0)
        + weights.beta * (1 if slc.holds else 0)
        + weights.gamma * min_rate
    )
    return AggregateResult(total, xlc, slc, min_rate, rates, weights)


def partition_modes(ledger: ContestationLedger) -> dict[str, ModeTally]:
    """Attempt/success tallies split by contestation mode."""
    counts = {mode: [0, 0] for mode in MODES}
    for event in ledger.events:
        counts[event.mode][0] += 1
        if event.success:
            counts[event.mode][1] += 1
    return {
        mode: ModeTally(attempts, successes)
        for mode, (attempts, successes) in counts.items()
    }


# ---- file format ----


def _parse_instance(body: object) -> ContestabilityInstance:
    expect_type(body, dict, "'instance' must be an object", "instance")

    decisions_raw = body.get("decisions")
    expect_type(
        decisions_raw, list, "instance.decisions must be an array", "instance.decisions"
    )
    if not decisions_raw:
        raise InputError("instance.decisions must be non-empty", "instance.decisions")
    decisions: list[str] = []
    for decision in decisions_raw:
        expect_type(
            decision, str, "decision ids must be strings", "instance.decisions"
        )
        if decision in decisions:
            raise InputError(
                f"duplicate decision id {decision!r}", "instance.decisions"
            )
        decisions.append(decision)

    stakeholders_raw = body.get("stakeholders")
    expect_type(
        stakeholders_raw,
        list,
        "instance.stakeholders must be an array",
        "instance.stakeholders",
    )
    if not stakeholders_raw:
        raise InputError(
            "instance.stakeholders must be non-empty", "instance.stakeholders"
        )
    stakeholders: list[Stakeholder] = []
    for item in stakeholders_raw:
        if isinstance(item, str):
            stakeholder = Stakeholder(item)
        elif isinstance(item, dict):
            sid = item.get("id")
            expect_type(
                sid, str, "stakeholder id must be a string", "instance.stakeholders"
            )
            capabilities = item.get("capabilities", [])
            expect_type(
                capabilities,
                list,
                "stakeholder capabilities must be an array",
                "instance.stakeholders",
            )
            stakeholder = Stakeholder(sid, frozenset(map(str, capabilities)))
        else:
            raise InputError(
                "stakeholders must be ids or {id, capabilities} objects",
                "instance.stakeholders",
            )
        if stakeholder.id in (s.id for s in stakeholders):
            raise InputError(
                f"duplicate stakeholder id {stakeholder.id!r}",
                "instance.stakeholders",
            )
        stakeholders.append(stakeholder)

    explanations_raw = body.get("explanations", {})
    expect_type(
        explanations_raw,
        dict,
        "instance.explanations must map decisions to representation arrays",
        "instance.explanations",
    )
    explanations: dict[str, tuple[str, ...]] = {}
    for decision, reps in explanations_raw.items():
        if decision not in decisions:
            raise InputError(
                f"explanations for unknown decision {decision!r}",
                "instance.explanations",
            )
        expect_type(
            reps, list, "explanation representations must be an array",
            "instance.explanations",
        )
        explanations[decision] = tuple(map(str, reps))

    representations = {rep for reps in explanations.values() for rep in reps}
    stakeholder_ids = {s.id for s in stakeholders}

    actionable_raw = body.get("actionable", [])
    expect_type(
        actionable_raw, list, "instance.actionable must be an array of pairs",
        "instance.actionable",
    )
    actionable: set[tuple[str, str]] = set()
    for pair in actionable_raw:
        if not isinstance(pair, list) or len(pair) != 2:
            raise InputError(
                "actionable entries must be [representation, stakeholder] pairs",
                "instance.actionable",
            )
        rep, sid = str(pair[0]), str(pair[1])
        if rep not in representations:
            raise InputError(
                f"actionable pair references unknown representation {rep!r}",
                "instance.actionable",
            )
        if sid not in stakeholder_ids:
            raise InputError(
                f"actionable pair references unknown stakeholder {sid!r}",
                "instance.actionable",
            )
        actionable.add((rep, sid))

    actions_raw = body.get("actions", [])
    expect_type(
        actions_raw, list, "instance.actions must be an array", "instance.actions"
    )
    actions: list[ContestAction] = []
    for item in actions_raw:
        expect_type(
            item, dict, "actions must be {id, mode} objects", "instance.actions"
        )
        aid = item.get("id")
        expect_type(aid, str, "action id must be a string", "instance.actions")
        mode = item.get("mode")
        if mode not in MODES:
            raise InputError(
                f"action mode must be one of {', '.join(MODES)}; got {mode!r}",
                "instance.actions",
            )
        if aid in (a.id for a in actions):
            raise InputError(f"duplicate action id {aid!r}", "instance.actions")
        actions.append(ContestAction(aid, mode))

    return ContestabilityInstance(
        decisions=tuple(decisions),
        stakeholders=tuple(stakeholders),
        explanations=explanations,
        actionable=frozenset(actionable),
        actions=tuple(actions),
    )


def ledger_from_json(doc: object, source: str = "contestation ledger") -> ContestationLedger:
    body = check_schema_version(doc, source)
    if "instance" not in body:
        raise InputError(f"{source} is missing the instance block", "instance")
    instance = _parse_instance(body["instance"])

    events_raw = body.get("events", [])
    expect_type(events_raw, list, "'events' must be an array", "events")
    action_modes = instance.action_modes()
    stakeholder_ids = set(instance.stakeholder_ids())
    events: list[ContestationEvent] = []
    for index, item in enumerate(events_raw):
        prefix = f"events[{index}]"
        expect_type(item, dict, f"{prefix} must be an object", prefix)
        sid = item.get("stakeholder")
        if sid not in stakeholder_ids:
            raise InputError(
                f"{prefix} references unknown stakeholder {sid!r}",
                f"{prefix}.stakeholder",
            )
        decision = item.get("decision")
        if decision not in instance.decisions:
            raise InputError(
                f"{prefix} references unknown decision {decision!r}",
                f"{prefix}.decision",
            )
        action = item.get("action")
        if action not in action_modes:
            raise InputError(
                f"{prefix} references unknown action {action!r}", f"{prefix}.action"
            )
        outcome = item.get("outcome")
        if outcome not in OUTCOMES:
            raise InputError(
                f"{prefix}.outcome must be one of {', '.join(OUTCOMES)}; got "
                f"{outcome!r}",
                f"{prefix}.outcome",
            )
        mode = item.get("mode", action_modes[action])
        if mode != action_modes[action]:
            raise InputError(
                f"{prefix}.mode {mode!r} contradicts action {action!r} which is "
                f"{action_modes[action]}",
                f"{prefix}.mode",
            )
        timestamp = item.get("timestamp")
        if timestamp is not None:
            expect_type(
                timestamp, str, f"{prefix}.timestamp must be a string",
                f"{prefix}.timestamp",
            )
        events.append(
            ContestationEvent(sid, decision, action, outcome, mode, timestamp)
        )

    return ContestationLedger(instance, tuple(events))


def ledger_to_json(ledger: ContestationLedger) -> dict:
    instance = ledger.instance
    return {
        "schema_version": SCHEMA_VERSION,
        "instance": {
            "decisions": list(instance.decisions),
            "stakeholders": [
                {"id": s.id, "capabilities": sorted(s.capabilities)}
                for s in instance.stakeholders
            ],
            "explanations": {
                decision: list(reps)
                for decision, reps in instance.explanations.items()
            },
            "actionable": sorted([rep, sid] for rep, sid in instance.actionable),
            "actions": [{"id": a.id, "mode": a.mode} for a in instance.actions],
        },
        "events": [
            {
                "stakeholder": event.stakeholder,
                "decision": event.decision,
                "action": event.action,
                "outcome": event.outcome,
                "mode": event.mode,
                **({"timestamp": event.timestamp} if event.timestamp else {}),
            }
            for event in ledger.events
        ],
    }


def template_ledger() -> dict:
    """A minimal, valid ledger document demonstrating the file format."""
    return {
        "schema_version": SCHEMA_VERSION,
        "instance": {
            "decisions": ["decision-1"],
            "stakeholders": [{"id": "user-1", "capabilities": ["domain-knowledge"]}],
            "explanations": {"decision-1": ["explanation-1"]},
            "actionable": [["explanation-1", "user-1"]],
            "actions": [
                {"id": "appeal", "mode": "by_design"},
                {"id": "external-complaint", "mode": "post_hoc"}
            ],
        },
        "events": [
            {
                "stakeholder": "user-1",
                "decision": "decision-1",
                "action": "appeal",
                "outcome": "corrected",
                "mode": "by_design",
            }
        ],
    }
