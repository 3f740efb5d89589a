"""Canonical contestability property identifiers.

Every table, report row, weight vector and radar series uses this order.
"""

from __future__ import annotations

from fractions import Fraction

EXPLAINABILITY = "explainability"
OPENNESS = "openness"
TRACEABILITY = "traceability"
SAFEGUARDS = "safeguards"
ADAPTIVITY = "adaptivity"
AUDITING = "auditing"
EASE = "ease"
EXPLANATION_QUALITY = "explanation_quality"

CANONICAL_ORDER: tuple[str, ...] = (
    EXPLAINABILITY,
    OPENNESS,
    TRACEABILITY,
    SAFEGUARDS,
    ADAPTIVITY,
    AUDITING,
    EASE,
    EXPLANATION_QUALITY,
)

PROPERTY_TITLES: dict[str, str] = {
    EXPLAINABILITY: "Explainability",
    OPENNESS: "Openness of contestation channels",
    TRACEABILITY: "Traceability",
    SAFEGUARDS: "Safeguards for unresolved contestations",
    ADAPTIVITY: "Adaptivity to feedback",
    AUDITING: "Auditing of contestation processes",
    EASE: "Ease of contestation",
    EXPLANATION_QUALITY: "Perceived explanation quality",
}

# Top raw score each property can reach under the shipped rubrics.
DEFAULT_MAXIMA: dict[str, Fraction] = {
    EXPLAINABILITY: Fraction(2),
    OPENNESS: Fraction(2),
    TRACEABILITY: Fraction(10),
    SAFEGUARDS: Fraction(1),
    ADAPTIVITY: Fraction(2),
    AUDITING: Fraction(2),
    EASE: Fraction(10),
    EXPLANATION_QUALITY: Fraction(50),
}

_ORDER_INDEX = {name: index for index, name in enumerate(CANONICAL_ORDER)}


def canonical_index(property_id: str) -> int:
    """Sort key for canonical ordering; unknown ids sort last, by name."""
    return _ORDER_INDEX.get(property_id, len(CANONICAL_ORDER))


def canonical_sort_key(property_id: str) -> tuple[int, str]:
    return (canonical_index(property_id), property_id)


def is_known_property(property_id: str) -> bool:
    return property_id in _ORDER_INDEX
