"""JSON and number plumbing shared by every module.

Numbers live as exact ``fractions.Fraction`` values inside the toolkit and
only become floats (or fixed 3-decimal strings) at presentation time.
Floats arriving from JSON or Python callers are read as the decimal the
author wrote (``0.30`` means 30/100), not as the nearest binary double.
"""

from __future__ import annotations

import json
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction

from contestkit.errors import InputError, SchemaVersionError

SCHEMA_VERSION = "1"


# ---- fraction conversions ----


def as_fraction(value: object, field: str | None = None) -> Fraction:
    """Convert a JSON / Python number to an exact Fraction.

    Accepts int, Fraction, Decimal, float and numeric strings.  Floats go
    through their shortest decimal repr so ``0.3`` becomes 3/10 exactly.
    """
    if isinstance(value, bool):
        raise InputError("expected a number, got a boolean", field)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Decimal):
        if not value.is_finite():
            raise InputError(f"non-finite number {value}", field)
        return Fraction(value)
    if isinstance(value, float):
        if value != value or value in (float("inf"), float("-inf")):
            raise InputError(f"non-finite number {value!r}", field)
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a number: {value!r}", field) from exc
    raise InputError(f"expected a number, got {type(value).__name__}", field)


def fraction_to_float(value: Fraction) -> float:
    return float(value)


def round_half_away(value: Fraction, places: int = 3) -> Decimal:
    """Round to ``places`` decimals, ties away from zero."""
    with localcontext() as ctx:
        ctx.prec = 60
        dec = Decimal(value.numerator) / Decimal(value.denominator)
        return dec.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP)


def display_number(value: Fraction, places: int = 3) -> str:
    """Fixed-width decimal string used everywhere a score is printed."""
    return f"{round_half_away(value, places):.{places}f}"


# ---- document helpers ----


def check_schema_version(doc: object, source: str = "document") -> dict:
    if not isinstance(doc, dict):
        raise InputError(f"{source} must be a JSON object", None)
    found = doc.get("schema_version")
    if found != SCHEMA_VERSION:
        raise SchemaVersionError(found, SCHEMA_VERSION)
    return doc


def load_json_file(path: str) -> object:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except FileNotFoundError as exc:
        raise InputError(f"file not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {path}: {exc}") from exc


def canonical_json_bytes(doc: object) -> bytes:
    """Stable byte serialization: sorted keys, no whitespace drift."""
    return json.dumps(
        doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True
    ).encode("utf-8")


def require(condition: bool, message: str, field: str | None = None) -> None:
    if not condition:
        raise InputError(message, field)


def expect_type(value: object, kind: type, message: str, field: str | None = None):
    if kind is int and isinstance(value, bool):
        raise InputError(message, field)
    if not isinstance(value, kind):
        raise InputError(message, field)
    return value
