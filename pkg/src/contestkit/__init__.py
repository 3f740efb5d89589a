"""Contestability assessment toolkit.

Scores sociotechnical systems on eight contestability properties, checks
formal contestability conditions against contestation ledgers, resolves
design requirements from a reliance/oversight taxonomy, explores what-if
improvement scenarios, and renders deterministic reports.  A CLI and a
small HTTP service expose the same operations.
"""

from contestkit.scoring import (
    CasResult,
    RawScoreVector,
    ScoreEntry,
    WeightConfig,
    WeightEntry,
    compute_cas,
    default_weight_config,
    marginal_gains,
    validate_weights,
)
from contestkit.questionnaire import score_assessment, sheet_from_json, sheet_to_json

__all__ = [
    "CasResult",
    "RawScoreVector",
    "ScoreEntry",
    "WeightConfig",
    "WeightEntry",
    "compute_cas",
    "default_weight_config",
    "marginal_gains",
    "validate_weights",
    "score_assessment",
    "sheet_from_json",
    "sheet_to_json",
]

__version__ = "0.1.0"
