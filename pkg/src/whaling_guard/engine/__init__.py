"""Deterministic risk scoring with optional model-judgment merge."""

from .assess import (
    ATTACHMENT_ACTION,
    DEGRADED_NOTE,
    FALLBACK_ACTION,
    LINK_ACTION,
    RiskAssessment,
    assess,
    default_email_id,
)
from .scoring import (
    OBJECTIVE_ACTION_MAP,
    ScenarioMatch,
    classify,
    evidence_points,
    match_scenarios,
    score,
)
from .weights import DEFAULT_WEIGHTS, LABELS, ScoringWeights, normalize_label

__all__ = [
    "ATTACHMENT_ACTION",
    "DEFAULT_WEIGHTS",
    "DEGRADED_NOTE",
    "FALLBACK_ACTION",
    "LABELS",
    "LINK_ACTION",
    "OBJECTIVE_ACTION_MAP",
    "RiskAssessment",
    "ScenarioMatch",
    "ScoringWeights",
    "assess",
    "classify",
    "default_email_id",
    "evidence_points",
    "match_scenarios",
    "normalize_label",
    "score",
]
