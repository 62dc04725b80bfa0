"""Scoring constants: evidence point table, match weights, label bands.

All constants are configuration-overridable; the defaults below are the
tested baseline. Bands partition 0..100 as
safe < suspicious_threshold <= suspicious < high_threshold <= highly_suspicious.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import Any, Mapping

LABELS = ("safe", "suspicious", "highly_suspicious")

# Earlier naming of the same bands, accepted on input.
LABEL_ALIASES = {
    "safe": "safe",
    "caution": "suspicious",
    "suspicious": "suspicious",
    "dangerous": "highly_suspicious",
    "highly_suspicious": "highly_suspicious",
    "highly suspicious": "highly_suspicious",
}


@dataclass(frozen=True)
class ScoringWeights:
    # scenario-match component weights (must sum to 1.0)
    w_entity: float = 0.35
    w_objective: float = 0.25
    w_context: float = 0.20
    w_trigger: float = 0.20

    # score composition
    scenario_scale: int = 45
    evidence_cap: int = 55

    # evidence point table
    urgency_points: int = 10
    authority_points: int = 10
    cooperation_points: int = 5
    deadline_points: int = 10
    confidentiality_points: int = 5
    money_points: int = 15
    credential_points: int = 20
    link_mismatch_points: int = 10
    per_link_points: int = 3
    link_count_cap: int = 3
    risky_attachment_points: int = 10
    per_attachment_points: int = 3
    attachment_count_cap: int = 2
    header_anomaly_points: int = 10

    # label bands
    suspicious_threshold: int = 30
    high_threshold: int = 65

    # interaction rules
    allowlist_cap: int = 25
    top_k: int = 3

    def __post_init__(self) -> None:
        total = self.w_entity + self.w_objective + self.w_context + self.w_trigger
        if not math.isclose(total, 1.0, abs_tol=1e-9):
            raise ValueError(f"component weights must sum to 1.0, got {total}")
        if self.scenario_scale + self.evidence_cap != 100:
            raise ValueError("scenario_scale + evidence_cap must equal 100")
        if not 0 <= self.suspicious_threshold < self.high_threshold <= 100:
            raise ValueError("bands must partition 0..100")

    def trigger_points(self, name: str) -> int:
        return getattr(self, f"{name}_points")

    @classmethod
    def from_overrides(cls, overrides: Mapping[str, Any]) -> "ScoringWeights":
        """Build weights from a flat mapping of field-name overrides."""
        known = {f.name for f in fields(cls)}
        kwargs: dict[str, Any] = {}
        for key, value in overrides.items():
            if key not in known:
                raise ValueError(f"unknown weights field: {key!r}")
            current = getattr(cls, key)
            kwargs[key] = float(value) if isinstance(current, float) else int(value)
        return cls(**kwargs)

    def to_dict(self) -> dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT_WEIGHTS = ScoringWeights()


def normalize_label(value: str) -> str | None:
    return LABEL_ALIASES.get(value.strip().lower().replace("-", "_"))
