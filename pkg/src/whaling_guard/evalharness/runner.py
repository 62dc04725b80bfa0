"""Corpus evaluation: confusion counts, detection rates, and calibration sweeps.

Beyond per-entry assessment, every run cross-checks the engine against the
independent oracle (exact equality) and sweeps the full 2^8 grid of
evidence-flag subsets for score monotonicity. Reports are deterministic:
identical inputs serialize to identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from itertools import combinations
from typing import Sequence

from .. import ENGINE_VERSION
from ..engine.assess import assess
from ..engine.scoring import match_scenarios, score
from ..engine.weights import DEFAULT_WEIGHTS, LABELS, ScoringWeights
from ..ingest.features import EmailFeatures, LexiconSet, extract_features
from ..ingest.parser import ParseError, parse_email
from ..profiles.model import PersonalizedDefenseProfile, ScenarioSet
from .corpus import CorpusEntry
from .oracle import oracle_score

EVIDENCE_FLAGS = (
    "urgency",
    "authority",
    "cooperation",
    "deadline",
    "confidentiality",
    "money_reference",
    "credential_request",
    "link_mismatch",
)

_TRIGGER_FLAGS = frozenset(
    {"urgency", "authority", "cooperation", "deadline", "confidentiality"}
)


def synthetic_features(flags: frozenset[str]) -> EmailFeatures:
    """Minimal feature vector realizing a subset of the eight evidence flags.

    A set credential_request flag carries a reply action with it so the
    feature-level invariant (credential requests are actioned) holds on the
    whole grid; a set link_mismatch flag implies one link.
    """
    credential = "credential_request" in flags
    mismatch = "link_mismatch" in flags
    return EmailFeatures(
        sender_domain="sender.example",
        sender_claimed_category=None,
        requested_actions=frozenset({"reply_with_credentials"}) if credential else frozenset(),
        triggers=frozenset(flags & _TRIGGER_FLAGS),
        money_reference="money_reference" in flags,
        credential_request=credential,
        link_count=1 if mismatch else 0,
        link_mismatch=mismatch,
        attachment_count=0,
        risky_attachment=False,
        header_anomalies=frozenset(),
    )


def _engine_score(
    features: EmailFeatures,
    pdp: PersonalizedDefenseProfile,
    scenarios: ScenarioSet,
    analysis_date: date,
    weights: ScoringWeights,
) -> int:
    return score(features, match_scenarios(features, pdp, scenarios, analysis_date, weights), weights)


def sweep_evidence_grid(
    pdp: PersonalizedDefenseProfile,
    scenarios: ScenarioSet,
    analysis_date: date,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
) -> tuple[int, int]:
    """Exhaust all 2^8 evidence subsets; return (oracle_mismatches, monotonicity_violations)."""
    mismatches = 0
    violations = 0
    subsets = []
    for r in range(len(EVIDENCE_FLAGS) + 1):
        subsets.extend(frozenset(c) for c in combinations(EVIDENCE_FLAGS, r))
    scores: dict[frozenset[str], int] = {}
    for subset in subsets:
        features = synthetic_features(subset)
        engine_value = _engine_score(features, pdp, scenarios, analysis_date, weights)
        oracle_value = oracle_score(features, pdp, scenarios, analysis_date, weights)
        if engine_value != oracle_value:
            mismatches += 1
        scores[subset] = engine_value
    for subset in subsets:
        for flag in EVIDENCE_FLAGS:
            if flag in subset:
                continue
            if scores[subset | {flag}] < scores[subset]:
                violations += 1
    return mismatches, violations


@dataclass(frozen=True)
class EvalRow:
    entry_id: str
    scenario_tag: str
    ground_truth: str
    label: str
    score: int
    zero_feature: bool

    def to_dict(self) -> dict:
        return {
            "entry_id": self.entry_id,
            "scenario_tag": self.scenario_tag,
            "ground_truth": self.ground_truth,
            "label": self.label,
            "score": self.score,
            "zero_feature": self.zero_feature,
        }


@dataclass(frozen=True)
class EvalReport:
    confusion: dict[str, dict[str, int]]
    detection_rates: dict[str, float]
    monotonicity_violations: int
    oracle_mismatches: int
    defective_entries: int
    corpus_version: str
    engine_version: str
    analysis_date: str
    rows: tuple[EvalRow, ...]

    @property
    def violations(self) -> int:
        return self.monotonicity_violations + self.oracle_mismatches

    def to_dict(self) -> dict:
        return {
            "confusion": {k: dict(v) for k, v in self.confusion.items()},
            "detection_rates": dict(self.detection_rates),
            "monotonicity_violations": self.monotonicity_violations,
            "oracle_mismatches": self.oracle_mismatches,
            "defective_entries": self.defective_entries,
            "corpus_version": self.corpus_version,
            "engine_version": self.engine_version,
            "analysis_date": self.analysis_date,
            "rows": [r.to_dict() for r in self.rows],
        }


def _is_zero_feature(features: EmailFeatures) -> bool:
    return (
        not features.triggers
        and not features.requested_actions
        and not features.money_reference
        and not features.credential_request
        and features.link_count == 0
        and features.attachment_count == 0
        and not features.header_anomalies
        and features.sender_claimed_category is None
    )


def run_eval(
    corpus: Sequence[CorpusEntry],
    pdp: PersonalizedDefenseProfile,
    scenarios: ScenarioSet,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
    analysis_date: date | None = None,
    *,
    lexicons: LexiconSet | None = None,
    corpus_version: str = "unversioned",
) -> EvalReport:
    """Deterministic-mode assessment of every corpus entry plus calibration sweeps.

    Entries that fail to parse are excluded and counted as defective. The
    oracle cross-check covers every assessed entry and the full synthetic
    evidence grid.
    """
    analysis_date = analysis_date or date.today()
    confusion: dict[str, dict[str, int]] = {t: {p: 0 for p in LABELS} for t in LABELS}
    per_tag_total: dict[str, int] = {}
    per_tag_detected: dict[str, int] = {}
    rows: list[EvalRow] = []
    defective = 0
    entry_mismatches = 0

    for entry in sorted(corpus, key=lambda e: e.entry_id):
        try:
            email = parse_email(entry.raw_message)
        except ParseError:
            defective += 1
            continue
        features = extract_features(email, lexicons, analysis_date)
        result = assess(
            email,
            pdp,
            scenarios,
            "deterministic",
            analysis_date=analysis_date,
            weights=weights,
            lexicons=lexicons,
        )
        if result.score != oracle_score(features, pdp, scenarios, analysis_date, weights):
            entry_mismatches += 1
        confusion[entry.ground_truth_label][result.label] += 1
        per_tag_total[entry.scenario_tag] = per_tag_total.get(entry.scenario_tag, 0) + 1
        if result.label in ("suspicious", "highly_suspicious"):
            per_tag_detected[entry.scenario_tag] = per_tag_detected.get(entry.scenario_tag, 0) + 1
        rows.append(
            EvalRow(
                entry_id=entry.entry_id,
                scenario_tag=entry.scenario_tag,
                ground_truth=entry.ground_truth_label,
                label=result.label,
                score=result.score,
                zero_feature=_is_zero_feature(features),
            )
        )

    grid_mismatches, monotonicity_violations = sweep_evidence_grid(
        pdp, scenarios, analysis_date, weights
    )
    detection_rates = {
        tag: per_tag_detected.get(tag, 0) / total for tag, total in sorted(per_tag_total.items())
    }
    return EvalReport(
        confusion=confusion,
        detection_rates=detection_rates,
        monotonicity_violations=monotonicity_violations,
        oracle_mismatches=grid_mismatches + entry_mismatches,
        defective_entries=defective,
        corpus_version=corpus_version,
        engine_version=ENGINE_VERSION,
        analysis_date=analysis_date.isoformat(),
        rows=tuple(rows),
    )
