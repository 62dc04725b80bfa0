"""Scenario matching and the deterministic 0..100 risk score.

A scenario match combines four components: did the sender claim the
scenario's impersonated entity, do the requested actions serve the
scenario's objective, is the calendar context active, and how many of the
scenario's persuasion factors appear in the message. The final score adds
capped evidence points for the raw signals, so an email can alarm on sheer
signal density even when no modeled scenario fits.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date
from typing import Iterable, Sequence

from ..ingest.features import EmailFeatures
from ..profiles.model import PersonalizedDefenseProfile, RiskScenario, ScenarioSet
from .weights import DEFAULT_WEIGHTS, ScoringWeights

# Which requested actions advance which scenario objective.
OBJECTIVE_ACTION_MAP: dict[str, frozenset[str]] = {
    "credential_theft": frozenset({"reply_with_credentials", "click_link"}),
    "funding_misdirection": frozenset({"wire_or_budget_action"}),
    "sensitive_data_disclosure": frozenset({"provide_data"}),
    "malware_delivery": frozenset({"open_attachment"}),
    "other": frozenset(),
}


@dataclass(frozen=True)
class ScenarioMatch:
    scenario_id: str
    match_score: float
    components: dict[str, float]

    def to_dict(self) -> dict:
        return {
            "scenario_id": self.scenario_id,
            "match_score": self.match_score,
            "components": dict(self.components),
        }


def _scenario_list(scenarios: ScenarioSet | Sequence[RiskScenario]) -> tuple[RiskScenario, ...]:
    if isinstance(scenarios, ScenarioSet):
        return scenarios.scenarios
    return tuple(scenarios)


def _context_component(
    scenario: RiskScenario, pdp: PersonalizedDefenseProfile, month: int
) -> float:
    if scenario.timing_months is not None and month in scenario.timing_months:
        return 1.0
    for risk in pdp.time_dependent_risks:
        if scenario.scenario_id in risk.scenario_ids and month in risk.months:
            return 1.0
    if scenario.timing_months is None:
        return 0.5
    return 0.0


def match_scenarios(
    features: EmailFeatures,
    pdp: PersonalizedDefenseProfile,
    scenarios: ScenarioSet | Sequence[RiskScenario],
    analysis_date: date,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
    *,
    entity_override: float | None = None,
) -> list[ScenarioMatch]:
    """Score every scenario against the extracted features.

    Returns one match per scenario, sorted by match score descending with
    scenario_id as the tiebreaker so output is reproducible. Permuting the
    input scenario order never changes the result. ``entity_override``
    forces the entity component (used for allowlisted senders).
    """
    month = analysis_date.month
    matches = []
    for scenario in _scenario_list(scenarios):
        if entity_override is not None:
            entity = entity_override
        else:
            entity = 1.0 if features.sender_claimed_category == scenario.impersonated_entity.category else 0.0

        objective_actions = OBJECTIVE_ACTION_MAP.get(scenario.risk_objective, frozenset())
        objective = 1.0 if features.requested_actions & objective_actions else 0.0

        context = _context_component(scenario, pdp, month)

        factors = scenario.social_engineering_factors
        trigger_overlap = len(features.triggers & factors) / len(factors) if factors else 0.0

        match_score = (
            weights.w_entity * entity
            + weights.w_objective * objective
            + weights.w_context * context
            + weights.w_trigger * trigger_overlap
        )
        matches.append(
            ScenarioMatch(
                scenario_id=scenario.scenario_id,
                match_score=match_score,
                components={
                    "entity": entity,
                    "objective": objective,
                    "context": context,
                    "trigger_overlap": trigger_overlap,
                },
            )
        )
    matches.sort(key=lambda m: (-m.match_score, m.scenario_id))
    return matches


def evidence_points(features: EmailFeatures, weights: ScoringWeights = DEFAULT_WEIGHTS) -> int:
    """Capped sum of raw-signal points, independent of any scenario."""
    points = 0
    for trigger in features.triggers:
        points += weights.trigger_points(trigger)
    if features.money_reference:
        points += weights.money_points
    if features.credential_request:
        points += weights.credential_points
    if features.link_mismatch:
        points += weights.link_mismatch_points
    else:
        points += weights.per_link_points * min(features.link_count, weights.link_count_cap)
    if features.risky_attachment:
        points += weights.risky_attachment_points
    else:
        points += weights.per_attachment_points * min(
            features.attachment_count, weights.attachment_count_cap
        )
    points += weights.header_anomaly_points * len(features.header_anomalies)
    return min(weights.evidence_cap, points)


def score(
    features: EmailFeatures,
    matches: Iterable[ScenarioMatch],
    weights: ScoringWeights = DEFAULT_WEIGHTS,
) -> int:
    best = max((m.match_score for m in matches), default=0.0)
    evidence = evidence_points(features, weights)
    return min(100, round(weights.scenario_scale * best + evidence))


def classify(value: int, weights: ScoringWeights = DEFAULT_WEIGHTS) -> str:
    if value < weights.suspicious_threshold:
        return "safe"
    if value < weights.high_threshold:
        return "suspicious"
    return "highly_suspicious"
