"""Independent brute-force recomputation of the deterministic risk score.

This is the second half of the dual-route check: it re-derives every
scenario component and every evidence point from the raw documents with its
own tables and loops, sharing nothing with the engine implementation except
the weight values themselves (which are configuration). The eval runner and
the acceptance suite compare it against the engine score for exact
equality.
"""

from __future__ import annotations

from datetime import date

from ..ingest.features import EmailFeatures
from ..profiles.model import PersonalizedDefenseProfile, ScenarioSet
from ..engine.weights import ScoringWeights

# Objective-to-action table restated from the scoring contract.
_ACTIONS_FOR_OBJECTIVE = {
    "credential_theft": ("reply_with_credentials", "click_link"),
    "funding_misdirection": ("wire_or_budget_action",),
    "sensitive_data_disclosure": ("provide_data",),
    "malware_delivery": ("open_attachment",),
    "other": (),
}


def oracle_score(
    features: EmailFeatures,
    pdp: PersonalizedDefenseProfile,
    scenarios: ScenarioSet,
    analysis_date: date,
    weights: ScoringWeights,
) -> int:
    month = analysis_date.month

    best = 0.0
    for scenario in scenarios.scenarios:
        entity = 0.0
        if (
            features.sender_claimed_category is not None
            and features.sender_claimed_category == scenario.impersonated_entity.category
        ):
            entity = 1.0

        objective = 0.0
        for action in _ACTIONS_FOR_OBJECTIVE.get(scenario.risk_objective, ()):
            if action in features.requested_actions:
                objective = 1.0
                break

        in_timing = scenario.timing_months is not None and month in scenario.timing_months
        in_tdr = False
        for risk in pdp.time_dependent_risks:
            if scenario.scenario_id in risk.scenario_ids and month in risk.months:
                in_tdr = True
                break
        if in_timing or in_tdr:
            context = 1.0
        elif scenario.timing_months is None:
            context = 0.5
        else:
            context = 0.0

        overlap_count = 0
        for factor in scenario.social_engineering_factors:
            if factor in features.triggers:
                overlap_count += 1
        trigger_overlap = (
            overlap_count / len(scenario.social_engineering_factors)
            if scenario.social_engineering_factors
            else 0.0
        )

        candidate = (
            weights.w_entity * entity
            + weights.w_objective * objective
            + weights.w_context * context
            + weights.w_trigger * trigger_overlap
        )
        if candidate > best:
            best = candidate

    evidence = 0
    if "urgency" in features.triggers:
        evidence += weights.urgency_points
    if "authority" in features.triggers:
        evidence += weights.authority_points
    if "cooperation" in features.triggers:
        evidence += weights.cooperation_points
    if "deadline" in features.triggers:
        evidence += weights.deadline_points
    if "confidentiality" in features.triggers:
        evidence += weights.confidentiality_points
    if features.money_reference:
        evidence += weights.money_points
    if features.credential_request:
        evidence += weights.credential_points
    if features.link_mismatch:
        evidence += weights.link_mismatch_points
    else:
        counted_links = features.link_count
        if counted_links > weights.link_count_cap:
            counted_links = weights.link_count_cap
        evidence += weights.per_link_points * counted_links
    if features.risky_attachment:
        evidence += weights.risky_attachment_points
    else:
        counted_attachments = features.attachment_count
        if counted_attachments > weights.attachment_count_cap:
            counted_attachments = weights.attachment_count_cap
        evidence += weights.per_attachment_points * counted_attachments
    evidence += weights.header_anomaly_points * len(features.header_anomalies)
    if evidence > weights.evidence_cap:
        evidence = weights.evidence_cap

    total = round(weights.scenario_scale * best + evidence)
    return 100 if total > 100 else total
