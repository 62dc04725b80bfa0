"""Scenario matching, scoring, classification, and full assessment."""

from __future__ import annotations

import random
from datetime import date
from itertools import combinations

import pytest

from whaling_guard.agents.backends import ScriptedBackend
from whaling_guard.engine import (
    DEFAULT_WEIGHTS,
    FALLBACK_ACTION,
    RiskAssessment,
    ScenarioMatch,
    ScoringWeights,
    assess,
    classify,
    match_scenarios,
    normalize_label,
    score,
)
from whaling_guard.engine.assess import ATTACHMENT_ACTION, DEGRADED_NOTE
from whaling_guard.evalharness import synthetic_features
from whaling_guard.evalharness.oracle import oracle_score
from whaling_guard.ingest import EmailFeatures, parse_email
from whaling_guard.profiles import (
    ImpersonatedEntity,
    PersonalizedDefenseProfile,
    RiskScenario,
    ScenarioSet,
)

ANALYSIS_DATE = date(2026, 2, 10)

EMPTY_FEATURES = synthetic_features(frozenset())


def features_with(**kwargs) -> EmailFeatures:
    base = {
        "sender_domain": "sender.example",
        "sender_claimed_category": None,
        "requested_actions": frozenset(),
        "triggers": frozenset(),
        "money_reference": False,
        "credential_request": False,
        "link_count": 0,
        "link_mismatch": False,
        "attachment_count": 0,
        "risky_attachment": False,
        "header_anomalies": frozenset(),
    }
    base.update(kwargs)
    return EmailFeatures(**base)


def scenario(sid="s-x", category="funding_agency", objective="funding_misdirection",
             timing=None, factors=("urgency", "deadline")) -> RiskScenario:
    return RiskScenario(
        scenario_id=sid,
        impersonated_entity=ImpersonatedEntity(category=category, sender_role="role"),
        risk_objective=objective,
        work_context="a context",
        timing_months=None if timing is None else frozenset(timing),
        social_engineering_factors=frozenset(factors),
    )


EMPTY_PDP = PersonalizedDefenseProfile(target_id="t1")


class TestMatchScenarios:
    def test_all_components_zero(self):
        s = scenario(timing=(5, 6))  # February mismatches
        matches = match_scenarios(EMPTY_FEATURES, EMPTY_PDP, [s], ANALYSIS_DATE)
        assert matches[0].match_score == 0.0
        assert matches[0].components == {
            "entity": 0.0, "objective": 0.0, "context": 0.0, "trigger_overlap": 0.0,
        }

    def test_derived_080_example(self):
        # entity match + objective match + no timing + 1 of 2 factors present
        s = scenario(timing=None, factors=("urgency", "deadline"))
        features = features_with(
            sender_claimed_category="funding_agency",
            requested_actions=frozenset({"wire_or_budget_action"}),
            triggers=frozenset({"urgency"}),
        )
        matches = match_scenarios(features, EMPTY_PDP, [s], ANALYSIS_DATE)
        assert matches[0].match_score == pytest.approx(0.80)
        assert matches[0].components["context"] == 0.5

    def test_context_via_time_dependent_risk(self, pdp, scenarios):
        # s-exec-01 has timing [3, 12]; the fiscal-period risk entry lists it
        # for [1, 2, 3], so February still activates context.
        features = features_with(sender_claimed_category="executive")
        matches = match_scenarios(features, pdp, scenarios, ANALYSIS_DATE)
        exec_match = next(m for m in matches if m.scenario_id == "s-exec-01")
        assert exec_match.components["context"] == 1.0

    def test_objective_action_map(self):
        cases = [
            ("credential_theft", "reply_with_credentials", 1.0),
            ("credential_theft", "click_link", 1.0),
            ("funding_misdirection", "wire_or_budget_action", 1.0),
            ("sensitive_data_disclosure", "provide_data", 1.0),
            ("malware_delivery", "open_attachment", 1.0),
            ("other", "click_link", 0.0),
            ("credential_theft", "schedule_meeting", 0.0),
        ]
        for objective, action, expected in cases:
            s = scenario(objective=objective, timing=(5,))
            features = features_with(requested_actions=frozenset({action}))
            matches = match_scenarios(features, EMPTY_PDP, [s], ANALYSIS_DATE)
            assert matches[0].components["objective"] == expected, (objective, action)

    def test_match_score_equals_weighted_components(self, pdp, scenarios, lexicons):
        features = features_with(
            sender_claimed_category="internal_it",
            requested_actions=frozenset({"click_link"}),
            triggers=frozenset({"urgency", "authority", "deadline"}),
        )
        w = DEFAULT_WEIGHTS
        for m in match_scenarios(features, pdp, scenarios, ANALYSIS_DATE):
            c = m.components
            expected = (
                w.w_entity * c["entity"] + w.w_objective * c["objective"]
                + w.w_context * c["context"] + w.w_trigger * c["trigger_overlap"]
            )
            assert m.match_score == expected

    def test_permutation_invariance(self, pdp, scenarios):
        features = features_with(sender_claimed_category="funding_agency",
                                 triggers=frozenset({"urgency"}))
        baseline = match_scenarios(features, pdp, scenarios, ANALYSIS_DATE)
        for seed in range(4):
            shuffled = list(scenarios.scenarios)
            random.Random(seed).shuffle(shuffled)
            permuted = match_scenarios(features, pdp, shuffled, ANALYSIS_DATE)
            assert permuted == baseline

    def test_empty_scenario_list(self):
        assert match_scenarios(EMPTY_FEATURES, EMPTY_PDP, [], ANALYSIS_DATE) == []


class TestScore:
    def test_no_features_no_matches_is_zero(self):
        assert score(EMPTY_FEATURES, []) == 0

    def test_derived_81_example(self):
        features = features_with(
            triggers=frozenset({"urgency", "deadline"}),
            money_reference=True,
            link_count=1,
            link_mismatch=True,
        )
        matches = [ScenarioMatch(scenario_id="s", match_score=0.80, components={})]
        assert score(features, matches) == 81

    def test_everything_maxed_caps_at_100(self):
        features = features_with(
            triggers=frozenset({"urgency", "authority", "cooperation", "deadline", "confidentiality"}),
            money_reference=True,
            credential_request=True,
            link_count=5,
            link_mismatch=True,
            attachment_count=4,
            risky_attachment=True,
            header_anomalies=frozenset({"reply_to_mismatch", "freemail_claiming_institution"}),
        )
        matches = [ScenarioMatch(scenario_id="s", match_score=1.0, components={})]
        assert score(features, matches) == 100

    def test_per_link_points_capped(self):
        few = features_with(link_count=2)
        many = features_with(link_count=50)
        assert score(few, []) == 6
        assert score(many, []) == 9  # capped at 3 links

    def test_mismatch_replaces_per_link_points(self):
        features = features_with(link_count=3, link_mismatch=True)
        assert score(features, []) == 10

    def test_attachment_points(self):
        assert score(features_with(attachment_count=1), []) == 3
        assert score(features_with(attachment_count=9), []) == 6  # capped at 2
        assert score(features_with(attachment_count=1, risky_attachment=True), []) == 10


class TestClassify:
    @pytest.mark.parametrize(
        "value,expected",
        [(0, "safe"), (29, "safe"), (30, "suspicious"), (64, "suspicious"),
         (65, "highly_suspicious"), (81, "highly_suspicious"), (100, "highly_suspicious")],
    )
    def test_bands(self, value, expected):
        assert classify(value) == expected

    def test_alias_normalization(self):
        assert normalize_label("caution") == "suspicious"
        assert normalize_label("dangerous") == "highly_suspicious"
        assert normalize_label("Highly Suspicious") == "highly_suspicious"
        assert normalize_label("nonsense") is None


class TestWeights:
    def test_invalid_weight_sum_rejected(self):
        with pytest.raises(ValueError):
            ScoringWeights(w_entity=0.9, w_objective=0.2, w_context=0.2, w_trigger=0.2)

    def test_scale_plus_cap_must_be_100(self):
        with pytest.raises(ValueError):
            ScoringWeights(scenario_scale=50, evidence_cap=55)

    def test_overrides(self):
        weights = ScoringWeights.from_overrides({"credential_points": "25"})
        assert weights.credential_points == 25
        with pytest.raises(ValueError):
            ScoringWeights.from_overrides({"not_a_field": 1})


class TestAssess:
    def assess_corpus_entry(self, corpus, pdp, scenarios, entry_id, **kwargs):
        entry = next(e for e in corpus if e.entry_id == entry_id)
        email = parse_email(entry.raw_message)
        return assess(email, pdp, scenarios, analysis_date=ANALYSIS_DATE, **kwargs)

    def test_grant_email_reproduction(self, corpus, pdp, scenarios):
        result = self.assess_corpus_entry(corpus, pdp, scenarios, "f-01-grant-suspension")
        assert result.label == "highly_suspicious"
        assert result.matched_scenarios[0].scenario_id == "s-funding-01"
        assert any("alternative communication channel" in a.lower() for a in result.recommended_actions)

    def test_oped_email_reproduction(self, corpus, pdp, scenarios):
        result = self.assess_corpus_entry(corpus, pdp, scenarios, "b-05-oped-attachment")
        assert result.score <= 35
        assert result.label == "safe"
        assert any("attachment type" in a.lower() for a in result.recommended_actions)
        assert any("official website" in a.lower() for a in result.recommended_actions)

    def test_label_always_consistent_with_score(self, corpus, pdp, scenarios):
        for entry in corpus:
            result = assess(parse_email(entry.raw_message), pdp, scenarios, analysis_date=ANALYSIS_DATE)
            assert result.label == classify(result.score)

    def test_references_resolve_and_top_k(self, corpus, pdp, scenarios):
        result = self.assess_corpus_entry(corpus, pdp, scenarios, "f-01-grant-suspension")
        assert len(result.matched_scenarios) <= DEFAULT_WEIGHTS.top_k
        ids = {s.scenario_id for s in scenarios.scenarios}
        assert all(m.scenario_id in ids for m in result.matched_scenarios)
        assert result.pdp_references  # grant scenario is linked in the fixture

    def test_fallback_action_when_nothing_matches(self, scenarios):
        email = parse_email(
            b"From: a <a@b.example>\r\nTo: t@c.example\r\nSubject: s\r\n\r\nplain\r\n"
        )
        pdp = PersonalizedDefenseProfile(target_id="t1")
        result = assess(email, pdp, ScenarioSet(scenarios=()), analysis_date=ANALYSIS_DATE)
        assert result.recommended_actions == (FALLBACK_ACTION,)

    def test_attachment_action_added(self, corpus, pdp, scenarios):
        result = self.assess_corpus_entry(corpus, pdp, scenarios, "c-02-pc-package")
        assert ATTACHMENT_ACTION in result.recommended_actions

    def test_mode_requires_backend(self, corpus, pdp, scenarios):
        with pytest.raises(ValueError):
            self.assess_corpus_entry(corpus, pdp, scenarios, "f-01-grant-suspension", mode="hybrid")
        with pytest.raises(ValueError):
            self.assess_corpus_entry(corpus, pdp, scenarios, "f-01-grant-suspension", mode="oracle")

    def test_hybrid_max_merge_raises(self, corpus, pdp, scenarios):
        backend = ScriptedBackend(
            ['{"judgment": "highly_suspicious", "risk_score": 95, "pdp_references": ["scenario_links/0"], '
             '"explanation": "model view", "actions": ["call the grants office"]}']
        )
        det = self.assess_corpus_entry(corpus, pdp, scenarios, "c-02-pc-package")
        hybrid = self.assess_corpus_entry(
            corpus, pdp, scenarios, "c-02-pc-package", mode="hybrid", backend=backend
        )
        assert hybrid.mode == "hybrid"
        assert hybrid.score == max(det.score, 95) == 95
        assert hybrid.label == "highly_suspicious"
        assert "scenario_links/0" in hybrid.pdp_references
        assert "call the grants office" in hybrid.recommended_actions
        assert "[model]" in hybrid.explanation and "[rules]" in hybrid.explanation

    def test_adversarial_zero_score_cannot_lower(self, corpus, pdp, scenarios):
        backend = ScriptedBackend(
            ['{"judgment": "safe", "risk_score": 0, "pdp_references": [], "explanation": "", "actions": []}']
        )
        det = self.assess_corpus_entry(corpus, pdp, scenarios, "f-01-grant-suspension")
        hybrid = self.assess_corpus_entry(
            corpus, pdp, scenarios, "f-01-grant-suspension", mode="hybrid", backend=backend
        )
        assert hybrid.score >= det.score
        assert hybrid.label == det.label == "highly_suspicious"

    def test_invalid_llm_references_dropped(self, corpus, pdp, scenarios):
        backend = ScriptedBackend(
            ['{"judgment": "suspicious", "risk_score": 50, '
             '"pdp_references": ["scenario_links/0", "nonsense/99"], "explanation": "x", "actions": []}']
        )
        hybrid = self.assess_corpus_entry(
            corpus, pdp, scenarios, "b-01-seminar-thanks", mode="hybrid", backend=backend
        )
        assert "nonsense/99" not in hybrid.pdp_references
        assert "scenario_links/0" in hybrid.pdp_references

    def test_backend_failure_degrades_to_deterministic(self, corpus, pdp, scenarios):
        backend = ScriptedBackend([])  # immediately exhausted -> BackendError
        det = self.assess_corpus_entry(corpus, pdp, scenarios, "f-01-grant-suspension")
        degraded = self.assess_corpus_entry(
            corpus, pdp, scenarios, "f-01-grant-suspension", mode="hybrid", backend=backend
        )
        assert degraded.mode == "deterministic"
        assert degraded.score == det.score
        assert DEGRADED_NOTE in degraded.explanation

    def test_malformed_llm_output_degrades(self, corpus, pdp, scenarios):
        backend = ScriptedBackend(["this is not json at all"])
        degraded = self.assess_corpus_entry(
            corpus, pdp, scenarios, "f-01-grant-suspension", mode="hybrid", backend=backend
        )
        assert degraded.mode == "deterministic"
        assert DEGRADED_NOTE in degraded.explanation

    def test_wrong_typed_llm_fields_ignored_not_fatal(self, corpus, pdp, scenarios):
        backend = ScriptedBackend(
            ['{"judgment": 7, "risk_score": 55, "pdp_references": 5, "explanation": null, "actions": "run"}']
        )
        result = self.assess_corpus_entry(
            corpus, pdp, scenarios, "b-01-seminar-thanks", mode="hybrid", backend=backend
        )
        assert result.mode == "hybrid"
        assert result.score == 55

    def test_allowlist_zeroes_entity_and_caps_score(self, corpus, pdp, scenarios):
        uncapped = self.assess_corpus_entry(corpus, pdp, scenarios, "f-01-grant-suspension")
        capped = self.assess_corpus_entry(
            corpus, pdp, scenarios, "f-01-grant-suspension", allowlisted=True
        )
        assert uncapped.score > DEFAULT_WEIGHTS.allowlist_cap
        assert capped.score <= DEFAULT_WEIGHTS.allowlist_cap
        assert capped.label == "safe"
        for m in capped.matched_scenarios:
            assert m.components["entity"] == 0.0

    def test_deterministic_email_id_stable(self, corpus, pdp, scenarios):
        a = self.assess_corpus_entry(corpus, pdp, scenarios, "b-01-seminar-thanks")
        b = self.assess_corpus_entry(corpus, pdp, scenarios, "b-01-seminar-thanks")
        assert a == b


class TestGridProperties:
    FLAGS = (
        "urgency", "authority", "cooperation", "deadline", "confidentiality",
        "money_reference", "credential_request", "link_mismatch",
    )

    def all_subsets(self):
        for r in range(len(self.FLAGS) + 1):
            for combo in combinations(self.FLAGS, r):
                yield frozenset(combo)

    def test_engine_equals_oracle_everywhere(self, pdp, scenarios):
        mismatches = 0
        for subset in self.all_subsets():
            features = synthetic_features(subset)
            engine_value = score(
                features, match_scenarios(features, pdp, scenarios, ANALYSIS_DATE)
            )
            if engine_value != oracle_score(features, pdp, scenarios, ANALYSIS_DATE, DEFAULT_WEIGHTS):
                mismatches += 1
        assert mismatches == 0

    def test_single_flag_addition_never_decreases(self, pdp, scenarios):
        values = {}
        for subset in self.all_subsets():
            features = synthetic_features(subset)
            values[subset] = score(
                features, match_scenarios(features, pdp, scenarios, ANALYSIS_DATE)
            )
        violations = [
            (subset, flag)
            for subset in values
            for flag in self.FLAGS
            if flag not in subset and values[subset | {flag}] < values[subset]
        ]
        assert violations == []
