"""Document model: validation, canonical serialization, link checking."""

from __future__ import annotations

import copy
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whaling_guard.profiles import (
    ScenarioSet,
    canonicalize,
    check_links,
    parse_document,
    resolve_path,
    validate,
    validate_data,
)

MINIMAL_PVP = {
    "target_id": "t1",
    "target_name": "A Name",
    "organization": "An Org",
    "positions_and_authority": [],
    "public_information": [],
    "communication_habits": [],
    "work_cycles": [],
    "human_network": [],
    "likely_senders": [],
    "candidate_attack_contexts": [],
    "schema_version": "1.0",
}


class TestValidate:
    def test_minimal_pvp_valid(self):
        report = validate(json.dumps(MINIMAL_PVP).encode(), "pvp")
        assert report.valid
        assert report.errors == ()

    def test_month_out_of_range_path(self):
        data = dict(MINIMAL_PVP)
        data["work_cycles"] = [{"name": "x", "months": [13], "description": ""}]
        report = validate(json.dumps(data).encode(), "pvp")
        assert not report.valid
        assert any(e.path == "work_cycles/0/months" for e in report.errors)
        assert "out_of_range" in report.codes()

    def test_malformed_syntax_is_parse_error_not_exception(self):
        report = validate(b"{not json", "pvp")
        assert not report.valid
        assert [e.code for e in report.errors] == ["parse_error"]

    def test_non_utf8_is_parse_error(self):
        report = validate(b"\xff\xfe{}", "pvp")
        assert report.codes() == {"parse_error"}

    def test_unknown_kind_raises(self):
        with pytest.raises(ValueError):
            validate(b"{}", "nope")

    def test_validation_report_valid_iff_no_errors(self, trio_dicts):
        for kind, data in trio_dicts.items():
            report = validate_data(data, kind)
            assert report.valid and not report.errors


# One mutation per type invariant; every one must produce at least one error.
PVP_MUTATIONS = {
    "empty_target_id": lambda d: d.update(target_id=""),
    "missing_target_name": lambda d: d.pop("target_name"),
    "month_13": lambda d: d["work_cycles"][0]["months"].append(13),
    "empty_months": lambda d: d["work_cycles"][0].update(months=[]),
    "bad_public_info_category": lambda d: d["public_information"][0].update(category="blogs"),
    "bad_network_relation": lambda d: d["human_network"][0].update(relation="friend"),
    "positions_not_a_list": lambda d: d.update(positions_and_authority="oops"),
    "habits_not_strings": lambda d: d.update(communication_habits=[1, 2]),
}

SCENARIO_MUTATIONS = {
    "empty_scenario_id": lambda d: d["scenarios"][0].update(scenario_id=""),
    "duplicate_scenario_id": lambda d: d["scenarios"][1].update(
        scenario_id=d["scenarios"][0]["scenario_id"]
    ),
    "bad_entity_category": lambda d: d["scenarios"][0]["impersonated_entity"].update(category="bank"),
    "bad_objective": lambda d: d["scenarios"][0].update(risk_objective="chaos"),
    "timing_zero_month": lambda d: d["scenarios"][0].update(timing_months=[0]),
    "timing_empty": lambda d: d["scenarios"][0].update(timing_months=[]),
    "factors_empty": lambda d: d["scenarios"][0].update(social_engineering_factors=[]),
    "factors_unknown": lambda d: d["scenarios"][0].update(social_engineering_factors=["fear"]),
}

PDP_MUTATIONS = {
    "empty_target_id": lambda d: d.update(target_id=""),
    "missing_guideline_category": lambda d: d["defense_guidelines"].pop("verification_procedures"),
    "all_guidelines_empty": lambda d: d.update(
        defense_guidelines={k: [] for k in d["defense_guidelines"]}
    ),
    "tdr_month_13": lambda d: d["time_dependent_risks"][0]["months"].append(13),
    "link_empty_scenario_id": lambda d: d["scenario_links"][0].update(scenario_id=""),
    "vuln_empty_path": lambda d: d["high_risk_vulnerabilities"][0].update(pvp_path=""),
    "bad_generated_at": lambda d: d.update(generated_at="not-a-time"),
}


class TestInvariantMutations:
    @pytest.mark.parametrize("name", sorted(PVP_MUTATIONS))
    def test_pvp_mutation_caught(self, trio_dicts, name):
        data = copy.deepcopy(trio_dicts["pvp"])
        PVP_MUTATIONS[name](data)
        assert not validate_data(data, "pvp").valid, name

    @pytest.mark.parametrize("name", sorted(SCENARIO_MUTATIONS))
    def test_scenario_mutation_caught(self, trio_dicts, name):
        data = copy.deepcopy(trio_dicts["scenario_set"])
        SCENARIO_MUTATIONS[name](data)
        assert not validate_data(data, "scenario_set").valid, name

    @pytest.mark.parametrize("name", sorted(PDP_MUTATIONS))
    def test_pdp_mutation_caught(self, trio_dicts, name):
        data = copy.deepcopy(trio_dicts["pdp"])
        PDP_MUTATIONS[name](data)
        assert not validate_data(data, "pdp").valid, name


def reference_canonical(data) -> bytes:
    # Second canonicalizer, restated from the serialization contract: sorted
    # keys, two-space indent, UTF-8, trailing newline.
    return (json.dumps(data, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


class TestCanonicalize:
    def test_round_trip_identity(self, trio_dicts):
        for kind, data in trio_dicts.items():
            doc = parse_document(json.dumps(data).encode(), kind)
            once = canonicalize(doc)
            again = canonicalize(parse_document(once, kind))
            assert once == again

    def test_round_trip_structural_equality(self, trio_dicts):
        for kind, data in trio_dicts.items():
            doc = parse_document(json.dumps(data).encode(), kind)
            assert parse_document(canonicalize(doc), kind) == doc

    def test_key_order_independent(self, trio_dicts):
        data = trio_dicts["pvp"]
        shuffled_keys = list(data)
        random.Random(7).shuffle(shuffled_keys)
        shuffled = {k: data[k] for k in shuffled_keys}
        doc_a = parse_document(json.dumps(data).encode(), "pvp")
        doc_b = parse_document(json.dumps(shuffled).encode(), "pvp")
        assert canonicalize(doc_a) == canonicalize(doc_b)

    def test_matches_reference_canonicalizer(self, trio_dicts):
        for kind, data in trio_dicts.items():
            doc = parse_document(json.dumps(data).encode(), kind)
            expected = reference_canonical(doc.to_dict())
            assert canonicalize(doc) == expected
            assert len(canonicalize(doc)) == len(expected)

    def test_unknown_fields_survive_round_trip(self):
        data = dict(MINIMAL_PVP)
        data["x_custom_annotation"] = {"source": "local", "weight": 3}
        doc = parse_document(json.dumps(data).encode(), "pvp")
        recovered = json.loads(canonicalize(doc).decode())
        assert recovered["x_custom_annotation"] == {"source": "local", "weight": 3}

    @given(
        months=st.sets(st.integers(min_value=1, max_value=12), min_size=1),
        name=st.text(min_size=1, max_size=20),
        habit=st.text(max_size=30),
    )
    @settings(max_examples=50, deadline=None)
    def test_round_trip_property(self, months, name, habit):
        data = dict(MINIMAL_PVP)
        data["work_cycles"] = [{"name": name, "months": sorted(months), "description": ""}]
        data["communication_habits"] = [habit]
        doc = parse_document(json.dumps(data).encode(), "pvp")
        assert parse_document(canonicalize(doc), "pvp") == doc
        assert canonicalize(parse_document(canonicalize(doc), "pvp")) == canonicalize(doc)


class TestResolvePath:
    def test_resolves_nested_list_element(self, trio_dicts):
        ok, value = resolve_path(trio_dicts["pvp"], "positions_and_authority/0/authority_scope/1")
        assert ok and value == "signs grant expenditure reports"

    def test_rejects_missing_and_malformed(self, trio_dicts):
        for path in ("", "nope", "public_information/99", "public_information/x", "target_id/0"):
            ok, _ = resolve_path(trio_dicts["pvp"], path)
            assert not ok, path


class TestCheckLinks:
    def test_fixture_trio_links_valid(self, pdp, pvp, scenarios):
        assert check_links(pdp, pvp, scenarios).valid

    def test_zero_link_pdp_valid(self, pvp, scenarios, trio_dicts):
        import copy as _copy

        data = _copy.deepcopy(trio_dicts["pdp"])
        data["high_risk_vulnerabilities"] = []
        data["time_dependent_risks"] = []
        data["scenario_links"] = []
        for cat in data["defense_guidelines"]:
            data["defense_guidelines"][cat] = [{"text": "verify through official channels", "scenario_ids": []}]
        doc = parse_document(json.dumps(data).encode(), "pdp")
        assert check_links(doc, pvp, scenarios).valid

    def test_dangling_scenario_ref(self, pvp, scenarios, trio_dicts):
        data = copy.deepcopy(trio_dicts["pdp"])
        data["scenario_links"][1]["scenario_id"] = "missing"
        doc = parse_document(json.dumps(data).encode(), "pdp")
        report = check_links(doc, pvp, scenarios)
        assert not report.valid
        assert "dangling_scenario_ref" in report.codes()
        assert any(e.path == "scenario_links/1/scenario_id" for e in report.errors)

    def test_unresolvable_pvp_path(self, pvp, scenarios, trio_dicts):
        data = copy.deepcopy(trio_dicts["pdp"])
        data["high_risk_vulnerabilities"][0]["pvp_path"] = "public_information/99"
        doc = parse_document(json.dumps(data).encode(), "pdp")
        assert "unresolvable_pvp_path" in check_links(doc, pvp, scenarios).codes()

    def test_target_mismatch(self, pdp, scenarios, trio_dicts):
        data = copy.deepcopy(trio_dicts["pvp"])
        data["target_id"] = "someone-else"
        other_pvp = parse_document(json.dumps(data).encode(), "pvp")
        report = check_links(pdp, other_pvp, scenarios)
        assert "target_mismatch" in report.codes()

    def test_order_independence(self, pdp, pvp, scenarios):
        baseline = check_links(pdp, pvp, scenarios)
        for seed in range(5):
            shuffled = list(scenarios.scenarios)
            random.Random(seed).shuffle(shuffled)
            permuted = ScenarioSet(scenarios=tuple(shuffled), schema_version=scenarios.schema_version)
            report = check_links(pdp, pvp, permuted)
            assert {e.to_dict()["path"] for e in report.errors} == {
                e.to_dict()["path"] for e in baseline.errors
            }
            assert report.valid == baseline.valid
