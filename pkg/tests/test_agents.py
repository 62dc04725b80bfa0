"""Prompt assembly, generation agents, repair loop, prohibition screening."""

from __future__ import annotations

import json

import pytest

from whaling_guard.agents import (
    BackendError,
    GenerationFailed,
    GenerationInputs,
    IncompleteInputs,
    InternalInformation,
    MockBackend,
    PublicSource,
    ScriptedBackend,
    assemble_prompt,
    check_prohibited_output,
    extract_json_object,
    kind_from_system_text,
    load_template,
    run_agent,
    run_offline_pipeline,
    write_profile_dir,
)
from whaling_guard.profiles import (
    ImpersonatedEntity,
    RiskScenario,
    ScenarioSet,
    canonicalize,
    check_links,
    schema_description,
)

INPUTS = GenerationInputs(
    target_name="Akiko Tanaka",
    organization="Example University",
    public_sources=(
        PublicSource(source="https://profiles.example-univ.ac.jp/tanaka", content_excerpt="Professor."),
        PublicSource(source="public award database", content_excerpt="PI on a research grant."),
    ),
    internal_information=InternalInformation(
        roles=("information security officer",),
        approval_workflows=("purchases above threshold go through the office",),
    ),
)


class TestExtractJsonObject:
    def test_plain_object(self):
        assert extract_json_object('{"a": 1}') == {"a": 1}

    def test_fenced_and_prefixed(self):
        raw = 'Sure, here you go:\n```json\n{"a": {"b": 2}}\n```\ntrailing notes'
        assert extract_json_object(raw) == {"a": {"b": 2}}

    def test_braces_inside_strings(self):
        raw = 'x {"a": "literal } brace", "b": 1} y'
        assert extract_json_object(raw) == {"a": "literal } brace", "b": 1}

    def test_garbage_raises(self):
        with pytest.raises(ValueError):
            extract_json_object("no json here")
        with pytest.raises(ValueError):
            extract_json_object("[1, 2, 3]")


class TestAssemblePrompt:
    def test_pvp_prompt_contains_template_schema_and_sources(self):
        pair = assemble_prompt("pvp", INPUTS)
        assert load_template("pvp").strip() in pair.system_text
        assert schema_description("pvp") in pair.system_text
        assert "profiles.example-univ.ac.jp/tanaka" in pair.user_text
        assert "PI on a research grant." in pair.user_text

    def test_pdp_without_scenarios_incomplete(self, pvp):
        with pytest.raises(IncompleteInputs):
            assemble_prompt("pdp", INPUTS.with_pvp(pvp))

    def test_scenario_kind_without_pvp_incomplete(self):
        with pytest.raises(IncompleteInputs):
            assemble_prompt("scenario_set", INPUTS)

    def test_assembly_deterministic(self, pvp, scenarios):
        full = INPUTS.with_pvp(pvp).with_scenarios(scenarios)
        for kind in ("pvp", "scenario_set", "pdp"):
            a = assemble_prompt(kind, full)
            b = assemble_prompt(kind, full)
            assert (a.system_text, a.user_text) == (b.system_text, b.user_text)

    def test_stage_isolation(self, pvp, scenarios):
        full = INPUTS.with_pvp(pvp).with_scenarios(scenarios)
        scenario_pair = assemble_prompt("scenario_set", full)
        pdp_pair = assemble_prompt("pdp", full)
        # internal information reaches only the defense-profile stage
        assert "information security officer" not in scenario_pair.user_text
        assert "information security officer" in pdp_pair.user_text
        assert canonicalize(pvp).decode().strip() in scenario_pair.user_text
        assert canonicalize(scenarios).decode().strip() in pdp_pair.user_text

    def test_template_markers_identify_kind(self):
        for kind in ("pvp", "scenario_set", "pdp", "assess"):
            assert kind_from_system_text(load_template(kind)) == kind


class TestProhibitions:
    def test_defensive_text_clean(self, scenarios):
        assert check_prohibited_output("scenario_set", scenarios) == []

    def test_subject_marker_flagged(self):
        bad = RiskScenario(
            scenario_id="s-bad",
            impersonated_entity=ImpersonatedEntity(category="funding_agency", sender_role="officer"),
            risk_objective="funding_misdirection",
            work_context="Subject: Urgent payment needed",
            social_engineering_factors=frozenset({"urgency"}),
        )
        flags = check_prohibited_output("scenario_set", ScenarioSet(scenarios=(bad,)))
        assert "subject_line_marker" in flags

    def test_greeting_and_signature_flagged(self):
        bad = RiskScenario(
            scenario_id="s-bad",
            impersonated_entity=ImpersonatedEntity(category="student", sender_role="student"),
            risk_objective="other",
            work_context="Dear Professor, please find the request below.\nBest regards",
            social_engineering_factors=frozenset({"cooperation"}),
        )
        flags = check_prohibited_output("scenario_set", ScenarioSet(scenarios=(bad,)))
        assert "greeting_line" in flags
        assert "signature_block" in flags

    def test_benign_guideline_not_flagged(self, pdp):
        assert check_prohibited_output("pdp", pdp) == []


class TestRunAgent:
    def test_valid_first_shot_zero_repairs(self, mock_backend):
        result = run_agent("pvp", INPUTS, mock_backend)
        assert result.repair_attempts == 0
        assert result.prohibition_flags == ()
        assert result.document.target_id == "t1"

    def test_invalid_then_valid_one_repair(self, trio_dicts):
        valid = json.dumps(trio_dicts["pvp"])
        backend = ScriptedBackend(['{"target_id": ""}', valid])
        result = run_agent("pvp", INPUTS, backend)
        assert result.repair_attempts == 1

    def test_repair_prompt_carries_validation_errors(self, trio_dicts):
        calls = []

        class Recorder(ScriptedBackend):
            def complete(self, system_text, user_text, generation_seed=0):
                calls.append(user_text)
                return super().complete(system_text, user_text, generation_seed)

        backend = Recorder(['{"target_id": ""}', json.dumps(trio_dicts["pvp"])])
        run_agent("pvp", INPUTS, backend)
        assert "VALIDATION ERRORS" in calls[1]
        assert "empty_value" in calls[1] or "missing_field" in calls[1]

    def test_retry_exhaustion_raises_generation_failed(self):
        backend = ScriptedBackend(["junk", "junk", "junk"])
        with pytest.raises(GenerationFailed) as err:
            run_agent("pvp", INPUTS, backend, max_repairs=2)
        assert err.value.attempts == 3
        assert err.value.kind == "pvp"
        assert not err.value.report.valid

    def test_prohibited_content_rejected(self, trio_dicts):
        tainted = json.loads(json.dumps(trio_dicts["scenario_set"]))
        tainted["scenarios"][0]["work_context"] = "Subject: wire the funds now"
        backend = ScriptedBackend([json.dumps(tainted)] * 3)
        with pytest.raises(GenerationFailed) as err:
            run_agent("scenario_set", INPUTS.with_pvp(_pvp_from(trio_dicts)), backend, max_repairs=2)
        assert "prohibited_content" in err.value.report.codes()

    def test_backend_error_propagates(self):
        with pytest.raises(BackendError):
            run_agent("pvp", INPUTS, ScriptedBackend([]))


def _pvp_from(trio_dicts):
    from whaling_guard.profiles import parse_document

    return parse_document(json.dumps(trio_dicts["pvp"]).encode(), "pvp")


class TestOfflinePipeline:
    def test_full_run_links_and_flags(self, mock_backend):
        result = run_offline_pipeline(INPUTS, mock_backend)
        assert check_links(result.pdp, result.pvp, result.scenarios).valid
        assert all(r.prohibition_flags == () for r in result.results)

    def test_byte_identical_across_three_runs(self, mock_backend):
        outputs = []
        for _ in range(3):
            result = run_offline_pipeline(INPUTS, mock_backend)
            outputs.append(
                canonicalize(result.pvp) + canonicalize(result.scenarios) + canonicalize(result.pdp)
            )
        assert outputs[0] == outputs[1] == outputs[2]

    def test_empty_public_sources_still_runs(self, mock_backend):
        bare = GenerationInputs(target_name="Akiko Tanaka", organization="Example University")
        result = run_offline_pipeline(bare, mock_backend)
        assert result.pvp.target_id == "t1"

    def test_stage_failure_aborts_without_writing(self, tmp_path, trio_dicts, mock_backend):
        # pvp succeeds from fixtures dir; scenario stage returns junk 3 times
        class HalfBroken(MockBackend):
            def complete(self, system_text, user_text, generation_seed=0):
                if kind_from_system_text(system_text) == "scenario_set":
                    return "not json"
                return super().complete(system_text, user_text, generation_seed)

        backend = HalfBroken(mock_backend.fixtures_dir)
        with pytest.raises(GenerationFailed) as err:
            result = run_offline_pipeline(INPUTS, backend)
            write_profile_dir(result, tmp_path)
        assert err.value.kind == "scenario_set"
        assert not (tmp_path / "pdp.json").exists()

    def test_write_profile_dir_emits_canonical_trio(self, tmp_path, mock_backend):
        result = run_offline_pipeline(INPUTS, mock_backend)
        written = write_profile_dir(result, tmp_path)
        assert set(written) == {"pvp", "scenario_set", "pdp"}
        assert (tmp_path / "pvp.json").read_bytes() == canonicalize(result.pvp)
        assert (tmp_path / "scenarios.json").read_bytes() == canonicalize(result.scenarios)


class TestMockBackend:
    def test_keyed_fixture_beats_default(self, tmp_path):
        from whaling_guard.agents.backends import stable_user_hash

        kind_dir = tmp_path / "pvp"
        kind_dir.mkdir()
        (kind_dir / "default.json").write_text('{"which": "default"}')
        keyed_name = stable_user_hash("the user text") + ".json"
        (kind_dir / keyed_name).write_text('{"which": "keyed"}')
        backend = MockBackend(tmp_path)
        system = load_template("pvp")
        assert json.loads(backend.complete(system, "the user text"))["which"] == "keyed"
        assert json.loads(backend.complete(system, "other text"))["which"] == "default"

    def test_missing_fixture_is_backend_error(self, tmp_path):
        backend = MockBackend(tmp_path)
        with pytest.raises(BackendError):
            backend.complete(load_template("pvp"), "anything")

    def test_descriptor_deterministic(self, mock_backend):
        assert mock_backend.descriptor.deterministic is True
        assert mock_backend.descriptor.name == "mock"
