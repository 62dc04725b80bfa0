"""The offline generation pipeline: vulnerability profile -> scenarios -> defense profile.

Each stage prompts a chat backend, parses the structured response, and
validates it against the document contract. Invalid responses trigger a
bounded repair loop: the validation errors are appended to the user text
and the stage is retried, up to ``max_repairs`` extra rounds. Documents
that trip the deliverable-content screen are rejected the same way.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from ..profiles.canonical import canonical_dict_bytes, canonicalize
from ..profiles.model import (
    DOCUMENT_TYPES,
    PersonalizedDefenseProfile,
    PersonalizedVulnerabilityProfile,
    ScenarioSet,
    ValidationIssue,
    ValidationReport,
)
from ..profiles.validate import check_links, validate_data
from .backends import ChatBackend
from .prohibitions import check_prohibited_output
from .prompts import GenerationInputs, assemble_prompt
from .structured import extract_json_object

DEFAULT_MAX_REPAIRS = 2

PROFILE_FILENAMES = {"pvp": "pvp.json", "scenario_set": "scenarios.json", "pdp": "pdp.json"}


class GenerationFailed(Exception):
    """Every attempt for one stage failed validation."""

    code = "generation_failed"

    def __init__(self, kind: str, report: ValidationReport, attempts: int):
        summary = "; ".join(f"{e.path}: {e.code}" for e in report.errors[:5]) or "no errors recorded"
        super().__init__(f"stage {kind!r} failed after {attempts} attempt(s): {summary}")
        self.kind = kind
        self.report = report
        self.attempts = attempts


@dataclass(frozen=True)
class GenerationResult:
    kind: str
    document: object
    raw_response: str
    repair_attempts: int
    prohibition_flags: tuple[str, ...] = ()


@dataclass(frozen=True)
class PipelineResult:
    pvp: PersonalizedVulnerabilityProfile
    scenarios: ScenarioSet
    pdp: PersonalizedDefenseProfile
    results: tuple[GenerationResult, ...]

    def documents(self) -> dict[str, object]:
        return {"pvp": self.pvp, "scenario_set": self.scenarios, "pdp": self.pdp}


def _evaluate_response(kind: str, raw: str) -> tuple[ValidationReport, object | None]:
    try:
        data = extract_json_object(raw)
    except ValueError as exc:
        report = ValidationReport(
            errors=(ValidationIssue(path="", code="parse_error", message=str(exc)),)
        )
        return report, None
    report = validate_data(data, kind)
    if not report.valid:
        return report, None
    document = DOCUMENT_TYPES[kind].from_dict(data)
    flags = check_prohibited_output(kind, document)
    if flags:
        issues = tuple(
            ValidationIssue(
                path="",
                code="prohibited_content",
                message=f"deliverable-content pattern {flag!r} matched",
            )
            for flag in flags
        )
        return ValidationReport(errors=issues), None
    return report, document


def _repair_suffix(report: ValidationReport) -> str:
    block = canonical_dict_bytes(report.to_dict()).decode("utf-8")
    return (
        "\nVALIDATION ERRORS (previous attempt)\n"
        f"{block}"
        "Return one corrected JSON object that fixes every error above. Output only the JSON object.\n"
    )


def run_agent(
    kind: str,
    inputs: GenerationInputs,
    backend: ChatBackend,
    max_repairs: int = DEFAULT_MAX_REPAIRS,
    generation_seed: int = 0,
) -> GenerationResult:
    """Run one generation stage with bounded self-repair.

    ``repair_attempts`` in the result counts the repair rounds actually used
    (0 when the first response validates). Raises :class:`GenerationFailed`
    with the final report when every attempt fails;
    backend transport errors propagate as ``BackendError``.
    """
    if max_repairs < 0:
        raise ValueError("max_repairs must be >= 0")
    prompt = assemble_prompt(kind, inputs)
    user_text = prompt.user_text
    report = ValidationReport()
    raw = ""
    for attempt in range(max_repairs + 1):
        raw = backend.complete(prompt.system_text, user_text, generation_seed)
        report, document = _evaluate_response(kind, raw)
        if document is not None:
            return GenerationResult(
                kind=kind,
                document=document,
                raw_response=raw,
                repair_attempts=attempt,
                prohibition_flags=(),
            )
        user_text = user_text + _repair_suffix(report)
    raise GenerationFailed(kind, report, attempts=max_repairs + 1)


def run_offline_pipeline(
    inputs: GenerationInputs,
    backend: ChatBackend,
    max_repairs: int = DEFAULT_MAX_REPAIRS,
    generation_seed: int = 0,
) -> PipelineResult:
    """Execute the three stages strictly in order and verify cross-document links.

    The vulnerability profile feeds both later stages; internal information
    reaches only the defense-profile stage. Any stage failure aborts the
    pipeline with the failing stage identified, and nothing is emitted.
    """
    pvp_result = run_agent("pvp", inputs, backend, max_repairs, generation_seed)
    pvp = pvp_result.document
    assert isinstance(pvp, PersonalizedVulnerabilityProfile)

    scenario_result = run_agent(
        "scenario_set", inputs.with_pvp(pvp), backend, max_repairs, generation_seed
    )
    scenarios = scenario_result.document
    assert isinstance(scenarios, ScenarioSet)

    pdp_result = run_agent(
        "pdp", inputs.with_pvp(pvp).with_scenarios(scenarios), backend, max_repairs, generation_seed
    )
    pdp = pdp_result.document
    assert isinstance(pdp, PersonalizedDefenseProfile)

    link_report = check_links(pdp, pvp, scenarios)
    if not link_report.valid:
        raise GenerationFailed("pdp", link_report, attempts=max_repairs + 1)

    return PipelineResult(
        pvp=pvp,
        scenarios=scenarios,
        pdp=pdp,
        results=(pvp_result, scenario_result, pdp_result),
    )


def write_profile_dir(result: PipelineResult, out_dir: Path | str) -> dict[str, Path]:
    """Write the trio in canonical form under ``out_dir`` (pvp/scenarios/pdp.json)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = {}
    for kind, document in result.documents().items():
        path = out / PROFILE_FILENAMES[kind]
        path.write_bytes(canonicalize(document))
        written[kind] = path
    return written
