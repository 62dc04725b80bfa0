"""Prompt assembly for the offline generation agents.

System text is a fixed versioned template (one file per agent kind under
``prompts/``) plus the output schema contract; user text embeds the inputs
in canonical serialized form. Assembly is pure: identical inputs produce a
byte-identical prompt pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from importlib import resources

from ..profiles.canonical import canonical_dict_bytes, canonicalize
from ..profiles.model import PersonalizedVulnerabilityProfile, ScenarioSet
from ..profiles.schema_text import schema_description

PROMPT_KINDS = ("pvp", "scenario_set", "pdp", "assess")


class IncompleteInputs(ValueError):
    """Inputs missing a piece the requested agent kind requires."""

    code = "incomplete_inputs"


def load_template(kind: str) -> str:
    if kind not in PROMPT_KINDS:
        raise ValueError(f"no prompt template for kind {kind!r}")
    return (
        resources.files("whaling_guard.agents")
        .joinpath(f"prompts/{kind}.txt")
        .read_text(encoding="utf-8")
    )


@dataclass(frozen=True)
class PublicSource:
    source: str
    content_excerpt: str

    def to_dict(self) -> dict:
        return {"source": self.source, "content_excerpt": self.content_excerpt}


@dataclass(frozen=True)
class InternalInformation:
    roles: tuple[str, ...] = ()
    decision_authority: tuple[str, ...] = ()
    approval_workflows: tuple[str, ...] = ()
    contact_routes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "roles": list(self.roles),
            "decision_authority": list(self.decision_authority),
            "approval_workflows": list(self.approval_workflows),
            "contact_routes": list(self.contact_routes),
        }


@dataclass(frozen=True)
class GenerationInputs:
    target_name: str
    organization: str
    public_sources: tuple[PublicSource, ...] = ()
    internal_information: InternalInformation | None = None
    pvp: PersonalizedVulnerabilityProfile | None = None
    scenarios: ScenarioSet | None = None

    def with_pvp(self, pvp: PersonalizedVulnerabilityProfile) -> "GenerationInputs":
        return replace(self, pvp=pvp)

    def with_scenarios(self, scenarios: ScenarioSet) -> "GenerationInputs":
        return replace(self, scenarios=scenarios)


@dataclass(frozen=True)
class PromptPair:
    system_text: str
    user_text: str


def _sources_block(inputs: GenerationInputs) -> str:
    data = {
        "target_name": inputs.target_name,
        "organization": inputs.organization,
        "public_sources": [s.to_dict() for s in inputs.public_sources],
    }
    return canonical_dict_bytes(data).decode("utf-8")


def assemble_prompt(kind: str, inputs: GenerationInputs) -> PromptPair:
    """Build the prompt pair for one generation stage.

    Stage isolation: the scenario agent sees the vulnerability profile and
    public sources but never internal information; the defense-profile agent
    sees everything.
    """
    if kind not in ("pvp", "scenario_set", "pdp"):
        raise ValueError(f"assemble_prompt handles generation kinds only, got {kind!r}")
    if not inputs.target_name or not inputs.organization:
        raise IncompleteInputs(f"kind {kind!r} requires target_name and organization")
    if kind in ("scenario_set", "pdp") and inputs.pvp is None:
        raise IncompleteInputs(f"kind {kind!r} requires the vulnerability profile")
    if kind == "pdp" and inputs.scenarios is None:
        raise IncompleteInputs("kind 'pdp' requires the scenario set")

    system_text = load_template(kind) + "\nOUTPUT SCHEMA\n" + schema_description(kind)

    sections = [f"TARGET INPUTS\n{_sources_block(inputs)}"]
    if kind in ("scenario_set", "pdp"):
        sections.append(f"VULNERABILITY PROFILE\n{canonicalize(inputs.pvp).decode('utf-8')}")
    if kind == "pdp":
        sections.append(f"RISK SCENARIOS\n{canonicalize(inputs.scenarios).decode('utf-8')}")
        if inputs.internal_information is not None:
            block = canonical_dict_bytes(inputs.internal_information.to_dict()).decode("utf-8")
            sections.append(f"INTERNAL INSTITUTIONAL INFORMATION\n{block}")

    return PromptPair(system_text=system_text, user_text="\n".join(sections))
