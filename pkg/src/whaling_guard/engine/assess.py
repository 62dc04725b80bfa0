"""End-to-end assessment of one email against a defense profile.

The deterministic path (features -> scenario matches -> score -> label)
always runs. In hybrid mode a model judgment produced under the structured
output contract is merged on top, but it can only raise the score, never
lower it: a prompt-injected model therefore cannot suppress an alert.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import date

from .. import ENGINE_VERSION
from ..agents.backends import BackendError, ChatBackend
from ..agents.prompts import load_template
from ..agents.structured import extract_json_object
from ..ingest.features import EmailFeatures, LexiconSet, extract_features
from ..ingest.parser import ParsedEmail
from ..ingest.sanitize import sanitize_for_prompt
from ..profiles.canonical import canonicalize
from ..profiles.model import GUIDELINE_CATEGORIES, PersonalizedDefenseProfile, ScenarioSet
from ..profiles.schema_text import schema_description
from ..profiles.validate import resolve_path
from .scoring import ScenarioMatch, classify, match_scenarios, score
from .weights import DEFAULT_WEIGHTS, ScoringWeights, normalize_label

FALLBACK_ACTION = "Confirm the request via an alternative communication channel."

ATTACHMENT_ACTION = (
    "Verify the attachment type before opening it, and prefer obtaining the "
    "content from the publisher's or sender's official website."
)

LINK_ACTION = (
    "Do not follow the embedded link; reach the service by typing its "
    "official address into the browser."
)

DEGRADED_NOTE = "[model unavailable: deterministic assessment only]"


@dataclass(frozen=True)
class RiskAssessment:
    email_id: str
    label: str
    score: int
    matched_scenarios: tuple[ScenarioMatch, ...]
    pdp_references: tuple[str, ...]
    explanation: str
    recommended_actions: tuple[str, ...]
    mode: str
    engine_version: str = ENGINE_VERSION

    def to_dict(self) -> dict:
        return {
            "email_id": self.email_id,
            "label": self.label,
            "score": self.score,
            "matched_scenarios": [m.to_dict() for m in self.matched_scenarios],
            "pdp_references": list(self.pdp_references),
            "explanation": self.explanation,
            "recommended_actions": list(self.recommended_actions),
            "mode": self.mode,
            "engine_version": self.engine_version,
        }


def default_email_id(email: ParsedEmail) -> str:
    """Content-derived id so assessment stays a pure function of its inputs."""
    digest = hashlib.sha256(
        "\x1f".join((email.from_address, email.subject, email.body_text)).encode("utf-8")
    )
    return digest.hexdigest()[:16]


def _dedupe(items) -> list:
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return out


def _pdp_references(pdp: PersonalizedDefenseProfile, top_ids: list[str]) -> list[str]:
    refs = []
    wanted = set(top_ids)
    for i, link in enumerate(pdp.scenario_links):
        if link.scenario_id in wanted:
            refs.append(f"scenario_links/{i}")
    for i, risk in enumerate(pdp.time_dependent_risks):
        if wanted & set(risk.scenario_ids):
            refs.append(f"time_dependent_risks/{i}")
    for cat in GUIDELINE_CATEGORIES:
        for i, item in enumerate(pdp.defense_guidelines.category(cat)):
            if wanted & set(item.scenario_ids):
                refs.append(f"defense_guidelines/{cat}/{i}")
    return refs


def _recommended_actions(
    pdp: PersonalizedDefenseProfile, top_ids: list[str], features: EmailFeatures
) -> list[str]:
    wanted = set(top_ids)
    actions = [
        item.text
        for item in pdp.defense_guidelines.verification_procedures
        if wanted & set(item.scenario_ids)
    ]
    if features.attachment_count > 0:
        actions.append(ATTACHMENT_ACTION)
    if features.link_count > 0:
        actions.append(LINK_ACTION)
    if not actions:
        actions.append(FALLBACK_ACTION)
    return _dedupe(actions)


def _component_summary(match: ScenarioMatch) -> str:
    parts = []
    c = match.components
    if c["entity"] > 0:
        parts.append("sender matches impersonated entity")
    if c["objective"] > 0:
        parts.append("requested action serves the objective")
    if c["context"] >= 1.0:
        parts.append("calendar context active")
    if c["trigger_overlap"] > 0:
        parts.append(f"persuasion factors {c['trigger_overlap']:.2f}")
    return "; ".join(parts) if parts else "weak correspondence only"


def _explanation(
    value: int,
    label: str,
    top: list[ScenarioMatch],
    scenarios: ScenarioSet,
    pdp: PersonalizedDefenseProfile,
) -> str:
    lines = [f"Deterministic screening scored {value}/100 ({label})."]
    if top:
        lines.append("Matched risk scenarios:")
        for m in top:
            scenario = scenarios.get(m.scenario_id)
            context = scenario.work_context if scenario else ""
            lines.append(f"- {m.scenario_id} ({m.match_score:.2f}): {context} [{_component_summary(m)}]")
    else:
        lines.append("No modeled risk scenario matched; score reflects raw message signals only.")
    notes = [
        item.text
        for cat in ("impersonation_recognition", "context_precautions")
        for item in pdp.defense_guidelines.category(cat)
        if {m.scenario_id for m in top} & set(item.scenario_ids)
    ]
    if notes:
        lines.append("Relevant guidance:")
        lines.extend(f"- {t}" for t in notes[:3])
    return "\n".join(lines)


def _verify_references(assessment: RiskAssessment, pdp: PersonalizedDefenseProfile, scenarios: ScenarioSet) -> None:
    ids = scenarios.ids()
    for m in assessment.matched_scenarios:
        if m.scenario_id not in ids:
            raise RuntimeError(f"assessment references unknown scenario {m.scenario_id!r}")
    pdp_data = pdp.to_dict()
    for ref in assessment.pdp_references:
        ok, _ = resolve_path(pdp_data, ref)
        if not ok:
            raise RuntimeError(f"assessment carries unresolvable pdp reference {ref!r}")


def _model_judgment(
    backend: ChatBackend,
    email: ParsedEmail,
    pdp: PersonalizedDefenseProfile,
    generation_seed: int,
) -> dict:
    system_text = "\n\n".join(
        [
            load_template("assess"),
            "OUTPUT SCHEMA\n" + schema_description("assess"),
            "DEFENSE PROFILE\n" + canonicalize(pdp).decode("utf-8"),
        ]
    )
    user_text = sanitize_for_prompt(email).fenced_text
    raw = backend.complete(system_text, user_text, generation_seed)
    return extract_json_object(raw)


def assess(
    email: ParsedEmail,
    pdp: PersonalizedDefenseProfile,
    scenarios: ScenarioSet,
    mode: str = "deterministic",
    backend: ChatBackend | None = None,
    analysis_date: date | None = None,
    *,
    weights: ScoringWeights = DEFAULT_WEIGHTS,
    lexicons: LexiconSet | None = None,
    allowlisted: bool = False,
    email_id: str | None = None,
    generation_seed: int = 0,
) -> RiskAssessment:
    """Assess one email. ``mode`` is ``deterministic`` or ``hybrid``.

    Hybrid mode requires a backend; a backend transport failure or malformed
    model output degrades the call to the deterministic result, recorded as
    such in ``mode`` with a note in the explanation.
    """
    if mode not in ("deterministic", "hybrid"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "hybrid" and backend is None:
        raise ValueError("hybrid mode requires a backend")
    analysis_date = analysis_date or date.today()

    features = extract_features(email, lexicons, analysis_date)
    matches = match_scenarios(
        features,
        pdp,
        scenarios,
        analysis_date,
        weights,
        entity_override=0.0 if allowlisted else None,
    )
    det_score = score(features, matches, weights)
    top = [m for m in matches if m.match_score > 0][: weights.top_k]
    top_ids = [m.scenario_id for m in top]

    det_label = classify(det_score, weights)
    explanation = _explanation(det_score, det_label, top, scenarios, pdp)
    references = _pdp_references(pdp, top_ids)
    actions = _recommended_actions(pdp, top_ids, features)

    final_score = det_score
    final_mode = "deterministic"

    if mode == "hybrid":
        try:
            judged = _model_judgment(backend, email, pdp, generation_seed)
            llm_score = judged.get("risk_score")
            if not isinstance(llm_score, (int, float)) or isinstance(llm_score, bool):
                raise ValueError("risk_score missing or non-numeric")
            llm_score = max(0, min(100, int(llm_score)))
            pdp_data = pdp.to_dict()
            raw_refs = judged.get("pdp_references")
            if not isinstance(raw_refs, list):
                raw_refs = []
            llm_refs = [
                ref for ref in raw_refs if isinstance(ref, str) and resolve_path(pdp_data, ref)[0]
            ]
            llm_label = normalize_label(str(judged.get("judgment", "")))
            llm_explanation = str(judged.get("explanation", "")).strip()
            raw_actions = judged.get("actions")
            if not isinstance(raw_actions, list):
                raw_actions = []
            llm_actions = [str(a) for a in raw_actions if str(a).strip()]

            final_score = max(det_score, llm_score)
            final_mode = "hybrid"
            references = _dedupe(references + llm_refs)
            actions = _dedupe(actions + llm_actions)
            model_part = f"[model] score {llm_score}"
            if llm_label:
                model_part += f", judged {llm_label}"
            if llm_explanation:
                model_part += f": {llm_explanation}"
            explanation = f"[rules] {explanation}\n{model_part}"
        except (BackendError, ValueError) as exc:
            explanation = f"{explanation}\n{DEGRADED_NOTE} ({exc})"

    if allowlisted:
        final_score = min(final_score, weights.allowlist_cap)

    assessment = RiskAssessment(
        email_id=email_id or default_email_id(email),
        label=classify(final_score, weights),
        score=final_score,
        matched_scenarios=tuple(top),
        pdp_references=tuple(references),
        explanation=explanation,
        recommended_actions=tuple(actions),
        mode=final_mode,
    )
    _verify_references(assessment, pdp, scenarios)
    return assessment
