"""Plain-text schema contracts embedded verbatim into agent prompts."""

from __future__ import annotations

PVP_SCHEMA_TEXT = """\
Return one JSON object with exactly this structure:
{
  "target_id": string (nonempty opaque identifier),
  "target_name": string (nonempty),
  "organization": string,
  "positions_and_authority": [{"title": string, "duties": [string], "authority_scope": [string]}],
  "public_information": [{"category": one of publications|funding_records|social_media|lectures|conference_participation|collaborator_lists|other, "source": string (URL or description), "summary": string}],
  "communication_habits": [string],
  "work_cycles": [{"name": string, "months": [integers 1..12, nonempty], "description": string}],
  "human_network": [{"relation": one of coauthor|lab_member|committee|multi_institution|other, "counterpart": string, "note": string}],
  "likely_senders": [string],
  "candidate_attack_contexts": [string],
  "schema_version": "1.0"
}
Lists may be empty when nothing is known. Output only the JSON object."""

SCENARIO_SET_SCHEMA_TEXT = """\
Return one JSON object with exactly this structure:
{
  "scenarios": [
    {
      "scenario_id": string (nonempty, unique within this set),
      "impersonated_entity": {"category": one of internal_it|research_support_office|conference_organizer|research_collaborator|funding_agency|student|media|executive|other, "sender_role": string},
      "risk_objective": one of credential_theft|sensitive_data_disclosure|funding_misdirection|malware_delivery|other,
      "work_context": string (abstract situation description),
      "timing_months": null or [integers 1..12, nonempty],
      "social_engineering_factors": nonempty subset of ["urgency","authority","cooperation","deadline","confidentiality"],
      "success_conditions": [string],
      "defensive_considerations": [string]
    }
  ],
  "schema_version": "1.0"
}
Output only the JSON object."""

PDP_SCHEMA_TEXT = """\
Return one JSON object with exactly this structure:
{
  "target_id": string (must equal the vulnerability profile's target_id),
  "high_risk_vulnerabilities": [{"pvp_path": slash path into the vulnerability profile, e.g. "public_information/2", "rationale": string}],
  "time_dependent_risks": [{"months": [integers 1..12, nonempty], "description": string, "scenario_ids": [string]}],
  "scenario_links": [{"scenario_id": string, "pvp_path": slash path, "rationale": string}],
  "defense_guidelines": {
    "impersonation_recognition": [{"text": string, "scenario_ids": [string]}],
    "objective_specific_defenses": [...same item shape...],
    "context_precautions": [...],
    "social_engineering_resilience": [...],
    "risk_amplifying_conditions": [...],
    "verification_procedures": [...]
  },
  "generated_at": ISO-8601 timestamp string,
  "schema_version": "1.0"
}
All six defense_guidelines categories must be present. Every scenario_id must
exist in the supplied scenario set and every pvp_path must resolve in the
supplied vulnerability profile. Output only the JSON object."""

ASSESSMENT_SCHEMA_TEXT = """\
Return one JSON object with exactly this structure:
{
  "judgment": one of "safe" | "suspicious" | "highly_suspicious",
  "risk_score": integer 0..100,
  "pdp_references": [slash paths into the defense profile, e.g. "scenario_links/0"],
  "explanation": string (short reasoning, in the email's language where possible),
  "actions": [string (concrete defensive steps for the recipient)]
}
Output only the JSON object."""

SCHEMA_TEXTS = {
    "pvp": PVP_SCHEMA_TEXT,
    "scenario_set": SCENARIO_SET_SCHEMA_TEXT,
    "pdp": PDP_SCHEMA_TEXT,
    "assess": ASSESSMENT_SCHEMA_TEXT,
}


def schema_description(kind: str) -> str:
    if kind not in SCHEMA_TEXTS:
        raise ValueError(f"no schema text for kind {kind!r}")
    return SCHEMA_TEXTS[kind]
