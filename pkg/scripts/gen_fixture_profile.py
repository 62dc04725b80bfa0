"""Regenerate the built-in fixture profile trio in canonical form."""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from whaling_guard.profiles import (
    canonical_dict_bytes,
    check_links,
    parse_document,
    validate_data,
)

PVP = {
    "target_id": "t1",
    "target_name": "Akiko Tanaka",
    "organization": "Example University",
    "positions_and_authority": [
        {
            "title": "Professor, Department of Informatics",
            "duties": ["research supervision", "graduate education"],
            "authority_scope": [
                "approves laboratory purchases",
                "signs grant expenditure reports",
            ],
        },
        {
            "title": "Information Security Officer",
            "duties": ["incident response coordination"],
            "authority_scope": [
                "receives incident reports",
                "approves account changes for laboratory systems",
            ],
        },
    ],
    "public_information": [
        {
            "category": "publications",
            "source": "public publication index",
            "summary": "Extensive co-authored work on network security",
        },
        {
            "category": "funding_records",
            "source": "public award database",
            "summary": "Principal investigator on a five-year competitive research grant",
        },
        {
            "category": "lectures",
            "source": "university course catalogue",
            "summary": "Teaches two graduate courses each semester",
        },
        {
            "category": "conference_participation",
            "source": "event pages",
            "summary": "Program committee member of an annual international symposium",
        },
        {
            "category": "collaborator_lists",
            "source": "laboratory site",
            "summary": "Laboratory members and joint-project partners listed publicly",
        },
    ],
    "communication_habits": [
        "responds quickly to administrative requests",
        "prefers email over phone for routine matters",
    ],
    "work_cycles": [
        {
            "name": "grant reporting",
            "months": [1, 2, 3],
            "description": "fiscal year-end expenditure reporting and compliance checks",
        },
        {
            "name": "semester start",
            "months": [4, 9],
            "description": "course setup and account provisioning",
        },
        {
            "name": "conference season",
            "months": [5, 6, 7],
            "description": "submission, review, and registration period of the symposium",
        },
    ],
    "human_network": [
        {
            "relation": "coauthor",
            "counterpart": "researchers at partner universities",
            "note": "long-running joint research projects",
        },
        {
            "relation": "lab_member",
            "counterpart": "graduate students of the laboratory",
            "note": "supervises about a dozen students",
        },
        {
            "relation": "committee",
            "counterpart": "symposium program committee",
            "note": "annual organizing duties",
        },
    ],
    "likely_senders": [
        "university research support staff",
        "grant program administrators",
        "symposium secretariat",
        "laboratory students",
        "joint research partners",
    ],
    "candidate_attack_contexts": [
        "grant expenditure deadlines",
        "conference registration changes",
        "campus system migrations",
        "requests for member lists",
    ],
    "schema_version": "1.0",
}

SCENARIOS = {
    "scenarios": [
        {
            "scenario_id": "s-funding-01",
            "impersonated_entity": {
                "category": "funding_agency",
                "sender_role": "grant program officer",
            },
            "risk_objective": "funding_misdirection",
            "work_context": "fiscal year-end grant reporting and budget execution",
            "timing_months": [1, 2, 3],
            "social_engineering_factors": ["urgency", "authority", "deadline"],
            "success_conditions": [
                "reporting workload limits careful verification",
                "the request mirrors real compliance procedures",
            ],
            "defensive_considerations": [
                "payment or account changes require confirmation through the official portal",
                "the funding program publishes its real contact route",
            ],
        },
        {
            "scenario_id": "s-it-01",
            "impersonated_entity": {
                "category": "internal_it",
                "sender_role": "campus help desk staff",
            },
            "risk_objective": "credential_theft",
            "work_context": "account migration and mail system maintenance at semester boundaries",
            "timing_months": [2, 3, 4, 9],
            "social_engineering_factors": ["urgency", "authority"],
            "success_conditions": [
                "habituation to frequent system notifications",
                "the security-officer role makes system mail seem routine",
            ],
            "defensive_considerations": [
                "campus IT never collects passwords through emailed links",
                "migration schedules are published on the internal portal",
            ],
        },
        {
            "scenario_id": "s-conf-01",
            "impersonated_entity": {
                "category": "conference_organizer",
                "sender_role": "symposium registration secretariat",
            },
            "risk_objective": "credential_theft",
            "work_context": "registration and submission updates during conference season",
            "timing_months": [5, 6, 7],
            "social_engineering_factors": ["deadline", "cooperation"],
            "success_conditions": [
                "many parallel conference deadlines",
                "registration systems vary between events",
            ],
            "defensive_considerations": [
                "registration status is checked by logging in to the event site directly"
            ],
        },
        {
            "scenario_id": "s-collab-01",
            "impersonated_entity": {
                "category": "research_collaborator",
                "sender_role": "joint-project researcher",
            },
            "risk_objective": "sensitive_data_disclosure",
            "work_context": "exchange of drafts and datasets within active joint projects",
            "timing_months": [1, 2, 6, 7],
            "social_engineering_factors": ["cooperation", "confidentiality"],
            "success_conditions": [
                "public collaborator lists make plausible sender names easy to pick"
            ],
            "defensive_considerations": [
                "data requests are confirmed through the established project channel"
            ],
        },
        {
            "scenario_id": "s-student-01",
            "impersonated_entity": {
                "category": "student",
                "sender_role": "graduate student of the target",
            },
            "risk_objective": "malware_delivery",
            "work_context": "submission of assignments and theses around semester deadlines",
            "timing_months": [4, 5, 10, 11],
            "social_engineering_factors": ["cooperation", "deadline"],
            "success_conditions": [
                "supervisors routinely open student documents without suspicion"
            ],
            "defensive_considerations": [
                "student submissions belong in the learning management system, not ad-hoc attachments"
            ],
        },
        {
            "scenario_id": "s-exec-01",
            "impersonated_entity": {
                "category": "executive",
                "sender_role": "office of the dean",
            },
            "risk_objective": "funding_misdirection",
            "work_context": "budget execution instructions near fiscal closings",
            "timing_months": [3, 12],
            "social_engineering_factors": ["authority", "urgency", "confidentiality"],
            "success_conditions": [
                "instructions framed as coming from superiors discourage questions"
            ],
            "defensive_considerations": [
                "financial instructions from executives are verified by phone with the issuing office"
            ],
        },
    ],
    "schema_version": "1.0",
}

PDP = {
    "target_id": "t1",
    "high_risk_vulnerabilities": [
        {
            "pvp_path": "positions_and_authority/0/authority_scope/1",
            "rationale": "signing authority over grant expenditure makes funding pretexts credible",
        },
        {
            "pvp_path": "public_information/1",
            "rationale": "the public award record exposes grant duties and reporting periods",
        },
        {
            "pvp_path": "positions_and_authority/1",
            "rationale": "the security-officer role invites plausible system notifications",
        },
    ],
    "time_dependent_risks": [
        {
            "months": [1, 2, 3],
            "description": "fiscal year-end grant reporting and compliance period",
            "scenario_ids": ["s-funding-01", "s-exec-01"],
        },
        {
            "months": [4, 9],
            "description": "semester-start account provisioning and migrations",
            "scenario_ids": ["s-it-01"],
        },
        {
            "months": [5, 6, 7],
            "description": "symposium registration and review season",
            "scenario_ids": ["s-conf-01"],
        },
    ],
    "scenario_links": [
        {
            "scenario_id": "s-funding-01",
            "pvp_path": "public_information/1",
            "rationale": "award records reveal which funding program to impersonate and when",
        },
        {
            "scenario_id": "s-it-01",
            "pvp_path": "positions_and_authority/1",
            "rationale": "system-administration duties normalize IT notifications",
        },
        {
            "scenario_id": "s-conf-01",
            "pvp_path": "public_information/3",
            "rationale": "public committee membership exposes event-related contexts",
        },
        {
            "scenario_id": "s-collab-01",
            "pvp_path": "human_network/0",
            "rationale": "public co-authorship names believable collaborators",
        },
        {
            "scenario_id": "s-student-01",
            "pvp_path": "human_network/1",
            "rationale": "supervision duties make student attachments routine",
        },
        {
            "scenario_id": "s-exec-01",
            "pvp_path": "positions_and_authority/0/authority_scope/1",
            "rationale": "expenditure signing authority is the lever executive impersonation pulls",
        },
    ],
    "defense_guidelines": {
        "impersonation_recognition": [
            {
                "text": "Treat funding or grant-office mail arriving outside the published contact route as unverified",
                "scenario_ids": ["s-funding-01"],
            },
            {
                "text": "Campus IT never asks for passwords or account confirmation through emailed links",
                "scenario_ids": ["s-it-01"],
            },
            {
                "text": "Unexpected sender domains behind familiar display names are a primary impersonation cue",
                "scenario_ids": ["s-collab-01", "s-exec-01"],
            },
        ],
        "objective_specific_defenses": [
            {
                "text": "Never act on bank-account or payment changes on the basis of email alone",
                "scenario_ids": ["s-funding-01", "s-exec-01"],
            },
            {
                "text": "Enter credentials only on institutional addresses typed directly into the browser",
                "scenario_ids": ["s-it-01", "s-conf-01"],
            },
            {
                "text": "Share project data only through the agreed repository, never as ad-hoc replies",
                "scenario_ids": ["s-collab-01"],
            },
        ],
        "context_precautions": [
            {
                "text": "During the reporting period, check every expenditure or compliance request against the official portal",
                "scenario_ids": ["s-funding-01"],
            },
            {
                "text": "Registration changes in conference season are verified on the event site, not via embedded links",
                "scenario_ids": ["s-conf-01"],
            },
            {
                "text": "Semester-boundary system notices deserve a second look before any account action",
                "scenario_ids": ["s-it-01"],
            },
        ],
        "social_engineering_resilience": [
            {
                "text": "Deadline and urgency pressure is itself a signal: slow down and verify before acting",
                "scenario_ids": ["s-funding-01", "s-it-01", "s-conf-01", "s-student-01"],
            },
            {
                "text": "Appeals to executive authority do not replace the normal approval route",
                "scenario_ids": ["s-exec-01"],
            },
        ],
        "risk_amplifying_conditions": [
            {
                "text": "High mail volume at fiscal year-end reduces scrutiny; queue financial requests for deliberate review",
                "scenario_ids": ["s-funding-01", "s-exec-01"],
            },
            {
                "text": "Routine system notices breed habituation; slow down on anything requesting action",
                "scenario_ids": ["s-it-01"],
            },
        ],
        "verification_procedures": [
            {
                "text": "Confirm the request via an alternative communication channel, such as the office's published phone number",
                "scenario_ids": ["s-funding-01", "s-exec-01", "s-it-01"],
            },
            {
                "text": "Verify payment or account changes with the research support office by phone before acting",
                "scenario_ids": ["s-funding-01", "s-exec-01"],
            },
            {
                "text": "Check registration status by logging in to the event site directly",
                "scenario_ids": ["s-conf-01"],
            },
            {
                "text": "Confirm unusual student requests through the learning management system or in person",
                "scenario_ids": ["s-student-01"],
            },
            {
                "text": "Ask the collaborator through the established project channel before sharing any data",
                "scenario_ids": ["s-collab-01"],
            },
        ],
    },
    "generated_at": "2026-01-15T09:00:00+09:00",
    "schema_version": "1.0",
}


def main() -> None:
    out_dir = pathlib.Path(__file__).resolve().parents[1] / (
        "src/whaling_guard/evalharness/corpus_builtin/profile"
    )
    out_dir.mkdir(parents=True, exist_ok=True)

    for kind, data, name in (
        ("pvp", PVP, "pvp.json"),
        ("scenario_set", SCENARIOS, "scenarios.json"),
        ("pdp", PDP, "pdp.json"),
    ):
        report = validate_data(data, kind)
        if not report.valid:
            raise SystemExit(f"{kind} fixture invalid: {[e.to_dict() for e in report.errors]}")
        # round through the typed model so set-valued fields land in canonical order
        typed = parse_document(canonical_dict_bytes(data), kind)
        from whaling_guard.profiles import canonicalize

        (out_dir / name).write_bytes(canonicalize(typed))

    pvp = parse_document((out_dir / "pvp.json").read_bytes(), "pvp")
    scenarios = parse_document((out_dir / "scenarios.json").read_bytes(), "scenario_set")
    pdp = parse_document((out_dir / "pdp.json").read_bytes(), "pdp")
    links = check_links(pdp, pvp, scenarios)
    if not links.valid:
        raise SystemExit(f"fixture links invalid: {[e.to_dict() for e in links.errors]}")
    print("fixture profile trio written and link-valid")


if __name__ == "__main__":
    main()
