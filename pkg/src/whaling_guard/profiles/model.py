"""Domain types for the three profile document kinds.

A target is described by three linked documents: a vulnerability profile
(what about the person is publicly exposed), a set of abstract risk
scenarios (situations in which an impersonation attack is plausible), and
a defense profile (what to watch for and how to verify). All types are
immutable after construction; parsing preserves unknown fields in ``extra``
so newer documents survive a round trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping

SCHEMA_VERSION = "1.0"

DOCUMENT_KINDS = ("pvp", "scenario_set", "pdp")

PUBLIC_INFO_CATEGORIES = (
    "publications",
    "funding_records",
    "social_media",
    "lectures",
    "conference_participation",
    "collaborator_lists",
    "other",
)

NETWORK_RELATIONS = ("coauthor", "lab_member", "committee", "multi_institution", "other")

IMPERSONATED_ENTITY_CATEGORIES = (
    "internal_it",
    "research_support_office",
    "conference_organizer",
    "research_collaborator",
    "funding_agency",
    "student",
    "media",
    "executive",
    "other",
)

RISK_OBJECTIVES = (
    "credential_theft",
    "sensitive_data_disclosure",
    "funding_misdirection",
    "malware_delivery",
    "other",
)

SOCIAL_ENGINEERING_FACTORS = (
    "urgency",
    "authority",
    "cooperation",
    "deadline",
    "confidentiality",
)

GUIDELINE_CATEGORIES = (
    "impersonation_recognition",
    "objective_specific_defenses",
    "context_precautions",
    "social_engineering_resilience",
    "risk_amplifying_conditions",
    "verification_procedures",
)


def _str_tuple(value: Any) -> tuple[str, ...]:
    if not isinstance(value, (list, tuple)):
        return ()
    return tuple(str(v) for v in value)


def _month_set(value: Any) -> frozenset[int]:
    if not isinstance(value, (list, tuple, set, frozenset)):
        return frozenset()
    out = set()
    for v in value:
        if isinstance(v, int) and not isinstance(v, bool):
            out.add(v)
    return frozenset(out)


def _take_extra(data: Mapping[str, Any], known: tuple[str, ...]) -> dict[str, Any]:
    return {k: v for k, v in data.items() if k not in known}


@dataclass(frozen=True)
class AuthorityItem:
    title: str
    duties: tuple[str, ...] = ()
    authority_scope: tuple[str, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("title", "duties", "authority_scope")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "AuthorityItem":
        return cls(
            title=str(data.get("title", "")),
            duties=_str_tuple(data.get("duties", ())),
            authority_scope=_str_tuple(data.get("authority_scope", ())),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {
            "title": self.title,
            "duties": list(self.duties),
            "authority_scope": list(self.authority_scope),
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class PublicInfoItem:
    category: str
    source: str
    summary: str
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("category", "source", "summary")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PublicInfoItem":
        return cls(
            category=str(data.get("category", "")),
            source=str(data.get("source", "")),
            summary=str(data.get("summary", "")),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {"category": self.category, "source": self.source, "summary": self.summary}
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class WorkCycleItem:
    name: str
    months: frozenset[int]
    description: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("name", "months", "description")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "WorkCycleItem":
        return cls(
            name=str(data.get("name", "")),
            months=_month_set(data.get("months", ())),
            description=str(data.get("description", "")),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {
            "name": self.name,
            "months": sorted(self.months),
            "description": self.description,
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class NetworkItem:
    relation: str
    counterpart: str
    note: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("relation", "counterpart", "note")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "NetworkItem":
        return cls(
            relation=str(data.get("relation", "")),
            counterpart=str(data.get("counterpart", "")),
            note=str(data.get("note", "")),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {"relation": self.relation, "counterpart": self.counterpart, "note": self.note}
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class PersonalizedVulnerabilityProfile:
    target_id: str
    target_name: str
    organization: str
    positions_and_authority: tuple[AuthorityItem, ...] = ()
    public_information: tuple[PublicInfoItem, ...] = ()
    communication_habits: tuple[str, ...] = ()
    work_cycles: tuple[WorkCycleItem, ...] = ()
    human_network: tuple[NetworkItem, ...] = ()
    likely_senders: tuple[str, ...] = ()
    candidate_attack_contexts: tuple[str, ...] = ()
    schema_version: str = SCHEMA_VERSION
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = (
        "target_id",
        "target_name",
        "organization",
        "positions_and_authority",
        "public_information",
        "communication_habits",
        "work_cycles",
        "human_network",
        "likely_senders",
        "candidate_attack_contexts",
        "schema_version",
    )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PersonalizedVulnerabilityProfile":
        return cls(
            target_id=str(data.get("target_id", "")),
            target_name=str(data.get("target_name", "")),
            organization=str(data.get("organization", "")),
            positions_and_authority=tuple(
                AuthorityItem.from_dict(d) for d in data.get("positions_and_authority", ()) or ()
            ),
            public_information=tuple(
                PublicInfoItem.from_dict(d) for d in data.get("public_information", ()) or ()
            ),
            communication_habits=_str_tuple(data.get("communication_habits", ())),
            work_cycles=tuple(WorkCycleItem.from_dict(d) for d in data.get("work_cycles", ()) or ()),
            human_network=tuple(NetworkItem.from_dict(d) for d in data.get("human_network", ()) or ()),
            likely_senders=_str_tuple(data.get("likely_senders", ())),
            candidate_attack_contexts=_str_tuple(data.get("candidate_attack_contexts", ())),
            schema_version=str(data.get("schema_version", SCHEMA_VERSION)),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {
            "target_id": self.target_id,
            "target_name": self.target_name,
            "organization": self.organization,
            "positions_and_authority": [i.to_dict() for i in self.positions_and_authority],
            "public_information": [i.to_dict() for i in self.public_information],
            "communication_habits": list(self.communication_habits),
            "work_cycles": [i.to_dict() for i in self.work_cycles],
            "human_network": [i.to_dict() for i in self.human_network],
            "likely_senders": list(self.likely_senders),
            "candidate_attack_contexts": list(self.candidate_attack_contexts),
            "schema_version": self.schema_version,
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class ImpersonatedEntity:
    category: str
    sender_role: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("category", "sender_role")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ImpersonatedEntity":
        return cls(
            category=str(data.get("category", "")),
            sender_role=str(data.get("sender_role", "")),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {"category": self.category, "sender_role": self.sender_role}
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class RiskScenario:
    scenario_id: str
    impersonated_entity: ImpersonatedEntity
    risk_objective: str
    work_context: str = ""
    timing_months: frozenset[int] | None = None
    social_engineering_factors: frozenset[str] = frozenset()
    success_conditions: tuple[str, ...] = ()
    defensive_considerations: tuple[str, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = (
        "scenario_id",
        "impersonated_entity",
        "risk_objective",
        "work_context",
        "timing_months",
        "social_engineering_factors",
        "success_conditions",
        "defensive_considerations",
    )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "RiskScenario":
        timing = data.get("timing_months")
        return cls(
            scenario_id=str(data.get("scenario_id", "")),
            impersonated_entity=ImpersonatedEntity.from_dict(data.get("impersonated_entity", {}) or {}),
            risk_objective=str(data.get("risk_objective", "")),
            work_context=str(data.get("work_context", "")),
            timing_months=None if timing is None else _month_set(timing),
            social_engineering_factors=frozenset(_str_tuple(data.get("social_engineering_factors", ()))),
            success_conditions=_str_tuple(data.get("success_conditions", ())),
            defensive_considerations=_str_tuple(data.get("defensive_considerations", ())),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {
            "scenario_id": self.scenario_id,
            "impersonated_entity": self.impersonated_entity.to_dict(),
            "risk_objective": self.risk_objective,
            "work_context": self.work_context,
            "timing_months": None if self.timing_months is None else sorted(self.timing_months),
            "social_engineering_factors": sorted(self.social_engineering_factors),
            "success_conditions": list(self.success_conditions),
            "defensive_considerations": list(self.defensive_considerations),
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class ScenarioSet:
    scenarios: tuple[RiskScenario, ...] = ()
    schema_version: str = SCHEMA_VERSION
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("scenarios", "schema_version")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ScenarioSet":
        return cls(
            scenarios=tuple(RiskScenario.from_dict(d) for d in data.get("scenarios", ()) or ()),
            schema_version=str(data.get("schema_version", SCHEMA_VERSION)),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {
            "scenarios": [s.to_dict() for s in self.scenarios],
            "schema_version": self.schema_version,
        }
        out.update(self.extra)
        return out

    def ids(self) -> frozenset[str]:
        return frozenset(s.scenario_id for s in self.scenarios)

    def get(self, scenario_id: str) -> RiskScenario | None:
        for s in self.scenarios:
            if s.scenario_id == scenario_id:
                return s
        return None


@dataclass(frozen=True)
class HighRiskVulnerability:
    pvp_path: str
    rationale: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("pvp_path", "rationale")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "HighRiskVulnerability":
        return cls(
            pvp_path=str(data.get("pvp_path", "")),
            rationale=str(data.get("rationale", "")),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {"pvp_path": self.pvp_path, "rationale": self.rationale}
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class TimeDependentRisk:
    months: frozenset[int]
    description: str = ""
    scenario_ids: tuple[str, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("months", "description", "scenario_ids")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "TimeDependentRisk":
        return cls(
            months=_month_set(data.get("months", ())),
            description=str(data.get("description", "")),
            scenario_ids=_str_tuple(data.get("scenario_ids", ())),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {
            "months": sorted(self.months),
            "description": self.description,
            "scenario_ids": list(self.scenario_ids),
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class ScenarioLink:
    scenario_id: str
    pvp_path: str
    rationale: str = ""
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("scenario_id", "pvp_path", "rationale")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ScenarioLink":
        return cls(
            scenario_id=str(data.get("scenario_id", "")),
            pvp_path=str(data.get("pvp_path", "")),
            rationale=str(data.get("rationale", "")),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {
            "scenario_id": self.scenario_id,
            "pvp_path": self.pvp_path,
            "rationale": self.rationale,
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class GuidelineItem:
    text: str
    scenario_ids: tuple[str, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = ("text", "scenario_ids")

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "GuidelineItem":
        return cls(
            text=str(data.get("text", "")),
            scenario_ids=_str_tuple(data.get("scenario_ids", ())),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {"text": self.text, "scenario_ids": list(self.scenario_ids)}
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class DefenseGuidelines:
    impersonation_recognition: tuple[GuidelineItem, ...] = ()
    objective_specific_defenses: tuple[GuidelineItem, ...] = ()
    context_precautions: tuple[GuidelineItem, ...] = ()
    social_engineering_resilience: tuple[GuidelineItem, ...] = ()
    risk_amplifying_conditions: tuple[GuidelineItem, ...] = ()
    verification_procedures: tuple[GuidelineItem, ...] = ()
    extra: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "DefenseGuidelines":
        kwargs: dict[str, Any] = {}
        for cat in GUIDELINE_CATEGORIES:
            kwargs[cat] = tuple(GuidelineItem.from_dict(d) for d in data.get(cat, ()) or ())
        kwargs["extra"] = _take_extra(data, GUIDELINE_CATEGORIES)
        return cls(**kwargs)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {cat: [i.to_dict() for i in getattr(self, cat)] for cat in GUIDELINE_CATEGORIES}
        out.update(self.extra)
        return out

    def category(self, name: str) -> tuple[GuidelineItem, ...]:
        return getattr(self, name)


@dataclass(frozen=True)
class PersonalizedDefenseProfile:
    target_id: str
    high_risk_vulnerabilities: tuple[HighRiskVulnerability, ...] = ()
    time_dependent_risks: tuple[TimeDependentRisk, ...] = ()
    scenario_links: tuple[ScenarioLink, ...] = ()
    defense_guidelines: DefenseGuidelines = field(default_factory=DefenseGuidelines)
    generated_at: str = ""
    schema_version: str = SCHEMA_VERSION
    extra: dict[str, Any] = field(default_factory=dict)

    _FIELDS = (
        "target_id",
        "high_risk_vulnerabilities",
        "time_dependent_risks",
        "scenario_links",
        "defense_guidelines",
        "generated_at",
        "schema_version",
    )

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "PersonalizedDefenseProfile":
        return cls(
            target_id=str(data.get("target_id", "")),
            high_risk_vulnerabilities=tuple(
                HighRiskVulnerability.from_dict(d) for d in data.get("high_risk_vulnerabilities", ()) or ()
            ),
            time_dependent_risks=tuple(
                TimeDependentRisk.from_dict(d) for d in data.get("time_dependent_risks", ()) or ()
            ),
            scenario_links=tuple(ScenarioLink.from_dict(d) for d in data.get("scenario_links", ()) or ()),
            defense_guidelines=DefenseGuidelines.from_dict(data.get("defense_guidelines", {}) or {}),
            generated_at=str(data.get("generated_at", "")),
            schema_version=str(data.get("schema_version", SCHEMA_VERSION)),
            extra=_take_extra(data, cls._FIELDS),
        )

    def to_dict(self) -> dict[str, Any]:
        out = {
            "target_id": self.target_id,
            "high_risk_vulnerabilities": [i.to_dict() for i in self.high_risk_vulnerabilities],
            "time_dependent_risks": [i.to_dict() for i in self.time_dependent_risks],
            "scenario_links": [i.to_dict() for i in self.scenario_links],
            "defense_guidelines": self.defense_guidelines.to_dict(),
            "generated_at": self.generated_at,
            "schema_version": self.schema_version,
        }
        out.update(self.extra)
        return out


@dataclass(frozen=True)
class ValidationIssue:
    path: str
    code: str
    message: str

    def to_dict(self) -> dict[str, str]:
        return {"path": self.path, "code": self.code, "message": self.message}


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[ValidationIssue, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.errors

    def to_dict(self) -> dict[str, Any]:
        return {"valid": self.valid, "errors": [e.to_dict() for e in self.errors]}

    def codes(self) -> frozenset[str]:
        return frozenset(e.code for e in self.errors)


DOCUMENT_TYPES = {
    "pvp": PersonalizedVulnerabilityProfile,
    "scenario_set": ScenarioSet,
    "pdp": PersonalizedDefenseProfile,
}
