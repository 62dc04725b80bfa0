"""Profile documents: types, validation, canonical serialization, link checks."""

from .canonical import canonical_dict_bytes, canonical_line, canonicalize, parse_document
from .model import (
    DOCUMENT_KINDS,
    GUIDELINE_CATEGORIES,
    IMPERSONATED_ENTITY_CATEGORIES,
    PUBLIC_INFO_CATEGORIES,
    RISK_OBJECTIVES,
    SCHEMA_VERSION,
    SOCIAL_ENGINEERING_FACTORS,
    AuthorityItem,
    DefenseGuidelines,
    GuidelineItem,
    HighRiskVulnerability,
    ImpersonatedEntity,
    NetworkItem,
    PersonalizedDefenseProfile,
    PersonalizedVulnerabilityProfile,
    PublicInfoItem,
    RiskScenario,
    ScenarioLink,
    ScenarioSet,
    TimeDependentRisk,
    ValidationIssue,
    ValidationReport,
    WorkCycleItem,
)
from .schema_text import schema_description
from .validate import check_links, resolve_path, validate, validate_data

__all__ = [
    "DOCUMENT_KINDS",
    "GUIDELINE_CATEGORIES",
    "IMPERSONATED_ENTITY_CATEGORIES",
    "PUBLIC_INFO_CATEGORIES",
    "RISK_OBJECTIVES",
    "SCHEMA_VERSION",
    "SOCIAL_ENGINEERING_FACTORS",
    "AuthorityItem",
    "DefenseGuidelines",
    "GuidelineItem",
    "HighRiskVulnerability",
    "ImpersonatedEntity",
    "NetworkItem",
    "PersonalizedDefenseProfile",
    "PersonalizedVulnerabilityProfile",
    "PublicInfoItem",
    "RiskScenario",
    "ScenarioLink",
    "ScenarioSet",
    "TimeDependentRisk",
    "ValidationIssue",
    "ValidationReport",
    "WorkCycleItem",
    "canonical_dict_bytes",
    "canonical_line",
    "canonicalize",
    "check_links",
    "parse_document",
    "resolve_path",
    "schema_description",
    "validate",
    "validate_data",
]
