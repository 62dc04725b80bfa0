"""Structural validation and cross-document link checking.

Validation never raises for content problems: every violation is collected
into a :class:`ValidationReport` with a slash-separated element path (list
indices are zero-based, e.g. ``work_cycles/0/months``) and a stable error
code. Malformed syntax is itself reported as a single ``parse_error``.
"""

from __future__ import annotations

import json
from datetime import datetime
from typing import Any, Iterable, Sequence

from .model import (
    DOCUMENT_KINDS,
    GUIDELINE_CATEGORIES,
    IMPERSONATED_ENTITY_CATEGORIES,
    NETWORK_RELATIONS,
    PUBLIC_INFO_CATEGORIES,
    RISK_OBJECTIVES,
    SOCIAL_ENGINEERING_FACTORS,
    PersonalizedDefenseProfile,
    PersonalizedVulnerabilityProfile,
    RiskScenario,
    ScenarioSet,
    ValidationIssue,
    ValidationReport,
)


def _join(*parts: str) -> str:
    return "/".join(p for p in parts if p != "")


class _Collector:
    def __init__(self) -> None:
        self.errors: list[ValidationIssue] = []

    def add(self, path: str, code: str, message: str) -> None:
        self.errors.append(ValidationIssue(path=path, code=code, message=message))

    def report(self) -> ValidationReport:
        return ValidationReport(errors=tuple(self.errors))


def _expect_str(c: _Collector, data: dict, key: str, path: str, *, nonempty: bool = False) -> str | None:
    if key not in data:
        if nonempty:
            c.add(_join(path, key), "missing_field", f"{key} is required")
        return None
    value = data[key]
    if not isinstance(value, str):
        c.add(_join(path, key), "invalid_type", f"{key} must be a string")
        return None
    if nonempty and not value:
        c.add(_join(path, key), "empty_value", f"{key} must be nonempty")
        return None
    return value


def _expect_list(c: _Collector, data: dict, key: str, path: str) -> list | None:
    """Absent list fields are treated as empty; present fields must be arrays."""
    if key not in data or data[key] is None:
        return []
    value = data[key]
    if not isinstance(value, list):
        c.add(_join(path, key), "invalid_type", f"{key} must be an array")
        return None
    return value


def _check_str_items(c: _Collector, items: list, path: str) -> None:
    for i, item in enumerate(items):
        if not isinstance(item, str):
            c.add(f"{path}/{i}", "invalid_type", "expected a string")


def _check_months(c: _Collector, value: Any, path: str, *, required_nonempty: bool = True) -> None:
    if not isinstance(value, list):
        c.add(path, "invalid_type", "months must be an array of integers")
        return
    if required_nonempty and not value:
        c.add(path, "empty_set", "months must be nonempty")
        return
    for m in value:
        if not isinstance(m, int) or isinstance(m, bool) or not 1 <= m <= 12:
            c.add(path, "out_of_range", f"month value {m!r} outside 1..12")
            return


def _check_enum(c: _Collector, value: Any, allowed: Iterable[str], path: str) -> None:
    if not isinstance(value, str) or value not in allowed:
        c.add(path, "invalid_enum", f"{value!r} is not a declared member")


def _each_object(c: _Collector, items: list, path: str):
    for i, item in enumerate(items):
        if not isinstance(item, dict):
            c.add(f"{path}/{i}", "invalid_type", "expected an object")
            continue
        yield i, item


def _validate_pvp(c: _Collector, data: dict) -> None:
    _expect_str(c, data, "target_id", "", nonempty=True)
    _expect_str(c, data, "target_name", "", nonempty=True)
    _expect_str(c, data, "organization", "")

    items = _expect_list(c, data, "positions_and_authority", "")
    if items is not None:
        for i, item in _each_object(c, items, "positions_and_authority"):
            _expect_str(c, item, "title", f"positions_and_authority/{i}")
            for key in ("duties", "authority_scope"):
                sub = _expect_list(c, item, key, f"positions_and_authority/{i}")
                if sub is not None:
                    _check_str_items(c, sub, f"positions_and_authority/{i}/{key}")

    items = _expect_list(c, data, "public_information", "")
    if items is not None:
        for i, item in _each_object(c, items, "public_information"):
            _check_enum(c, item.get("category"), PUBLIC_INFO_CATEGORIES, f"public_information/{i}/category")
            _expect_str(c, item, "source", f"public_information/{i}")
            _expect_str(c, item, "summary", f"public_information/{i}")

    items = _expect_list(c, data, "work_cycles", "")
    if items is not None:
        for i, item in _each_object(c, items, "work_cycles"):
            _expect_str(c, item, "name", f"work_cycles/{i}")
            _check_months(c, item.get("months", []), f"work_cycles/{i}/months")

    items = _expect_list(c, data, "human_network", "")
    if items is not None:
        for i, item in _each_object(c, items, "human_network"):
            _check_enum(c, item.get("relation"), NETWORK_RELATIONS, f"human_network/{i}/relation")
            _expect_str(c, item, "counterpart", f"human_network/{i}")

    for key in ("communication_habits", "likely_senders", "candidate_attack_contexts"):
        lst = _expect_list(c, data, key, "")
        if lst is not None:
            _check_str_items(c, lst, key)


def _validate_scenario(c: _Collector, data: dict, path: str) -> None:
    _expect_str(c, data, "scenario_id", path, nonempty=True)

    entity = data.get("impersonated_entity")
    if not isinstance(entity, dict):
        c.add(_join(path, "impersonated_entity"), "invalid_type", "impersonated_entity must be an object")
    else:
        _check_enum(
            c,
            entity.get("category"),
            IMPERSONATED_ENTITY_CATEGORIES,
            _join(path, "impersonated_entity/category"),
        )
        _expect_str(c, entity, "sender_role", _join(path, "impersonated_entity"))

    _check_enum(c, data.get("risk_objective"), RISK_OBJECTIVES, _join(path, "risk_objective"))
    _expect_str(c, data, "work_context", path)

    timing = data.get("timing_months")
    if timing is not None:
        _check_months(c, timing, _join(path, "timing_months"))

    factors = data.get("social_engineering_factors")
    if not isinstance(factors, list):
        c.add(_join(path, "social_engineering_factors"), "invalid_type", "must be an array")
    elif not factors:
        c.add(_join(path, "social_engineering_factors"), "empty_set", "at least one factor required")
    else:
        for i, f in enumerate(factors):
            _check_enum(c, f, SOCIAL_ENGINEERING_FACTORS, _join(path, f"social_engineering_factors/{i}"))

    for key in ("success_conditions", "defensive_considerations"):
        lst = _expect_list(c, data, key, path)
        if lst is not None:
            _check_str_items(c, lst, _join(path, key))


def _validate_scenario_set(c: _Collector, data: dict) -> None:
    scenarios = _expect_list(c, data, "scenarios", "")
    if scenarios is None:
        return
    seen: set[str] = set()
    for i, item in _each_object(c, scenarios, "scenarios"):
        _validate_scenario(c, item, f"scenarios/{i}")
        sid = item.get("scenario_id")
        if isinstance(sid, str) and sid:
            if sid in seen:
                c.add(f"scenarios/{i}/scenario_id", "duplicate_id", f"scenario_id {sid!r} already used")
            seen.add(sid)


def _validate_pdp(c: _Collector, data: dict) -> None:
    _expect_str(c, data, "target_id", "", nonempty=True)

    items = _expect_list(c, data, "high_risk_vulnerabilities", "")
    if items is not None:
        for i, item in _each_object(c, items, "high_risk_vulnerabilities"):
            _expect_str(c, item, "pvp_path", f"high_risk_vulnerabilities/{i}", nonempty=True)
            _expect_str(c, item, "rationale", f"high_risk_vulnerabilities/{i}")

    items = _expect_list(c, data, "time_dependent_risks", "")
    if items is not None:
        for i, item in _each_object(c, items, "time_dependent_risks"):
            _check_months(c, item.get("months", []), f"time_dependent_risks/{i}/months")
            ids = _expect_list(c, item, "scenario_ids", f"time_dependent_risks/{i}")
            if ids is not None:
                _check_str_items(c, ids, f"time_dependent_risks/{i}/scenario_ids")

    items = _expect_list(c, data, "scenario_links", "")
    if items is not None:
        for i, item in _each_object(c, items, "scenario_links"):
            _expect_str(c, item, "scenario_id", f"scenario_links/{i}", nonempty=True)
            _expect_str(c, item, "pvp_path", f"scenario_links/{i}", nonempty=True)

    guidelines = data.get("defense_guidelines")
    if not isinstance(guidelines, dict):
        c.add("defense_guidelines", "missing_field", "defense_guidelines object is required")
    else:
        nonempty_lists = 0
        for cat in GUIDELINE_CATEGORIES:
            if cat not in guidelines:
                c.add(f"defense_guidelines/{cat}", "missing_field", f"category {cat} is required")
                continue
            lst = guidelines[cat]
            if not isinstance(lst, list):
                c.add(f"defense_guidelines/{cat}", "invalid_type", "category must be an array")
                continue
            if lst:
                nonempty_lists += 1
            for i, item in _each_object(c, lst, f"defense_guidelines/{cat}"):
                _expect_str(c, item, "text", f"defense_guidelines/{cat}/{i}", nonempty=True)
                ids = _expect_list(c, item, "scenario_ids", f"defense_guidelines/{cat}/{i}")
                if ids is not None:
                    _check_str_items(c, ids, f"defense_guidelines/{cat}/{i}/scenario_ids")
        if nonempty_lists == 0 and all(cat in guidelines for cat in GUIDELINE_CATEGORIES):
            c.add("defense_guidelines", "all_guidelines_empty", "all six guideline categories are empty")

    generated_at = data.get("generated_at")
    if isinstance(generated_at, str) and generated_at:
        try:
            datetime.fromisoformat(generated_at)
        except ValueError:
            c.add("generated_at", "invalid_timestamp", "generated_at must be an ISO-8601 timestamp")


_VALIDATORS = {
    "pvp": _validate_pvp,
    "scenario_set": _validate_scenario_set,
    "pdp": _validate_pdp,
}


def validate_data(data: Any, kind: str) -> ValidationReport:
    """Validate an already-parsed JSON value against the invariants of ``kind``."""
    if kind not in DOCUMENT_KINDS:
        raise ValueError(f"unknown document kind: {kind!r}")
    c = _Collector()
    if not isinstance(data, dict):
        c.add("", "invalid_type", "document root must be an object")
        return c.report()
    _VALIDATORS[kind](c, data)
    return c.report()


def validate(document: bytes | str, kind: str) -> ValidationReport:
    """Validate raw document text. Syntax failures become a single ``parse_error``."""
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            c = _Collector()
            c.add("", "parse_error", f"document is not UTF-8: {exc}")
            return c.report()
    try:
        data = json.loads(document)
    except json.JSONDecodeError as exc:
        c = _Collector()
        c.add("", "parse_error", f"malformed document: {exc}")
        return c.report()
    return validate_data(data, kind)


def resolve_path(data: Any, path: str) -> tuple[bool, Any]:
    """Resolve a slash-separated element path against a plain JSON value.

    Returns ``(True, value)`` when every segment resolves; list segments must
    be zero-based decimal indices.
    """
    if not path:
        return False, None
    node = data
    for seg in path.split("/"):
        if isinstance(node, dict):
            if seg not in node:
                return False, None
            node = node[seg]
        elif isinstance(node, list):
            if not seg.isdigit():
                return False, None
            idx = int(seg)
            if idx >= len(node):
                return False, None
            node = node[idx]
        else:
            return False, None
    return True, node


def check_links(
    pdp: PersonalizedDefenseProfile,
    pvp: PersonalizedVulnerabilityProfile,
    scenarios: ScenarioSet | Sequence[RiskScenario],
) -> ValidationReport:
    """Verify every cross-document reference in a PDP.

    Reports dangling scenario ids, pvp paths that do not address an existing
    PVP element, and a ``target_mismatch`` when the PDP was built for a
    different target than the supplied PVP. The result is independent of
    scenario ordering.
    """
    c = _Collector()
    if isinstance(scenarios, ScenarioSet):
        ids = scenarios.ids()
    else:
        ids = frozenset(s.scenario_id for s in scenarios)
    pvp_data = pvp.to_dict()

    if pdp.target_id != pvp.target_id:
        c.add(
            "target_id",
            "target_mismatch",
            f"pdp targets {pdp.target_id!r} but pvp targets {pvp.target_id!r}",
        )

    def check_sid(sid: str, path: str) -> None:
        if sid not in ids:
            c.add(path, "dangling_scenario_ref", f"scenario_id {sid!r} not found in scenario set")

    def check_pvp_path(p: str, path: str) -> None:
        ok, _ = resolve_path(pvp_data, p)
        if not ok:
            c.add(path, "unresolvable_pvp_path", f"pvp_path {p!r} does not resolve")

    for i, item in enumerate(pdp.high_risk_vulnerabilities):
        check_pvp_path(item.pvp_path, f"high_risk_vulnerabilities/{i}/pvp_path")
    for i, item in enumerate(pdp.time_dependent_risks):
        for j, sid in enumerate(item.scenario_ids):
            check_sid(sid, f"time_dependent_risks/{i}/scenario_ids/{j}")
    for i, link in enumerate(pdp.scenario_links):
        check_sid(link.scenario_id, f"scenario_links/{i}/scenario_id")
        check_pvp_path(link.pvp_path, f"scenario_links/{i}/pvp_path")
    for cat in GUIDELINE_CATEGORIES:
        for i, item in enumerate(pdp.defense_guidelines.category(cat)):
            for j, sid in enumerate(item.scenario_ids):
                check_sid(sid, f"defense_guidelines/{cat}/{i}/scenario_ids/{j}")

    return c.report()
