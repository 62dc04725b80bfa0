"""Plain-directory persistence: profiles, assessments, decisions, allowlist.

Layout under the store root:

    profiles/<target_id>/v-<nonce>/{pvp,scenarios,pdp}.json
    profiles/<target_id>/CURRENT        # name of the active version dir
    assessments.log                     # one JSON record per line, append-only
    decisions.log                       # one JSON record per line, append-only
    allowlist.json                      # atomically rewritten list

Profile replacement is atomic: a new version directory is written and
fsynced, then the CURRENT pointer file is swapped with ``os.replace``;
readers always observe a complete old or new trio, never a mix. The two
logs are append-only with a single-writer lock; on startup a truncated
final line (crash artifact) is moved to ``<log>.quarantine`` and the log
is cut back to its last complete record.
"""

from __future__ import annotations

import json
import os
import secrets
import shutil
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from ..profiles.canonical import canonical_line, canonicalize, parse_document
from ..profiles.model import (
    PersonalizedDefenseProfile,
    PersonalizedVulnerabilityProfile,
    ScenarioSet,
    ValidationReport,
)
from ..profiles.validate import check_links, validate

DECISION_VALUES = ("verified_safe", "reported", "deferred")

PROFILE_FILES = {"pvp": "pvp.json", "scenario_set": "scenarios.json", "pdp": "pdp.json"}


class StoreError(Exception):
    def __init__(self, code: str, message: str, report: ValidationReport | None = None):
        super().__init__(message)
        self.code = code
        self.report = report


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass(frozen=True)
class ProfileTrio:
    target_id: str
    pvp: PersonalizedVulnerabilityProfile
    scenarios: ScenarioSet
    pdp: PersonalizedDefenseProfile
    raw: dict[str, bytes]


class Store:
    """Single-process store; all mutations funnel through one writer lock."""

    def __init__(self, root: Path | str, store_raw_messages: bool = False):
        self.root = Path(root)
        self.store_raw_messages = store_raw_messages
        self.root.mkdir(parents=True, exist_ok=True)
        (self.root / "profiles").mkdir(exist_ok=True)
        self._lock = threading.Lock()
        self._assessments: dict[str, dict] = {}
        self._order: list[str] = []
        self._decisions: dict[str, dict] = {}
        self._decision_order: list[str] = []
        self._recover_log(self._assessments_log)
        self._recover_log(self._decisions_log)
        self._load_logs()

    # -- log plumbing --------------------------------------------------------

    @property
    def _assessments_log(self) -> Path:
        return self.root / "assessments.log"

    @property
    def _decisions_log(self) -> Path:
        return self.root / "decisions.log"

    def _recover_log(self, path: Path) -> None:
        """Quarantine a truncated (or undecodable) final line left by a crash."""
        if not path.exists():
            return
        data = path.read_bytes()
        if not data:
            return
        broken: bytes | None = None
        if not data.endswith(b"\n"):
            cut = data.rfind(b"\n") + 1
            broken, data = data[cut:], data[:cut]
        else:
            lines = data.split(b"\n")
            last = lines[-2] if len(lines) >= 2 else b""
            try:
                json.loads(last.decode("utf-8"))
            except (UnicodeDecodeError, json.JSONDecodeError):
                broken = last
                data = b"\n".join(lines[:-2]) + (b"\n" if len(lines) > 2 else b"")
                if data == b"\n":
                    data = b""
        if broken is None:
            return
        with (path.parent / f"{path.name}.quarantine").open("ab") as fh:
            fh.write(broken.rstrip(b"\n") + b"\n")
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_bytes(data)
        os.replace(tmp, path)

    def _load_logs(self) -> None:
        if self._assessments_log.exists():
            for line in self._assessments_log.read_text(encoding="utf-8").splitlines():
                if not line:
                    continue
                record = json.loads(line)
                self._assessments[record["assessment_id"]] = record
                self._order.append(record["assessment_id"])
        if self._decisions_log.exists():
            for line in self._decisions_log.read_text(encoding="utf-8").splitlines():
                if not line:
                    continue
                record = json.loads(line)
                self._decisions[record["assessment_id"]] = record
                self._decision_order.append(record["assessment_id"])

    def _append(self, path: Path, record: dict) -> None:
        line = canonical_line(record) + "\n"
        with path.open("ab") as fh:
            fh.write(line.encode("utf-8"))
            fh.flush()
            os.fsync(fh.fileno())

    # -- profiles --------------------------------------------------------------

    def _target_dir(self, target_id: str) -> Path:
        if not target_id or "/" in target_id or target_id.startswith("."):
            raise StoreError("bad_target_id", f"invalid target id {target_id!r}")
        return self.root / "profiles" / target_id

    def _current_version(self, target_id: str) -> Path | None:
        pointer = self._target_dir(target_id) / "CURRENT"
        try:
            name = pointer.read_text(encoding="utf-8").strip()
        except FileNotFoundError:
            return None
        version_dir = self._target_dir(target_id) / name
        return version_dir if version_dir.is_dir() else None

    def put_profile(
        self,
        target_id: str,
        documents: dict[str, bytes],
        partial: bool = False,
    ) -> None:
        """Validate and atomically activate a profile trio.

        ``documents`` maps kind (pvp/scenario_set/pdp) to document bytes. A
        partial put merges the supplied documents over the currently active
        trio; the merged trio must still pass link checking before it
        replaces the active version.
        """
        unknown = set(documents) - set(PROFILE_FILES)
        if unknown:
            raise StoreError("bad_request", f"unknown document kinds: {sorted(unknown)}")
        if not partial and set(documents) != set(PROFILE_FILES):
            missing = sorted(set(PROFILE_FILES) - set(documents))
            raise StoreError("bad_request", f"full put requires the trio; missing {missing}")

        merged: dict[str, bytes] = {}
        if partial:
            current = self._current_version(target_id)
            if current is None and set(documents) != set(PROFILE_FILES):
                raise StoreError("unknown_target", f"no stored profile for {target_id!r} to merge into")
            if current is not None:
                for kind, filename in PROFILE_FILES.items():
                    merged[kind] = (current / filename).read_bytes()
        merged.update(documents)

        issues = []
        parsed: dict[str, Any] = {}
        for kind in ("pvp", "scenario_set", "pdp"):
            report = validate(merged[kind], kind)
            if not report.valid:
                issues.extend(report.errors)
            else:
                parsed[kind] = parse_document(merged[kind], kind)
        if issues:
            raise StoreError(
                "invalid_document", "profile documents failed validation",
                report=ValidationReport(errors=tuple(issues)),
            )
        link_report = check_links(parsed["pdp"], parsed["pvp"], parsed["scenario_set"])
        if not link_report.valid:
            raise StoreError("link_invalid", "trio failed link checking", report=link_report)
        if parsed["pvp"].target_id != target_id:
            raise StoreError(
                "target_mismatch",
                f"documents describe target {parsed['pvp'].target_id!r}, not {target_id!r}",
            )

        canonical = {kind: canonicalize(parsed[kind]) for kind in PROFILE_FILES}

        with self._lock:
            target_dir = self._target_dir(target_id)
            target_dir.mkdir(parents=True, exist_ok=True)
            previous = self._current_version(target_id)
            version_name = f"v-{secrets.token_hex(8)}"
            version_dir = target_dir / version_name
            version_dir.mkdir()
            for kind, filename in PROFILE_FILES.items():
                file_path = version_dir / filename
                with file_path.open("wb") as fh:
                    fh.write(canonical[kind])
                    fh.flush()
                    os.fsync(fh.fileno())
            pointer_tmp = target_dir / "CURRENT.tmp"
            pointer_tmp.write_text(version_name + "\n", encoding="utf-8")
            os.replace(pointer_tmp, target_dir / "CURRENT")
            # keep the immediately previous version for in-flight readers
            keep = {version_name, previous.name if previous else ""}
            for entry in target_dir.iterdir():
                if entry.is_dir() and entry.name not in keep:
                    shutil.rmtree(entry, ignore_errors=True)

    def get_profile(self, target_id: str) -> ProfileTrio:
        version_dir = self._current_version(target_id)
        if version_dir is None:
            raise StoreError("unknown_target", f"no stored profile for {target_id!r}")
        raw = {kind: (version_dir / filename).read_bytes() for kind, filename in PROFILE_FILES.items()}
        return ProfileTrio(
            target_id=target_id,
            pvp=parse_document(raw["pvp"], "pvp"),
            scenarios=parse_document(raw["scenario_set"], "scenario_set"),
            pdp=parse_document(raw["pdp"], "pdp"),
            raw=raw,
        )

    def list_targets(self) -> list[str]:
        profiles = self.root / "profiles"
        return sorted(
            entry.name
            for entry in profiles.iterdir()
            if entry.is_dir() and (entry / "CURRENT").exists()
        )

    # -- assessments and the triage queue ------------------------------------

    def save_assessment(
        self,
        target_id: str,
        assessment: dict,
        subject: str,
        from_address: str,
        raw_message: bytes | None = None,
    ) -> dict:
        assessment_id = secrets.token_hex(12)
        record = {
            "assessment_id": assessment_id,
            "target_id": target_id,
            "received_at": _now(),
            "summary": {
                "subject": subject,
                "from_address": from_address,
                "label": assessment["label"],
                "score": assessment["score"],
            },
            "assessment": assessment,
        }
        if self.store_raw_messages and raw_message is not None:
            import base64

            record["raw_message_b64"] = base64.b64encode(raw_message).decode("ascii")
        with self._lock:
            self._append(self._assessments_log, record)
            self._assessments[assessment_id] = record
            self._order.append(assessment_id)
        return record

    def get_assessment(self, assessment_id: str) -> dict:
        record = self._assessments.get(assessment_id)
        if record is None:
            raise StoreError("unknown_assessment", f"no assessment {assessment_id!r}")
        return record

    def queue(self, status: str | None = None) -> list[dict]:
        items = []
        for assessment_id in self._order:
            record = self._assessments[assessment_id]
            item_status = "decided" if assessment_id in self._decisions else "pending"
            if status and item_status != status:
                continue
            items.append(
                {
                    "assessment_id": assessment_id,
                    "status": item_status,
                    "summary": record["summary"],
                }
            )
        return items

    # -- decisions ---------------------------------------------------------------

    def record_decision(self, assessment_id: str, decision: str, note: str, actor: str) -> dict:
        if decision not in DECISION_VALUES:
            raise StoreError("bad_decision", f"decision must be one of {DECISION_VALUES}")
        with self._lock:
            if assessment_id not in self._assessments:
                raise StoreError("unknown_assessment", f"no assessment {assessment_id!r}")
            if assessment_id in self._decisions:
                raise StoreError("already_decided", f"assessment {assessment_id!r} already decided")
            record = {
                "decision_id": secrets.token_hex(12),
                "assessment_id": assessment_id,
                "decision": decision,
                "note": note,
                "actor": actor,
                "decided_at": _now(),
            }
            self._append(self._decisions_log, record)
            self._decisions[assessment_id] = record
            self._decision_order.append(assessment_id)
        return record

    def list_decisions(self) -> list[dict]:
        return [self._decisions[a] for a in self._decision_order]

    # -- allowlist -----------------------------------------------------------------

    @property
    def _allowlist_file(self) -> Path:
        return self.root / "allowlist.json"

    def _read_allowlist(self) -> list[dict]:
        if not self._allowlist_file.exists():
            return []
        return json.loads(self._allowlist_file.read_text(encoding="utf-8"))

    def _write_allowlist(self, entries: list[dict]) -> None:
        tmp = self._allowlist_file.with_suffix(".tmp")
        tmp.write_text(
            json.dumps(entries, ensure_ascii=False, indent=2, sort_keys=True) + "\n",
            encoding="utf-8",
        )
        os.replace(tmp, self._allowlist_file)

    def add_allowlist(
        self, address_or_domain: str, added_by: str, linked_decision_id: str | None = None
    ) -> dict:
        key = address_or_domain.strip().lower()
        if not key:
            raise StoreError("bad_request", "address_or_domain must be nonempty")
        with self._lock:
            entries = self._read_allowlist()
            if any(e["address_or_domain"] == key for e in entries):
                raise StoreError("duplicate_allowlist", f"{key!r} already allowlisted")
            entry = {
                "address_or_domain": key,
                "added_by": added_by,
                "linked_decision_id": linked_decision_id,
                "added_at": _now(),
            }
            entries.append(entry)
            self._write_allowlist(entries)
        return entry

    def list_allowlist(self) -> list[dict]:
        return self._read_allowlist()

    def remove_allowlist(self, address_or_domain: str) -> None:
        key = address_or_domain.strip().lower()
        with self._lock:
            entries = self._read_allowlist()
            remaining = [e for e in entries if e["address_or_domain"] != key]
            if len(remaining) == len(entries):
                raise StoreError("unknown_allowlist", f"{key!r} is not allowlisted")
            self._write_allowlist(remaining)

    def is_allowlisted(self, address: str, domain: str) -> bool:
        address = address.lower()
        domain = domain.lower()
        for entry in self._read_allowlist():
            key = entry["address_or_domain"]
            if key == address or (domain and key == domain):
                return True
        return False
