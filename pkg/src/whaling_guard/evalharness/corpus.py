"""Built-in evaluation corpus: hand-authored template emails with ground truths.

The corpus ships inside the package (``corpus_builtin/``) together with the
fixture profile trio it is scored against. Messages are committed template
text, never model-generated, so the artifact itself contains nothing
resembling deliverable attack content.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from ..engine.weights import LABELS
from ..profiles.canonical import parse_document
from ..profiles.model import (
    PersonalizedDefenseProfile,
    PersonalizedVulnerabilityProfile,
    ScenarioSet,
)


class CorpusError(Exception):
    code = "corpus_error"


@dataclass(frozen=True)
class CorpusEntry:
    entry_id: str
    raw_message: bytes
    ground_truth_label: str
    scenario_tag: str
    notes: str = ""


def builtin_corpus_path() -> Path:
    return Path(str(resources.files("whaling_guard.evalharness").joinpath("corpus_builtin")))


def load_manifest(path: Path | str | None = None) -> dict:
    root = Path(path) if path is not None else builtin_corpus_path()
    manifest_file = root / "manifest.json"
    if not manifest_file.is_file():
        raise CorpusError(f"missing manifest at {manifest_file}")
    try:
        manifest = json.loads(manifest_file.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise CorpusError(f"malformed manifest: {exc}") from exc
    if not isinstance(manifest, dict) or not isinstance(manifest.get("entries"), list):
        raise CorpusError("manifest must be an object with an entries array")
    return manifest


def load_corpus(path: Path | str | None = None) -> list[CorpusEntry]:
    """Load all corpus entries listed by the manifest under ``path``.

    Raises :class:`CorpusError` for a missing manifest, duplicate entry ids,
    invalid ground-truth labels, or missing message files.
    """
    root = Path(path) if path is not None else builtin_corpus_path()
    manifest = load_manifest(root)
    entries: list[CorpusEntry] = []
    seen: set[str] = set()
    for item in manifest["entries"]:
        entry_id = str(item.get("entry_id", ""))
        if not entry_id:
            raise CorpusError("manifest entry without entry_id")
        if entry_id in seen:
            raise CorpusError(f"duplicate entry_id {entry_id!r}")
        seen.add(entry_id)
        label = str(item.get("ground_truth_label", ""))
        if label not in LABELS:
            raise CorpusError(f"entry {entry_id!r} has invalid ground_truth_label {label!r}")
        message_file = root / str(item.get("file", ""))
        if not message_file.is_file():
            raise CorpusError(f"entry {entry_id!r} message file missing: {message_file}")
        entries.append(
            CorpusEntry(
                entry_id=entry_id,
                raw_message=message_file.read_bytes(),
                ground_truth_label=label,
                scenario_tag=str(item.get("scenario_tag", "")),
                notes=str(item.get("notes", "")),
            )
        )
    return entries


def builtin_profile() -> tuple[PersonalizedVulnerabilityProfile, ScenarioSet, PersonalizedDefenseProfile]:
    """The fixture profile trio the built-in corpus is scored against."""
    root = builtin_corpus_path() / "profile"
    pvp = parse_document((root / "pvp.json").read_bytes(), "pvp")
    scenarios = parse_document((root / "scenarios.json").read_bytes(), "scenario_set")
    pdp = parse_document((root / "pdp.json").read_bytes(), "pdp")
    return pvp, scenarios, pdp
