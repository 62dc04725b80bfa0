"""Deterministic serialization for profile documents.

Canonical form: UTF-8 JSON with lexicographically sorted keys, two-space
indentation, and a trailing newline. Equal documents always serialize to
identical bytes, so stored files are diff-able and pipeline output can be
compared byte-for-byte.
"""

from __future__ import annotations

import json
from typing import Any

from .model import DOCUMENT_TYPES


def canonical_dict_bytes(data: Any) -> bytes:
    """Serialize a plain JSON-compatible value to canonical bytes."""
    return (json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n").encode("utf-8")


def canonical_line(data: Any) -> str:
    """Single-line canonical form, used for append-only record logs."""
    return json.dumps(data, ensure_ascii=False, sort_keys=True, separators=(",", ":"))


def canonicalize(document: Any) -> bytes:
    """Canonical bytes of a typed profile document (or any ``to_dict`` value)."""
    data = document.to_dict() if hasattr(document, "to_dict") else document
    return canonical_dict_bytes(data)


def parse_document(document: bytes | str, kind: str):
    """Parse canonical (or any JSON) bytes into the typed document for ``kind``.

    Raises ``ValueError`` on malformed syntax or unknown kind; callers that
    need a structured error report should use :func:`whaling_guard.profiles.validate.validate`
    first.
    """
    if kind not in DOCUMENT_TYPES:
        raise ValueError(f"unknown document kind: {kind!r}")
    if isinstance(document, bytes):
        document = document.decode("utf-8")
    data = json.loads(document)
    if not isinstance(data, dict):
        raise ValueError("document root must be an object")
    return DOCUMENT_TYPES[kind].from_dict(data)
