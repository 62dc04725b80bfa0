"""Deliverable-content screening for generated documents.

Generated profiles and scenarios must stay abstract: nothing in them may
read like a sendable email. Every string field is scanned line by line
against a versioned pattern file (greeting lines, subject-line markers,
signature blocks); any hit flags the document and the pipeline rejects it
as a validation failure.
"""

from __future__ import annotations

import re
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Any, Iterator


@lru_cache(maxsize=4)
def load_prohibited_patterns(path: str | None = None) -> tuple[tuple[str, re.Pattern], ...]:
    if path:
        text = Path(path).read_text(encoding="utf-8")
    else:
        text = (
            resources.files("whaling_guard.agents")
            .joinpath("data/prohibited_patterns.txt")
            .read_text(encoding="utf-8")
        )
    patterns = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, _, pattern = line.partition("\t")
        patterns.append((name.strip(), re.compile(pattern.strip(), re.IGNORECASE)))
    return tuple(patterns)


def _string_leaves(value: Any) -> Iterator[str]:
    if isinstance(value, str):
        yield value
    elif isinstance(value, dict):
        for v in value.values():
            yield from _string_leaves(v)
    elif isinstance(value, (list, tuple)):
        for v in value:
            yield from _string_leaves(v)


def check_prohibited_output(kind: str, document: Any) -> list[str]:
    """Return the sorted set of prohibition flag names raised by a document."""
    data = document.to_dict() if hasattr(document, "to_dict") else document
    patterns = load_prohibited_patterns()
    flags: set[str] = set()
    for text in _string_leaves(data):
        for line in text.splitlines():
            for name, pattern in patterns:
                if pattern.search(line):
                    flags.add(name)
    return sorted(flags)
