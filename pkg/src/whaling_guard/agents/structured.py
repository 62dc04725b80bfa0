"""Extraction of structured JSON from raw chat-model output."""

from __future__ import annotations

import json
from typing import Any


def _first_object_span(text: str) -> str:
    start = text.find("{")
    if start < 0:
        return text
    depth = 0
    in_string = False
    escaping = False
    for idx in range(start, len(text)):
        char = text[idx]
        if escaping:
            escaping = False
            continue
        if char == "\\" and in_string:
            escaping = True
            continue
        if char == '"':
            in_string = not in_string
            continue
        if in_string:
            continue
        if char == "{":
            depth += 1
        elif char == "}":
            depth -= 1
            if depth == 0:
                return text[start : idx + 1]
    return text


def extract_json_object(raw: str) -> dict[str, Any]:
    """Pull the first JSON object out of model output.

    Tolerates surrounding prose and markdown code fences. Raises
    ``ValueError`` when no parseable object is present.
    """
    candidate = raw.strip()
    if candidate.startswith("```"):
        lines = [line for line in candidate.splitlines() if not line.strip().startswith("```")]
        candidate = "\n".join(lines).strip()
    candidate = _first_object_span(candidate)
    try:
        parsed = json.loads(candidate)
    except json.JSONDecodeError as exc:
        raise ValueError(f"model output is not valid JSON: {exc}") from exc
    if not isinstance(parsed, dict):
        raise ValueError("model output must be a JSON object")
    return parsed
