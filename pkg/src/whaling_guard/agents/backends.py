"""Pluggable chat-completion backends.

Three implementations ship with the package: a fixture-keyed deterministic
mock (acceptance and offline runs need no network or credentials), a
scripted sequence backend for failure-path tests, and a thin client for
OpenAI-compatible HTTP endpoints. Backends declaring
``descriptor.deterministic`` must return identical text for identical
(system, user, seed) inputs.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import urllib.error
import urllib.request
from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path

API_KEY_ENV = "WHALING_GUARD_API_KEY"

# Distinctive role phrases from the prompt templates, used by the mock to
# recover which agent kind a completion request belongs to.
TEMPLATE_MARKERS = {
    "pvp": "vulnerability-profile construction agent",
    "scenario_set": "risk-scenario modeling agent",
    "pdp": "defense-profile construction agent",
    "assess": "email risk analysis agent",
}


class BackendError(Exception):
    """Transport-level or availability failure of a chat backend."""

    code = "backend_error"


@dataclass(frozen=True)
class BackendDescriptor:
    name: str
    deterministic: bool


class ChatBackend(ABC):
    descriptor: BackendDescriptor

    @abstractmethod
    def complete(self, system_text: str, user_text: str, generation_seed: int = 0) -> str:
        """Return the model response for one system/user prompt pair."""


def stable_user_hash(user_text: str) -> str:
    return hashlib.sha256(user_text.encode("utf-8")).hexdigest()[:16]


def kind_from_system_text(system_text: str) -> str:
    for kind, marker in TEMPLATE_MARKERS.items():
        if marker in system_text:
            return kind
    return "default"


class MockBackend(ChatBackend):
    """Deterministic fixture-backed backend.

    Responses live under ``fixtures_dir/<kind>/``: the file named by the
    stable hash of the user text wins, otherwise ``default.json`` for that
    kind. Missing fixtures raise :class:`BackendError` so tests fail loudly
    rather than silently inventing content.
    """

    def __init__(self, fixtures_dir: Path | str):
        self.fixtures_dir = Path(fixtures_dir)
        self.descriptor = BackendDescriptor(name="mock", deterministic=True)
        self.calls: list[tuple[str, str]] = []

    def complete(self, system_text: str, user_text: str, generation_seed: int = 0) -> str:
        kind = kind_from_system_text(system_text)
        self.calls.append((kind, stable_user_hash(user_text)))
        keyed = self.fixtures_dir / kind / f"{stable_user_hash(user_text)}.json"
        fallback = self.fixtures_dir / kind / "default.json"
        for candidate in (keyed, fallback):
            if candidate.is_file():
                return candidate.read_text(encoding="utf-8")
        raise BackendError(f"no mock fixture for kind {kind!r} under {self.fixtures_dir}")


class ScriptedBackend(ChatBackend):
    """Replays a fixed sequence of responses; exhaustion is a transport error."""

    def __init__(self, responses: list[str], name: str = "scripted"):
        self._responses = list(responses)
        self._index = 0
        self._lock = threading.Lock()
        self.descriptor = BackendDescriptor(name=name, deterministic=False)

    def complete(self, system_text: str, user_text: str, generation_seed: int = 0) -> str:
        with self._lock:
            if self._index >= len(self._responses):
                raise BackendError("scripted backend exhausted")
            response = self._responses[self._index]
            self._index += 1
        return response


class OpenAICompatBackend(ChatBackend):
    """Minimal client for OpenAI-style ``/chat/completions`` endpoints.

    The credential comes from the ``WHALING_GUARD_API_KEY`` environment
    variable. Sampling is pinned to temperature 0 with the generation seed
    forwarded, but network models are still declared non-deterministic.
    """

    def __init__(self, base_url: str, model: str, timeout: float = 60.0):
        self.base_url = base_url.rstrip("/")
        self.model = model
        self.timeout = timeout
        self.descriptor = BackendDescriptor(name=f"openai:{model}", deterministic=False)

    def complete(self, system_text: str, user_text: str, generation_seed: int = 0) -> str:
        api_key = os.environ.get(API_KEY_ENV, "")
        if not api_key:
            raise BackendError(f"{API_KEY_ENV} is not set")
        body = {
            "model": self.model,
            "temperature": 0,
            "seed": generation_seed,
            "messages": [
                {"role": "system", "content": system_text},
                {"role": "user", "content": user_text},
            ],
        }
        request = urllib.request.Request(
            f"{self.base_url}/chat/completions",
            data=json.dumps(body).encode("utf-8"),
            headers={
                "Content-Type": "application/json",
                "Authorization": f"Bearer {api_key}",
            },
            method="POST",
        )
        try:
            with urllib.request.urlopen(request, timeout=self.timeout) as response:
                payload = json.loads(response.read().decode("utf-8"))
        except (urllib.error.URLError, TimeoutError, json.JSONDecodeError) as exc:
            raise BackendError(f"chat endpoint failure: {exc}") from exc
        try:
            return payload["choices"][0]["message"]["content"]
        except (KeyError, IndexError, TypeError) as exc:
            raise BackendError(f"unexpected chat endpoint payload: {exc}") from exc
