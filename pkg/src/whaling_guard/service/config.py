"""Service configuration: plain key-value text file plus environment overrides.

Format: one ``key = value`` per line, ``#`` comments. Scoring-weight
overrides use a ``weights.`` prefix (e.g. ``weights.credential_points = 25``).
``WHALING_GUARD_TOKEN`` in the environment overrides the bearer token.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from pathlib import Path

from ..engine.weights import DEFAULT_WEIGHTS, ScoringWeights

TOKEN_ENV = "WHALING_GUARD_TOKEN"

_TRUE_VALUES = {"1", "true", "yes", "on"}


@dataclass(frozen=True)
class ServiceConfig:
    store_path: Path = Path("./store")
    bind_host: str = "127.0.0.1"
    bind_port: int = 8035
    bearer_token: str = ""
    backend: str = "mock"
    mock_fixtures_dir: Path = Path("./fixtures/mock_responses")
    openai_base_url: str = "https://api.openai.com/v1"
    openai_model: str = "gpt-4o-mini"
    lexicon_dir: Path | None = None
    store_raw_messages: bool = False
    weights: ScoringWeights = field(default_factory=lambda: DEFAULT_WEIGHTS)


def parse_config_text(text: str) -> dict[str, str]:
    values: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"config line {lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        values[key.strip()] = value.strip()
    return values


def load_config(path: Path | str | None = None) -> ServiceConfig:
    values: dict[str, str] = {}
    if path is not None:
        values = parse_config_text(Path(path).read_text(encoding="utf-8"))

    weight_overrides = {
        key[len("weights.") :]: value
        for key, value in values.items()
        if key.startswith("weights.")
    }
    weights = ScoringWeights.from_overrides(weight_overrides) if weight_overrides else DEFAULT_WEIGHTS

    token = os.environ.get(TOKEN_ENV, values.get("bearer_token", ""))

    lexicon_dir = values.get("lexicon_dir", "")
    return ServiceConfig(
        store_path=Path(values.get("store_path", "./store")),
        bind_host=values.get("bind_host", "127.0.0.1"),
        bind_port=int(values.get("bind_port", "8035")),
        bearer_token=token,
        backend=values.get("backend", "mock"),
        mock_fixtures_dir=Path(values.get("mock_fixtures_dir", "./fixtures/mock_responses")),
        openai_base_url=values.get("openai_base_url", "https://api.openai.com/v1"),
        openai_model=values.get("openai_model", "gpt-4o-mini"),
        lexicon_dir=Path(lexicon_dir) if lexicon_dir else None,
        store_raw_messages=values.get("store_raw_messages", "false").lower() in _TRUE_VALUES,
        weights=weights,
    )
