from __future__ import annotations

import json
from datetime import date
from pathlib import Path

import pytest

from whaling_guard.agents.backends import MockBackend
from whaling_guard.evalharness.corpus import builtin_corpus_path, builtin_profile, load_corpus, load_manifest
from whaling_guard.ingest.features import default_lexicons

REPO_ROOT = Path(__file__).resolve().parents[1]
FIXTURES = REPO_ROOT / "fixtures"


@pytest.fixture(scope="session")
def trio():
    return builtin_profile()


@pytest.fixture(scope="session")
def pvp(trio):
    return trio[0]


@pytest.fixture(scope="session")
def scenarios(trio):
    return trio[1]


@pytest.fixture(scope="session")
def pdp(trio):
    return trio[2]


@pytest.fixture(scope="session")
def trio_dicts():
    root = builtin_corpus_path() / "profile"
    return {
        "pvp": json.loads((root / "pvp.json").read_text(encoding="utf-8")),
        "scenario_set": json.loads((root / "scenarios.json").read_text(encoding="utf-8")),
        "pdp": json.loads((root / "pdp.json").read_text(encoding="utf-8")),
    }


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def manifest():
    return load_manifest()


@pytest.fixture(scope="session")
def analysis_date(manifest):
    return date.fromisoformat(manifest["analysis_date"])


@pytest.fixture(scope="session")
def lexicons():
    return default_lexicons()


@pytest.fixture()
def mock_backend():
    return MockBackend(FIXTURES / "mock_responses")
