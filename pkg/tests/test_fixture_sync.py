"""The frontend's recorded contract fixtures must match the live service.

Re-records every fixture in-process and compares with the committed
files, so a service response change cannot silently strand the console's
contract tests on stale data.
"""

import importlib.util
import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).parent.parent
RECORDER = REPO_ROOT / "frontend" / "scripts" / "record_fixtures.py"
FIXTURES = REPO_ROOT / "frontend" / "fixtures"


def load_recorder():
    spec = importlib.util.spec_from_file_location("record_fixtures", RECORDER)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


@pytest.mark.skipif(not FIXTURES.exists(), reason="fixtures not recorded")
def test_recorded_fixtures_match_live_service():
    recorder = load_recorder()
    fresh = recorder.record()
    committed = {
        path.stem: json.loads(path.read_text()) for path in FIXTURES.glob("*.json")
    }
    assert set(fresh) == set(committed)
    for name, doc in fresh.items():
        assert committed[name] == doc, f"fixture {name} is stale; re-run the recorder"
