from __future__ import annotations

import difflib
from pathlib import Path

import pytest

GOLDEN_ROOT = Path(__file__).parent / "golden"


def pytest_addoption(parser):
    parser.addoption(
        "--update-goldens",
        action="store_true",
        default=False,
        help="rewrite golden files from current emitter output",
    )


@pytest.fixture
def golden_check(request):
    update = request.config.getoption("--update-goldens")

    def check(fixture_name: str, target_name: str, filename: str, content: str):
        path = GOLDEN_ROOT / fixture_name / target_name / filename
        if update:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(content, encoding="utf-8")
            return
        assert path.exists(), f"missing golden file {path}; run pytest --update-goldens"
        expected = path.read_text(encoding="utf-8")
        if content != expected:
            diff = "\n".join(
                difflib.unified_diff(expected.splitlines(), content.splitlines(), "golden", "generated", lineterm="")
            )
            raise AssertionError(f"output drifted from {path}:\n{diff}")

    return check
