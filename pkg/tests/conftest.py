from pathlib import Path

import pytest
from hypothesis import settings

settings.register_profile("fixed", derandomize=True, deadline=None, max_examples=60)
settings.load_profile("fixed")

FIXTURE_DIR = Path(__file__).parent / "fixtures"

ACCEPTANCE_LINES = []


@pytest.fixture
def oeis_fixtures():
    return FIXTURE_DIR / "oeis"


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
