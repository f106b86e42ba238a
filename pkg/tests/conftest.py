import os
import sys

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from rlematch import matchers  # noqa: E402

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria: list[tuple[int, bool, str]] = []


@pytest.fixture(params=sorted(matchers.BACKENDS))
def backend(request):
    return request.param


@pytest.fixture
def report():
    """Record an acceptance criterion outcome; returns ``ok`` for asserting."""

    def _report(number: int, ok: bool, detail: str) -> bool:
        _criteria.append((number, ok, detail))
        print(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        return ok

    return _report


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number, ok, detail in sorted(_criteria):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
