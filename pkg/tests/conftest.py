import itertools

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repo", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")


def span(rows):
    """All GF(2) combinations of integer rows, as a set (brute-force oracle)."""
    words = {0}
    for r in rows:
        words |= {w ^ r for w in words}
    return words


@pytest.fixture(scope="session")
def span_of():
    return span


def pytest_terminal_summary(terminalreporter):
    try:
        from tests import test_acceptance
    except ImportError:  # pragma: no cover
        return
    results = getattr(test_acceptance, "RESULTS", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(results, key=lambda k: int(k)):
        status, secs, detail = results[key]
        terminalreporter.write_line(f"criterion {key:>2}: {status}  ({secs:.1f}s)  {detail}")
