import os

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True,
    database=None,
)
settings.register_profile("thorough", deadline=None, max_examples=2000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

_criteria: dict[str, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion exercised by the test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if call.when == "call" or call.excinfo is not None:
        outcome = "pass" if call.excinfo is None else "fail"
        if call.when != "call" and outcome == "pass":
            return
        _criteria.setdefault(marker.args[0], []).append(outcome)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_criteria, key=lambda c: (int(c.rstrip("abcdefgh")), c)):
        results = _criteria[cid]
        status = "PASS" if all(r == "pass" for r in results) else "FAIL"
        terminalreporter.write_line(f"criterion {cid}: {status} ({len(results)} checks)")
