import os

import pytest
from hypothesis import HealthCheck, settings

from fsing.report import load_fixture

settings.register_profile(
    "fsing",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fsing"))

SEED = int(os.environ.get("FSING_SEED", "0"))


@pytest.fixture(scope="session")
def fixture_data():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = load_fixture(name)
        return cache[name]

    return get


# -- acceptance summary: one PASS/FAIL line per numbered criterion -----------

_CRITERIA = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n = mark.args[0]
    ok = call.excinfo is None
    if hasattr(item, "wasxfail") or item.get_closest_marker("xfail") is not None:
        # an expected failure still means the stated clause does not hold
        ok = False
    prev = _CRITERIA.get(n, (True, []))
    notes = prev[1] + ([mark.kwargs["note"]] if not ok and "note" in mark.kwargs else [])
    _CRITERIA[n] = (prev[0] and ok, notes)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        ok, notes = _CRITERIA[n]
        line = f"criterion {n}: {'PASS' if ok else 'FAIL'}"
        if notes:
            line += " (" + "; ".join(notes) + ")"
        terminalreporter.write_line(line)
