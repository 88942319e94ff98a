"""Per-criterion PASS/FAIL lines for the acceptance suite.

Tests tagged ``@pytest.mark.criterion(n, "title")`` are grouped by ``n``; a
criterion passes only if every tagged test passed.  A strict ``xfail`` marks
a clause that is known not to hold; it keeps the run green but the
criterion is reported as FAIL with the xfail reason.
"""

import time
from collections import defaultdict

import pytest

_results: dict[int, list] = defaultdict(list)
_titles: dict[int, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    n, title = mark.args
    _titles[n] = title
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        if hasattr(rep, "wasxfail"):
            status = ("xfail", rep.wasxfail)
        elif rep.passed:
            status = ("pass", "")
        else:
            status = ("fail", item.name)
        _results[n].append(status)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        statuses = _results[n]
        ok = all(s == "pass" for s, _ in statuses)
        notes = [note for s, note in statuses if s != "pass"]
        line = f"criterion {n:2d} {'PASS' if ok else 'FAIL'}  {_titles[n]}"
        if notes:
            line += "  [" + "; ".join(notes) + "]"
        terminalreporter.write_line(line)


@pytest.fixture
def stopwatch():
    start = time.perf_counter()
    return lambda: time.perf_counter() - start
