import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, {"title": title, "passed": 0, "failed": 0, "xfailed": 0, "seconds": 0.0})
    if rep.when == "call":
        entry["seconds"] += rep.duration
        if hasattr(rep, "wasxfail") and rep.skipped:
            entry["xfailed"] += 1
        elif rep.passed:
            entry["passed"] += 1
        else:
            entry["failed"] += 1
    elif rep.failed:
        entry["failed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        verdict = "PASS" if e["failed"] == 0 and e["passed"] > 0 else "FAIL"
        extra = f", {e['xfailed']} expected failure(s)" if e["xfailed"] else ""
        terminalreporter.write_line(
            f"AC{number} {verdict}: {e['title']} "
            f"({e['passed']} passed, {e['failed']} failed{extra}; {e['seconds']:.2f}s)")
