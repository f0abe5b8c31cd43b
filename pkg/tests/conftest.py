import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_RESULTS: dict[int, tuple[str, str, float, float]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None or rep.when != "call":
        return
    num, title, limit = mark.args
    _RESULTS[num] = ("PASS" if rep.passed else "FAIL", title, rep.duration, limit)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        status, title, took, limit = _RESULTS[num]
        terminalreporter.write_line(f"criterion {num:>2}: {status}  {title}  ({took:.2f}s, limit {limit:g}s)")
