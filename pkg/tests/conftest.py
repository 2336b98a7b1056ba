import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

# criterion number -> (title, passed so far, detail)
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    m = item.get_closest_marker("criterion")
    if m is None:
        return
    number, title = m.args
    prev = _criteria.get(number, (title, True, ""))
    detail = prev[2] or item.stash.get(DETAIL, "")
    _criteria[number] = (title, prev[1] and not report.failed, detail)


DETAIL = pytest.StashKey[str]()


@pytest.fixture
def detail(request):
    """Let an acceptance test attach a short measurement to its summary line."""
    def put(text):
        request.node.stash[DETAIL] = text
    return put


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, ok, detail = _criteria[number]
        tail = f"  [{detail}]" if detail else ""
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}{tail}")
