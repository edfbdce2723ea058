import time

import pytest

_RESULTS = []


class _Criterion:
    def __init__(self, number, title):
        self.number = number
        self.title = title
        self.detail = ""
        self.passed = False
        self.t0 = time.perf_counter()

    @property
    def elapsed(self):
        return time.perf_counter() - self.t0


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the outcome is the test's outcome."""
    marker = request.node.get_closest_marker("criterion")
    c = _Criterion(*marker.args)
    yield c
    rep = getattr(request.node, "rep_call", None)
    c.passed = bool(rep and rep.passed)
    c.xfail = bool(rep and hasattr(rep, "wasxfail"))
    _RESULTS.append(c)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for c in sorted(_RESULTS, key=lambda c: str(c.number)):
        status = "XFAIL" if c.xfail else ("PASS" if c.passed else "FAIL")
        terminalreporter.write_line(f"[{status}] {c.number}. {c.title} ({c.detail})")
