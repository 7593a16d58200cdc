import pytest

CRITERIA = {
    1: "oracle equivalence of saturation",
    2: "closure laws, joins and saturated meets",
    3: "leastness against the semantic oracle",
    4: "convergent law suite",
    5: "formal law suite and weakening witness",
    6: "tensor laws and coherence",
    7: "co-semigroup round trips",
    8: "presentations: Dot, bullet vs m-preorder, leq-left",
    9: "free pipeline",
    10: "differential map check",
}

_outcomes: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for n in getattr(report, "criteria", ()):
        ok = report.passed
        _outcomes[n] = _outcomes.get(n, True) and ok


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    rep.criteria = [m.args[0] for m in item.iter_markers("criterion")]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n in _outcomes:
            status = "PASS" if _outcomes[n] else "FAIL"
        else:
            status = "NOT RUN"
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {CRITERIA[n]}")
