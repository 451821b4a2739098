import pytest

from evilreals.evilgf import conditional_moments

_acceptance = []


@pytest.fixture(scope="session")
def moments_10_666():
    """Exact moments up to order 16 at b=10, n=666 (about half a minute, shared)."""
    return conditional_moments(10, 666, 16)


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    if "test_acceptance.py" not in report.nodeid:
        return
    label = report.nodeid.split("::")[-1]
    _acceptance.append((label, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, outcome in _acceptance:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {label}")
