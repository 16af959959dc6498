import pytest

from nonarch import fixtures
from nonarch.ultrametric import adjoin_basepoint, two_adic_space


@pytest.fixture
def two_adic():
    return two_adic_space(4)


@pytest.fixture
def two_adic_pointed():
    return adjoin_basepoint(two_adic_space(4))


@pytest.fixture(scope="session")
def fixture_spaces():
    return fixtures.fixture_spaces()


_acceptance: list[tuple[str, str, float]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        _acceptance.append((name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome, duration in _acceptance:
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({duration:.2f}s)")
