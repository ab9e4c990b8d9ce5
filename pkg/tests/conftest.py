import pytest

from ctxcat.corpus import TransactionDatabase

_acceptance_results: dict[int, tuple[str, str]] = {}


@pytest.fixture
def four_tx_db():
    """{a,b,c}, {a,b}, {a,c}, {b}"""
    return TransactionDatabase([["a", "b", "c"], ["a", "b"], ["a", "c"], ["b"]])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        status = "PASS" if report.passed else ("SKIP" if report.skipped else "FAIL")
        prev = _acceptance_results.get(number)
        if prev is None or prev[1] == "PASS":
            _acceptance_results[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_results):
        title, status = _acceptance_results[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
