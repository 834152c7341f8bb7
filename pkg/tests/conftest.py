import re

_results: dict[int, str] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)$", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.failed:
        if report.failed or _results.get(k) != "FAIL":
            _results[k] = "FAIL" if report.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import CRITERIA
    terminalreporter.section("acceptance criteria")
    for k in sorted(_results):
        terminalreporter.write_line(f"criterion {k} ({CRITERIA[k]}): {_results[k]}")
