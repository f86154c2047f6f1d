import pytest

_CRITERIA: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(cid, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    cid, title = marker.args
    failed = report.failed
    passed = report.when == "call" and report.passed
    prev = _CRITERIA.get(cid, (title, "PASS"))[1]
    if failed:
        _CRITERIA[cid] = (title, "FAIL")
    elif passed and prev != "FAIL":
        _CRITERIA[cid] = (title, "PASS")


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_CRITERIA):
        title, status = _CRITERIA[cid]
        terminalreporter.write_line(f"{cid} {status} {title}")
