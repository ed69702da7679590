import pytest

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.fixture
def measured(request):
    """Dict the test fills with the numbers it checked; echoed in the summary."""
    values = {}
    request.node.measured = values
    return values


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, {"title": title, "ok": True, "ran": False})
    if report.when == "call":
        entry["ran"] = True
    if report.failed:
        entry["ok"] = False
    if report.when == "teardown":
        entry.setdefault("measured", {}).update(getattr(item, "measured", {}))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        entry = _CRITERIA[number]
        status = "PASS" if entry["ok"] and entry["ran"] else "FAIL"
        details = ", ".join(f"{k}={v}" for k, v in entry.get("measured", {}).items())
        line = f"criterion {number} {status}: {entry['title']}"
        terminalreporter.write_line(line + (f" [{details}]" if details else ""))
