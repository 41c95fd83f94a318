from pathlib import Path

import pytest

DATA_DIR = Path(__file__).parent / "data"

_criteria: dict[int, tuple[str, str]] = {}
_details: dict[int, list[str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call":
        _details.setdefault(number, []).extend(
            value for key, value in item.user_properties if key == "detail")
    status = None
    if report.when == "call":
        status = "PASS" if report.passed else "FAIL"
    elif report.skipped:
        status = "SKIP"
    elif report.failed:
        status = "FAIL"
    if status:
        previous = _criteria.get(number, ("PASS", title))[0]
        # any failing/skipped part of a criterion decides its line
        rank = {"PASS": 0, "SKIP": 1, "FAIL": 2}
        if rank[status] >= rank[previous] or number not in _criteria:
            _criteria[number] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        status, title = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
        for line in _details.get(number, []):
            terminalreporter.write_line(f"    {line}")


@pytest.fixture(scope="session")
def camera_pgm() -> Path:
    return DATA_DIR / "camera.pgm"
