import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from epglab.catalog import catalog  # noqa: E402

_criteria: dict[int, tuple[str, list[bool]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion covered by a test")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    crit = report.user_properties and dict(report.user_properties).get("criterion")
    if crit:
        num, title = crit
        _criteria.setdefault(num, (title, []))[1].append(report.passed)


@pytest.fixture(autouse=True)
def _record_criterion(request):
    marker = request.node.get_closest_marker("criterion")
    if marker is not None:
        request.node.user_properties.append(("criterion", tuple(marker.args)))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        title, results = _criteria[num]
        verdict = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {num}: {verdict}  {title}")


@pytest.fixture(scope="session")
def small_catalog():
    return catalog(32)


@pytest.fixture(scope="session")
def catalog64():
    return catalog(64)
