import itertools

import pytest


def grid_pairs(lo: int, hi: int):
    return [(m, n) for m, n in itertools.product(range(lo, hi + 1), repeat=2) if m * n >= 6]


def even_pairs(lo: int, hi: int):
    return [(m, n) for m, n in itertools.product(range(lo, hi + 1, 2), repeat=2)]


@pytest.fixture(autouse=True)
def _clear_tol(monkeypatch):
    monkeypatch.delenv("FLATGRID_TOL", raising=False)


# criterion number -> list of (outcome, detail); filled by the acceptance suite
CRITERIA = {}


def pytest_runtest_logreport(report):
    marker = dict(report.user_properties).get("criterion")
    if marker is None or report.when != "call" and not (report.when == "setup" and report.failed):
        return
    if report.when == "call" and hasattr(report, "wasxfail"):
        outcome = "FAIL"
    else:
        outcome = "PASS" if report.passed else "FAIL"
    CRITERIA.setdefault(marker, []).append((outcome, report.nodeid.split("::")[-1]))


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            item.user_properties.append(("criterion", mark.args[0]))


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        results = CRITERIA[n]
        bad = [name for outcome, name in results if outcome == "FAIL"]
        status = "FAIL" if bad else "PASS"
        detail = f" (failing: {', '.join(bad)})" if bad else f" ({len(results)} checks)"
        terminalreporter.write_line(f"criterion {n}: {status}{detail}")
