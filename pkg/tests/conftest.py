import time
from types import SimpleNamespace

import pytest

from qzeno.robustness import table1_report
from qzeno.sampling import RngSeed

TABLE_SEED = RngSeed(20080601)
TABLE_TRIALS = 100_000

_acceptance = []


@pytest.fixture(scope="session")
def table1_grid():
    """Full robustness grid at 1e5 trials per cell, computed once per session."""
    start = time.perf_counter()
    cells = table1_report(trials=TABLE_TRIALS, seed=TABLE_SEED)
    elapsed = time.perf_counter() - start
    return SimpleNamespace(cells={(c.config.k, c.config.eps_max): c for c in cells}, seconds=elapsed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _acceptance.append((marker.args[0], "PASS" if rep.passed else "FAIL"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label, status in _acceptance:
        terminalreporter.write_line(f"[{status}] {label}")
