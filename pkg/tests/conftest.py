import re

import numpy as np
import pytest

from tiler_scope import solids

_CRITERION = re.compile(r"test_criterion_(\d+)_")
_results: dict[int, list[str]] = {}


@pytest.fixture
def cube():
    return solids.unit_cube()


@pytest.fixture
def corner_tet():
    return solids.corner_tetrahedron()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_runtest_logreport(report):
    match = _CRITERION.search(report.nodeid)
    if not match:
        return
    if report.when == "call" or report.outcome == "failed":
        _results.setdefault(int(match.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        outcomes = _results[number]
        status = "PASS" if all(o == "passed" for o in outcomes) else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status} ({len(outcomes)} checks)")
