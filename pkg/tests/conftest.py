import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from lumpspace.kahler import fs_profile, l2_profile
from lumpspace.quadrature import build_grid

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def grid():
    return build_grid(128, 128, 4.0)


@pytest.fixture(scope="session")
def small_grid():
    return build_grid(48, 48, 4.0)


@pytest.fixture(scope="session")
def l2():
    return l2_profile(4.0, 4.0)


@pytest.fixture(scope="session")
def fs1():
    return fs_profile(1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)


# One summary line per acceptance criterion, printed after the run.
ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion():
    def record(number, title, ok, detail):
        ACCEPTANCE_LINES[number] = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
