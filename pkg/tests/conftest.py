import os

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from cyclic_cbd.core import consistent_system

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def pr_box():
    return consistent_system([0.5] * 4, e_b=[1, 1, 1, -1], label="PR box")


@pytest.fixture
def tsirelson():
    h = np.sqrt(2) / 2
    return consistent_system([0.5] * 4, e_b=[h, h, h, -h], label="Tsirelson")


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
