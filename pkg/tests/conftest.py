import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from qginibre import experiments

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def ctx():
    """Shared n=300, 20-replica spectra for the statistical checks."""
    return experiments.Context(seed=experiments.DEFAULT_SEED, n=300, replicas=20)


@pytest.fixture
def gen():
    return np.random.default_rng(12345)



def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "LINES", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
