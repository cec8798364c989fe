import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


def brute_step_norm(values, p, weight_values=None):
    """Direct cell sum of ``(int |f|^p w)^(1/p)`` without rescaling."""
    values = np.asarray(values, dtype=float)
    w = np.ones_like(values) if weight_values is None else np.asarray(weight_values, dtype=float)
    return float((np.sum(np.abs(values) ** p * w) / values.size) ** (1 / p))


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
