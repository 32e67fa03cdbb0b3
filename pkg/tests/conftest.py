import numpy as np
import pytest

from fho.stochastic import RngStream, levy_steps, make_levy_params


@pytest.fixture(scope="session")
def levy_samples():
    """10**6 draws per beta, shared across the tail tests."""
    return {beta: levy_steps(RngStream(12345), make_levy_params(beta), 10**6) for beta in (0.8, 1.5)}


@pytest.fixture
def rng():
    return RngStream(2024)


def assert_inside(space, x):
    x = np.asarray(x)
    assert np.all(x >= space.lower) and np.all(x <= space.upper)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
