import numpy as np
import pytest

from pkahler import Profile


@pytest.fixture
def linear():
    return Profile.linear(1.0)


@pytest.fixture
def quadratic():
    return Profile.quadratic(1.0)


@pytest.fixture(params=["linear", "quadratic"])
def builtin(request):
    return Profile.builtin(request.param, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def record_criterion(request):
    """Collect one summary line per acceptance criterion."""
    return request.config.acceptance_lines.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
