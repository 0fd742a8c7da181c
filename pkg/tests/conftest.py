import numpy as np
import pytest
from hypothesis import settings

from hankelforge import _backend

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture(params=sorted(_backend.BACKENDS))
def backend(request):
    return request.param


@pytest.fixture
def rng():
    return np.random.default_rng(20261017)


def circle_coefficients(fn, count, radius=0.05, points=512):
    """Taylor coefficients of ``fn`` by sampling a small circle (independent of series code)."""
    z = radius * np.exp(2j * np.pi * np.arange(points) / points)
    return np.fft.fft(fn(z))[:count] / points / radius ** np.arange(count)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
