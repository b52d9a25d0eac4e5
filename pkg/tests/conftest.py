import random

import pytest

from metricsprawl.harness.data import generate


@pytest.fixture(scope="session")
def uniform2d():
    return generate("uniform(2,1000)", seed=42).points


@pytest.fixture(scope="session")
def clusters2d():
    return generate("clusters(2,1000,10,0.02)", seed=7).points


@pytest.fixture(scope="session")
def words500():
    return generate("words(500)", seed=3).points


@pytest.fixture
def small2d():
    rng = random.Random(11)
    return [(rng.random(), rng.random()) for _ in range(200)]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
