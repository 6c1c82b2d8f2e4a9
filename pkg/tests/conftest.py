import random
from fractions import Fraction

import pytest
from hypothesis import settings

from mildmix.numbers import default_context

settings.register_profile("repo", max_examples=60, deadline=None)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def ctx():
    return default_context()


@pytest.fixture(scope="session")
def golden(ctx):
    """(sqrt5 - 1) / 2 in the default context."""
    return (ctx.sqrt(5) - 1) / 2


@pytest.fixture
def rng():
    return random.Random(20240601)


def rand_lengths(rng, d, den=60):
    return tuple(Fraction(rng.randint(1, den), den) for _ in range(d))


def pytest_terminal_summary(terminalreporter):
    from helpers import ACCEPTANCE_LINES

    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
