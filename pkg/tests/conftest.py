import random
from fractions import Fraction

import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=30, deadline=None, derandomize=True)
settings.load_profile("ci")

CRITERION_LINES = []


@pytest.fixture
def rng():
    return random.Random(12345)


def rational_matrix(rng, rows, cols, lo=-4, hi=4, den=3):
    import numpy as np

    return np.array([[Fraction(rng.randint(lo, hi), rng.randint(1, den)) for _ in range(cols)]
                     for _ in range(rows)], dtype=object)


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERION_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
