import math
import sys
from pathlib import Path

import numpy as np
import pytest

from minmaxpoly.geometry import PointSet

sys.path.insert(0, str(Path(__file__).parent))

SQUARE_CENTER = [(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]


def regular_center(k: int, radius: float = 1.0) -> PointSet:
    ring = [(radius * math.cos(2 * math.pi * i / k), radius * math.sin(2 * math.pi * i / k))
            for i in range(k)]
    return PointSet.from_xy(ring + [(0.0, 0.0)])


def random_points(rng: np.random.Generator, n: int) -> PointSet:
    return PointSet.from_xy(rng.uniform(0, 1, (n, 2)))


def random_convex(rng: np.random.Generator, m: int) -> np.ndarray:
    """m points in convex position, counter-clockwise, on a random ellipse."""
    t = np.sort(rng.uniform(0, 2 * math.pi, m))
    while np.min(np.diff(np.r_[t, t[0] + 2 * math.pi])) < 1e-3:
        t = np.sort(rng.uniform(0, 2 * math.pi, m))
    ax, ay = rng.uniform(0.5, 2.0, 2)
    rot = rng.uniform(0, math.pi)
    c, s = math.cos(rot), math.sin(rot)
    x, y = ax * np.cos(t), ay * np.sin(t)
    return np.column_stack([c * x - s * y, s * x + c * y])


def interior_point(rng: np.random.Generator, poly: np.ndarray) -> tuple[float, float]:
    """Random convex combination of the corners (strictly inside)."""
    w = rng.dirichlet(np.ones(len(poly)))
    p = w @ poly
    return float(p[0]), float(p[1])


@pytest.fixture
def square_center() -> PointSet:
    return PointSet.from_xy(SQUARE_CENTER)


@pytest.fixture
def hexagon_center() -> PointSet:
    return regular_center(6)


@pytest.fixture
def triangle() -> PointSet:
    return PointSet.from_xy([(0, 0), (1, 0), (0, 1)])


# one line per acceptance criterion, echoed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
