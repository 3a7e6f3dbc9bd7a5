"""Shared fixtures: the catalog polytopes and small test helpers."""

from fractions import Fraction

import pytest

from toricstab import catalog


@pytest.fixture(scope="session")
def cp2():
    return catalog("cp2")


@pytest.fixture(scope="session")
def square():
    return catalog("cp1xcp1")


@pytest.fixture(scope="session")
def blowup1():
    return catalog("cp2_1blowup")


@pytest.fixture(scope="session")
def pentagon():
    return catalog("cp2_2blowup")


@pytest.fixture(scope="session")
def hexagon11():
    return catalog("cp2_3blowup")


@pytest.fixture(scope="session")
def hexagon23():
    return catalog("hexagon(2,3)")


def shoelace(points):
    """Independent polygon area oracle from a CCW vertex cycle."""
    total = Fraction(0)
    m = len(points)
    for i in range(m):
        x1, y1 = points[i]
        x2, y2 = points[(i + 1) % m]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2
