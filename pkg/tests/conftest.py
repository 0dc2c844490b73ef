import cmath
import math

import pytest

from nervewind.periods import PeriodTriangle, half_periods, period_triangle

T_STANDARD = 2.0 + 0.5j


@pytest.fixture(scope="session")
def standard_triangle():
    """Period triangle for t = 2 + 0.5i, computed once per session."""
    return period_triangle(half_periods(T_STANDARD))


@pytest.fixture
def equilateral():
    return PeriodTriangle.from_sides(
        1.0, cmath.exp(2j * math.pi / 3), cmath.exp(4j * math.pi / 3)
    )
