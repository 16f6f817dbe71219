import math

import pytest

from vmfdoppler.geometry import MotionSpec, UnitVec3

F_MAX = 100.0


@pytest.fixture
def motion_x():
    """Motion along +x with f_max = 100 Hz."""
    return MotionSpec(10.0, UnitVec3(1.0, 0.0, 0.0), 0.1)


def random_unit(rng):
    v = rng.normal(size=3)
    v /= math.sqrt(v @ v)
    return UnitVec3(*v)
