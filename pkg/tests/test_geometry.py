import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from vmfdoppler.geometry import (
    AngleDir,
    MotionSpec,
    UnitVec3,
    cos_beta,
    doppler_shift,
    rotation_from_pole,
    to_angles,
    to_unit_vector,
)
from vmfdoppler.mathkit import DomainError

azimuths = st.floats(-math.pi, math.pi, exclude_min=True)
elevations = st.floats(-math.pi / 2, math.pi / 2)


def unit_vectors():
    return st.builds(lambda a, e: to_unit_vector(AngleDir(a, e)), azimuths, elevations)


@pytest.mark.parametrize(
    "az, el, expected",
    [
        (0.0, 0.0, (1.0, 0.0, 0.0)),
        (math.pi / 2, 0.0, (0.0, 1.0, 0.0)),
        (math.pi / 4, math.pi / 4, (0.5, 0.5, math.sqrt(2) / 2)),
    ],
)
def test_to_unit_vector(az, el, expected):
    k = to_unit_vector(AngleDir(az, el))
    assert (k.x, k.y, k.z) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "vec, az, el",
    [
        ((0.0, 0.0, 1.0), 0.0, math.pi / 2),
        ((1.0, 0.0, 0.0), 0.0, 0.0),
        ((0.5, 0.5, math.sqrt(2) / 2), math.pi / 4, math.pi / 4),
    ],
)
def test_to_angles(vec, az, el):
    d = to_angles(UnitVec3(*vec))
    assert d.azimuth == pytest.approx(az, abs=1e-15)
    assert d.elevation == pytest.approx(el, abs=1e-15)


def test_to_angles_negative_x_axis_maps_into_range():
    assert to_angles(UnitVec3(-1.0, -0.0, 0.0)).azimuth == math.pi


def test_to_angles_rejects_non_unit():
    k = object.__new__(UnitVec3)
    for name, v in zip("xyz", (1.0, 1e-4, 0.0)):
        object.__setattr__(k, name, v)  # skips construction-time validation
    with pytest.raises(DomainError):
        to_angles(k)
    with pytest.raises(DomainError):
        UnitVec3(1.0, 1.0, 0.0)


@pytest.mark.parametrize("bad", [(math.pi + 0.1, 0.0), (-math.pi, 0.0), (0.0, 1.6)])
def test_angle_ranges(bad):
    with pytest.raises(DomainError):
        AngleDir(*bad)


@given(azimuths, elevations)
def test_unit_norm(az, el):
    k = to_unit_vector(AngleDir(az, el))
    assert abs(math.sqrt(k.x**2 + k.y**2 + k.z**2) - 1.0) <= 1e-15


@given(unit_vectors())
def test_round_trip(k):
    back = to_unit_vector(to_angles(k))
    assert (back.x, back.y, back.z) == pytest.approx((k.x, k.y, k.z), abs=1e-12)


def test_doppler_shift_examples():
    motion = MotionSpec(30.0, UnitVec3(1.0, 0.0, 0.0), 0.1)
    assert doppler_shift(UnitVec3(1.0, 0.0, 0.0), motion) == pytest.approx(300.0, rel=1e-15)
    assert doppler_shift(UnitVec3(0.0, 1.0, 0.0), motion) == 0.0
    sixty = to_unit_vector(AngleDir(math.pi / 3, 0.0))
    assert doppler_shift(sixty, motion) == pytest.approx(150.0, rel=1e-14)


@given(unit_vectors(), unit_vectors(), st.floats(0.1, 100))
def test_doppler_shift_linear_and_bounded(k, v, speed):
    m1 = MotionSpec(speed, v, 0.2)
    m2 = MotionSpec(2 * speed, v, 0.2)
    f = doppler_shift(k, m1)
    assert abs(f) <= m1.f_max
    assert doppler_shift(k, m2) == pytest.approx(2 * f, rel=1e-12, abs=1e-12)


def test_doppler_shift_vectorized_matches_scalar():
    rng = np.random.default_rng(0)
    v = rng.normal(size=(50, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    motion = MotionSpec(7.0, UnitVec3.normalized(1, 2, 3), 0.05)
    assert np.allclose(doppler_shift(v, motion), [doppler_shift(UnitVec3(*r), motion) for r in v], rtol=0, atol=1e-12)


@given(unit_vectors(), unit_vectors(), st.integers(0, 2**32 - 1))
def test_rotation_invariance(k, v, seed):
    rot = Rotation.random(random_state=seed).as_matrix()
    motion = MotionSpec(12.0, v, 0.1)
    k_rot = rot @ k.as_array()
    v_rot = UnitVec3.normalized(*(rot @ v.as_array()))
    rotated = MotionSpec(12.0, v_rot, 0.1)
    assert doppler_shift(k_rot[None, :], rotated)[0] == pytest.approx(doppler_shift(k, motion), abs=1e-12)


def test_cos_beta():
    v = UnitVec3(0.0, 0.0, 1.0)
    motion = MotionSpec(1.0, v, 1.0)
    assert cos_beta(v, motion) == 1.0
    assert cos_beta(UnitVec3(1.0, 0.0, 0.0), motion) == 0.0
    assert cos_beta(UnitVec3(0.0, 0.0, -1.0), motion) == -1.0
    with pytest.raises(DomainError):
        cos_beta(v, MotionSpec(0.0, v, 1.0))


@given(unit_vectors(), unit_vectors())
def test_cos_beta_clamped(k, v):
    assert -1.0 <= cos_beta(k, MotionSpec(1.0, v, 1.0)) <= 1.0


@given(unit_vectors())
def test_rotation_from_pole(u):
    r = rotation_from_pole(u)
    assert np.allclose(r @ [0.0, 0.0, 1.0], u.as_array(), atol=1e-12)
    assert np.allclose(r.T @ r, np.eye(3), atol=1e-12)
    assert np.linalg.det(r) == pytest.approx(1.0, abs=1e-12)


def test_rotation_from_south_pole():
    r = rotation_from_pole(UnitVec3(0.0, 0.0, -1.0))
    assert np.allclose(r @ [0, 0, 1], [0, 0, -1])
    assert np.linalg.det(r) == pytest.approx(1.0)


def test_motion_spec():
    m = MotionSpec(30.0, UnitVec3(0.0, 1.0, 0.0), 0.1)
    assert m.f_max == pytest.approx(300.0)
    assert np.allclose(m.velocity, [0, 30, 0])
    with pytest.raises(DomainError):
        MotionSpec(-1.0, UnitVec3(0.0, 1.0, 0.0), 0.1)
    with pytest.raises(DomainError):
        MotionSpec(1.0, UnitVec3(0.0, 1.0, 0.0), 0.0)
