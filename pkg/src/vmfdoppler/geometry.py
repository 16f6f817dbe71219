"""Directions on the unit sphere and per-path Doppler shifts.

Angles are radians throughout. Azimuth lives in (-pi, pi], elevation in
[-pi/2, pi/2]; at the poles the azimuth is stored as 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .mathkit import DomainError

_UNIT_TOL = 1e-12


@dataclass(frozen=True)
class AngleDir:
    azimuth: float
    elevation: float

    def __post_init__(self):
        if not (math.isfinite(self.azimuth) and math.isfinite(self.elevation)):
            raise DomainError("angles must be finite")
        if not (-math.pi < self.azimuth <= math.pi):
            raise DomainError(f"azimuth {self.azimuth} outside (-pi, pi]")
        if not (-math.pi / 2 <= self.elevation <= math.pi / 2):
            raise DomainError(f"elevation {self.elevation} outside [-pi/2, pi/2]")


@dataclass(frozen=True)
class UnitVec3:
    x: float
    y: float
    z: float

    def __post_init__(self):
        n2 = self.x * self.x + self.y * self.y + self.z * self.z
        if not abs(n2 - 1.0) <= _UNIT_TOL:
            raise DomainError(f"not a unit vector (squared norm {n2!r})")

    @classmethod
    def normalized(cls, x: float, y: float, z: float) -> "UnitVec3":
        n = math.sqrt(x * x + y * y + z * z)
        if n == 0 or not math.isfinite(n):
            raise DomainError("cannot normalize a zero or non-finite vector")
        return cls(x / n, y / n, z / n)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def dot(self, other: "UnitVec3") -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z


@dataclass(frozen=True)
class MotionSpec:
    """Linear motion of the mobile antenna: speed (m/s), heading, wavelength (m)."""

    speed: float
    direction: UnitVec3
    wavelength: float

    def __post_init__(self):
        if not (math.isfinite(self.speed) and self.speed >= 0):
            raise DomainError("speed must be finite and >= 0")
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise DomainError("wavelength must be finite and > 0")

    @property
    def f_max(self) -> float:
        """Maximum Doppler shift in Hz."""
        return self.speed / self.wavelength

    @property
    def velocity(self) -> np.ndarray:
        return self.speed * self.direction.as_array()


def to_unit_vector(d: AngleDir) -> UnitVec3:
    ce = math.cos(d.elevation)
    return UnitVec3(math.cos(d.azimuth) * ce, math.sin(d.azimuth) * ce, math.sin(d.elevation))


def to_angles(k: UnitVec3) -> AngleDir:
    """Inverse of :func:`to_unit_vector`."""
    n2 = k.x * k.x + k.y * k.y + k.z * k.z
    if abs(n2 - 1.0) > 1e-9:
        raise DomainError(f"not a unit vector (squared norm {n2!r})")
    rho = math.hypot(k.x, k.y)
    elevation = math.atan2(k.z, rho)
    if rho == 0.0:
        return AngleDir(0.0, elevation)
    azimuth = math.atan2(k.y, k.x)
    if azimuth == -math.pi:
        azimuth = math.pi
    return AngleDir(azimuth, elevation)


def doppler_shift(doa, motion: MotionSpec):
    """Doppler shift in Hz of arrivals from ``doa``.

    ``doa`` is a :class:`UnitVec3` or an array of unit vectors with shape
    ``(..., 3)``; the cosine is clamped so results stay within ``[-f_m, f_m]``.
    """
    if isinstance(doa, UnitVec3):
        c = min(1.0, max(-1.0, doa.dot(motion.direction)))
        return motion.f_max * c
    c = np.clip(np.asarray(doa, dtype=float) @ motion.direction.as_array(), -1.0, 1.0)
    return motion.f_max * c


def cos_beta(mean_doa: UnitVec3, motion: MotionSpec) -> float:
    """Cosine of the angle between the mean DOA and the motion direction."""
    if motion.speed == 0:
        raise DomainError("motion direction undefined at zero speed")
    return min(1.0, max(-1.0, mean_doa.dot(motion.direction)))


def rotation_from_pole(u) -> np.ndarray:
    """Rotation matrix ``R`` with ``R @ (0, 0, 1) = u``.

    Rodrigues' formula is ill-conditioned as ``u`` approaches the south
    pole, so southern-hemisphere targets are reached as a half-turn about
    the x-axis followed by the rotation that takes the pole to ``-u``.
    The case ``u = (0, 0, -1)`` then reduces to the half-turn itself.
    """
    u = u.as_array() if isinstance(u, UnitVec3) else np.asarray(u, dtype=float)
    if u[2] < 0:
        return _rodrigues(-u) @ np.diag([1.0, -1.0, -1.0])
    return _rodrigues(u)


def _rodrigues(u: np.ndarray) -> np.ndarray:
    x, y, z = u
    # axis = e_z x u = (-y, x, 0); R = I + [axis]x + [axis]x^2 / (1 + z)
    k = np.array([[0.0, 0.0, x], [0.0, 0.0, y], [-x, -y, 0.0]])
    return np.eye(3) + k + (k @ k) / (1.0 + z)
