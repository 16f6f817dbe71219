"""Von Mises-Fisher scattering on the sphere: density, mean direction, sampling."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import rng
from .geometry import AngleDir, UnitVec3, rotation_from_pole, to_unit_vector
from .mathkit import DomainError, log_sinh

# Counter-space granularity for parallel sampling; chunk boundaries do not
# depend on the worker count.
SAMPLE_CHUNK = 65536

_LN_4PI = math.log(4.0 * math.pi)


@dataclass(frozen=True)
class VmfParams:
    """Mean azimuth/elevation (radians) and concentration ``kappa``."""

    mean_azimuth: float
    mean_elevation: float
    kappa: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise DomainError("kappa must be finite and >= 0")
        AngleDir(self.mean_azimuth, self.mean_elevation)

    @property
    def mean_direction(self) -> AngleDir:
        return AngleDir(self.mean_azimuth, self.mean_elevation)


def mean_doa(p: VmfParams) -> UnitVec3:
    return to_unit_vector(p.mean_direction)


def vmf_pdf(d: AngleDir, p: VmfParams) -> float:
    """Joint density of (azimuth, elevation), including the ``cos(elevation)`` area factor.

    Integrates to one over ``|azimuth| <= pi``, ``|elevation| <= pi/2``.
    """
    cos_el = math.cos(d.elevation)
    if cos_el <= 0.0:
        return 0.0
    if p.kappa == 0:
        return cos_el / (4.0 * math.pi)
    mu_el = p.mean_elevation
    t = math.cos(mu_el) * cos_el * math.cos(d.azimuth - p.mean_azimuth) + math.sin(mu_el) * math.sin(d.elevation)
    log_p = math.log(p.kappa) - _LN_4PI - log_sinh(p.kappa) + p.kappa * t + math.log(cos_el)
    return math.exp(log_p)


def _cos_to_mean(u: np.ndarray, kappa: float) -> np.ndarray:
    """Inverse CDF of the density proportional to exp(kappa t) on [-1, 1]."""
    if kappa == 0:
        return 2.0 * u - 1.0
    if kappa < 300.0:
        t = -1.0 + np.log1p(u * math.expm1(2.0 * kappa)) / kappa
    else:
        t = 1.0 + np.log(u + (1.0 - u) * math.exp(-2.0 * kappa)) / kappa
    return np.clip(t, -1.0, 1.0)


def _sample_range(p: VmfParams, seed: int, stream: int, start: int, count: int, rot: np.ndarray) -> np.ndarray:
    t = _cos_to_mean(rng.uniform(seed, stream, start, count), p.kappa)
    theta = 2.0 * math.pi * rng.uniform(seed, stream + 1, start, count)
    r = np.sqrt(np.maximum(0.0, 1.0 - t * t))
    local = np.column_stack((r * np.cos(theta), r * np.sin(theta), t))
    return local @ rot.T


def sample(p: VmfParams, n: int, seed: int, *, stream: int = 0, workers: int = 1) -> np.ndarray:
    """Draw ``n`` DOAs as an ``(n, 3)`` array of unit vectors.

    Uses uniform streams ``stream`` and ``stream + 1`` of the counter-based
    generator, indexed by sample number; the result is identical for every
    ``workers`` value.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    rot = rotation_from_pole(mean_doa(p))
    starts = list(range(0, n, SAMPLE_CHUNK))

    def run(start):
        return _sample_range(p, seed, stream, start, min(SAMPLE_CHUNK, n - start), rot)

    if workers <= 1 or len(starts) == 1:
        parts = [run(s) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, starts))
    return np.concatenate(parts, axis=0)
