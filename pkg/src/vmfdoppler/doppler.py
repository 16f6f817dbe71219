"""Closed-form Doppler spectrum of a channel with vMF-distributed scatterers.

With the spectrum normalized to unit power it is the probability density of
the Doppler shift. It depends on the scattering geometry only through
``cos_beta``, the cosine of the angle between the mean direction of arrival
and the motion direction::

    p(f) = kappa / (2 f_m sinh kappa) * exp(b f / f_m) * I0(a sqrt(1 - (f / f_m)^2))

    a = kappa * sqrt(1 - cos_beta^2),   b = kappa * cos_beta

The CDF is computed independently, by integrating the elevation marginal
along the Doppler cone (see :func:`cdf`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .geometry import MotionSpec, cos_beta as _cos_beta
from .mathkit import (
    DEFAULT_QUADRATURE,
    DomainError,
    LN2,
    QuadratureSpec,
    bessel_i0e,
    integrate,
    log_bessel_i0,
    log_sinh,
)
from .vmf import VmfParams, mean_doa


@dataclass(frozen=True)
class DopplerParams:
    kappa: float
    cos_beta: float
    f_max: float

    def __post_init__(self):
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise DomainError("kappa must be finite and >= 0")
        if not (math.isfinite(self.f_max) and self.f_max > 0):
            raise DomainError("f_max must be finite and > 0")
        if not math.isfinite(self.cos_beta):
            raise DomainError("cos_beta must be finite")
        object.__setattr__(self, "cos_beta", min(1.0, max(-1.0, float(self.cos_beta))))

    @classmethod
    def from_geometry(cls, scatter: VmfParams, motion: MotionSpec) -> "DopplerParams":
        return cls(scatter.kappa, _cos_beta(mean_doa(scatter), motion), motion.f_max)

    @classmethod
    def from_beta(cls, kappa: float, beta: float, f_max: float) -> "DopplerParams":
        """``beta`` in radians."""
        return cls(kappa, math.cos(beta), f_max)

    @property
    def a(self) -> float:
        """Concentration component perpendicular to the motion."""
        return self.kappa * math.sqrt(max(0.0, 1.0 - self.cos_beta * self.cos_beta))

    @property
    def b(self) -> float:
        """Concentration component along the motion."""
        return self.kappa * self.cos_beta


@dataclass(frozen=True)
class DopplerSpectrum:
    frequencies: np.ndarray
    densities: np.ndarray
    params: DopplerParams

    def total_mass(self) -> float:
        """Trapezoidal integral of the tabulated density."""
        return float(np.trapezoid(self.densities, self.frequencies))


def log_pdf_ab(f: float, kappa: float, a: float, b: float, f_max: float) -> float:
    """Log-density for explicit perpendicular/parallel components ``a`` and ``b``."""
    x = f / f_max
    if not (kappa > 0 and abs(x) <= 1.0):
        raise DomainError("log density needs kappa > 0 and |f| <= f_max")
    arg = a * math.sqrt(max(0.0, 1.0 - x * x))
    return math.log(kappa) - log_sinh(kappa) - LN2 - math.log(f_max) + b * x + log_bessel_i0(arg)


def log_pdf(f: float, p: DopplerParams) -> float:
    """Natural log of :func:`pdf`; requires ``kappa > 0`` and ``|f| <= f_max``."""
    return log_pdf_ab(f, p.kappa, p.a, p.b, p.f_max)


def pdf(f: float, p: DopplerParams) -> float:
    """Doppler density in 1/Hz; zero outside ``[-f_max, f_max]``."""
    if abs(f) > p.f_max:
        return 0.0
    if p.kappa == 0:
        return 0.5 / p.f_max
    return math.exp(log_pdf(f, p))


def endpoint_density(sign: int, p: DopplerParams) -> float:
    """Density at ``f = sign * f_max``, where the Bessel factor is exactly one."""
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    if p.kappa == 0:
        return 0.5 / p.f_max
    return math.exp(math.log(p.kappa) - log_sinh(p.kappa) - LN2 - math.log(p.f_max) + sign * p.b)


def deterministic_limit(p: DopplerParams) -> float:
    """Location (Hz) of the delta the spectrum collapses to as kappa grows."""
    return p.f_max * p.cos_beta


def mode(p: DopplerParams) -> float:
    """Frequency of the density maximum (any point for kappa = 0)."""
    if p.kappa == 0:
        return 0.0
    return deterministic_limit(p)


def cdf(f: float, p: DopplerParams, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Doppler CDF by integrating the elevation marginal up to the cone angle.

    In a frame whose z-axis is the direction of motion, the azimuth integral
    of the vMF density reduces to a Bessel function, leaving::

        F(f) = kappa / (2 sinh kappa) * integral_{-pi/2}^{asin(f/f_m)}
               I0(a cos psi) exp(b sin psi) cos psi dpsi
    """
    if f <= -p.f_max:
        return 0.0
    if f >= p.f_max:
        return 1.0
    upper = math.asin(f / p.f_max)
    if p.kappa == 0:
        return 0.5 * (1.0 + math.sin(upper))
    integrand = elevation_marginal(p)
    # the integrand peaks where sin(psi) = cos_beta
    peak = math.asin(p.cos_beta)
    if -math.pi / 2 < peak < upper:
        value = integrate(integrand, -math.pi / 2, peak, spec) + integrate(integrand, peak, upper, spec)
    else:
        value = integrate(integrand, -math.pi / 2, upper, spec)
    return min(1.0, max(0.0, value))


def elevation_marginal(p: DopplerParams):
    """Density of the elevation angle measured from the plane normal to the motion."""
    a, b = p.a, p.b
    if p.kappa == 0:
        return lambda psi: 0.5 * math.cos(psi)
    log_pref = math.log(p.kappa) - log_sinh(p.kappa) - LN2

    def g(psi: float) -> float:
        c = math.cos(psi)
        if c <= 0.0:
            return 0.0
        return math.exp(log_pref + a * c + b * math.sin(psi)) * bessel_i0e(a * c) * c

    return g


def interval_mass(lo: float, hi: float, p: DopplerParams, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """Probability of a Doppler shift in ``[lo, hi]`` by quadrature of :func:`pdf`."""
    lo = max(lo, -p.f_max)
    hi = min(hi, p.f_max)
    if hi <= lo:
        return 0.0
    if p.kappa == 0:
        return (hi - lo) * 0.5 / p.f_max
    density = lambda f: pdf(f, p)
    peak = mode(p)
    if lo < peak < hi:
        return integrate(density, lo, peak, spec) + integrate(density, peak, hi, spec)
    return integrate(density, lo, hi, spec)


@lru_cache(maxsize=256)
def _bin_masses_cached(edges: tuple, p: DopplerParams, spec: QuadratureSpec) -> tuple:
    return tuple(interval_mass(lo, hi, p, spec) for lo, hi in zip(edges[:-1], edges[1:]))


def bin_masses(edges, p: DopplerParams, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> np.ndarray:
    """Analytic probability of each histogram bin given by ``edges``."""
    key = tuple(float(e) for e in edges)
    return np.array(_bin_masses_cached(key, p, spec))


def spectrum(p: DopplerParams, n_points: int) -> DopplerSpectrum:
    """Tabulate the density on ``n_points`` evenly spaced frequencies, endpoints included."""
    if n_points < 2:
        raise DomainError("n_points must be >= 2")
    freqs = np.linspace(-p.f_max, p.f_max, n_points)
    # linspace is not exactly antisymmetric; mirror it so even spectra stay even
    half = n_points // 2
    freqs[n_points - half:] = -freqs[:half][::-1]
    if n_points % 2:
        freqs[half] = 0.0
    freqs[0], freqs[-1] = -p.f_max, p.f_max
    dens = np.array([pdf(float(f), p) for f in freqs])
    return DopplerSpectrum(freqs, dens, p)
