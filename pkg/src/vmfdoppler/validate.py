"""Monte Carlo check of the closed-form Doppler spectrum.

DOAs are drawn from the vMF distribution, mapped to Doppler shifts, and
histogrammed into evenly spaced bins over ``[-f_m, f_m]``; the normalized
histogram is then scored against the analytic bin probabilities.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from . import doppler
from .doppler import DopplerParams
from .geometry import MotionSpec, doppler_shift
from .mathkit import DomainError
from .vmf import VmfParams, sample

DEFAULT_SAMPLES = 100_000
DEFAULT_BINS = 20
# Pearson's statistic is only trusted once every cell expects this many counts.
MIN_EXPECTED = 5.0


@dataclass(frozen=True)
class EmpiricalSpectrum:
    bin_edges: np.ndarray
    counts: np.ndarray
    densities: np.ndarray
    n_samples: int
    seed: int

    @property
    def f_max(self) -> float:
        return float(self.bin_edges[-1])

    @property
    def bin_widths(self) -> np.ndarray:
        return np.diff(self.bin_edges)

    @property
    def bin_centers(self) -> np.ndarray:
        return 0.5 * (self.bin_edges[:-1] + self.bin_edges[1:])

    @classmethod
    def from_counts(cls, bin_edges, counts, seed: int = 0) -> "EmpiricalSpectrum":
        edges = np.asarray(bin_edges, dtype=float)
        counts = np.asarray(counts, dtype=np.int64)
        n = int(counts.sum())
        return cls(edges, counts, counts / (n * np.diff(edges)), n, seed)


@dataclass(frozen=True)
class ComparisonReport:
    total_variation: float
    max_abs_density_dev: float
    chi_square: float
    dof: int
    per_bin: list  # (bin center, empirical density, analytic bin-average density)

    def critical_value(self, alpha: float = 0.01) -> float:
        return chi_square_critical(self.dof, alpha)

    def passes(self, alpha: float = 0.01) -> bool:
        return self.chi_square < self.critical_value(alpha)


def chi_square_critical(dof: int, alpha: float) -> float:
    """Upper ``alpha`` quantile of the chi-square distribution."""
    return float(stats.chi2.isf(alpha, dof))


def doppler_edges(f_max: float, n_bins: int) -> np.ndarray:
    edges = np.linspace(-f_max, f_max, n_bins + 1)
    edges[0], edges[-1] = -f_max, f_max
    return edges


def histogram(freqs: np.ndarray, edges: np.ndarray) -> np.ndarray:
    """Counts per bin; bins are half-open except the last, which includes ``+f_max``."""
    idx = np.searchsorted(edges, freqs, side="right") - 1
    idx = np.clip(idx, 0, len(edges) - 2)
    return np.bincount(idx, minlength=len(edges) - 1).astype(np.int64)


def empirical_spectrum(
    scatter: VmfParams,
    motion: MotionSpec,
    n_samples: int = DEFAULT_SAMPLES,
    n_bins: int = DEFAULT_BINS,
    seed: int = 0,
    workers: int = 1,
) -> EmpiricalSpectrum:
    if n_samples < 1 or n_bins < 1:
        raise DomainError("n_samples and n_bins must be >= 1")
    if motion.speed <= 0:
        raise DomainError("motion speed must be > 0")
    doas = sample(scatter, n_samples, seed, workers=workers)
    freqs = doppler_shift(doas, motion)
    edges = doppler_edges(motion.f_max, n_bins)
    return EmpiricalSpectrum.from_counts(edges, histogram(freqs, edges), seed)


def _pooled_cells(expected: np.ndarray, observed: np.ndarray):
    """Merge adjacent bins, left to right, until each cell expects MIN_EXPECTED counts."""
    exp_cells, obs_cells = [], []
    e_acc = o_acc = 0.0
    for e, o in zip(expected, observed):
        e_acc += e
        o_acc += o
        if e_acc >= MIN_EXPECTED:
            exp_cells.append(e_acc)
            obs_cells.append(o_acc)
            e_acc = o_acc = 0.0
    if e_acc > 0 or o_acc > 0:
        if exp_cells:
            exp_cells[-1] += e_acc
            obs_cells[-1] += o_acc
        else:
            exp_cells.append(e_acc)
            obs_cells.append(o_acc)
    return np.array(exp_cells), np.array(obs_cells)


def pearson_chi_square(expected: np.ndarray, observed: np.ndarray) -> tuple[float, int]:
    """Pearson statistic and degrees of freedom after pooling sparse bins."""
    e, o = _pooled_cells(np.asarray(expected, float), np.asarray(observed, float))
    dof = max(len(e) - 1, 1)
    if np.any(e <= 0):
        return math.inf, dof
    return float(np.sum((o - e) ** 2 / e)), dof


def compare(emp: EmpiricalSpectrum, p: DopplerParams) -> ComparisonReport:
    if not math.isclose(emp.f_max, p.f_max, rel_tol=1e-9):
        raise DomainError(f"f_max mismatch: histogram {emp.f_max}, analytic {p.f_max}")
    widths = emp.bin_widths
    analytic_mass = doppler.bin_masses(emp.bin_edges, p)
    empirical_mass = emp.counts / emp.n_samples
    analytic_density = analytic_mass / widths

    tv = 0.5 * float(np.abs(empirical_mass - analytic_mass).sum())
    max_dev = float(np.max(np.abs(emp.densities - analytic_density)))
    chi2, dof = pearson_chi_square(analytic_mass * emp.n_samples, emp.counts)
    per_bin = list(zip(emp.bin_centers.tolist(), emp.densities.tolist(), analytic_density.tolist()))
    return ComparisonReport(tv, max_dev, chi2, dof, per_bin)
