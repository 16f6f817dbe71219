"""Sum-of-sinusoids Rayleigh fading traces with vMF-distributed arrivals.

Each path contributes ``exp(j phi_n) exp(-j 2 pi f_n t) / sqrt(N)`` with a
uniform initial phase ``phi_n`` and a Doppler shift ``f_n`` from a vMF DOA.
Because of the minus sign in the Doppler phase, a path with shift ``+f``
shows up at ``-f`` in the trace spectrum; :meth:`PsdEstimate.mirrored`
undoes this before comparing with the analytic Doppler density.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import signal, stats

from . import rng
from .geometry import MotionSpec, doppler_shift
from .mathkit import DomainError
from .vmf import VmfParams, sample

PHASE_STREAM = 16
# Time samples per block; a trace is built as (block-local phasors) @ (per-block path weights).
BLOCK = 256
# Blocks per matrix product; fixed so results do not depend on the worker count.
BLOCKS_PER_TASK = 16


@dataclass(frozen=True)
class FadingConfig:
    n_paths: int
    sample_rate: float
    duration: float
    scatter: VmfParams
    motion: MotionSpec
    seed: int = 0

    def __post_init__(self):
        if self.n_paths < 1:
            raise DomainError("n_paths must be >= 1")
        if not (self.duration > 0 and math.isfinite(self.duration)):
            raise DomainError("duration must be positive")
        if not self.sample_rate > 2.0 * self.motion.f_max:
            raise DomainError(
                f"sample rate {self.sample_rate} Hz must exceed 2*f_max = {2 * self.motion.f_max} Hz"
            )

    @property
    def n_samples(self) -> int:
        return int(round(self.duration * self.sample_rate))


@dataclass(frozen=True)
class ChannelTrace:
    samples: np.ndarray
    sample_rate: float
    config: FadingConfig | None = None

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self.samples)) / self.sample_rate

    @property
    def mean_power(self) -> float:
        return float(np.mean(np.abs(self.samples) ** 2))


@dataclass(frozen=True)
class PsdEstimate:
    frequencies: np.ndarray  # ascending, Hz
    densities: np.ndarray  # power per Hz
    resolution: float  # bin spacing, Hz
    mean_power: float

    def mirrored(self) -> "PsdEstimate":
        return PsdEstimate(-self.frequencies[::-1], self.densities[::-1], self.resolution, self.mean_power)

    def bin_masses(self, edges) -> np.ndarray:
        """Fraction of total power falling in each bin of ``edges``."""
        weights = self.densities * self.resolution
        counts, _ = np.histogram(self.frequencies, bins=np.asarray(edges), weights=weights)
        return counts / weights.sum()


def path_parameters(config: FadingConfig, workers: int = 1):
    """Doppler shifts (Hz) and complex path weights for ``config``."""
    doas = sample(config.scatter, config.n_paths, config.seed, workers=workers)
    shifts = doppler_shift(doas, config.motion)
    phases = 2.0 * math.pi * rng.uniform(config.seed, PHASE_STREAM, 0, config.n_paths)
    weights = np.exp(1j * phases) / math.sqrt(config.n_paths)
    return shifts, weights


def generate(config: FadingConfig, workers: int = 1) -> ChannelTrace:
    """Synthesize the channel trace ``H(t) = sum_n w_n exp(-j 2 pi f_n t)``."""
    shifts, weights = path_parameters(config, workers)
    n = config.n_samples
    dt = 1.0 / config.sample_rate
    n_blocks = -(-n // BLOCK)
    local = np.exp(-2j * math.pi * np.outer(np.arange(BLOCK) * dt, shifts))

    def run(task: int) -> np.ndarray:
        first = task * BLOCKS_PER_TASK
        blocks = np.arange(first, min(first + BLOCKS_PER_TASK, n_blocks))
        starts = blocks * BLOCK * dt
        w = np.exp(-2j * math.pi * np.outer(shifts, starts)) * weights[:, None]
        return (local @ w).T.ravel()

    tasks = range(-(-n_blocks // BLOCKS_PER_TASK))
    if workers <= 1:
        parts = [run(k) for k in tasks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(run, tasks))
    samples = np.concatenate(parts)[:n] if parts else np.zeros(0, dtype=complex)
    return ChannelTrace(samples, config.sample_rate, config)


def estimate_psd(trace: ChannelTrace, n_segments: int = 32, overlap_fraction: float = 0.5) -> PsdEstimate:
    """Two-sided Welch estimate (Hann window) scaled to integrate to the mean power."""
    n = len(trace.samples)
    if n_segments < 1 or not 0 <= overlap_fraction < 1:
        raise DomainError("need n_segments >= 1 and 0 <= overlap_fraction < 1")
    nperseg = int(n / ((n_segments - 1) * (1.0 - overlap_fraction) + 1.0))
    if nperseg < 8:
        raise DomainError(f"trace of {n} samples is too short for {n_segments} segments")
    noverlap = int(round(overlap_fraction * nperseg))
    freqs, pxx = signal.welch(
        trace.samples,
        fs=trace.sample_rate,
        window="hann",
        nperseg=nperseg,
        noverlap=noverlap,
        return_onesided=False,
        detrend=False,
        scaling="density",
    )
    freqs = np.fft.fftshift(freqs)
    pxx = np.fft.fftshift(pxx)
    resolution = trace.sample_rate / nperseg
    power = trace.mean_power
    total = pxx.sum() * resolution
    if total > 0:
        pxx = pxx * (power / total)
    return PsdEstimate(freqs, pxx, resolution, power)


def autocorrelation(trace: ChannelTrace, max_lag: int) -> np.ndarray:
    """Biased estimate ``R(k) = (1/L) sum_t H(t + k) conj(H(t))`` for ``k = 0..max_lag``."""
    h = trace.samples
    n = len(h)
    if not 0 <= max_lag < n:
        raise DomainError("max_lag must be in [0, trace length)")
    nfft = 1 << (2 * n - 1).bit_length()
    spec = np.fft.fft(h, nfft)
    return np.fft.ifft(np.abs(spec) ** 2)[: max_lag + 1] / n


def rayleigh_ks(trace: ChannelTrace, step: int | None = None):
    """KS test of the envelope against a unit-power Rayleigh law.

    Consecutive samples are strongly correlated, so only every ``step``-th
    sample is used. The default spacing ``1/(2 f_max)`` is the first zero
    of the autocorrelation under isotropic scattering.
    """
    if step is None:
        if trace.config is None:
            raise DomainError("step is required for traces without a config")
        step = max(1, int(round(trace.sample_rate / (2.0 * trace.config.motion.f_max))))
    env = np.abs(trace.samples[::step])
    return stats.kstest(env, stats.rayleigh(scale=1.0 / math.sqrt(2.0)).cdf)


def write_trace_csv(trace: ChannelTrace, fh) -> None:
    """Columns ``t_s,re,im`` at 17 significant digits."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["t_s", "re", "im"])
    for t, h in zip(trace.times, trace.samples):
        w.writerow([f"{t:.17g}", f"{h.real:.17g}", f"{h.imag:.17g}"])


def read_trace_csv(fh, sample_rate: float) -> ChannelTrace:
    rows = list(csv.reader(fh))
    if not rows or rows[0] != ["t_s", "re", "im"]:
        raise DomainError("expected header t_s,re,im")
    data = np.array([[float(v) for v in r] for r in rows[1:]]).reshape(-1, 3)
    return ChannelTrace(data[:, 1] + 1j * data[:, 2], sample_rate)
