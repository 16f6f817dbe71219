"""Fading-trace checks against the analytic Doppler density.

For each scenario: mean power, 20-bin PSD total variation, Rayleigh KS
p-value of the thinned envelope, and the autocorrelation against the
numerical Fourier transform of the density.

    python scripts/fading_crosscheck.py --paths 10000 --duration 60
"""

import argparse
import math

import numpy as np

from vmfdoppler import doppler, fading, validate
from vmfdoppler.doppler import DopplerParams
from vmfdoppler.fading import FadingConfig
from vmfdoppler.geometry import MotionSpec, UnitVec3
from vmfdoppler.mathkit import integrate
from vmfdoppler.vmf import VmfParams

SCENARIOS = [(0.0, 0), (10.0, 0), (10.0, 45), (10.0, 90), (50.0, 90)]


def analytic_autocorrelation(p, tau):
    # trace phases rotate as exp(-j 2 pi f t), hence the conjugate transform
    re = integrate(lambda f: doppler.pdf(f, p) * math.cos(2 * math.pi * f * tau), -p.f_max, p.f_max)
    im = integrate(lambda f: -doppler.pdf(f, p) * math.sin(2 * math.pi * f * tau), -p.f_max, p.f_max)
    return complex(re, im)


def run():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--paths", type=int, default=10_000)
    ap.add_argument("--duration", type=float, default=60.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    motion = MotionSpec(10.0, UnitVec3(1.0, 0.0, 0.0), 0.1)
    edges = validate.doppler_edges(motion.f_max, 20)
    rate = 8 * motion.f_max
    print(f"{'kappa':>6} {'beta':>5} {'power':>7} {'PSD TV':>7} {'KS p':>7} {'max |R - R_ref|':>16}")
    for kappa, beta in SCENARIOS:
        cfg = FadingConfig(args.paths, rate, args.duration, VmfParams(math.radians(beta), 0.0, kappa), motion, args.seed)
        trace = fading.generate(cfg)
        p = DopplerParams.from_geometry(cfg.scatter, motion)
        est = fading.estimate_psd(trace).mirrored()
        tv = 0.5 * np.abs(est.bin_masses(edges) - doppler.bin_masses(edges, p)).sum()
        ks = fading.rayleigh_ks(trace).pvalue
        lags = np.arange(0, int(2 * rate / motion.f_max) + 1, 4)
        r = fading.autocorrelation(trace, int(lags[-1]))
        dev = max(abs(r[k] / r[0] - analytic_autocorrelation(p, k / rate)) for k in lags)
        print(f"{kappa:6g} {beta:5d} {trace.mean_power:7.3f} {tv:7.4f} {ks:7.3f} {dev:16.4f}")


if __name__ == "__main__":
    run()
