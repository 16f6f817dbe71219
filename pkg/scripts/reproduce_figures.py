"""Beta and kappa sweeps: analytic curves plus Monte Carlo overlays.

Writes the same CSVs as ``vmf-doppler figures`` and prints a score table
over several seeds per line.

    python scripts/reproduce_figures.py --out figures --seeds 5
"""

import argparse
import math

import numpy as np

from vmfdoppler import validate
from vmfdoppler.cli import FIG2_BETAS, FIG3_BETAS, FIG3_KAPPAS, ScenarioConfig, main


def score(kappa, beta, seeds, n_samples):
    sc = ScenarioConfig(kappa=kappa, beta_deg=beta)
    reports = [
        validate.compare(validate.empirical_spectrum(sc.scatter(), sc.motion(), n_samples, 20, seed=s), sc.doppler_params())
        for s in range(seeds)
    ]
    return (
        np.median([r.total_variation for r in reports]),
        sum(r.passes() for r in reports),
        np.median([r.chi_square for r in reports]),
    )


def run():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--n-samples", type=int, default=100_000)
    args = ap.parse_args()

    main(["figures", "-o", args.out, "--n-samples", str(args.n_samples)])
    lines = [(10.0, b) for b in FIG2_BETAS] + [(float(k), b) for b in FIG3_BETAS for k in FIG3_KAPPAS]
    print(f"\n{'kappa':>6} {'beta':>5} {'median TV':>10} {'chi2 pass':>10} {'median chi2':>12}")
    for kappa, beta in lines:
        tv, n_pass, chi2 = score(kappa, beta, args.seeds, args.n_samples)
        print(f"{kappa:6g} {beta:5d} {tv:10.4f} {n_pass:>6}/{args.seeds:<3} {chi2:12.2f}")


if __name__ == "__main__":
    run()
