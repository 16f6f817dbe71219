"""Command-line interface: ``spectrum``, ``validate``, ``figures``, ``fade``.

Angles are degrees on the command line and radians everywhere else. A
scenario can come from flags or from a ``key = value`` config file; flags
win. Exit codes: 0 success, 1 invalid input, 2 I/O failure, 3 statistical
validation failure.
"""

from __future__ import annotations

import argparse
import csv
import math
import os
import sys
from dataclasses import dataclass, fields

from . import doppler, fading, validate
from .doppler import DopplerParams
from .geometry import AngleDir, MotionSpec, to_unit_vector
from .mathkit import DomainError
from .vmf import VmfParams

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_STAT = 0, 1, 2, 3

FIG2_KAPPA = 10.0
FIG2_BETAS = (0, 45, 90, 135, 180)
FIG3_BETAS = (0, 90)
FIG3_KAPPAS = (0, 2, 10, 50)


class UsageError(Exception):
    pass


def cos_deg(deg: float) -> float:
    """Cosine of an angle in degrees, exact at multiples of 90."""
    r = math.fmod(deg, 360.0)
    if r < 0:
        r += 360.0
    exact = {0.0: 1.0, 90.0: 0.0, 180.0: -1.0, 270.0: 0.0}
    if r in exact:
        return exact[r]
    return math.cos(math.radians(r))


def _azimuth_rad(deg: float) -> float:
    r = math.fmod(deg, 360.0)
    if r > 180.0:
        r -= 360.0
    elif r <= -180.0:
        r += 360.0
    return math.radians(r)


@dataclass
class ScenarioConfig:
    kappa: float = 10.0
    mean_azimuth_deg: float = 0.0
    mean_elevation_deg: float = 0.0
    speed_mps: float = 10.0
    motion_azimuth_deg: float = 0.0
    motion_elevation_deg: float = 0.0
    wavelength_m: float = 0.1
    beta_deg: float | None = None

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None and not math.isfinite(v):
                raise DomainError(f"{f.name} must be finite")
        if self.speed_mps <= 0:
            raise DomainError("speed_mps must be > 0")
        if self.beta_deg is not None and not 0 <= self.beta_deg <= 180:
            raise DomainError("beta_deg must lie in [0, 180]")

    @property
    def f_max_hz(self) -> float:
        return self.motion().f_max

    def scatter(self) -> VmfParams:
        if self.beta_deg is not None:
            # motion along +x, mean DOA in the horizontal plane at azimuth beta
            return VmfParams(_azimuth_rad(self.beta_deg), 0.0, self.kappa)
        return VmfParams(_azimuth_rad(self.mean_azimuth_deg), math.radians(self.mean_elevation_deg), self.kappa)

    def motion(self) -> MotionSpec:
        if self.beta_deg is not None:
            direction = to_unit_vector(AngleDir(0.0, 0.0))
        else:
            direction = to_unit_vector(
                AngleDir(_azimuth_rad(self.motion_azimuth_deg), math.radians(self.motion_elevation_deg))
            )
        return MotionSpec(self.speed_mps, direction, self.wavelength_m)

    def doppler_params(self) -> DopplerParams:
        if self.beta_deg is not None:
            return DopplerParams(self.kappa, cos_deg(self.beta_deg), self.f_max_hz)
        return DopplerParams.from_geometry(self.scatter(), self.motion())


SCENARIO_KEYS = [f.name for f in fields(ScenarioConfig)]


def read_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in SCENARIO_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown or malformed entry {line!r}")
            try:
                values[key] = float(val)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: {key} is not a number") from None
    return values


def scenario_from_args(args) -> ScenarioConfig:
    values = {}
    if args.config:
        values.update(read_config_file(args.config))
    for key in SCENARIO_KEYS:
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    return ScenarioConfig(**values)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _open_csv(path: str):
    return open(path, "w", encoding="utf-8", newline="")


def write_spectrum_csv(fh, spec: doppler.DopplerSpectrum, comment: str | None = None) -> None:
    if comment:
        fh.write(f"# {comment}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["f_hz", "pdf_per_hz"])
    for f, d in zip(spec.frequencies, spec.densities):
        w.writerow([_fmt(f), _fmt(d)])


def write_comparison_csv(fh, report: validate.ComparisonReport, comment: str | None = None) -> None:
    if comment:
        fh.write(f"# {comment}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["bin_center_hz", "empirical_pdf", "analytic_pdf"])
    for c, e, a in report.per_bin:
        w.writerow([_fmt(c), _fmt(e), _fmt(a)])


def cmd_spectrum(args) -> int:
    sc = scenario_from_args(args)
    if args.n_points < 2:
        raise DomainError("--n-points must be >= 2")
    spec = doppler.spectrum(sc.doppler_params(), args.n_points)
    with _open_csv(args.output) as fh:
        write_spectrum_csv(fh, spec)
    print(f"f_max_hz={_fmt(sc.f_max_hz)} cos_beta={_fmt(spec.params.cos_beta)} rows={args.n_points}")
    return EXIT_OK


def run_comparison(sc: ScenarioConfig, n_samples: int, n_bins: int, seed: int, workers: int):
    emp = validate.empirical_spectrum(sc.scatter(), sc.motion(), n_samples, n_bins, seed, workers)
    return validate.compare(emp, sc.doppler_params())


def cmd_validate(args) -> int:
    sc = scenario_from_args(args)
    report = run_comparison(sc, args.n_samples, args.n_bins, args.seed, args.workers)
    with _open_csv(args.output) as fh:
        write_comparison_csv(fh, report)
    critical = report.critical_value(args.alpha)
    ok = report.chi_square < critical
    print(
        f"total_variation={_fmt(report.total_variation)} chi_square={_fmt(report.chi_square)} "
        f"dof={report.dof} critical={_fmt(critical)} max_abs_dev={_fmt(report.max_abs_density_dev)} "
        f"result={'pass' if ok else 'fail'}"
    )
    return EXIT_OK if ok else EXIT_STAT


def cmd_figures(args) -> int:
    os.makedirs(args.output_dir, exist_ok=True)
    base = dict(speed_mps=args.speed_mps, wavelength_m=args.wavelength_m)
    lines = [("fig2", FIG2_KAPPA, beta, "kappa=10 as in the published figure") for beta in FIG2_BETAS]
    lines += [
        ("fig3", float(kappa), beta, "kappa set chosen by this tool, not taken from the publication")
        for beta in FIG3_BETAS
        for kappa in FIG3_KAPPAS
    ]
    written = []
    for fig, kappa, beta, note in lines:
        sc = ScenarioConfig(kappa=kappa, beta_deg=float(beta), **base)
        stem = f"{fig}_beta{beta}" if fig == "fig2" else f"{fig}_beta{beta}_kappa{kappa:g}"
        comment = f"kappa={kappa:g} beta_deg={beta} f_max_hz={sc.f_max_hz:g}; {note}"
        spec = doppler.spectrum(sc.doppler_params(), args.n_points)
        path = os.path.join(args.output_dir, stem + "_analytic.csv")
        with _open_csv(path) as fh:
            write_spectrum_csv(fh, spec, comment)
        written.append(path)
        report = run_comparison(sc, args.n_samples, args.n_bins, args.seed, args.workers)
        path = os.path.join(args.output_dir, stem + "_mc.csv")
        with _open_csv(path) as fh:
            write_comparison_csv(fh, report, comment + f"; seed={args.seed} n_samples={args.n_samples}")
        written.append(path)
        print(f"{stem}: total_variation={report.total_variation:.5f} chi_square={report.chi_square:.3f} dof={report.dof}")
    print(f"wrote {len(written)} files to {args.output_dir}")
    return EXIT_OK


def cmd_fade(args) -> int:
    sc = scenario_from_args(args)
    f_max = sc.f_max_hz
    rate = args.sample_rate_hz if args.sample_rate_hz is not None else 8.0 * f_max
    cfg = fading.FadingConfig(args.n_paths, rate, args.duration_s, sc.scatter(), sc.motion(), args.seed)
    trace = fading.generate(cfg, workers=args.workers)
    with _open_csv(args.output) as fh:
        fading.write_trace_csv(trace, fh)
    print(f"mean_power={_fmt(trace.mean_power)} f_max_hz={_fmt(f_max)} samples={len(trace.samples)}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _add_scenario(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("scenario (degrees; flags override --config)")
    g.add_argument("--config", help="key = value scenario file")
    g.add_argument("--kappa", type=float)
    g.add_argument("--mean-azimuth-deg", type=float)
    g.add_argument("--mean-elevation-deg", type=float)
    g.add_argument("--speed-mps", "--speed", type=float)
    g.add_argument("--motion-azimuth-deg", type=float)
    g.add_argument("--motion-elevation-deg", type=float)
    g.add_argument("--wavelength-m", "--wavelength", type=float)
    g.add_argument("--beta-deg", type=float, help="angle between mean DOA and motion; replaces the full geometry")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="vmf-doppler", description="Doppler spectra of vMF scattering channels")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="tabulate the analytic Doppler density")
    _add_scenario(p)
    p.add_argument("--n-points", type=int, default=1001)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("validate", help="Monte Carlo histogram against the analytic density")
    _add_scenario(p)
    p.add_argument("--n-samples", type=int, default=validate.DEFAULT_SAMPLES)
    p.add_argument("--n-bins", type=int, default=validate.DEFAULT_BINS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.01, help="chi-square test level")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("figures", help="data for the beta and kappa sweeps")
    p.add_argument("--speed-mps", "--speed", type=float, default=10.0)
    p.add_argument("--wavelength-m", "--wavelength", type=float, default=0.1)
    p.add_argument("--n-points", type=int, default=401)
    p.add_argument("--n-samples", type=int, default=validate.DEFAULT_SAMPLES)
    p.add_argument("--n-bins", type=int, default=validate.DEFAULT_BINS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output-dir", required=True)
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("fade", help="sum-of-sinusoids Rayleigh fading trace")
    _add_scenario(p)
    p.add_argument("--n-paths", type=int, default=10_000)
    p.add_argument("--sample-rate-hz", type=float, help="default: 8 * f_max")
    p.add_argument("--duration-s", type=float, default=60.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_fade)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return args.func(args)
    except (DomainError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
