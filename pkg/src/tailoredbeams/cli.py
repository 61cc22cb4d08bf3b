"""
Command-line front end.

    tailoredbeams profile --config run.cfg --where farfield --output ff.csv
    tailoredbeams scaling --nmax 60 --output scaling.csv
    tailoredbeams signal  --config run.cfg --output spectrum.csv

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""
import argparse
import csv
import sys
from dataclasses import dataclass

import numpy as np

from . import beam, fgsynth, signal
from .config import ConfigError, load
from .mathkit import MAX_LAGUERRE_ORDER, QuadratureError, RootBracketError
from .units import from_natural

EXIT_CONFIG = 2
EXIT_NUMERIC = 3


def _fmt(x):
    return f"{x:.8e}"


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(float(v)) for v in row])


# ---------------------------------------------------------------------------
# profile
# ---------------------------------------------------------------------------

def profile_table(run, where):
    """(header, coordinate, normalized intensity) for the probe profile."""
    probe = run.probe()
    ref = beam.PulseSpec(omega=probe.omega, tau=probe.tau, w0=probe.w0,
                         modes=(beam.ModeEntry(0, 0.0, run.recipe.W),))
    grid = run.profile_grid
    if where == "farfield":
        x = np.linspace(0.0, grid.farfield_max, grid.n_points)
        values = beam.farfield_profile(probe, x) / beam.farfield_profile(ref, 0.0)
        header = ["theta_over_divergence", "intensity_rel_fg0"]
    else:
        x = np.linspace(0.0, grid.focus_max, grid.n_points)
        values = beam.focus_profile(probe, x) / beam.focus_profile(ref, 0.0)
        header = ["r_over_w0", "intensity_rel_fg0"]
    return header, x, values


def cmd_profile(args):
    run = load(args.config)
    header, x, values = profile_table(run, args.where)
    write_csv(args.output, header, zip(x, values))
    return 0


# ---------------------------------------------------------------------------
# scaling
# ---------------------------------------------------------------------------

SCALING_HEADER = ["N", "c_sum", "C2", "s_exact", "s_estimate", "sigma",
                  "theta_ratio_exact", "theta_ratio_estimate"]


def scaling_rows(n_max):
    for n in range(n_max + 1):
        co = fgsynth.coefficients(n)
        s = fgsynth.effective_waist(n)
        sigma, _ = fgsynth.peak_intensity_factor(n)
        th = fgsynth.effective_divergence(n)
        yield (n, sum(co.c), co.C2, s.exact, s.estimate, sigma, th.exact, th.estimate)


def cmd_scaling(args):
    if not 0 <= args.nmax <= MAX_LAGUERRE_ORDER:
        raise ConfigError("args", "nmax", f"must lie in 0..{MAX_LAGUERRE_ORDER}")
    write_csv(args.output, SCALING_HEADER, scaling_rows(args.nmax))
    return 0


# ---------------------------------------------------------------------------
# signal
# ---------------------------------------------------------------------------

SIGNAL_HEADER = ["theta_urad", "dNperp_dthetatheta_per_rad2", "dNprobe_dthetatheta_per_rad2"]


@dataclass(frozen=True)
class SignalReport:
    n_perp: float
    n_probe: float
    n_blocked: float
    spectrum: signal.AngularSpectrum
    windows: list


def run_signal(run):
    scn = run.scenario()
    n_perp, spectrum = signal.total_signal(scn, run.signal)
    windows = signal.discernibility(spectrum, scn.purity)
    n_probe = scn.probe.photons
    return SignalReport(n_perp=n_perp, n_probe=n_probe,
                        n_blocked=run.photons_full - n_probe,
                        spectrum=spectrum, windows=windows)


def format_summary(report):
    lines = [
        f"N_perp = {report.n_perp:.6g}",
        f"N_probe = {report.n_probe:.6g}",
        f"N_blocked = {report.n_blocked:.6g}",
    ]
    for w in report.windows:
        lo = from_natural(w.lo, "urad")
        hi = "inf)" if w.open_ended else f"{from_natural(w.hi, 'urad'):.6g}]"
        lines.append(f"window [{lo:.6g}, {hi} urad: N_perp_dis = {w.photons:.6g}")
    return "\n".join(lines)


def cmd_signal(args):
    run = load(args.config)
    report = run_signal(run)
    sp = report.spectrum
    write_csv(args.output, SIGNAL_HEADER,
               zip(from_natural(sp.theta, "urad"), sp.signal, sp.background))
    print(format_summary(report))
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="tailoredbeams", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("profile", help="focus or far-field intensity profile")
    p.add_argument("--config", required=True)
    p.add_argument("--where", choices=("focus", "farfield"), default="farfield")
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("scaling", help="FG_N scaling-law table")
    p.add_argument("--nmax", type=int, default=MAX_LAGUERRE_ORDER)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_scaling)

    p = sub.add_parser("signal", help="signal and background angular spectra")
    p.add_argument("--config", required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_signal)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (QuadratureError, RootBracketError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ValueError, OSError) as exc:
        # ConfigError and parameter-range errors both land here
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
