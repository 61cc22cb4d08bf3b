"""Focus and far-field intensity profiles of FG_0, FG_50 and the FG_50,5 hole beam."""
import argparse
from pathlib import Path

import numpy as np

from tailoredbeams import beam, fgsynth
from tailoredbeams.units import to_natural

CASES = {"fg0": (0, None), "fg50": (50, None), "fg50_5": (50, 5)}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="profiles")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    common = dict(W=1.0, w0=to_natural(3.3, "um"), tau=to_natural(25, "fs"), omega=12914.0)
    ref = fgsynth.synthesize(fgsynth.FgRecipe(N=0, **common))
    chi_ff = np.linspace(0, 12, 601)
    chi_f = np.linspace(0, 3, 601)
    cols_ff, cols_f = [chi_ff], [chi_f]
    for name, (n, nprime) in CASES.items():
        spec = fgsynth.synthesize(fgsynth.FgRecipe(N=n, Nprime=nprime, **common))
        cols_ff.append(beam.farfield_profile(spec, chi_ff) / beam.farfield_profile(ref, 0.0))
        cols_f.append(beam.focus_profile(spec, chi_f) / beam.focus_profile(ref, 0.0))
        print(f"{name}: far-field max {cols_ff[-1].max():.4g}, focus peak {cols_f[-1][0]:.4g} (FG_0 = 1)")
    names = ",".join(CASES)
    np.savetxt(out / "farfield.csv", np.column_stack(cols_ff), delimiter=",", fmt="%.8e",
               header="theta_over_divergence," + names, comments="")
    np.savetxt(out / "focus.csv", np.column_stack(cols_f), delimiter=",", fmt="%.8e",
               header="r_over_w0," + names, comments="")
    print(f"written to {out}/")


if __name__ == "__main__":
    main()
