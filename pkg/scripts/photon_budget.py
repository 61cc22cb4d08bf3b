"""Probe photon budget of the FG_50,5 hole beam, two ways.

1. Coefficient algebra: N / N0 = sum_p (c_p,50 - Theta(5 - p) c_p,5)^2 / C_50^2.
2. Hard aperture: photons of the FG_50 far-field profile outside theta_5.
"""
import math

from tailoredbeams import beam, fgsynth
from tailoredbeams.mathkit import QuadratureConfig, integrate_1d
from tailoredbeams.units import to_natural

N0 = 1e12
OMEGA = 12914.0


def main():
    frac = fgsynth.energy_fraction(50, 5)
    print(f"coefficient algebra: N/N0 = {float(frac):.6f}  N = {N0 * float(frac):.4e}  "
          f"blocked = {N0 * (1 - float(frac)):.4e}")

    spec = fgsynth.synthesize(fgsynth.FgRecipe(N=50, W=N0 * OMEGA, w0=to_natural(3.3, "um"),
                                               tau=to_natural(25, "fs"), omega=OMEGA))
    edge = fgsynth.effective_divergence(5).exact * spec.divergence
    cfg = QuadratureConfig(rel_tol=1e-10)
    f = lambda th: beam.farfield_photon_decay(spec, th) * th
    top = 20.0 * spec.divergence
    total = integrate_1d(f, 0.0, top, cfg, initial_panels=64).value
    inner = integrate_1d(f, 0.0, edge, cfg, initial_panels=16).value
    print(f"aperture at theta_5 = {edge * 1e6:.3f} urad: N/N0 = {1 - inner / total:.6f}  "
          f"N = {total - inner:.4e}  blocked = {inner:.4e}  (total {total:.4e})")


if __name__ == "__main__":
    main()
