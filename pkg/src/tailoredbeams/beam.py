"""
Pulsed paraxial beams as finite superpositions of LG_{p,0} modes.

A pulse is characterized by its frequency, duration, FG_0 waist and a list of
modes (p, phase, energy).  All quantities are natural units (eV powers).
"""
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .mathkit import QuadratureConfig, QuadratureError, integrate_1d, laguerre, laguerre_all

# peak field^2 = _AMP2 * W / (pi w0^2 tau)
_AMP2 = 8.0 * math.sqrt(2.0 / math.pi)
# cycle-averaged intensity prefactor
_INT = 4.0 * math.sqrt(2.0 / math.pi)
TAU_OMEGA_WARN = 40.0


@dataclass(frozen=True)
class ModeEntry:
    """One LG_{p,0} constituent.

    ``sign`` multiplies the field coefficient sqrt(W_p); together with
    ``phase`` it fixes the mode's complex weight sign * sqrt(W_p) * e^{i phase}.
    """
    p: int
    phase: float
    energy: float
    sign: float = 1.0

    def __post_init__(self):
        if self.p < 0:
            raise ValueError("mode index p must be >= 0")
        if not self.energy >= 0:
            raise ValueError("mode energy must be >= 0")
        if self.sign not in (1.0, -1.0):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class PulseSpec:
    """Gaussian-enveloped superposition of LG_{p,0} modes focused at z = 0.

    ``direction`` is +1 for propagation towards +z and -1 for -z.  ``zeta0``
    records where an FG profile was imposed (0 focus, inf far field, None for
    a hand-built mode list); only the duality transform looks at it.
    """
    omega: float
    tau: float
    w0: float
    modes: tuple
    direction: int = 1
    zeta0: "float | None" = None
    _p: np.ndarray = field(init=False, repr=False, compare=False)
    _weights: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if not self.omega > 0 or not self.tau > 0 or not self.w0 > 0:
            raise ValueError("omega, tau and w0 must be positive")
        if not self.modes:
            raise ValueError("a pulse needs at least one mode")
        ps = [m.p for m in self.modes]
        if len(set(ps)) != len(ps):
            raise ValueError("mode indices must be distinct")
        if self.direction not in (1, -1):
            raise ValueError("direction must be +1 or -1")
        if self.tau * self.omega < TAU_OMEGA_WARN:
            warnings.warn(
                f"tau*omega = {self.tau * self.omega:.3g} < {TAU_OMEGA_WARN}: "
                "Gaussian envelope approximation is questionable",
                stacklevel=2,
            )
        object.__setattr__(self, "_p", np.array(ps))
        w = np.array([m.sign * math.sqrt(m.energy) * unit_phasor(m.phase) for m in self.modes])
        object.__setattr__(self, "_weights", w)

    @property
    def wavelength(self):
        return 2.0 * math.pi / self.omega

    @property
    def rayleigh_range(self):
        return math.pi * self.w0**2 / self.wavelength

    @property
    def divergence(self):
        """Asymptotic FG_0 divergence w0 / z_R."""
        return self.w0 / self.rayleigh_range

    @property
    def energy(self):
        return math.fsum(m.energy for m in self.modes)

    @property
    def photons(self):
        return self.energy / self.omega

    @property
    def pmax(self):
        return int(self._p.max())

    def signed_amplitudes(self):
        """a_p = sign * sqrt(W_p / W), one per mode."""
        w = self.energy
        return np.array([m.sign * math.sqrt(m.energy / w) for m in self.modes])

    def mode_weights(self):
        """Complex weights sign * sqrt(W_p) * exp(i phi_p), in mode order."""
        return self._weights.copy()


def unit_phasor(phase):
    """e^{i phase}, exact for multiples of pi so FG hole sums cancel exactly."""
    half_turns = phase / math.pi
    n = round(half_turns)
    if abs(half_turns - n) < 1e-12:
        return complex((-1.0) ** (n % 2), 0.0)
    return complex(math.cos(phase), math.sin(phase))


def _beam_geometry(spec, r, z):
    zz = spec.direction * np.asarray(z, dtype=float)
    zeta = zz / spec.rayleigh_range
    w = spec.w0 * np.sqrt(1.0 + zeta**2)
    return zz, zeta, np.asarray(r, dtype=float) / w


def mode_field(spec, mode, r, z, t):
    """Real field of a single LG_{p,0} mode at (r, z, t)."""
    zz, zeta, chi = _beam_geometry(spec, r, z)
    t = np.asarray(t, dtype=float)
    peak = mode.sign * math.sqrt(_AMP2 * mode.energy / (math.pi * spec.w0**2 * spec.tau))
    envelope = np.exp(-(((zz - t) / (0.5 * spec.tau)) ** 2))
    phase = (spec.omega * (zz - t) + zeta * chi**2
             - (2 * mode.p + 1) * np.arctan(zeta) + mode.phase)
    out = (peak * envelope / np.sqrt(1.0 + zeta**2)
           * laguerre(mode.p, 2.0 * chi**2) * np.exp(-chi**2) * np.cos(phase))
    return out[()]


def field(spec, r, z, t):
    """Total real field E = sum_p E_p."""
    return sum(mode_field(spec, m, r, z, t) for m in spec.modes)


def transverse_amplitude(spec, chi, zeta):
    """Complex sum_p sign sqrt(W_p) L_p(2 chi^2) exp(i(phi_p - 2p arctan zeta)).

    Its squared modulus carries the whole double mode sum of the cycle-averaged
    intensity.  ``zeta`` may be ``np.inf`` for the far-field limit.
    """
    chi = np.asarray(chi, dtype=float)
    zeta = np.asarray(zeta, dtype=float)
    lag = laguerre_all(spec.pmax, 2.0 * chi**2)
    amp = np.zeros(np.broadcast(chi, zeta).shape, dtype=complex)
    if zeta.ndim == 0 and np.isinf(zeta):
        # Gouy factor e^{-i p pi} exactly
        for p, wgt in zip(spec._p, spec._weights):
            amp = amp + (wgt if p % 2 == 0 else -wgt) * lag[p]
        return amp
    gouy = np.arctan(zeta)
    for p, wgt in zip(spec._p, spec._weights):
        amp = amp + wgt * np.exp(-2j * p * gouy) * lag[p]
    return amp


def intensity(spec, r, z, t):
    """Cycle-averaged intensity I(r, z, t)."""
    zz, zeta, chi = _beam_geometry(spec, r, z)
    t = np.asarray(t, dtype=float)
    envelope = np.exp(-2.0 * ((zz - t) / (0.5 * spec.tau)) ** 2)
    amp = transverse_amplitude(spec, chi, zeta)
    out = (_INT / (math.pi * spec.w0**2 * spec.tau) * envelope / (1.0 + zeta**2)
           * np.abs(amp) ** 2 * np.exp(-2.0 * chi**2))
    return out[()]


def focus_profile(spec, chi):
    """I(r = chi w0, z = 0, t = 0)."""
    amp = transverse_amplitude(spec, chi, 0.0)
    return (_INT / (math.pi * spec.w0**2 * spec.tau)
            * np.abs(amp) ** 2 * np.exp(-2.0 * np.asarray(chi, float) ** 2))[()]


def farfield_profile(spec, chi):
    """lim zeta^2 I as zeta -> inf at the envelope peak, with chi = theta/divergence."""
    amp = transverse_amplitude(spec, chi, np.inf)
    return (_INT / (math.pi * spec.w0**2 * spec.tau)
            * np.abs(amp) ** 2 * np.exp(-2.0 * np.asarray(chi, float) ** 2))[()]


def _check(res, what):
    if not res.converged:
        raise QuadratureError(f"{what}: error {res.error:.3g} after {res.n_panels} panels")
    return res.value


def _chi_max(spec):
    return 6.0 + math.sqrt(2.0 * spec.pmax)


def pulse_energy(spec, cfg=None, z=0.0):
    """2 pi int r dr int dt I(r, z, t), evaluated numerically at fixed z."""
    cfg = cfg or QuadratureConfig(rel_tol=1e-8)
    zeta = z / spec.rayleigh_range
    r_max = spec.w0 * math.sqrt(1.0 + zeta**2) * _chi_max(spec)
    zz = spec.direction * z
    t_lo, t_hi = zz - 4.0 * spec.tau, zz + 4.0 * spec.tau

    def radial(r):
        inner = integrate_1d(lambda t: intensity(spec, r[None, :], z, t[:, None]),
                             t_lo, t_hi, cfg)
        return 2.0 * math.pi * r * _check(inner, "pulse_energy time integral")

    panels = max(cfg.initial_panels, 2 * spec.pmax + 4)
    return _check(integrate_1d(radial, 0.0, r_max, cfg, initial_panels=panels),
                  "pulse_energy radial integral")


def farfield_photon_decay(spec, theta, cfg=None):
    """Far-field angular photon density dN/(theta dtheta), azimuthally integrated.

    (2 pi / omega) z_R^2 int dt zeta^2 I |_{zeta -> inf}, with chi = theta / divergence.
    The envelope time integral is done numerically over +-4 tau.
    """
    cfg = cfg or QuadratureConfig(rel_tol=1e-10)
    envelope = _check(
        integrate_1d(lambda s: np.exp(-2.0 * (s / (0.5 * spec.tau)) ** 2),
                     -4.0 * spec.tau, 4.0 * spec.tau, cfg),
        "far-field envelope integral")
    chi = np.asarray(theta, dtype=float) / spec.divergence
    return (2.0 * math.pi / spec.omega * spec.rayleigh_range**2 * envelope
            * farfield_profile(spec, chi))[()]
