"""
Vacuum-birefringence signal of a head-on probe/pump collision.

The probe is an arbitrary LG_{p,0} superposition travelling along +z, the pump
a counter-propagating FG_0 pulse; polarizations enclose pi/4.  Only the
quasi-elastic part of the emission amplitude is kept, so every mode amplitude
reduces to a single z-integral:

    M_p = (8/pi)^{3/4} (W~/w0) (sqrt(tau)/T+) exp[-(tau tau~/(4T+))^2 (k-w)^2]
          sqrt(W_p) e^{-i phi_p}
          * int dz [2-r^2]^p/[2+r^2]^{p+1} L_p(w0^2 kp^2 r^4 / (2[r^4-4]))
                   exp[-w0^2 kp^2 r^2/(4[2+r^2]) - 2(4z/T+)^2]
                   exp[i((k-w)(T-/T+)^2 + kz - w) z]

with T+- = sqrt(2 tau^2 +- tau~^2) and r(z) = (w~0/w0) sqrt(1 + (z/z~R)^2).  The
Laguerre factor is evaluated through S_p = t^p L_p(-u/t), t = 2 - r^2, which is
regular where r^2 = 2.
"""
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.interpolate import CubicSpline

from . import beam
from .mathkit import (QuadratureConfig, QuadratureError, bessel_j0, integrate_1d,
                      laguerre, scaled_laguerre_pole)
from .units import CODATA2018

# (2 pi)^-3 * 32/225 * alpha^4 / m_e^8
_DN_PREFACTOR = (32.0 / 225.0) * CODATA2018.alpha**4 / CODATA2018.m_e**8 / (2.0 * math.pi) ** 3
_M_PREFACTOR = (8.0 / math.pi) ** 0.75


class ScenarioError(ValueError):
    """Collision parameters outside the supported regime."""


@dataclass(frozen=True)
class PumpSpec:
    """Counter-propagating FG_0 pump (natural units)."""
    energy: float
    tau: float
    wavelength: float
    w0: float

    @property
    def rayleigh_range(self):
        return math.pi * self.w0**2 / self.wavelength


@dataclass(frozen=True)
class CollisionScenario:
    probe: beam.PulseSpec
    pump: PumpSpec
    purity: float

    def __post_init__(self):
        if self.probe.direction != 1:
            raise ScenarioError("the probe must propagate along +z")
        if not 0.0 < self.purity < 1.0:
            raise ScenarioError("purity must lie in (0, 1)")
        if not self.pump.energy >= 0:
            raise ScenarioError("pump energy must be >= 0")
        if not (self.pump.tau > 0 and self.pump.wavelength > 0 and self.pump.w0 > 0):
            raise ScenarioError("pump duration, wavelength and waist must be positive")
        if 2.0 * self.probe.tau**2 < self.pump.tau**2:
            raise ScenarioError("T- = sqrt(2 tau^2 - tau~^2) is imaginary; need tau~^2 <= 2 tau^2")

    def with_pump_energy(self, energy):
        return CollisionScenario(self.probe, PumpSpec(energy, self.pump.tau,
                                                      self.pump.wavelength, self.pump.w0),
                                 self.purity)

    def with_probe(self, probe):
        return CollisionScenario(probe, self.pump, self.purity)


@dataclass(frozen=True)
class CollisionScales:
    T_plus: float
    T_minus: float
    pump_rayleigh: float
    waist_ratio: float

    def r2(self, z):
        """r(z)^2 = (w~0/w0)^2 (1 + (z/z~R)^2)."""
        return self.waist_ratio**2 * (1.0 + (np.asarray(z) / self.pump_rayleigh) ** 2)


def collision_scales(scn):
    tau, taut = scn.probe.tau, scn.pump.tau
    return CollisionScales(
        T_plus=math.sqrt(2.0 * tau**2 + taut**2),
        T_minus=math.sqrt(2.0 * tau**2 - taut**2),
        pump_rayleigh=scn.pump.rayleigh_range,
        waist_ratio=scn.pump.w0 / scn.probe.w0,
    )


class KinematicPoint(NamedTuple):
    k: float
    theta: float


@dataclass(frozen=True)
class SignalConfig:
    """Grids and tolerances of the signal calculation.

    ``n_k`` and ``n_z`` are initial panel counts of the adaptive k and z
    integrations; the z count is raised further so that no panel spans more
    than one period of the fastest phase.
    """
    theta_max: float = 250e-6
    n_theta: int = 251
    n_k: int = 4
    n_z: int = 16
    k_halfwidth: float = 6.0
    quad: QuadratureConfig = field(default_factory=lambda: QuadratureConfig(
        rel_tol=1e-6, max_subdivisions=4000))
    chunk: int = 24
    workers: int = 1
    tail_rel: float = 1e-4


@dataclass(frozen=True)
class AngularSpectrum:
    """dN/(theta dtheta) in photons per rad^2 on a common polar-angle grid (rad)."""
    theta: np.ndarray
    signal: np.ndarray
    background: np.ndarray


class Window(NamedTuple):
    lo: float
    hi: float
    photons: float
    open_ended: bool


# ---------------------------------------------------------------------------
# z-integral kernel
# ---------------------------------------------------------------------------

def _dense_weights(scn, modes=None):
    modes = scn.probe.modes if modes is None else modes
    pmax = max(m.p for m in modes)
    w = np.zeros(pmax + 1, dtype=complex)
    for m in modes:
        # sqrt(W_p) e^{-i phi_p}
        w[m.p] = m.sign * math.sqrt(m.energy) * beam.unit_phasor(-m.phase)
    if np.all(np.abs(w.imag) <= 1e-12 * np.abs(w).max()):
        w = w.real.copy()
    return w


def z_range(scn, scales=None):
    scales = scales or collision_scales(scn)
    return max(1.5 * scales.T_plus, 8.0 * scales.pump_rayleigh)


def max_phase_slope(scn, k_lo, k_hi, theta_max, scales=None):
    """max |(k - w)(T-/T+)^2 + k cos(theta) - w| over the (k, theta) box."""
    scales = scales or collision_scales(scn)
    rho = (scales.T_minus / scales.T_plus) ** 2
    w = scn.probe.omega
    vals = [(k - w) * rho + k * math.cos(th) - w
            for k in (k_lo, k_hi) for th in (0.0, theta_max)]
    return max(abs(v) for v in vals)


def z_panels(scn, slope, n_min, scales=None):
    """Initial z panels so that each spans at most one period of ``slope``."""
    length = 2.0 * z_range(scn, scales)
    return max(n_min, math.ceil(length * slope / (2.0 * math.pi)))


def _z_integrand(scn, scales, weights, k, theta):
    """Closure z -> integrand with shape (nz, *broadcast(k, theta).shape)."""
    k, theta = np.broadcast_arrays(np.asarray(k, float), np.asarray(theta, float))
    omega, w0 = scn.probe.omega, scn.probe.w0
    kp2 = (k * np.sin(theta)) ** 2
    slope = (k - omega) * (scales.T_minus / scales.T_plus) ** 2 + k * np.cos(theta) - omega
    pmax = weights.size - 1
    ext = (Ellipsis,) + (None,) * k.ndim

    def f(z):
        r2 = scales.r2(z)
        den = 2.0 + r2
        # S_p is homogeneous of degree p, so S_p(t, u) / den^p = S_p(t/den, u/den)
        tq = ((2.0 - r2) / den)[ext]
        uq = (w0**2 * r2**2 / (2.0 * den**2))[ext] * kp2
        s_prev = np.ones_like(uq)
        acc = weights[0] * s_prev
        if pmax >= 1:
            s_cur = tq + uq
            acc = acc + weights[1] * s_cur
            t2 = tq * tq
            for n in range(1, pmax):
                s_prev, s_cur = s_cur, (((2 * n + 1) * tq + uq) * s_cur - n * t2 * s_prev) / (n + 1)
                if weights[n + 1] != 0:
                    acc = acc + weights[n + 1] * s_cur
        env = np.exp(-(w0**2 * r2 / (4.0 * den))[ext] * kp2
                     - (2.0 * (4.0 * z / scales.T_plus) ** 2)[ext])
        return acc * (env / den[ext]) * np.exp(1j * slope * z[ext])

    return f


def z_integral(scn, k, theta, cfg=None, modes=None):
    """Bare z-integral of the (mode-summed) amplitude, without the prefactor.

    ``modes`` restricts the sum (default: all probe modes); their sqrt(W_p)
    e^{-i phi_p} weights are included.
    """
    cfg = cfg or SignalConfig()
    scales = collision_scales(scn)
    weights = _dense_weights(scn, modes)
    k_arr = np.asarray(k, float)
    th_arr = np.asarray(theta, float)
    slope = float(np.max(np.abs(
        (k_arr - scn.probe.omega) * (scales.T_minus / scales.T_plus) ** 2
        + k_arr * np.cos(th_arr) - scn.probe.omega)))
    zmax = z_range(scn, scales)
    quad = QuadratureConfig(rel_tol=0.1 * cfg.quad.rel_tol, abs_tol=cfg.quad.abs_tol,
                            max_subdivisions=cfg.quad.max_subdivisions,
                            initial_panels=1)
    res = integrate_1d(_z_integrand(scn, scales, weights, k_arr, th_arr), -zmax, zmax, quad,
                       initial_panels=z_panels(scn, slope, cfg.n_z, scales))
    if not res.converged:
        raise QuadratureError(f"z-integral did not converge: error {res.error:.3g}, "
                              f"|value| {np.max(np.abs(res.value)):.3g}")
    return res.value


def _amplitude_prefactor(scn, scales, k):
    tau, taut = scn.probe.tau, scn.pump.tau
    return (_M_PREFACTOR * scn.pump.energy / scn.probe.w0 * math.sqrt(tau) / scales.T_plus
            * np.exp(-((tau * taut / (4.0 * scales.T_plus)) ** 2) * (np.asarray(k) - scn.probe.omega) ** 2))


def amplitude(scn, k, theta, cfg=None, modes=None):
    """sum_p M_p at signal momentum (k, theta); vectorized over k and theta."""
    scales = collision_scales(scn)
    return _amplitude_prefactor(scn, scales, k) * z_integral(scn, k, theta, cfg, modes)


def amplitude_mp(scn, mode, point, cfg=None):
    """Single-mode amplitude M_p for ``mode`` (a probe ModeEntry)."""
    return complex(amplitude(scn, point.k, point.theta, cfg, modes=(mode,)))


def differential_number(scn, point, cfg=None):
    """d^3N_perp / d^3k at a single kinematic point."""
    m = amplitude(scn, point.k, point.theta, cfg)
    return float(_DN_PREFACTOR * point.k * np.abs(m) ** 2)


# ---------------------------------------------------------------------------
# Angular spectrum, total yield, discernibility
# ---------------------------------------------------------------------------

def spectral_width(scn, scales=None):
    """sigma_k with |M|^2 ~ exp(-(k - w)^2 / sigma_k^2)."""
    scales = scales or collision_scales(scn)
    return 4.0 * scales.T_plus / (scn.probe.tau * scn.pump.tau) / math.sqrt(2.0)


def _signal_chunk(scn, theta, cfg, scales):
    """dN_perp/(theta dtheta) on a chunk of polar angles."""
    if scn.pump.energy == 0.0:
        return np.zeros_like(theta)
    omega = scn.probe.omega
    half = cfg.k_halfwidth * spectral_width(scn, scales)
    k_lo, k_hi = omega - half, omega + half
    slope = max_phase_slope(scn, k_lo, k_hi, float(theta.max()), scales)
    n_z = z_panels(scn, slope, cfg.n_z, scales)
    zmax = z_range(scn, scales)
    weights = _dense_weights(scn)
    zquad = QuadratureConfig(rel_tol=0.1 * cfg.quad.rel_tol, abs_tol=0.0,
                             max_subdivisions=max(cfg.quad.max_subdivisions, n_z), initial_panels=1)

    def k_integrand(k):
        kk = k[:, None]
        th = theta[None, :]
        res = integrate_1d(_z_integrand(scn, scales, weights, kk, th), -zmax, zmax, zquad,
                           initial_panels=n_z)
        if not res.converged:
            raise QuadratureError(
                f"z-integral failed near theta={theta.max() * 1e6:.4g} urad: "
                f"error {res.error:.3g} vs |I| {np.max(np.abs(res.value)):.3g}")
        m2 = np.abs(_amplitude_prefactor(scn, scales, kk) * res.value) ** 2
        return kk**3 * m2

    res = integrate_1d(k_integrand, k_lo, k_hi, cfg.quad, initial_panels=cfg.n_k)
    if not res.converged:
        raise QuadratureError(
            f"k-integral failed near theta={theta.max() * 1e6:.4g} urad: "
            f"error {res.error:.3g} vs max {np.max(np.abs(res.value)):.3g}")
    # azimuth contributes 2 pi; d^3k -> k^2 dk theta dtheta dphi
    return 2.0 * math.pi * _DN_PREFACTOR * np.real(res.value)


def signal_density(scn, theta, cfg=None):
    """dN_perp/(theta dtheta) at the given polar angles (rad)."""
    cfg = cfg or SignalConfig()
    theta = np.atleast_1d(np.asarray(theta, float))
    scales = collision_scales(scn)
    chunks = [theta[i:i + cfg.chunk] for i in range(0, theta.size, cfg.chunk)]
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as pool:
            parts = list(pool.map(lambda c: _signal_chunk(scn, c, cfg, scales), chunks))
    else:
        parts = [_signal_chunk(scn, c, cfg, scales) for c in chunks]
    return np.concatenate(parts)


def theta_grid(cfg):
    return np.linspace(0.0, cfg.theta_max, cfg.n_theta)


def angular_spectrum(scn, theta=None, cfg=None):
    """Signal and probe-background angular spectra on ``theta`` (rad)."""
    cfg = cfg or SignalConfig()
    theta = theta_grid(cfg) if theta is None else np.asarray(theta, float)
    if theta.ndim != 1 or theta.size < 2 or np.any(np.diff(theta) <= 0):
        raise ValueError("theta grid must be 1-D, ascending, with at least two points")
    return AngularSpectrum(theta=theta,
                           signal=signal_density(scn, theta, cfg),
                           background=beam.farfield_photon_decay(scn.probe, theta))


def integrate_spectrum(theta, density, lo=None, hi=None):
    """int density * theta dtheta over [lo, hi] via a cubic spline on the grid."""
    lo = theta[0] if lo is None else lo
    hi = theta[-1] if hi is None else hi
    if hi <= lo:
        return 0.0
    return float(CubicSpline(theta, density * theta).integrate(lo, hi))


def _tail_estimate(theta, density):
    """Gaussian-like tail int_{theta_max}^inf estimate from the last two samples."""
    t1, t2 = theta[-2], theta[-1]
    d1, d2 = density[-2], density[-1]
    if d2 <= 0:
        return 0.0
    if d1 <= d2:
        return math.inf
    # d ~ exp(-g theta) locally; int theta d ~ theta d / g
    g = math.log(d1 / d2) / (t2 - t1)
    return t2 * d2 / g


def total_signal(scn, cfg=None, spectrum=None, max_extensions=6):
    """N_perp = int dN_perp/(theta dtheta) theta dtheta.

    Extends the angular grid (same spacing) until the estimated tail beyond
    the last sample falls below ``cfg.tail_rel`` of the total.  Returns
    ``(n_perp, spectrum)`` with the possibly extended spectrum.
    """
    cfg = cfg or SignalConfig()
    spec = spectrum or angular_spectrum(scn, cfg=cfg)
    theta, sig = spec.theta, spec.signal
    step = theta[1] - theta[0]
    for _ in range(max_extensions):
        total = integrate_spectrum(theta, sig)
        tail = _tail_estimate(theta, sig)
        if total == 0.0 or tail <= cfg.tail_rel * total:
            break
        n_new = max(2, theta.size // 2)
        extra = theta[-1] + step * np.arange(1, n_new + 1)
        theta = np.concatenate([theta, extra])
        sig = np.concatenate([sig, signal_density(scn, extra, cfg)])
    total = integrate_spectrum(theta, sig)
    tail = _tail_estimate(theta, sig)
    if total > 0 and tail > 1e-3 * total:
        warnings.warn(f"angular tail beyond {theta[-1] * 1e6:.4g} urad is "
                      f"{tail / total:.2g} of the total", stacklevel=2)
    if theta.size != spec.theta.size:
        spec = AngularSpectrum(theta, sig, beam.farfield_photon_decay(scn.probe, theta))
    return total, spec


def discernibility(spectrum, purity):
    """Angular windows where signal >= purity * background, with their yields.

    Crossings are located by linear interpolation of log(signal / (purity *
    background)).  Angles with vanishing background always qualify.  A window
    reaching the end of the grid is flagged ``open_ended``.
    """
    theta, sig, bg = spectrum.theta, spectrum.signal, spectrum.background
    if theta.size == 0:
        raise ValueError("empty spectrum")
    if not purity > 0:
        raise ValueError("purity must be > 0")
    floor = purity * bg
    with np.errstate(divide="ignore"):
        lr = np.where(floor > 0, np.log(np.maximum(sig, 0.0)) - np.log(np.where(floor > 0, floor, 1.0)),
                      np.inf)
    good = lr >= 0

    def crossing(i):
        a, b = lr[i], lr[i + 1]
        if np.isfinite(a) and np.isfinite(b) and a != b:
            return theta[i] + (theta[i + 1] - theta[i]) * a / (a - b)
        # no finite log-ratio on one side: keep the edge at the qualifying point
        return theta[i + 1] if good[i + 1] else theta[i]

    windows = []
    i = 0
    n = theta.size
    while i < n:
        if not good[i]:
            i += 1
            continue
        j = i
        while j + 1 < n and good[j + 1]:
            j += 1
        lo = theta[0] if i == 0 else crossing(i - 1)
        hi = theta[-1] if j == n - 1 else crossing(j)
        windows.append(Window(lo, hi, integrate_spectrum(theta, sig, lo, hi), j == n - 1))
        i = j + 1
    return windows


# ---------------------------------------------------------------------------
# Hankel-transform oracle for the transverse closed form
# ---------------------------------------------------------------------------

def transverse_closed_form(scn, p, z, kperp):
    """[2-r^2]^p/[2+r^2]^{p+1} L_p(w0^2 kp^2 r^4/(2[r^4-4])) exp(-w0^2 kp^2 r^2/(4[2+r^2]))."""
    scales = collision_scales(scn)
    w0 = scn.probe.w0
    r2 = scales.r2(z)
    den = 2.0 + r2
    u = w0**2 * np.asarray(kperp) ** 2 * r2**2 / (2.0 * den)
    return (scaled_laguerre_pole(p, 2.0 - r2, u) / den ** (p + 1)
            * np.exp(-(w0**2) * np.asarray(kperp) ** 2 * r2 / (4.0 * den)))


def transverse_hankel(scn, p, z, kperp, cfg=None):
    """2 pi int r dr J0(kp r) L_p(2 r^2/w0^2) e^{-r^2/w0^2} e^{-2 r^2 / w~(z)^2} by quadrature."""
    scales = collision_scales(scn)
    w0 = scn.probe.w0
    wt2 = scn.pump.w0**2 * (1.0 + (z / scales.pump_rayleigh) ** 2)
    # |L_p(x) e^{-x/2}| <= 1 bounds the integral by pi wt2 / 2
    cfg = cfg or QuadratureConfig(rel_tol=1e-11, abs_tol=1e-14 * math.pi * wt2 / 2.0,
                                  max_subdivisions=20000)
    a = 1.0 / w0**2 + 2.0 / wt2
    r_max = math.sqrt((60.0 + 4.0 * p) / a) + 2.0 * math.sqrt(2.0 * p + 1.0) * w0
    kperp = np.atleast_1d(np.asarray(kperp, float))

    def f(r):
        rr = r[:, None]
        return (2.0 * math.pi * rr * bessel_j0(kperp[None, :] * rr)
                * laguerre(p, 2.0 * rr**2 / w0**2) * np.exp(-a * rr**2))

    panels = max(16, 2 * p + 8, int(np.max(kperp) * r_max / math.pi))
    res = integrate_1d(f, 0.0, r_max, cfg, initial_panels=panels)
    if not res.converged:
        raise QuadratureError(f"Hankel transform did not converge: error {res.error:.3g}")
    return res.value


def hankel_oracle(scn, p, z_fixed, kperp_1, kperp_2, cfg=None):
    """(direct ratio, closed-form ratio) of the transverse factor at two kperp values."""
    direct = transverse_hankel(scn, p, z_fixed, [kperp_1, kperp_2], cfg)
    closed = transverse_closed_form(scn, p, z_fixed, np.array([kperp_1, kperp_2]))
    return float(direct[0] / direct[1]), float(closed[0] / closed[1])
