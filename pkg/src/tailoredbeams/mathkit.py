"""
Special functions and 1-D numerical engines.

Everything here is vectorized over numpy arrays.  Laguerre polynomials use the
upward three-term recurrence; accuracy is not guaranteed beyond p = 60.
"""
from dataclasses import dataclass
from math import comb, factorial
from typing import NamedTuple

import numpy as np

MAX_LAGUERRE_ORDER = 60


class QuadratureError(RuntimeError):
    """A quadrature did not reach its requested tolerance."""


class RootBracketError(ValueError):
    """The supplied interval does not bracket a sign change."""


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-7
    abs_tol: float = 0.0
    max_subdivisions: int = 2000
    initial_panels: int = 4

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if not self.abs_tol >= 0:
            raise ValueError("abs_tol must be >= 0")
        if not self.max_subdivisions >= self.initial_panels >= 1:
            raise ValueError("need max_subdivisions >= initial_panels >= 1")


class QuadResult(NamedTuple):
    value: "float | np.ndarray"
    error: float
    converged: bool
    n_panels: int


# ---------------------------------------------------------------------------
# Laguerre polynomials
# ---------------------------------------------------------------------------

def laguerre(p, x):
    """L_p(x) from (k+1) L_{k+1} = (2k+1-x) L_k - k L_{k-1}."""
    if p < 0:
        raise ValueError("p must be >= 0")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if p == 0:
        return prev[()]
    cur = 1.0 - x
    for k in range(1, p):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
    return cur[()]


def laguerre_all(pmax, x):
    """Stack [L_0(x), ..., L_pmax(x)] along a new leading axis."""
    x = np.asarray(x, dtype=float)
    out = np.empty((pmax + 1,) + x.shape)
    out[0] = 1.0
    if pmax >= 1:
        out[1] = 1.0 - x
    for k in range(1, pmax):
        out[k + 1] = ((2 * k + 1 - x) * out[k] - k * out[k - 1]) / (k + 1)
    return out


def scaled_laguerre_pole(p, t, u):
    """t**p * L_p(-u/t), written as a polynomial that is regular at t = 0.

    Uses t**p L_p(-u/t) = sum_m binom(p, m) u**m t**(p-m) / m!, so the t -> 0
    limit is u**p / p! without any special-casing.
    """
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    out = np.zeros(np.broadcast(t, u).shape)
    for m in range(p + 1):
        out = out + (comb(p, m) / factorial(m)) * u**m * t ** (p - m)
    return out[()]


def scaled_laguerre_series(pmax, t, u):
    """All S_p = t**p L_p(-u/t) for p = 0..pmax via the homogenized recurrence.

    (k+1) S_{k+1} = ((2k+1) t + u) S_k - k t**2 S_{k-1},  S_0 = 1, S_1 = t + u.
    Branch-free at t = 0; yields an array with leading axis p.
    """
    t, u = np.broadcast_arrays(np.asarray(t, float), np.asarray(u, float))
    out = np.empty((pmax + 1,) + t.shape)
    out[0] = 1.0
    if pmax >= 1:
        out[1] = t + u
    t2 = t * t
    for k in range(1, pmax):
        out[k + 1] = (((2 * k + 1) * t + u) * out[k] - k * t2 * out[k - 1]) / (k + 1)
    return out


# ---------------------------------------------------------------------------
# Adaptive Gauss-Kronrod quadrature
# ---------------------------------------------------------------------------

# 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])

GK_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])
GK_WEIGHTS = np.concatenate([_WGK[:-1], _WGK[::-1]])
_G_WEIGHTS = np.zeros(15)
_G_WEIGHTS[1:7:2] = _WG[:3]
_G_WEIGHTS[7] = _WG[3]
_G_WEIGHTS[9:15:2] = _WG[2::-1]


def _max_abs(a):
    return float(np.max(np.abs(a))) if np.size(a) else 0.0


def _gk_panels(f, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = (mid[:, None] + half[:, None] * GK_NODES[None, :]).ravel()
    fx = np.asarray(f(x))
    fx = fx.reshape((lo.size, 15) + fx.shape[1:])
    h = half.reshape((lo.size,) + (1,) * (fx.ndim - 2))
    kron = np.tensordot(fx, GK_WEIGHTS, axes=([1], [0])) * h
    gauss = np.tensordot(fx, _G_WEIGHTS, axes=([1], [0])) * h
    return kron, np.abs(kron - gauss)


def integrate_1d(f, a, b, cfg=None, initial_panels=None):
    """Adaptive 7/15 Gauss-Kronrod quadrature of ``f`` over [a, b].

    ``f`` must accept a 1-D array of abscissae and return an array whose
    leading axis matches it; trailing axes are integrated component-wise.
    The tolerance is applied to the max-norm over components:
    ``error <= max(abs_tol, rel_tol * max|result|)``.

    Each pass bisects every panel whose Kronrod-Gauss difference exceeds its
    width-proportional share of the tolerance, and only the new halves are
    evaluated.  When the subdivision budget runs out the best estimate is
    returned with ``converged=False``.
    """
    cfg = cfg or QuadratureConfig()
    n0 = initial_panels or cfg.initial_panels
    if not b > a:
        raise ValueError("need a < b")
    edges = np.linspace(a, b, n0 + 1)
    lo, hi = edges[:-1], edges[1:]
    kron, err = _gk_panels(f, lo, hi)
    length = b - a
    while True:
        total = kron.sum(axis=0)
        tot_err = _max_abs(err.sum(axis=0))
        tol = max(cfg.abs_tol, cfg.rel_tol * _max_abs(total))
        if tot_err <= tol:
            return QuadResult(total[()], tot_err, True, lo.size)

        panel_err = err.reshape(lo.size, -1).max(axis=1)
        split = panel_err > tol * (hi - lo) / length
        if not split.any():
            split[np.argmax(panel_err)] = True
        n_split = int(np.count_nonzero(split))
        if lo.size + n_split > cfg.max_subdivisions:
            return QuadResult(total[()], tot_err, False, lo.size)

        mid = 0.5 * (lo[split] + hi[split])
        new_lo = np.concatenate([lo[split], mid])
        new_hi = np.concatenate([mid, hi[split]])
        k_new, e_new = _gk_panels(f, new_lo, new_hi)
        keep = ~split
        lo = np.concatenate([lo[keep], new_lo])
        hi = np.concatenate([hi[keep], new_hi])
        kron = np.concatenate([kron[keep], k_new])
        err = np.concatenate([err[keep], e_new])
        # fixed panel order keeps the summation order reproducible
        order = np.argsort(lo, kind="stable")
        lo, hi, kron, err = lo[order], hi[order], kron[order], err[order]


# ---------------------------------------------------------------------------
# Root finding
# ---------------------------------------------------------------------------

def find_root(f, lo, hi, tol=1e-12, maxiter=200):
    """Bracketing root finder: false position with bisection safeguard.

    Returns x with a final bracket no wider than ``tol``.
    """
    a, b = float(lo), float(hi)
    fa, fb = f(a), f(b)
    if fa == 0:
        return a
    if fb == 0:
        return b
    if np.sign(fa) == np.sign(fb):
        raise RootBracketError(f"no sign change on [{a}, {b}]: f={fa}, {fb}")
    width = abs(b - a)
    for _ in range(maxiter):
        if abs(b - a) <= tol:
            break
        s = b - fb * (b - a) / (fb - fa)
        lo_, hi_ = min(a, b), max(a, b)
        if not lo_ < s < hi_ or abs(b - a) > 0.5 * width:
            s = 0.5 * (a + b)
        width = abs(b - a)
        fs = f(s)
        if fs == 0:
            return s
        if np.sign(fs) == np.sign(fa):
            a, fa = s, fs
        else:
            b, fb = s, fs
    return a if abs(fa) < abs(fb) else b


# ---------------------------------------------------------------------------
# Bessel J0 (used by the Hankel-transform oracle)
# ---------------------------------------------------------------------------

_J0_SERIES_MAX = 12.0


def _j0_series(x):
    q = 0.25 * x * x
    term = np.ones_like(x)
    out = np.ones_like(x)
    for k in range(1, 70):
        term = -term * q / (k * k)
        out = out + term
    return out


def _j0_asymptotic(x):
    # Hankel expansion; a_k = prod_{j<=k} (-(2j-1)^2) / (k! 8^k)
    p = np.zeros_like(x)
    q = np.zeros_like(x)
    a = 1.0
    xk = np.ones_like(x)
    for k in range(0, 24):
        if k > 0:
            a *= -((2 * k - 1) ** 2) / (8.0 * k)
            xk = xk * x
        term = a / xk
        if k % 2 == 0:
            p = p + (-1) ** (k // 2) * term
        else:
            q = q + (-1) ** (k // 2) * term
    phase = x - 0.25 * np.pi
    return np.sqrt(2.0 / (np.pi * x)) * (p * np.cos(phase) - q * np.sin(phase))


def bessel_j0(x):
    """Bessel function J_0, absolute accuracy better than 1e-8."""
    x = np.abs(np.asarray(x, dtype=float))
    small = x <= _J0_SERIES_MAX
    out = np.empty_like(x)
    out[small] = _j0_series(x[small])
    out[~small] = _j0_asymptotic(x[~small])
    return out[()]
