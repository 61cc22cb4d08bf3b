"""
Flattened-Gaussian (FG_N) and hole (FG_{N,N'}) pulse synthesis.

The FG_N radial field profile exp(-chi^2) sum_{n<=N} chi^{2n}/n! is expanded in
Laguerre polynomials with coefficients

    c_{p,N} = sum_{k=p}^{N} binom(k, p) / 2^k,      C_N^2 = sum_p c_{p,N}^2,

so that sum_n chi^{2n}/n! = sum_p (-1)^p c_{p,N} L_p(2 chi^2).  Coefficients are
accumulated as exact fractions.
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .beam import ModeEntry, PulseSpec
from .mathkit import MAX_LAGUERRE_ORDER, RootBracketError, find_root, laguerre_all

FOCUS = 0.0
FARFIELD = math.inf
_EINV = math.exp(-1.0)


class UnsupportedRangeError(ValueError):
    """Requested order lies outside the supported 0..60 range."""


@dataclass(frozen=True)
class FgCoefficients:
    """Exact c_{p,N} (p = 0..N) and C_N^2."""
    c: tuple
    C2: Fraction

    @property
    def N(self):
        return len(self.c) - 1

    def as_array(self):
        return np.array([float(x) for x in self.c])


@dataclass(frozen=True)
class FgRecipe:
    """Recipe for an FG_N (``Nprime=None``) or hole FG_{N,N'} pulse.

    ``W`` is the energy of the full FG_N constituent; a hole pulse carries less.
    ``zeta0`` is where the profile is imposed: ``FOCUS`` (0), ``FARFIELD``
    (inf) or any finite value.
    """
    N: int
    W: float
    w0: float
    tau: float
    omega: float
    Nprime: "int | None" = None
    zeta0: float = FARFIELD

    def __post_init__(self):
        if not 0 <= self.N <= MAX_LAGUERRE_ORDER:
            raise UnsupportedRangeError(f"N={self.N} outside 0..{MAX_LAGUERRE_ORDER}")
        if self.Nprime is not None and not 0 <= self.Nprime < self.N:
            raise ValueError("need 0 <= Nprime < N")
        if not self.W > 0:
            raise ValueError("W must be > 0")


class RootEstimate(NamedTuple):
    exact: float
    estimate: float


def _check_order(N):
    if not 0 <= N <= MAX_LAGUERRE_ORDER:
        raise UnsupportedRangeError(f"N={N} outside 0..{MAX_LAGUERRE_ORDER}")


@lru_cache(maxsize=None)
def coefficients(N):
    _check_order(N)
    c = tuple(sum(Fraction(math.comb(k, p), 2**k) for k in range(p, N + 1))
              for p in range(N + 1))
    return FgCoefficients(c=c, C2=sum(x * x for x in c))


@lru_cache(maxsize=None)
def hole_coefficients(N, Nprime=None):
    """c_{p,N} - Theta(N' - p) c_{p,N'} with Theta(0) = 1; plain c_{p,N} if no hole.

    Note C2 is always the FG_N normalization C_N^2, not the sum of the squared
    hole coefficients.
    """
    full = coefficients(N)
    if Nprime is None:
        return full
    if not 0 <= Nprime < N:
        raise ValueError("need 0 <= Nprime < N")
    inner = coefficients(Nprime).c
    c = tuple(x - (inner[p] if p <= Nprime else 0) for p, x in enumerate(full.c))
    return FgCoefficients(c=c, C2=full.C2)


def _phase(p, zeta0):
    if math.isinf(zeta0):
        return 2.0 * p * math.pi
    return p * (math.pi + 2.0 * math.atan(zeta0))


def synthesize(recipe):
    """PulseSpec realizing the recipe's FG profile at zeta0."""
    co = hole_coefficients(recipe.N, recipe.Nprime)
    modes = tuple(
        ModeEntry(p=p, phase=_phase(p, recipe.zeta0),
                  energy=float(c * c / co.C2) * recipe.W)
        for p, c in enumerate(co.c)
    )
    return PulseSpec(omega=recipe.omega, tau=recipe.tau, w0=recipe.w0,
                     modes=modes, zeta0=recipe.zeta0)


def energy_fraction(N, Nprime=None):
    """W_{N,N'} / W as an exact fraction."""
    co = hole_coefficients(N, Nprime)
    return sum(x * x for x in co.c) / co.C2


# ---------------------------------------------------------------------------
# Scaling laws
# ---------------------------------------------------------------------------

def waist_estimate(N, Nprime=None):
    """Quadratic-order estimate of s^2 = (w_N / w0)^2 (closed form)."""
    if N == 0:
        return 1.0
    if Nprime is None:
        return 2.0 * (1.0 - _EINV) / (N + 2.0 * _EINV)
    return 2.0 * (1.0 - _EINV) / (N + Nprime + 1.0 + 2.0 * _EINV)


def waist_estimate_summed(N, Nprime=None):
    """Same estimate from (1 - 1/e) sum c / sum (2p + 1/e) c."""
    c = hole_coefficients(N, Nprime).as_array()
    p = np.arange(c.size)
    return (1.0 - _EINV) * c.sum() / np.sum((2 * p + _EINV) * c)


def effective_waist(N, Nprime=None, tol=1e-13):
    """Scale factor s = w_{N(,N')} / w0 of the 1/e^2 focus radius.

    Returns ``(exact, estimate)`` where ``exact`` is the smallest root of
    sum c_p L_p(2 s^2) = e^{s^2 - 1} sum c_p in s^2 in (0, 1], and
    ``estimate`` the closed-form quadratic-order value, both as s (not s^2).
    """
    if N == 0:
        return RootEstimate(1.0, 1.0)
    c = hole_coefficients(N, Nprime).as_array()
    csum = c.sum()

    def f(s2):
        return float(c @ laguerre_all(N, 2.0 * s2)) - math.exp(s2 - 1.0) * csum

    # scan for the first sign change; the focus profile can have outer rings
    grid = np.linspace(0.0, 1.0, 4001)[1:]
    vals = c @ laguerre_all(N, 2.0 * grid) - np.exp(grid - 1.0) * csum
    idx = np.flatnonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))
    if vals[0] <= 0 or idx.size == 0:
        raise RootBracketError(f"1/e^2 radius not bracketed for N={N}, N'={Nprime}")
    i = idx[0]
    s2 = find_root(f, grid[i], grid[i + 1], tol=tol)
    return RootEstimate(math.sqrt(s2), math.sqrt(waist_estimate(N, Nprime)))


def peak_intensity_factor(N, Nprime=None):
    """sigma = (sum c)^2 / C_N^2, returned as (summed, closed_form) exact fractions."""
    co = hole_coefficients(N, Nprime)
    summed = sum(co.c) ** 2 / co.C2
    n_eff = N + 1 if Nprime is None else N - Nprime
    closed = Fraction(n_eff) ** 2 / co.C2
    return summed, closed


def effective_divergence(N, tol=1e-13):
    """theta_N / theta as ``(exact, estimate)``; estimate is sqrt(1 + N).

    Root of e^{-x^2} sum_{n<=N} x^{2n}/n! = e^{-1}, bracketed in [1, 2 sqrt(1+N)].
    """
    if N == 0:
        return RootEstimate(1.0, 1.0)

    def f(x):
        x2 = x * x
        term, acc = 1.0, 1.0
        for n in range(1, N + 1):
            term *= x2 / n
            acc += term
        return acc * math.exp(-x2) - _EINV

    return RootEstimate(find_root(f, 1.0, 2.0 * math.sqrt(1.0 + N), tol=tol),
                        math.sqrt(1.0 + N))


# ---------------------------------------------------------------------------
# Far-field / focus duality
# ---------------------------------------------------------------------------

def duality_transform(spec):
    """Flip the sign of every odd-p mode (c_p -> (-1)^p c_p).

    For specs synthesized at the focus or in the far field this swaps the
    focus and far-field intensity profiles.
    """
    if spec.zeta0 is None or not (spec.zeta0 == 0.0 or math.isinf(spec.zeta0)):
        raise ValueError("duality only holds for profiles imposed at the focus or far field")
    modes = tuple(ModeEntry(m.p, m.phase, m.energy, m.sign * (-1.0) ** (m.p % 2))
                  for m in spec.modes)
    return PulseSpec(omega=spec.omega, tau=spec.tau, w0=spec.w0, modes=modes,
                     direction=spec.direction, zeta0=spec.zeta0)
