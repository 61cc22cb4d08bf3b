"""
Physical constants and lab <-> natural unit conversions.

Internally every quantity is a power of eV (Heaviside-Lorentz, c = hbar = 1):
lengths and times are eV^-1, energies are eV.  Angles are dimensionless.

Constant values are CODATA 2018 (https://physics.nist.gov/cuu/Constants/).
"""
from dataclasses import dataclass

import numpy as np


class UnitError(ValueError):
    """Raised for an unknown unit tag."""


@dataclass(frozen=True)
class Constants:
    alpha: float = 1.0 / 137.035999084
    m_e: float = 510998.95000          # eV
    hbar_c: float = 197.3269804        # eV nm
    hbar: float = 0.6582119569         # eV fs
    joule_to_eV: float = 1.0 / 1.602176634e-19


CODATA2018 = Constants()

# natural value = lab value * factor
_FACTORS = {
    "J": CODATA2018.joule_to_eV,
    "eV": 1.0,
    "fs": 1.0 / CODATA2018.hbar,
    "nm": 1.0 / CODATA2018.hbar_c,
    "um": 1.0e3 / CODATA2018.hbar_c,
    "urad": 1.0e-6,
}
_ALIASES = {"µm": "um", "μm": "um", "µrad": "urad", "μrad": "urad"}

UNITS = tuple(_FACTORS)


def _factor(unit):
    unit = _ALIASES.get(unit, unit)
    try:
        return _FACTORS[unit]
    except KeyError:
        raise UnitError(f"unknown unit {unit!r}; expected one of {UNITS}") from None


def to_natural(value, unit):
    """Convert ``value`` given in lab ``unit`` to eV powers.

    ``urad`` is converted to radians, which are already dimensionless.
    """
    return value * _factor(unit)


def from_natural(value, unit):
    """Inverse of :func:`to_natural`."""
    return value / _factor(unit)


def wavelength_to_frequency(wavelength):
    """omega = 2 pi / lambda, both natural units."""
    return 2.0 * np.pi / wavelength
