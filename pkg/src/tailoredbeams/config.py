"""
Run configuration files.

Plain text with ``[probe]``, ``[pump]``, ``[detection]`` and ``[grid]`` sections
of ``key = value`` lines, values in lab units::

    [probe]
    profile = fg_hole          # fg | fg_hole | gauss
    N = 50
    Nprime = 5
    zeta0 = farfield           # focus | farfield
    photons = 1e12             # or energy_J
    photon_energy_eV = 12914
    duration_fs = 25
    waist_um = 3.3
"""
import configparser
import math
from dataclasses import dataclass, field

from .fgsynth import FARFIELD, FOCUS, FgRecipe, synthesize
from .mathkit import MAX_LAGUERRE_ORDER, QuadratureConfig
from .signal import CollisionScenario, PumpSpec, SignalConfig
from .units import to_natural


class ConfigError(ValueError):
    def __init__(self, section, key, message):
        self.section = section
        self.key = key
        super().__init__(f"[{section}] {key}: {message}")


@dataclass(frozen=True)
class ProfileGrid:
    farfield_max: float = 12.0
    focus_max: float = 3.0
    n_points: int = 601


@dataclass(frozen=True)
class RunConfig:
    recipe: FgRecipe
    profile: str
    pump: "PumpSpec | None" = None
    purity: "float | None" = None
    signal: SignalConfig = field(default_factory=SignalConfig)
    profile_grid: ProfileGrid = field(default_factory=ProfileGrid)

    @property
    def photons_full(self):
        """Photons N0 of the unblocked FG_N constituent."""
        return self.recipe.W / self.recipe.omega

    def probe(self):
        return synthesize(self.recipe)

    def scenario(self):
        if self.pump is None:
            raise ConfigError("pump", "energy_J", "missing [pump] section")
        if self.purity is None:
            raise ConfigError("detection", "purity", "missing [detection] section")
        return CollisionScenario(self.probe(), self.pump, self.purity)


class _Section:
    def __init__(self, parser, name):
        self.name = name
        self.data = parser[name] if parser.has_section(name) else None

    def present(self):
        return self.data is not None

    def raw(self, key, default=None, required=True):
        if self.data is None or key not in self.data:
            if required and default is None:
                raise ConfigError(self.name, key, "required key missing")
            return default
        return self.data[key].strip()

    def number(self, key, default=None, required=True, positive=True):
        raw = self.raw(key, default, required)
        if raw is None:
            return None
        try:
            value = float(raw)
        except ValueError:
            raise ConfigError(self.name, key, f"not a number: {raw!r}") from None
        if not math.isfinite(value) or (positive and not value > 0):
            raise ConfigError(self.name, key, f"must be a positive finite number, got {raw}")
        return value

    def integer(self, key, default=None, required=True, minimum=0):
        raw = self.raw(key, default, required)
        if raw is None:
            return None
        try:
            value = int(raw)
        except ValueError:
            raise ConfigError(self.name, key, f"not an integer: {raw!r}") from None
        if value < minimum:
            raise ConfigError(self.name, key, f"must be >= {minimum}")
        return value

    def word(self, key, choices, default=None):
        raw = self.raw(key, default)
        if raw not in choices:
            raise ConfigError(self.name, key, f"expected one of {'|'.join(choices)}, got {raw!r}")
        return raw


def _recipe(probe):
    profile = probe.word("profile", ("fg", "fg_hole", "gauss"))
    if profile == "gauss":
        N, Nprime = 0, None
    else:
        N = probe.integer("N")
        if N > MAX_LAGUERRE_ORDER:
            raise ConfigError("probe", "N", f"must be <= {MAX_LAGUERRE_ORDER}")
        Nprime = probe.integer("Nprime") if profile == "fg_hole" else None
        if Nprime is not None and Nprime >= N:
            raise ConfigError("probe", "Nprime", "must be < N")
    zeta0 = {"focus": FOCUS, "farfield": FARFIELD}[
        probe.word("zeta0", ("focus", "farfield"), default="farfield")]
    omega = probe.number("photon_energy_eV")
    photons = probe.number("photons", required=False)
    energy_J = probe.number("energy_J", required=False)
    if (photons is None) == (energy_J is None):
        raise ConfigError("probe", "photons", "give exactly one of photons / energy_J")
    W = photons * omega if photons is not None else to_natural(energy_J, "J")
    recipe = FgRecipe(N=N, Nprime=Nprime, zeta0=zeta0, W=W, omega=omega,
                      tau=to_natural(probe.number("duration_fs"), "fs"),
                      w0=to_natural(probe.number("waist_um"), "um"))
    return profile, recipe


def parse(text):
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError("file", "syntax", str(exc).splitlines()[0]) from None

    probe = _Section(parser, "probe")
    if not probe.present():
        raise ConfigError("probe", "profile", "missing [probe] section")
    profile, recipe = _recipe(probe)

    pump = None
    sec = _Section(parser, "pump")
    if sec.present():
        pump = PumpSpec(
            energy=to_natural(sec.number("energy_J", positive=False), "J"),
            tau=to_natural(sec.number("duration_fs"), "fs"),
            wavelength=to_natural(sec.number("wavelength_nm"), "nm"),
            w0=to_natural(sec.number("waist_um"), "um"),
        )
        if pump.energy < 0:
            raise ConfigError("pump", "energy_J", "must be >= 0")
        if 2.0 * recipe.tau**2 < pump.tau**2:
            raise ConfigError("pump", "duration_fs", "pump longer than sqrt(2) x probe duration")

    purity = None
    sec = _Section(parser, "detection")
    if sec.present():
        purity = sec.number("purity")
        if purity >= 1:
            raise ConfigError("detection", "purity", "must be < 1")

    grid = _Section(parser, "grid")
    defaults = SignalConfig()
    prof_defaults = ProfileGrid()
    if grid.present():
        rel_tol = grid.number("rel_tol", default=str(defaults.quad.rel_tol))
        signal = SignalConfig(
            theta_max=to_natural(grid.number("theta_max_urad",
                                             default=str(defaults.theta_max * 1e6)), "urad"),
            n_theta=grid.integer("n_theta", default=str(defaults.n_theta), minimum=2),
            n_k=grid.integer("n_k", default=str(defaults.n_k), minimum=1),
            n_z=grid.integer("n_z", default=str(defaults.n_z), minimum=1),
            quad=QuadratureConfig(rel_tol=rel_tol, max_subdivisions=defaults.quad.max_subdivisions),
            workers=grid.integer("workers", default=str(defaults.workers), minimum=1),
        )
        profile_grid = ProfileGrid(
            farfield_max=grid.number("farfield_max", default=str(prof_defaults.farfield_max)),
            focus_max=grid.number("focus_max", default=str(prof_defaults.focus_max)),
            n_points=grid.integer("n_profile", default=str(prof_defaults.n_points), minimum=2),
        )
    else:
        signal, profile_grid = defaults, prof_defaults
    return RunConfig(recipe=recipe, profile=profile, pump=pump, purity=purity,
                     signal=signal, profile_grid=profile_grid)


def load(path):
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())
