"""Tailored x-ray probe pulses for vacuum-birefringence signal estimates."""
from .units import CODATA2018, from_natural, to_natural
from .fgsynth import FgRecipe, synthesize
from .signal import CollisionScenario, PumpSpec, SignalConfig

__all__ = ["CODATA2018", "to_natural", "from_natural", "FgRecipe", "synthesize",
           "CollisionScenario", "PumpSpec", "SignalConfig"]
