"""Built-in catalog cases; importing this package registers them."""

from .nls import NlsCase
from .vorticity import Vorticity2dCase, Vorticity3dCase
from .euler import ConstrainedEulerCase, LessConstrainedEulerCase
from .helical import Helical2Case, Helical3Case
from .helicity import HelicityCase
from .wave import WaveCase

__all__ = [
    "NlsCase",
    "Vorticity2dCase",
    "Vorticity3dCase",
    "ConstrainedEulerCase",
    "LessConstrainedEulerCase",
    "Helical2Case",
    "Helical3Case",
    "HelicityCase",
    "WaveCase",
]
