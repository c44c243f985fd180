"""Simulation of room impulse responses observed by open spherical microphone arrays.

The package pairs a time-domain wideband image-source engine (spherical
wave fronts expressed in spherical harmonics, propagated by geometric
kernels) with a frequency-domain single-band reference generator used to
verify it.
"""

__version__ = "0.1.0"

from .errors import ConfigError, SimulationError
from .shseries import SHTimeSeries, num_coeffs, sh_index
from .sphmath import EulerAngles
from .wavefront import WavefrontGeometry, propagate_anechoic

__all__ = [
    "ConfigError",
    "SimulationError",
    "SHTimeSeries",
    "num_coeffs",
    "sh_index",
    "EulerAngles",
    "WavefrontGeometry",
    "propagate_anechoic",
    "__version__",
]
