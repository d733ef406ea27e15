"""Jump-function reconstruction from series coefficients via the Pollaczek-Laguerre expansion."""

from .forward import AnalyticPair, Interpolant, make_pair
from .quadrature import QuadratureError
from .samples import MomentSequence, SampledFunction
from .transform import (PollaczekCoefficients, ReconstructionConfig, add_noise,
                        pollaczek_coefficients, reconstruct, truncation_sweep)

__all__ = [
    "AnalyticPair", "Interpolant", "make_pair", "QuadratureError", "MomentSequence",
    "SampledFunction", "PollaczekCoefficients", "ReconstructionConfig", "add_noise",
    "pollaczek_coefficients", "reconstruct", "truncation_sweep",
]
