"""Containers shared by the forward oracles and the inverse pipeline."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

GEOMETRIES = ("v", "x")


@dataclass(frozen=True)
class MomentSequence:
    """Finite prefix a_0..a_N of series coefficients."""

    values: np.ndarray
    noise_level: float | None = None
    label: str = ""
    error_estimates: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1 or vals.size == 0:
            raise ValueError("a moment sequence needs at least one coefficient")
        if not np.all(np.isfinite(vals)):
            raise ValueError("moment sequence entries must be finite")
        if self.noise_level is not None and not self.noise_level >= 0:
            raise ValueError("noise level must be non-negative")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def N(self) -> int:
        return self.values.size - 1

    def __len__(self) -> int:
        return self.values.size

    def truncate(self, N: int) -> "MomentSequence":
        return MomentSequence(self.values[: N + 1], self.noise_level, self.label)


@dataclass(frozen=True)
class SampledFunction:
    """Real samples of a jump function on an increasing grid."""

    geometry: str
    abscissa: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"geometry must be one of {GEOMETRIES}")
        x = np.array(self.abscissa, dtype=float)
        y = np.array(self.values, dtype=float)
        if x.shape != y.shape or x.ndim != 1:
            raise ValueError("abscissa and values must be 1-D arrays of equal length")
        if x.size > 1 and not np.all(np.diff(x) > 0):
            raise ValueError("abscissas must be strictly increasing")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "abscissa", x)
        object.__setattr__(self, "values", y)

    @property
    def l2_norm(self) -> float:
        """Trapezoidal L^2 norm over the sampled support."""
        if self.values.size < 2:
            return float(abs(self.values).sum())
        return math.sqrt(float(np.trapezoid(self.values ** 2, self.abscissa)))

    def relative_l2_error(self, reference: "SampledFunction") -> float:
        if reference.geometry != self.geometry or not np.array_equal(
                reference.abscissa, self.abscissa):
            raise ValueError("reference must be sampled on the same grid and geometry")
        diff = SampledFunction(self.geometry, self.abscissa, self.values - reference.values)
        ref = reference.l2_norm
        if ref == 0.0:
            return 0.0 if diff.l2_norm == 0.0 else math.inf
        return diff.l2_norm / ref


def default_grid(geometry: str) -> np.ndarray:
    if geometry == "x":
        return np.geomspace(1.05, 100.0, 256)
    if geometry == "v":
        return np.linspace(0.05, 6.0, 256)
    raise ValueError(f"geometry must be one of {GEOMETRIES}")
