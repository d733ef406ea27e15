"""Series coefficients -> Pollaczek amplitudes -> jump function.

All arithmetic is real.  With amplitudes

    A_m = sum_n (-1)^n a_n s_m(n + 1/2) / n!,

the expansion coefficients are c_m = (-i)^m sqrt(2) A_m and the basis carries
i^m, so the phases cancel and

    F(v) = 2 sum_m A_m L_m(2 e^{-v}) exp(-e^{-v}) e^{-v}
    F(x) = 2 sum_m A_m L_m(2/x) e^{-1/x} / x,           F(x) = F(ln x) in v.

Truncating the expansion degree M is the only regularisation; noisy data
make the amplitudes blow up with M (roughly like exp(2 sqrt(2M))).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .forward import Interpolant
from .quadrature import gauss_legendre_nodes
from .samples import GEOMETRIES, MomentSequence, SampledFunction, default_grid
from .specfun import gamma, laguerre_all, pollaczek_P_all

CONVENTION = "c_m = (-i)^m sqrt(2) A_m; d_m = sqrt(2 pi) c_m"

DEFAULT_N = 64
DEFAULT_M = 24


class TruncationWarning(UserWarning):
    """The finite coefficient series has not converged at the retained length."""


@dataclass(frozen=True)
class PollaczekCoefficients:
    """Real amplitudes A_0..A_M plus per-degree term diagnostics."""

    amplitudes: np.ndarray
    convention: str = CONVENTION
    term_max: np.ndarray | None = field(default=None, compare=False)
    last_term: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self):
        A = np.array(self.amplitudes, dtype=float)
        if A.ndim != 1 or A.size == 0 or not np.all(np.isfinite(A)):
            raise ValueError("amplitudes must be a non-empty finite 1-D array")
        A.setflags(write=False)
        object.__setattr__(self, "amplitudes", A)

    @property
    def M(self) -> int:
        return self.amplitudes.size - 1

    def truncate(self, M: int) -> "PollaczekCoefficients":
        if M > self.M:
            raise ValueError(f"only {self.M + 1} amplitudes available")
        cut = slice(0, M + 1)
        return PollaczekCoefficients(
            self.amplitudes[cut], self.convention,
            None if self.term_max is None else self.term_max[cut],
            None if self.last_term is None else self.last_term[cut])

    def c(self) -> np.ndarray:
        m = np.arange(self.M + 1)
        return (-1j) ** m * math.sqrt(2.0) * self.amplitudes

    def d(self) -> np.ndarray:
        return math.sqrt(2.0 * math.pi) * self.c()

    def energy(self) -> np.ndarray:
        """Cumulative sum_{k<=m} |c_k|^2 = 2 sum A_k^2; bounded by int |e^{v/2} F|^2 dv."""
        return np.cumsum(2.0 * self.amplitudes ** 2)


@dataclass(frozen=True)
class ReconstructionConfig:
    series_truncation: int = DEFAULT_N
    expansion_truncation: int = DEFAULT_M
    geometry: str = "x"
    grid: np.ndarray | None = None
    sigma: float = -0.5

    def __post_init__(self):
        if self.series_truncation < 0 or self.expansion_truncation < 0:
            raise ValueError("truncation orders must be non-negative")
        if self.geometry not in GEOMETRIES:
            raise ValueError(f"geometry must be one of {GEOMETRIES}")
        if self.sigma < -0.5:
            raise ValueError("sigma must be >= -1/2")
        grid = default_grid(self.geometry) if self.grid is None else np.asarray(
            self.grid, dtype=float)
        lower = 1.0 if self.geometry == "x" else 0.0
        if grid.ndim != 1 or np.any(grid <= lower):
            raise ValueError(f"grid must lie in the jump support ({self.geometry} > {lower:g})")
        object.__setattr__(self, "grid", grid)

    def with_degree(self, M: int) -> "ReconstructionConfig":
        return ReconstructionConfig(self.series_truncation, M, self.geometry, self.grid,
                                    self.sigma)


@lru_cache(maxsize=32)
def _s_half_integer(M: int, N: int) -> tuple:
    """s_m(n + 1/2) for m <= M, n <= N as exact integers.

    The real recurrence (m+1) s_{m+1} = (2n+1) s_m + m s_{m-1} stays integral
    at half-integer arguments, so the division below is exact.
    """
    rows = [[1] * (N + 1), [2 * n + 1 for n in range(N + 1)]]
    for m in range(1, M):
        rows.append([((2 * n + 1) * rows[m][n] + m * rows[m - 1][n]) // (m + 1)
                     for n in range(N + 1)])
    return tuple(tuple(r) for r in rows[: M + 1])


def pollaczek_coefficients(a, M: int, warn: bool = True) -> PollaczekCoefficients:
    """Amplitudes A_0..A_M from the truncated alternating series.

    The terms cancel heavily (the largest grows like 4^m while A_m stays O(1)),
    so the sum over n is carried out exactly in rationals on the given float
    coefficients and rounded once.  Emits :class:`TruncationWarning` when the
    last retained term is not below 1e-12 of the partial sum, or when fewer
    than 2M + 16 terms are supplied.
    """
    if M < 0:
        raise ValueError("expansion degree must be non-negative")
    vals = a.values if isinstance(a, MomentSequence) else np.asarray(a, dtype=float)
    if vals.ndim != 1 or vals.size == 0 or not np.all(np.isfinite(vals)):
        raise ValueError("coefficients must be a non-empty finite 1-D array")
    N = vals.size - 1
    S = _s_half_integer(M, N)
    w = [Fraction(float(x)) * (-1) ** n / math.factorial(n) for n, x in enumerate(vals)]
    A = np.array([float(sum(s * wn for s, wn in zip(row, w))) for row in S])
    terms = np.array([[float(s * wn) for s, wn in zip(row, w)] for row in S])
    term_max = np.abs(terms).max(axis=1)
    last = np.abs(terms[:, -1])
    if warn:
        scale = np.maximum(np.abs(A), np.finfo(float).tiny)
        if N > 0 and np.any(last > 1e-12 * scale) and np.any(vals != 0):
            worst = int(np.argmax(last / scale))
            warnings.warn(f"coefficient series not converged at N={N} (degree {worst}: "
                          f"last term {last[worst]:.2e}, sum {A[worst]:.2e})",
                          TruncationWarning, stacklevel=2)
        elif N < 2 * M + 16:
            warnings.warn(f"N={N} is below the 2M+16={2 * M + 16} rule of thumb",
                          TruncationWarning, stacklevel=2)
    return PollaczekCoefficients(A, CONVENTION, term_max, last)


def pollaczek_coefficients_integral(atilde: Interpolant, m: int, half_width: float | None = None,
                                    order: int = 40) -> complex:
    """d_m = pi^{-1/2} int a(-1/2 + i nu) Gamma(1/2 - i nu) P_m(nu) d nu.

    Gauss-Legendre panels on [-L, L]; the integrand decays like
    |nu|^m e^{-pi |nu| / 2}, which fixes L when not given.
    """
    if half_width is None:
        half_width = 24.0
        while (half_width ** m) * math.exp(-0.5 * math.pi * half_width) > 1e-18:
            half_width += 4.0
    nodes, weights = gauss_legendre_nodes(-half_width, half_width,
                                          int(math.ceil(half_width)), order)
    lam = -0.5 + 1j * nodes
    integrand = atilde(lam) * gamma(0.5 - 1j * nodes) * pollaczek_P_all(m, nodes)[m]
    return complex(np.sum(weights * integrand)) / math.sqrt(math.pi)


def series_d(coeffs: PollaczekCoefficients) -> np.ndarray:
    """d_m from the residue series: 2 sqrt(pi) (-i)^m A_m."""
    return coeffs.d()


def _basis_rows(M: int, geometry: str, grid: np.ndarray) -> np.ndarray:
    """Rows 2 L_m(t) e^{-t/2} (t/2) with t = 2/x (x) or t = 2 e^{-v} (v)."""
    if geometry == "x":
        inv = 1.0 / grid
    else:
        inv = np.exp(-grid)
    t = 2.0 * inv
    return 2.0 * laguerre_all(M, t) * (np.exp(-inv) * inv)


def reconstruct(coeffs: PollaczekCoefficients, cfg: ReconstructionConfig) -> SampledFunction:
    """Sum the first cfg.expansion_truncation + 1 terms on cfg.grid."""
    M = cfg.expansion_truncation
    if M > coeffs.M:
        raise ValueError(f"degree {M} requested, only {coeffs.M} available")
    rows = _basis_rows(M, cfg.geometry, cfg.grid)
    values = coeffs.amplitudes[: M + 1] @ rows
    return SampledFunction(cfg.geometry, cfg.grid, values)


def evaluate_expansion(coeffs: PollaczekCoefficients, geometry: str, points) -> np.ndarray:
    """The truncated expansion at arbitrary points (no support check).

    Used by the diagnostics, which integrate the reconstruction over the
    whole line.  For x <= 0 the value is 0 (the basis vanishes there).
    """
    pts = np.asarray(points, dtype=float)
    if geometry == "x":
        out = np.zeros_like(pts)
        pos = pts > 0
        out[pos] = coeffs.amplitudes @ _basis_rows(coeffs.M, "x", pts[pos])
        return out
    out = np.zeros_like(pts)
    ok = pts >= -40.0
    out[ok] = coeffs.amplitudes @ _basis_rows(coeffs.M, "v", pts[ok])
    return out


def expansion_interpolant(coeffs: PollaczekCoefficients) -> Interpolant:
    """Interpolant of the truncated expansion, continued off the boundary line.

    a(lambda) = 2 Gamma(lambda + 1) sum_m (-i)^m A_m P_m(-i (lambda + 1/2)),
    which on lambda = -1/2 + i nu is sum_m d_m psi_m(nu).
    """
    A = coeffs.amplitudes
    phase = (-1j) ** np.arange(A.size)

    def evaluator(lam):
        lam = np.asarray(lam, dtype=complex)
        P = pollaczek_P_all(A.size - 1, -1j * (lam + 0.5))
        series = np.tensordot(phase * A, P, axes=1)
        return 2.0 * gamma(lam + 1.0) * series

    return Interpolant(evaluator, provenance="expansion")


def add_noise(a: MomentSequence, epsilon: float, seed: int = 0) -> MomentSequence:
    """Perturb each a_n by an independent uniform draw in [-epsilon, epsilon]."""
    if not epsilon >= 0:
        raise ValueError("noise level must be non-negative")
    vals = a.values
    if epsilon == 0:
        return MomentSequence(vals.copy(), 0.0, a.label)
    rng = np.random.default_rng(seed)
    noisy = vals + rng.uniform(-epsilon, epsilon, size=vals.size)
    # rounding in the addition may overshoot the bound by an ulp
    over = np.abs(noisy - vals) > epsilon
    while np.any(over):
        noisy[over] = np.nextafter(noisy[over], vals[over])
        over = np.abs(noisy - vals) > epsilon
    label = f"{a.label} + uniform noise (eps={epsilon:g}, seed={seed})".strip()
    return MomentSequence(noisy, epsilon, label)


@dataclass(frozen=True)
class SweepResult:
    degrees: np.ndarray
    errors: np.ndarray

    @property
    def argmin_degree(self) -> int:
        return int(self.degrees[int(np.argmin(self.errors))])

    def rows(self):
        return list(zip(self.degrees.tolist(), self.errors.tolist()))


def truncation_sweep(a, reference: SampledFunction, degrees, cfg: ReconstructionConfig
                     ) -> SweepResult:
    """Relative L^2 error of the reconstruction against ``reference`` for each degree."""
    degrees = np.asarray(list(degrees), dtype=int)
    if degrees.size == 0:
        return SweepResult(degrees, np.array([], dtype=float))
    if reference.geometry != cfg.geometry or not np.array_equal(reference.abscissa, cfg.grid):
        raise ValueError("reference must be sampled on the configuration grid")
    vals = a.values if isinstance(a, MomentSequence) else np.asarray(a, dtype=float)
    vals = vals[: cfg.series_truncation + 1]
    M_max = int(degrees.max())
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        coeffs = pollaczek_coefficients(vals, M_max)
    errors = np.array([
        reconstruct(coeffs.truncate(M), cfg.with_degree(M)).relative_l2_error(reference)
        for M in degrees])
    return SweepResult(degrees, errors)


__all__ = [
    "CONVENTION", "DEFAULT_N", "DEFAULT_M", "TruncationWarning", "PollaczekCoefficients",
    "ReconstructionConfig", "MomentSequence", "SampledFunction", "pollaczek_coefficients",
    "pollaczek_coefficients_integral", "series_d", "reconstruct", "evaluate_expansion",
    "expansion_interpolant", "add_noise", "SweepResult", "truncation_sweep",
]
