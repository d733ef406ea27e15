"""Ground truth and independent oracles.

Analytic jump/interpolant pairs, Mellin and Laplace transforms by quadrature,
inverse-Fourier recovery of the jump from its interpolant, the Cauchy integral
and its Taylor series, and the Plancherel / Hardy-norm / jump-bound diagnostics.

Nothing here touches the Pollaczek expansion: these routines are the yardstick
the inverse pipeline in :mod:`pollaczek_jump.transform` is measured against.

Geometries: ``"v"`` jumps live on v > 0 and are Laplace-paired with the
interpolant; ``"x"`` jumps live on x > 1 and are Mellin-paired.  The two are
linked by x = e^v with F_x(x) = F_v(ln x).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy import integrate

from .quadrature import QuadratureError, exp_sinh, tanh_sinh
from .samples import MomentSequence, SampledFunction

ComplexFn = Callable[[np.ndarray], np.ndarray]

# sigma = -1/2 is shifted by this much when the line integrand is not finite
BOUNDARY_SHIFT = 1e-6


@dataclass(frozen=True)
class Interpolant:
    """Evaluator of the Carlsonian interpolation on Re(lambda) > -1/2."""

    evaluator: ComplexFn
    provenance: str = "closed-form"

    def __call__(self, lam):
        return np.asarray(self.evaluator(np.asarray(lam, dtype=complex)), dtype=complex)

    def on_line(self, sigma: float) -> ComplexFn:
        return lambda nu: self(sigma + 1j * np.asarray(nu, dtype=float))


@dataclass(frozen=True)
class AnalyticPair:
    name: str
    geometry: str
    jump: Callable[[np.ndarray], np.ndarray]
    interpolant: Interpolant
    coefficient: Callable[[int], float]
    params: dict = field(default_factory=dict)

    def coefficients(self, N: int) -> MomentSequence:
        vals = np.array([self.coefficient(n) for n in range(N + 1)], dtype=float)
        return MomentSequence(vals, label=self.label)

    @property
    def label(self) -> str:
        extra = ",".join(f"{k}={v:g}" for k, v in self.params.items())
        return f"{self.name}({extra})" if extra else self.name

    def jump_in(self, geometry: str) -> Callable[[np.ndarray], np.ndarray]:
        """The jump as a function of ``geometry``'s abscissa."""
        if geometry == self.geometry:
            return self.jump
        if geometry == "x":
            return lambda x: self.jump(np.log(np.asarray(x, dtype=float)))
        if geometry == "v":
            return lambda v: self.jump(np.exp(np.asarray(v, dtype=float)))
        raise ValueError(f"unknown geometry {geometry!r}")

    def sample(self, geometry: str, grid) -> SampledFunction:
        grid = np.asarray(grid, dtype=float)
        return SampledFunction(geometry, grid, self.jump_in(geometry)(grid))


def pair_power_law(beta: float = 1.0) -> AnalyticPair:
    """F(x) = x^-beta on x > 1;  a_n = 1/(n + beta)."""
    if not beta > 0.5:
        raise ValueError("power-law pair needs beta > 1/2 (x^-beta in L^2(1, inf))")
    return AnalyticPair(
        "power-law", "x",
        lambda x: np.asarray(x, dtype=float) ** -beta,
        Interpolant(lambda lam: 1.0 / (lam + beta)),
        lambda n: 1.0 / (n + beta),
        {"beta": beta},
    )


def pair_exponential(beta: float = 1.0) -> AnalyticPair:
    """F(v) = e^{-beta v} on v > 0;  a_n = 1/(n + beta)."""
    if not beta > 0:
        raise ValueError("exponential pair needs beta > 0")
    return AnalyticPair(
        "exponential", "v",
        lambda v: np.exp(-beta * np.asarray(v, dtype=float)),
        Interpolant(lambda lam: 1.0 / (lam + beta)),
        lambda n: 1.0 / (n + beta),
        {"beta": beta},
    )


def pair_log_power(beta: float = 1.0) -> AnalyticPair:
    """F(x) = x^-beta ln x on x > 1;  a_n = 1/(n + beta)^2."""
    if not beta > 0.5:
        raise ValueError("log-power pair needs beta > 1/2")
    return AnalyticPair(
        "log-power", "x",
        lambda x: np.asarray(x, dtype=float) ** -beta * np.log(x),
        Interpolant(lambda lam: 1.0 / (lam + beta) ** 2),
        lambda n: 1.0 / (n + beta) ** 2,
        {"beta": beta},
    )


def pair_zero() -> AnalyticPair:
    return AnalyticPair(
        "zero", "x",
        lambda x: np.zeros_like(np.asarray(x, dtype=float)),
        Interpolant(lambda lam: np.zeros_like(lam)),
        lambda n: 0.0,
    )


PAIRS: dict[str, Callable[..., AnalyticPair]] = {
    "power-law": pair_power_law,
    "exponential": pair_exponential,
    "log-power": pair_log_power,
    "zero": pair_zero,
}


def make_pair(name: str, beta: float | None = None) -> AnalyticPair:
    try:
        factory = PAIRS[name]
    except KeyError:
        raise ValueError(f"unknown pair {name!r}; choose from {sorted(PAIRS)}") from None
    if name == "zero":
        return factory()
    return factory() if beta is None else factory(beta)


# --- transforms -----------------------------------------------------------

def mellin_coefficients(F: Callable, N: int, tol: float = 1e-12) -> MomentSequence:
    """a_n = int_1^inf F(x) x^{-n-1} dx, n = 0..N."""
    values, errors = [], []
    for n in range(N + 1):
        r = exp_sinh(lambda x, n=n: F(x) * x ** (-n - 1.0), 1.0, tol=tol)
        values.append(float(np.real(r.value)))
        errors.append(r.error)
    return MomentSequence(np.array(values), label="mellin quadrature",
                          error_estimates=np.array(errors))


def laplace_interpolant(F: Callable, lam: complex, tol: float = 1e-12) -> complex:
    """int_0^inf F(v) e^{-lambda v} dv for a v-geometry jump."""
    lam = complex(lam)
    if lam.real <= -0.5:
        raise ValueError("Laplace interpolant is defined for Re(lambda) > -1/2")
    r = exp_sinh(lambda v: F(v) * np.exp(-lam * v), 0.0, tol=tol)
    return complex(r.value)


def _line_values_ok(atilde: Interpolant, sigma: float) -> bool:
    probe = np.concatenate([[0.0], np.geomspace(1e-8, 1e6, 64)])
    vals = atilde(sigma + 1j * np.concatenate([probe, -probe]))
    return bool(np.all(np.isfinite(vals)))


def _admissible_sigma(atilde: Interpolant, sigma: float) -> float:
    if sigma < -0.5:
        raise ValueError("sigma must be >= -1/2")
    if sigma == -0.5 and not _line_values_ok(atilde, sigma):
        return sigma + BOUNDARY_SHIFT
    return sigma


def decay_exponent(atilde: Interpolant, sigma: float,
                   probes: tuple[float, float] = (1e4, 1e6)) -> float:
    """Estimated p in |a(sigma + i nu)| ~ |nu|^-p from two far probes."""
    lo, hi = probes
    a_lo = np.abs(atilde(sigma + 1j * np.array([lo, -lo]))).max()
    a_hi = np.abs(atilde(sigma + 1j * np.array([hi, -hi]))).max()
    if a_hi == 0.0:
        return math.inf
    if a_lo == 0.0:
        return 0.0
    return math.log(a_lo / a_hi) / math.log(hi / lo)


def invert_interpolant(atilde: Interpolant, sigma: float, v_grid, tol: float = 1e-11
                       ) -> SampledFunction:
    """F(v) = (1/2 pi) int a(sigma + i nu) e^{(sigma + i nu) v} d nu on v > 0.

    Uses the conjugate symmetry of real-coefficient interpolants to fold the
    line integral onto nu > 0, then QUADPACK's Fourier-integral rule (QAWF),
    which also handles interpolants decaying only like 1/nu.
    """
    sigma = _admissible_sigma(atilde, sigma)
    v_grid = np.asarray(v_grid, dtype=float)
    if np.any(v_grid <= 0):
        raise ValueError("inverse transform is evaluated on v > 0")
    if decay_exponent(atilde, sigma) <= 1.05:
        warnings.warn("interpolant decays too slowly on the chosen line; the inverse "
                      "integral converges only conditionally", RuntimeWarning, stacklevel=2)
    line = atilde.on_line(sigma)

    def re(nu):
        return float(np.real(line(np.array([nu]))[0]))

    def im(nu):
        return float(np.imag(line(np.array([nu]))[0]))

    out = np.empty_like(v_grid)
    for k, v in enumerate(v_grid):
        c = _qawf(re, "cos", v, tol)
        s = _qawf(im, "sin", v, tol)
        out[k] = math.exp(sigma * v) * (c - s) / math.pi
    return SampledFunction("v", v_grid, out)


def _qawf(f, weight: str, omega: float, tol: float) -> float:
    val, err = integrate.quad(f, 0.0, np.inf, weight=weight, wvar=omega, epsabs=tol,
                              limlst=200, limit=400)
    if err > max(1e3 * tol, 1e-8):
        raise QuadratureError(f"Fourier integral did not converge (error {err:.2e})",
                              value=val, error=err)
    return val


def _line_integral(f, tol: float) -> float:
    """int_R f(nu) d nu for a non-negative f, as two half-line rules."""
    right = exp_sinh(f, 0.0, tol=tol)
    left = exp_sinh(lambda nu: f(-nu), 0.0, tol=tol)
    return float(right.value + left.value)


def hardy_norm(atilde: Interpolant, sigma: float, tol: float = 1e-12) -> float:
    """int |a(sigma + i nu)|^2 d nu; non-increasing in sigma when the jump lives on v > 0."""
    sigma = _admissible_sigma(atilde, sigma)
    line = atilde.on_line(sigma)
    return _line_integral(lambda nu: np.abs(line(nu)) ** 2, tol)


@dataclass(frozen=True)
class PlancherelResult:
    lhs: float
    rhs: float
    residual: float
    sigma: float


def jump_energy(F: Callable, sigma: float, geometry: str, full_line: bool = False,
                tol: float = 1e-12) -> float:
    """2 pi int |F(v) e^{-sigma v}|^2 dv (v) or 2 pi int |F(x)|^2 x^{-2 sigma - 1} dx (x).

    ``full_line`` extends the support to v in R (x > 0), for jumps that leak
    below the cut such as truncated expansions.
    """
    if geometry == "v":
        def f(v):
            return np.abs(F(v) * np.exp(-sigma * v)) ** 2
        total = exp_sinh(f, 0.0, tol=tol).value
        if full_line:
            total += exp_sinh(lambda v: f(-v), 0.0, tol=tol).value
    elif geometry == "x":
        def f(x):
            return np.abs(F(x)) ** 2 * x ** (-2.0 * sigma - 1.0)
        total = exp_sinh(f, 1.0, tol=tol).value
        if full_line:
            total += tanh_sinh(f, 0.0, 1.0, tol=tol).value
    else:
        raise ValueError(f"unknown geometry {geometry!r}")
    return 2.0 * math.pi * float(total)


def plancherel_check(atilde: Interpolant, F: Callable, sigma: float, geometry: str = "v",
                     full_line: bool = False, tol: float = 1e-12) -> PlancherelResult:
    sigma = _admissible_sigma(atilde, sigma)
    lhs = hardy_norm(atilde, sigma, tol)
    rhs = jump_energy(F, sigma, geometry, full_line, tol)
    if rhs == 0.0:
        residual = 0.0 if lhs == 0.0 else math.inf
    else:
        residual = abs(lhs - rhs) / abs(rhs)
    return PlancherelResult(lhs, rhs, residual, sigma)


@dataclass(frozen=True)
class JumpBoundReport:
    sigma: float
    l1_norm: float
    l1_finite: bool
    decay: float
    holds: bool
    violations: list

    @property
    def status(self) -> str:
        if not self.l1_finite:
            return "l1-divergent"
        return "holds" if self.holds else "violated"


def l1_norm(atilde: Interpolant, sigma: float, tol: float = 1e-10) -> tuple[float, float]:
    """(1/2 pi) int |a(sigma + i nu)| d nu, or inf when the decay is not integrable."""
    sigma = _admissible_sigma(atilde, sigma)
    p = decay_exponent(atilde, sigma)
    if p <= 1.05:
        return math.inf, p
    line = atilde.on_line(sigma)

    def f(nu):
        return np.abs(line(nu))

    try:
        total = _line_integral(f, tol)
    except QuadratureError:
        # |a| has kinks where a vanishes on the line; globally adaptive
        # bisection copes with those, the double-exponential rule does not
        total = 0.0
        for sign in (1.0, -1.0):
            val, err = integrate.quad(lambda nu: float(f(np.array([sign * nu]))[0]), 0.0,
                                      np.inf, epsabs=tol, epsrel=tol, limit=1000)
            if err > max(1e3 * tol, 1e-8 * abs(val)):
                raise QuadratureError(f"L1 norm did not converge (error {err:.2e})",
                                      value=val, error=err) from None
            total += val
    return total / (2.0 * math.pi), p


def jump_bound_check(atilde: Interpolant, F: Callable, sigma: float, grid,
                     geometry: str = "v") -> JumpBoundReport:
    """Check |F(v)| <= ||a_sigma||_1 e^{sigma v}  (x-geometry: <= ||a_sigma||_1 x^sigma)."""
    norm, p = l1_norm(atilde, sigma)
    grid = np.asarray(grid, dtype=float)
    if not math.isfinite(norm):
        return JumpBoundReport(sigma, norm, False, p, True, [])
    if geometry == "v":
        bound = norm * np.exp(sigma * grid)
    elif geometry == "x":
        bound = norm * grid ** sigma
    else:
        raise ValueError(f"unknown geometry {geometry!r}")
    values = np.abs(F(grid))
    # quadrature slack on the norm
    bad = values > bound * (1.0 + 1e-9) + 1e-15
    return JumpBoundReport(sigma, norm, True, p, not bool(bad.any()), grid[bad].tolist())


# --- Cauchy integral and Taylor series ----------------------------------------

def cauchy_eval(F: Callable, z: complex, tol: float = 1e-12) -> complex:
    """f(z) = (1/2 pi) int_1^inf F(x) / (x - z) dx for an x-geometry jump."""
    z = complex(z)
    if z.imag == 0.0 and z.real >= 1.0:
        raise ValueError("z lies on the cut [1, inf)")
    r = exp_sinh(lambda x: F(x) / (x - z), 1.0, tol=tol)
    return complex(r.value) / (2.0 * math.pi)


def cauchy_taylor_coefficients(F: Callable, K: int, radius: float = 0.25,
                               points: int = 64) -> np.ndarray:
    """First K+1 Taylor coefficients of 2 pi f from the trapezoidal rule on |z| = radius."""
    theta = 2.0 * math.pi * np.arange(points) / points
    z = radius * np.exp(1j * theta)
    fz = np.array([cauchy_eval(F, zk) for zk in z])
    k = np.arange(K + 1)
    coef = (fz[None, :] * np.exp(-1j * np.outer(k, theta))).mean(axis=1) / radius ** k
    return 2.0 * math.pi * coef.real


@dataclass(frozen=True)
class TaylorValue:
    value: complex
    remainder: float


def taylor_eval(a, z: complex) -> TaylorValue:
    """(1/2 pi) sum_n a_n z^n with a geometric remainder estimate from the last term."""
    vals = a.values if isinstance(a, MomentSequence) else np.asarray(a, dtype=float)
    z = complex(z)
    r = abs(z)
    if r >= 1.0:
        warnings.warn("|z| >= 1: the Taylor series need not converge", RuntimeWarning,
                      stacklevel=2)
    powers = z ** np.arange(vals.size)
    value = complex(np.sum(vals * powers)) / (2.0 * math.pi)
    last = abs(vals[-1] * powers[-1]) / (2.0 * math.pi)
    remainder = last * r / (1.0 - r) if r < 1.0 else math.inf
    return TaylorValue(value, remainder)


__all__ = [
    "Interpolant", "AnalyticPair", "pair_power_law", "pair_exponential", "pair_log_power",
    "pair_zero", "PAIRS", "make_pair", "mellin_coefficients", "laplace_interpolant",
    "invert_interpolant", "hardy_norm", "plancherel_check", "PlancherelResult",
    "jump_energy", "l1_norm", "jump_bound_check", "JumpBoundReport", "decay_exponent",
    "cauchy_eval", "cauchy_taylor_coefficients", "taylor_eval", "TaylorValue",
    "QuadratureError",
]
