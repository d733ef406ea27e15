"""Moment-sequence diagnostics: finite differences, the Hausdorff L^2 statistic,
the Watanabe L^1 statistic and the Bernoulli-walk Markov objects.

The statistics involve binomially weighted high-order differences and cancel
catastrophically in floating point.  Differences are therefore always formed
exactly (floats are exact binary rationals); ``exact=True`` additionally keeps
every result as a :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, NamedTuple, Sequence

import numpy as np

from .quadrature import QuadratureError, tanh_sinh
from .samples import MomentSequence

# markov_kernel switches to log-gamma evaluation above this starting row
_EXACT_KERNEL_LIMIT = 64


class LatticePoint(NamedTuple):
    n: int
    i: int

    def validate(self) -> "LatticePoint":
        if self.n < 0 or self.i < 0 or self.i > self.n:
            raise ValueError(f"{tuple(self)} is not in E = {{(n, i): n >= i >= 0}}")
        return self


@dataclass(frozen=True)
class HausdorffReport:
    per_n_statistic: list
    per_n_watanabe: list
    max_statistic: float | Fraction
    exact_mode: bool
    cauchy_schwarz_ok: bool
    unbounded_trend: bool

    @property
    def n_max(self) -> int:
        return len(self.per_n_statistic) - 1

    @property
    def verdict(self) -> str:
        # boundedness over all n cannot be decided from a finite prefix
        word = "violates" if self.unbounded_trend else "consistent with"
        return f"{word} the Hausdorff condition up to n={self.n_max}"


@dataclass(frozen=True)
class KernelLimitRecord:
    point: LatticePoint
    b: float
    m_values: list
    j_values: list
    kernel: list
    poisson: float
    deviations: list

    @property
    def decreasing(self) -> bool:
        d = self.deviations
        return all(d[k + 1] <= d[k] for k in range(len(d) - 1))


def _values(seq) -> list:
    if isinstance(seq, MomentSequence):
        seq = seq.values
    vals = list(seq)
    if not vals:
        raise ValueError("sequence must have at least one entry")
    return vals


def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("sequence entries must be finite")
    return Fraction(x)


def _out(x: Fraction, exact: bool):
    if exact:
        return x
    try:
        return float(x)
    except OverflowError as exc:
        raise OverflowError("value exceeds the floating-point range; use exact mode") from exc


def rationalize(values: Sequence[float], max_denominator: int = 10**6) -> list[Fraction]:
    """Read floats as the simple rationals they round from, when there is one.

    A float is replaced by p/q (q <= max_denominator) only if p/q rounds to
    exactly that float; otherwise its exact binary value is kept.
    """
    out = []
    for x in values:
        if isinstance(x, (Fraction, int)):
            out.append(Fraction(x))
            continue
        x = float(x)
        guess = Fraction(x).limit_denominator(max_denominator)
        out.append(guess if float(guess) == x else Fraction(x))
    return out


def difference_table(seq, rows: int) -> list[list[Fraction]]:
    """table[k][j] = Delta^k f_j, exact, for k < rows and j + k <= N."""
    f = [_exact(v) for v in _values(seq)]
    if rows > len(f):
        raise IndexError("not enough data for the requested difference order")
    table = [f]
    for _ in range(1, rows):
        prev = table[-1]
        table.append([prev[j + 1] - prev[j] for j in range(len(prev) - 1)])
    return table


def finite_difference(seq, k: int, n: int, exact: bool = False):
    """Delta^k f_n = sum_m (-1)^m C(k, m) f_{n+k-m}."""
    f = _values(seq)
    if k < 0 or n < 0:
        raise ValueError("k and n must be non-negative")
    if n + k >= len(f):
        raise IndexError(f"Delta^{k} f_{n} needs f_{n + k}, data ends at f_{len(f) - 1}")
    total = sum((-1) ** m * math.comb(k, m) * _exact(f[n + k - m]) for m in range(k + 1))
    return _out(Fraction(total), exact)


def _binomial_differences(seq, n: int) -> list[Fraction]:
    """C(n, i) |Delta^i f_{n-i}| for i = 0..n."""
    f = _values(seq)
    if n < 0 or n >= len(f):
        raise IndexError(f"statistic at n={n} needs f_0..f_{n}")
    table = difference_table(f[: n + 1], n + 1)
    return [math.comb(n, i) * abs(table[i][n - i]) for i in range(n + 1)]


def hausdorff_statistic(seq, n: int, exact: bool = False):
    """S_n = (n+1) sum_i C(n,i)^2 |Delta^i f_{n-i}|^2."""
    terms = _binomial_differences(seq, n)
    if exact:
        return (n + 1) * sum(t * t for t in terms)
    return (n + 1) * math.fsum(_out(t, False) ** 2 for t in terms)


def watanabe_statistic(seq, n: int, exact: bool = False):
    """T_n = sum_i C(n,i) |Delta^i f_{n-i}|."""
    terms = _binomial_differences(seq, n)
    if exact:
        return sum(terms, Fraction(0))
    return math.fsum(_out(t, False) for t in terms)


def hausdorff_report(seq, n_max: int | None = None, exact: bool = False) -> HausdorffReport:
    """S_n and T_n for n = 0..n_max with a bounded/unbounded trend flag.

    The trend is flagged when the last statistic exceeds 1.5 times the largest
    value seen over the first half of the range.
    """
    f = _values(seq)
    if n_max is None:
        n_max = len(f) - 1
    n_max = min(n_max, len(f) - 1)
    table = difference_table(f[: n_max + 1], n_max + 1)
    S, T = [], []
    cs_ok = True
    for n in range(n_max + 1):
        terms = [math.comb(n, i) * abs(table[i][n - i]) for i in range(n + 1)]
        s_exact = (n + 1) * sum(t * t for t in terms)
        t_exact = sum(terms, Fraction(0))
        cs_ok = cs_ok and t_exact * t_exact <= s_exact
        if exact:
            S.append(s_exact)
            T.append(t_exact)
        else:
            S.append((n + 1) * math.fsum(_out(t, False) ** 2 for t in terms))
            T.append(math.fsum(_out(t, False) for t in terms))
    head = max(S[: n_max // 2 + 1])
    trend = n_max >= 2 and S[-1] > 1.5 * head and S[-1] > 0
    return HausdorffReport(S, T, max(S), exact, cs_ok, bool(trend))


def harmonic_function(seq, p: LatticePoint, exact: bool = False):
    """u(n, i) = 2^n (-1)^i Delta^i f_{n-i}."""
    n, i = LatticePoint(*p).validate()
    d = finite_difference(seq, i, n - i, exact=True)
    return _out(2 ** n * (-1) ** i * d, exact)


def markov_kernel(frm: LatticePoint, to: LatticePoint) -> float:
    """K((n,i),(m,j)) = 2^n C(m-n, j-i) / C(m, j) for the B(1/2) walk.

    The factorial ratio collapses to falling factorials of length n,

        K = 2^n j^(i) (m-j)^(n-i) / m^(n),    a^(k) = a (a-1) ... (a-k+1),

    evaluated exactly for n <= 64 whatever m is; log-gamma beyond.
    """
    n, i = LatticePoint(*frm).validate()
    m, j = LatticePoint(*to).validate()
    if m < n or not i <= j <= i + (m - n):
        raise ValueError(f"{(m, j)} is not reachable from {(n, i)}")
    if n <= _EXACT_KERNEL_LIMIT:
        num = 2 ** n * math.perm(j, i) * math.perm(m - j, n - i)
        return float(Fraction(num, math.perm(m, n)))
    return math.exp(n * math.log(2.0) + _log_comb(m - n, j - i) - _log_comb(m, j))


def _log_comb(a: int, b: int) -> float:
    return math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)


def poisson_kernel(p: LatticePoint, b: float) -> float:
    """Generalized Poisson kernel 2^n b^(n-i) (1-b)^i on the Martin boundary [0, 1]."""
    n, i = LatticePoint(*p).validate()
    if not 0.0 <= b <= 1.0:
        raise ValueError("b must lie in [0, 1]")
    return 2.0 ** n * b ** (n - i) * (1.0 - b) ** i


def kernel_limit_check(p: LatticePoint, b: float, m_max: int) -> KernelLimitRecord:
    """Follow K(p, (m_k, j_k)) with j_k = round((1-b) m_k), m_k = 10, 100, ..., m_max."""
    p = LatticePoint(*p).validate()
    if not 0.0 < b < 1.0:
        raise ValueError("b must lie strictly inside (0, 1)")
    target = poisson_kernel(p, b)
    ms = []
    m = 10
    while m < m_max:
        ms.append(m)
        m *= 10
    ms.append(m_max)
    m_vals, j_vals, ks, devs = [], [], [], []
    for m in ms:
        if m < p.n:
            continue
        j = int(round((1.0 - b) * m))
        j = min(max(j, p.i), p.i + m - p.n)
        k = markov_kernel(p, (m, j))
        m_vals.append(m)
        j_vals.append(j)
        ks.append(k)
        devs.append(abs(k - target) / target)
    return KernelLimitRecord(p, b, m_vals, j_vals, ks, target, devs)


def expectation(u_row: Sequence) -> float | Fraction:
    """E_(0,0)|u(x_n)| = 2^-n sum_i |u(n, i)| C(n, i) for a full row i = 0..n."""
    row = list(u_row)
    if not row:
        raise ValueError("row must contain u(n, 0)..u(n, n)")
    n = len(row) - 1
    if all(isinstance(u, Rational) for u in row):
        return Fraction(sum(abs(Fraction(u)) * math.comb(n, i) for i, u in enumerate(row)), 2 ** n)
    return math.fsum(abs(float(u)) * math.comb(n, i) for i, u in enumerate(row)) / 2.0 ** n


def moments_from_density(u: Callable[[np.ndarray], np.ndarray], N: int,
                         tol: float = 1e-12) -> MomentSequence:
    """f_n = int_0^1 x^n u(x) dx for n = 0..N by tanh-sinh quadrature.

    Raises :class:`QuadratureError` (with the achieved error) on failure.
    """
    if N < 0:
        raise ValueError("N must be non-negative")
    values, errors = [], []
    for n in range(N + 1):
        r = tanh_sinh(lambda x, n=n: x ** n * u(x), 0.0, 1.0, tol=tol)
        values.append(float(np.real(r.value)))
        errors.append(r.error)
    return MomentSequence(np.array(values), label="moments of a density",
                          error_estimates=np.array(errors))


__all__ = [
    "LatticePoint", "HausdorffReport", "KernelLimitRecord", "rationalize",
    "difference_table", "finite_difference", "hausdorff_statistic", "watanabe_statistic",
    "hausdorff_report", "harmonic_function", "markov_kernel", "poisson_kernel",
    "kernel_limit_check", "expectation", "moments_from_density", "QuadratureError",
]
