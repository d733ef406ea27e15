"""Special functions for the Pollaczek-Laguerre expansion.

Conventions
-----------
* ``pollaczek_P`` is the symmetric family with weight ``|Gamma(1/2 + i nu)|^2 / pi``,
  built from ``(m+1) P_{m+1} = 2 nu P_m - m P_{m-1}``, ``P_0 = 1``.
* ``pollaczek_imag(m, y)`` is the real polynomial with ``P_m(-i y) = (-i)^m s_m(y)``.
* ``Phi_hat`` / ``phi_hat`` are the real parts of the orthonormal bases once the
  ``i^m`` phase is stripped.

Every function is vectorised over its continuous argument.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from .quadrature import (QuadratureError, exp_sinh, gauss_laguerre_nodes,
                         gauss_legendre_nodes, whole_line)

SQRT2 = math.sqrt(2.0)
SQRT_PI = math.sqrt(math.pi)

# Lanczos approximation, g = 671/128, 14 terms (Numerical Recipes, 3rd ed.)
_LANCZOS_G = 5.24218750000000000
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_COEF = np.array([
    57.1562356658629235, -59.5979603554754912, 14.1360979747417471,
    -0.491913816097620199, 0.339946499848118887e-4, 0.465236289270485756e-4,
    -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
    0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
    -0.261908384015814087e-4, 0.368991826595316234e-5,
])
_LOG_SQRT_2PI_SERIES = 2.5066282746310005


def _lanczos_log_gamma(z: np.ndarray) -> np.ndarray:
    # valid for Re z >= 1/2
    tmp = z + _LANCZOS_G
    tmp = (z + 0.5) * np.log(tmp) - tmp
    ser = np.full_like(z, _LANCZOS_C0)
    for j, c in enumerate(_LANCZOS_COEF, start=1):
        ser = ser + c / (z + j)
    return tmp + np.log(_LOG_SQRT_2PI_SERIES * ser / z)


def _log_sin_pi(z: np.ndarray) -> np.ndarray:
    """log(sin(pi z)) up to multiples of 2 pi i, stable for large |Im z|."""
    w = np.pi * z
    out = np.empty_like(w)
    up = w.imag > 1.0
    down = w.imag < -1.0
    mid = ~(up | down)
    out[up] = np.log(0.5j) - 1j * w[up] + np.log1p(-np.exp(2j * w[up]))
    out[down] = np.log(-0.5j) + 1j * w[down] + np.log1p(-np.exp(-2j * w[down]))
    out[mid] = np.log(np.sin(w[mid]))
    return out


def log_gamma(z):
    """Principal logarithm of Gamma(z): imaginary part wrapped into (-pi, pi].

    Lanczos approximation on Re z >= 1/2, reflection formula below that.
    Raises ``ValueError`` at the poles z = 0, -1, -2, ...
    """
    z_arr = np.asarray(z, dtype=complex)
    scalar = z_arr.ndim == 0
    z_arr = np.atleast_1d(z_arr)
    pole = (z_arr.imag == 0) & (z_arr.real <= 0) & (z_arr.real == np.round(z_arr.real))
    if np.any(pole):
        raise ValueError("log_gamma: pole at a non-positive integer")
    out = np.empty_like(z_arr)
    right = z_arr.real >= 0.5
    out[right] = _lanczos_log_gamma(z_arr[right])
    left = ~right
    if np.any(left):
        zl = z_arr[left]
        out[left] = math.log(math.pi) - _log_sin_pi(zl) - _lanczos_log_gamma(1.0 - zl)
    out = out.real + 1j * np.angle(np.exp(1j * out.imag))
    return out[0] if scalar else out


def gamma(z):
    return np.exp(log_gamma(z))


def pollaczek_weight(nu):
    """w(nu) = |Gamma(1/2 + i nu)|^2 / pi, the alpha = 1/2 Pollaczek weight."""
    nu = np.asarray(nu, dtype=float)
    return np.exp(2.0 * log_gamma(0.5 + 1j * nu).real) / math.pi


def pollaczek_P_all(M: int, nu) -> np.ndarray:
    """Stack of P_0..P_M evaluated at ``nu`` (real or complex), shape (M+1, ...)."""
    if M < 0:
        raise ValueError("degree must be non-negative")
    nu = np.asarray(nu)
    out = np.empty((M + 1,) + nu.shape, dtype=np.result_type(nu, float))
    out[0] = 1.0
    if M >= 1:
        out[1] = 2.0 * nu
    for m in range(1, M):
        out[m + 1] = (2.0 * nu * out[m] - m * out[m - 1]) / (m + 1)
    return out


def pollaczek_P(m: int, nu):
    return pollaczek_P_all(m, nu)[m]


def pollaczek_imag_all(M: int, y) -> np.ndarray:
    """Stack of s_0..s_M at ``y``; all terms positive for y > 0, so no cancellation."""
    if M < 0:
        raise ValueError("degree must be non-negative")
    y = np.asarray(y, dtype=float)
    out = np.empty((M + 1,) + y.shape)
    out[0] = 1.0
    if M >= 1:
        out[1] = 2.0 * y
    for m in range(1, M):
        out[m + 1] = (2.0 * y * out[m] + m * out[m - 1]) / (m + 1)
    return out


def pollaczek_imag(m: int, y):
    return pollaczek_imag_all(m, y)[m]


def pollaczek_monomial(m: int) -> np.ndarray:
    """Power-basis coefficients of P_m, lowest degree first."""
    prev, cur = np.array([1.0]), np.array([0.0, 2.0])
    if m == 0:
        return prev
    for k in range(1, m):
        nxt = npoly.polysub(npoly.polymulx(2.0 * cur), k * prev) / (k + 1)
        prev, cur = cur, nxt
    return cur


def laguerre_all(M: int, t) -> np.ndarray:
    if M < 0:
        raise ValueError("degree must be non-negative")
    t = np.asarray(t, dtype=float)
    out = np.empty((M + 1,) + t.shape)
    out[0] = 1.0
    if M >= 1:
        out[1] = 1.0 - t
    for m in range(1, M):
        out[m + 1] = ((2 * m + 1 - t) * out[m] - m * out[m - 1]) / (m + 1)
    return out


def laguerre(m: int, t):
    return laguerre_all(m, t)[m]


def pollaczek_function(m: int, nu):
    """psi_m(nu) = Gamma(1/2 + i nu) P_m(nu) / sqrt(pi)."""
    nu = np.asarray(nu, dtype=float)
    return gamma(0.5 + 1j * nu) * pollaczek_P(m, nu) / SQRT_PI


def _g(v: np.ndarray) -> np.ndarray:
    """exp(-e^{-v}) e^{-v/2}, returning 0 for v < -40."""
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    ok = v >= -40.0
    out[ok] = np.exp(-np.exp(-v[ok]) - 0.5 * v[ok])
    return out


def Phi_hat_all(M: int, v) -> np.ndarray:
    """Rows Phi_hat_m(v) = sqrt(2) L_m(2 e^{-v}) exp(-e^{-v}) e^{-v/2}, m = 0..M."""
    v = np.asarray(v, dtype=float)
    g = _g(v)
    t = np.where(v >= -40.0, 2.0 * np.exp(-np.maximum(v, -40.0)), 0.0)
    return SQRT2 * laguerre_all(M, t) * g


def Phi_hat(m: int, v):
    return Phi_hat_all(m, v)[m]


def Phi(m: int, v):
    return (1j) ** m * Phi_hat(m, v)


def phi_hat_all(M: int, x) -> np.ndarray:
    """Rows phi_hat_m(x) = sqrt(2) L_m(2/x) e^{-1/x} / x on x > 0."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("phi_hat: x must be positive")
    inv = 1.0 / x
    return SQRT2 * laguerre_all(M, 2.0 * inv) * (np.exp(-inv) * inv)


def phi_hat(m: int, x):
    return phi_hat_all(m, x)[m]


def phi(m: int, x):
    return (1j) ** m * phi_hat(m, x)


# --- Gram matrices ---------------------------------------------------------

def pollaczek_gram(M: int, half_width: float | None = None, panels_per_unit: int = 2,
                   order: int = 40) -> np.ndarray:
    """Gram matrix of P_0..P_M against the Pollaczek weight, Gauss-Legendre panels.

    ``half_width`` defaults to the smallest L for which the weight times the
    largest polynomial squared is below 1e-17 at |nu| = L.
    """
    if half_width is None:
        half_width = pollaczek_truncation(M)
    panels = max(1, int(math.ceil(2 * half_width * panels_per_unit)))
    nodes, weights = gauss_legendre_nodes(-half_width, half_width, panels, order)
    P = pollaczek_P_all(M, nodes)
    return (P * (weights * pollaczek_weight(nodes))) @ P.T


def pollaczek_truncation(M: int, tail: float = 1e-17) -> float:
    """Half-width L beyond which w(nu) P_M(nu)^2 < tail (the weight decays as 2 e^{-pi nu})."""
    L = 8.0
    while True:
        p = pollaczek_P(M, L)
        if 2.0 * math.exp(-math.pi * L) * p * p * (1.0 + L) < tail:
            return L
        L += 1.0


def gram_Phi(M: int, rule: str = "v") -> np.ndarray:
    """Gram matrix of Phi_hat_0..Phi_hat_M on the real line.

    ``rule="v"``: double-exponential quadrature directly in v.
    ``rule="laguerre"``: t = 2 e^{-v} turns every entry into int e^{-t} L_k L_l dt.
    """
    if rule == "laguerre":
        t, w = gauss_laguerre_nodes(M + 2)
        L = laguerre_all(M, t)
        return (L * w) @ L.T
    if rule != "v":
        raise ValueError(f"unknown rule {rule!r}")
    G = np.empty((M + 1, M + 1))
    for k in range(M + 1):
        for l in range(k, M + 1):
            r = whole_line(lambda v: Phi_hat_all(max(k, l), v)[k] * Phi_hat_all(max(k, l), v)[l],
                           tol=1e-13)
            G[k, l] = G[l, k] = r.value
    return G


def gram_phi_x(M: int, rule: str = "x") -> np.ndarray:
    """Gram matrix of phi_hat_0..phi_hat_M on (0, inf).

    ``rule="x"`` integrates in x directly (two half-range double-exponential
    rules split at x = 1); ``"v"`` and ``"laguerre"`` go through x = e^v.
    """
    if rule in ("v", "laguerre"):
        return gram_Phi(M, rule)
    if rule != "x":
        raise ValueError(f"unknown rule {rule!r}")
    from .quadrature import tanh_sinh

    G = np.empty((M + 1, M + 1))
    for k in range(M + 1):
        for l in range(k, M + 1):
            def f(x, k=k, l=l):
                rows = phi_hat_all(max(k, l), x)
                return rows[k] * rows[l]
            G[k, l] = G[l, k] = (tanh_sinh(f, 0.0, 1.0, tol=1e-13).value
                                 + exp_sinh(f, 1.0, tol=1e-13).value)
    return G


# --- identity checks --------------------------------------------------------

def fourier_gamma_check(nu: float, tol: float = 1e-13) -> float:
    """|int e^{-i nu v} exp(-e^{-v}) e^{-v/2} dv - Gamma(1/2 + i nu)|."""
    r = whole_line(lambda v: np.exp(-1j * nu * v) * _g(v), tol=tol)
    return float(abs(r.value - gamma(0.5 + 1j * nu)))


def fornberg_weights(order: int, offsets: np.ndarray) -> np.ndarray:
    """Finite-difference weights for the ``order``-th derivative at 0."""
    n = len(offsets)
    c = np.zeros((n, order + 1))
    c1, c4 = 1.0, offsets[0]
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2, c5, c4 = 1.0, c4, offsets[i]
        for j in range(i):
            c3 = offsets[i] - offsets[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c[:, order]


def central_derivative(f, x: float, order: int, step: float, richardson: int = 2) -> float:
    """Fourth-order central difference with ``richardson`` extrapolation levels."""
    if order == 0:
        return float(f(np.array([x]))[0])
    r = (order + 1) // 2 + 1
    offsets = np.arange(-r, r + 1, dtype=float)
    w = fornberg_weights(order, offsets)

    def D(h):
        if x + h == x:
            raise ValueError("finite-difference step underflows")
        return float(np.dot(w, f(x + h * offsets))) / h ** order

    table = [D(step / 2 ** k) for k in range(richardson + 1)]
    p = 4
    for _ in range(richardson):
        factor = 2.0 ** p
        table = [(factor * table[k + 1] - table[k]) / (factor - 1) for k in range(len(table) - 1)]
        p += 2
    return table[0]


def operator_identity_check(m: int, v: float, step: float = 1e-3, richardson: int = 2) -> float:
    """Residual of sqrt(2) P_m(-i d/dv) g = i^m sqrt(2) L_m(2 e^{-v}) g, phase stripped.

    ``g(v) = exp(-e^{-v}) e^{-v/2}``. Only the derivatives of the parity of m
    survive, so with P_m = sum p_k nu^k the identity reduces to the real form
    sum_k p_k (-1)^((k-m)/2) g^(k)(v) = (-1)^m L_m(2 e^{-v}) g(v).
    """
    if not 0 <= m <= 4:
        raise ValueError("operator identity check supports 0 <= m <= 4")
    if step <= 0:
        raise ValueError("finite-difference step must be positive")
    coef = pollaczek_monomial(m)
    eps = np.finfo(float).eps
    lhs = 0.0
    for k in range(m % 2, m + 1, 2):
        # larger steps for higher derivatives keep round-off ~ eps / h^k in check
        h = max(step, eps ** (1.0 / (k + 5)))
        lhs += coef[k] * (-1) ** ((k - m) // 2) * central_derivative(_g, v, k, h, richardson)
    rhs = (-1) ** m * float(laguerre(m, 2.0 * math.exp(-v))) * float(_g(np.array([v]))[0])
    return abs(lhs - rhs)


__all__ = [
    "QuadratureError", "log_gamma", "gamma", "pollaczek_weight", "pollaczek_P",
    "pollaczek_P_all", "pollaczek_imag", "pollaczek_imag_all", "pollaczek_monomial",
    "laguerre", "laguerre_all", "pollaczek_function", "Phi_hat", "Phi_hat_all", "Phi",
    "phi_hat", "phi_hat_all", "phi", "pollaczek_gram", "pollaczek_truncation",
    "gram_Phi", "gram_phi_x", "fourier_gamma_check", "operator_identity_check",
    "central_derivative", "fornberg_weights",
]
