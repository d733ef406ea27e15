import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from oracles import A0_HARMONIC, laguerre_projection
from pollaczek_jump.forward import Interpolant, make_pair, pair_power_law
from pollaczek_jump.quadrature import whole_line
from pollaczek_jump.samples import MomentSequence, SampledFunction, default_grid
from pollaczek_jump.specfun import pollaczek_function
from pollaczek_jump.transform import (PollaczekCoefficients, ReconstructionConfig,
                                      TruncationWarning, add_noise, evaluate_expansion,
                                      expansion_interpolant, pollaczek_coefficients,
                                      pollaczek_coefficients_integral, reconstruct,
                                      truncation_sweep)

HARMONIC = pair_power_law(1.0)


def quiet_coefficients(a, M):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        return pollaczek_coefficients(a, M)


# --- amplitudes ------------------------------------------------------------

def test_zero_sequence():
    c = quiet_coefficients(np.zeros(40), 10)
    assert np.all(c.amplitudes == 0)


def test_unit_impulse_gives_s_at_half():
    c = quiet_coefficients(np.array([1.0] + [0.0] * 39), 12)
    assert np.all(c.amplitudes == 1.0)


def test_harmonic_first_amplitude():
    c = pollaczek_coefficients(HARMONIC.coefficients(64), 0)
    assert c.amplitudes[0] == pytest.approx(A0_HARMONIC, rel=1e-14)


@pytest.mark.parametrize("m", range(0, 25, 3))
def test_amplitudes_are_laguerre_projections(m):
    # F(x) = 1/x: e^{v/2} F projected on the basis, done directly in t = 2 e^{-v}
    c = pollaczek_coefficients(HARMONIC.coefficients(64), 24)
    assert c.amplitudes[m] == pytest.approx(laguerre_projection(m), abs=1e-12)


def test_term_diagnostics_reported():
    c = pollaczek_coefficients(HARMONIC.coefficients(64), 5)
    assert c.term_max.shape == c.last_term.shape == (6,)
    assert np.all(c.last_term <= 1e-12 * np.abs(c.amplitudes))


def test_truncation_warning_short_series():
    with pytest.warns(TruncationWarning, match="not converged"):
        pollaczek_coefficients(HARMONIC.coefficients(8), 4)


def test_truncation_warning_coupling_rule():
    # converged tail, but fewer terms than 2M + 16
    a = np.zeros(30)
    a[0] = 1.0
    with pytest.warns(TruncationWarning, match="2M\\+16"):
        pollaczek_coefficients(a, 10)


def test_convention_and_phases():
    c = PollaczekCoefficients(np.array([1.0, 2.0, 3.0]))
    np.testing.assert_allclose(c.c(), [math.sqrt(2), -2j * math.sqrt(2), -3 * math.sqrt(2)])
    np.testing.assert_allclose(c.d(), math.sqrt(2 * math.pi) * c.c())
    assert "(-i)^m" in c.convention
    with pytest.raises(ValueError):
        PollaczekCoefficients(np.array([np.nan]))


# --- the contour-integral route ---------------------------------------------

def test_integral_route_zero():
    assert pollaczek_coefficients_integral(Interpolant(lambda lam: np.zeros_like(lam)), 3) == 0


@pytest.mark.parametrize("m", range(11))
def test_dual_route(m):
    d_series = pollaczek_coefficients(HARMONIC.coefficients(64), 10).d()[m]
    d_integral = pollaczek_coefficients_integral(HARMONIC.interpolant, m)
    assert abs(d_integral - d_series) <= 1e-6


def test_integral_route_phase():
    d1 = pollaczek_coefficients_integral(HARMONIC.interpolant, 1)
    assert abs(d1.real) <= 1e-12 * abs(d1) and d1.imag != 0


@pytest.mark.parametrize("name", ["exponential", "log-power"])
def test_dual_route_other_pairs(name):
    p = make_pair(name, 1.5)
    d = pollaczek_coefficients(p.coefficients(64), 8).d()
    for m in (0, 4, 8):
        assert abs(pollaczek_coefficients_integral(p.interpolant, m) - d[m]) <= 1e-6


# --- reconstruction ----------------------------------------------------------

def test_reconstruct_zero():
    F = reconstruct(PollaczekCoefficients(np.zeros(5)), ReconstructionConfig(expansion_truncation=4))
    assert np.all(F.values == 0)


def test_unit_amplitude_at_origin():
    c = PollaczekCoefficients(np.array([1.0, 0.0, 0.0]))
    assert evaluate_expansion(c, "v", [0.0])[0] == pytest.approx(2 / math.e)


def test_reconstruction_is_real():
    c = pollaczek_coefficients(HARMONIC.coefficients(64), 24)
    F = reconstruct(c, ReconstructionConfig())
    assert F.values.dtype == np.float64


def test_config_domain():
    with pytest.raises(ValueError):
        ReconstructionConfig(geometry="x", grid=np.array([0.5, 2.0]))
    with pytest.raises(ValueError):
        ReconstructionConfig(geometry="v", grid=np.array([0.0, 2.0]))
    with pytest.raises(ValueError):
        ReconstructionConfig(sigma=-1.0)
    with pytest.raises(ValueError):
        ReconstructionConfig(geometry="w")


@given(arrays(np.float64, st.integers(1, 20), elements=st.floats(-5, 5)))
def test_geometry_consistency(A):
    c = PollaczekCoefficients(A)
    x = default_grid("x")
    Fx = reconstruct(c, ReconstructionConfig(expansion_truncation=c.M, geometry="x", grid=x))
    Fv = reconstruct(c, ReconstructionConfig(expansion_truncation=c.M, geometry="v",
                                             grid=np.log(x)))
    scale = max(1.0, np.abs(Fx.values).max())
    assert np.abs(Fx.values - Fv.values).max() <= 1e-12 * scale


def test_harmonic_error_decreases_with_degree():
    cfg = ReconstructionConfig()
    sweep = truncation_sweep(HARMONIC.coefficients(64), HARMONIC.sample("x", cfg.grid),
                             [4, 8, 16, 24], cfg)
    e = sweep.errors
    assert all(e[k + 1] <= 1.1 * e[k] for k in range(len(e) - 1))


def test_smoother_jump_converges_faster():
    # F(x) = ln x / x^2 vanishes at the cut; F(x) = 1/x jumps there
    cfg = ReconstructionConfig()
    p = make_pair("log-power", 2.0)
    err = truncation_sweep(p.coefficients(64), p.sample("x", cfg.grid), [24], cfg).errors[0]
    harm = truncation_sweep(HARMONIC.coefficients(64), HARMONIC.sample("x", cfg.grid), [24],
                            cfg).errors[0]
    assert err < 5e-2 < harm


# --- linearity -------------------------------------------------------------

sequences = arrays(np.float64, 48, elements=st.floats(-1, 1))


@given(sequences, sequences)
def test_linearity(a, b):
    M = 12
    ca, cb, cab = (quiet_coefficients(s, M) for s in (a, b, a + b))
    # rounding of a + b and of each product is bounded by the absolute term sizes
    # exact sums: only the rounding of a + b and the final roundings remain
    scale = a.size * (ca.term_max + cb.term_max) + np.abs(cab.amplitudes)
    assert np.all(np.abs(cab.amplitudes - ca.amplitudes - cb.amplitudes)
                  <= 4 * np.finfo(float).eps * scale + 1e-300)
    cfg = ReconstructionConfig(expansion_truncation=M)
    Fa, Fb, Fab = (reconstruct(c, cfg).values for c in (ca, cb, cab))
    assert np.allclose(Fab, Fa + Fb, rtol=1e-12, atol=1e-12 * np.abs(Fa).max() + 1e-300)


# --- Parseval --------------------------------------------------------------

@pytest.mark.parametrize("name,beta,energy", [
    ("power-law", 1.0, 1.0),          # int_0^inf e^{v} e^{-2v} dv
    ("exponential", 2.0, 1 / 3),      # int e^{v} e^{-4v}
    ("log-power", 1.0, 2.0),          # int v^2 e^{-v}
])
def test_parseval_bessel(name, beta, energy):
    c = pollaczek_coefficients(make_pair(name, beta).coefficients(64), 24)
    e = c.energy()
    assert np.all(np.diff(e) >= 0)
    assert e[-1] <= energy
    assert e[-1] <= 2 * math.pi * energy


# --- expansion interpolant ---------------------------------------------------

def test_expansion_interpolant_is_laplace_transform():
    c = pollaczek_coefficients(HARMONIC.coefficients(64), 12)
    atilde = expansion_interpolant(c)
    for lam in (0.0, 1.0, 0.3 + 0.7j):
        ref = whole_line(lambda v: evaluate_expansion(c, "v", v) * np.exp(-lam * v),
                         tol=1e-12).value
        assert abs(atilde(lam) - ref) <= 1e-9


def test_expansion_interpolant_on_boundary_line():
    c = pollaczek_coefficients(HARMONIC.coefficients(64), 6)
    nu = 0.8
    series = sum(c.d()[m] * pollaczek_function(m, nu) for m in range(7))
    assert abs(expansion_interpolant(c)(-0.5 + 1j * nu) - series) <= 1e-12


def test_expansion_interpolant_roundtrip():
    c = pollaczek_coefficients(HARMONIC.coefficients(64), 6)
    atilde = expansion_interpolant(c)
    for m in range(7):
        assert abs(pollaczek_coefficients_integral(atilde, m) - c.d()[m]) <= 1e-9


# --- noise -----------------------------------------------------------------

def test_noise_examples():
    a = HARMONIC.coefficients(30)
    assert np.array_equal(add_noise(a, 0.0, 3).values, a.values)
    assert np.array_equal(add_noise(a, 1e-3, 7).values, add_noise(a, 1e-3, 7).values)
    noisy = add_noise(a, 1e-3, 0)
    assert np.abs(noisy.values - a.values).max() <= 1e-3
    assert noisy.noise_level == 1e-3


@given(st.floats(0.0, 1.0), st.integers(0, 2 ** 32 - 1),
       arrays(np.float64, 20, elements=st.floats(-1e3, 1e3)))
def test_noise_bound(eps, seed, values):
    noisy = add_noise(MomentSequence(values), eps, seed)
    assert np.all(np.abs(noisy.values - values) <= eps)


def test_noise_rejects_negative():
    with pytest.raises(ValueError):
        add_noise(HARMONIC.coefficients(3), -1.0, 0)


# --- sweeps ----------------------------------------------------------------

def test_sweep_self_comparison():
    a = HARMONIC.coefficients(64)
    cfg = ReconstructionConfig(expansion_truncation=10)
    ref = reconstruct(quiet_coefficients(a, 10), cfg)
    sweep = truncation_sweep(a, ref, [10], cfg)
    assert sweep.errors[0] == 0.0


def test_sweep_empty_and_grid_mismatch():
    cfg = ReconstructionConfig()
    ref = HARMONIC.sample("x", cfg.grid)
    assert truncation_sweep(HARMONIC.coefficients(64), ref, [], cfg).errors.size == 0
    other = SampledFunction("x", cfg.grid[:10], ref.values[:10])
    with pytest.raises(ValueError):
        truncation_sweep(HARMONIC.coefficients(64), other, [4], cfg)


def test_noisy_sweep_has_interior_minimum():
    cfg = ReconstructionConfig()
    ref = HARMONIC.sample("x", cfg.grid)
    noisy = add_noise(HARMONIC.coefficients(64), 1e-3, 0)
    sweep = truncation_sweep(noisy, ref, range(2, 41), cfg)
    assert 2 < sweep.argmin_degree < 40
    # noise amplification at large degree
    assert sweep.errors[-1] > 10 * sweep.errors.min()
