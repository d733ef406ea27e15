import math
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import CAUCHY_ONE_OVER_X, HARDY_HARMONIC, PLANCHEREL_EXP_HALF, TAYLOR_HARMONIC_HALF
from pollaczek_jump.forward import (PAIRS, Interpolant, cauchy_eval, cauchy_taylor_coefficients,
                                    hardy_norm, invert_interpolant, jump_bound_check,
                                    laplace_interpolant, make_pair, mellin_coefficients,
                                    pair_exponential, pair_log_power, pair_power_law,
                                    plancherel_check, taylor_eval)
from pollaczek_jump.samples import MomentSequence

ALL_PAIRS = [make_pair(name) for name in sorted(PAIRS)]
SIGMAS = [-0.5, 0.0, 0.5, 1.0]
zero_interp = Interpolant(lambda lam: np.zeros_like(lam))


def zero_jump(x):
    return np.zeros_like(np.asarray(x, dtype=float))


# --- pairs -----------------------------------------------------------------

def test_power_law_pair():
    p = pair_power_law(1.0)
    a = p.coefficients(5).values
    assert a[0] == 1.0 and a[5] == pytest.approx(1 / 6)
    assert p.interpolant(-0.5 + 0j) == pytest.approx(2.0)
    assert pair_power_law(2.0).jump(1.0) == 1.0
    with pytest.raises(ValueError):
        pair_power_law(0.5)


def test_exponential_pair():
    p = pair_exponential(1.0)
    assert p.jump(0.0) == 1.0
    lam = np.arange(6.0)
    np.testing.assert_allclose(p.interpolant(lam).real, p.coefficients(5).values)
    with pytest.raises(ValueError):
        pair_exponential(0.0)


@pytest.mark.parametrize("pair", ALL_PAIRS, ids=lambda p: p.name)
def test_pair_self_consistency(pair):
    N = 12
    a = pair.coefficients(N).values
    mellin = mellin_coefficients(pair.jump_in("x"), N).values
    np.testing.assert_allclose(mellin, a, rtol=0, atol=1e-8)
    F_v = pair.jump_in("v")
    for n in (0, 3, 7):
        assert abs(laplace_interpolant(F_v, n) - a[n]) <= 1e-8


@pytest.mark.parametrize("pair", ALL_PAIRS, ids=lambda p: p.name)
def test_interpolant_conjugate_symmetry(pair):
    lam = np.array([0.3 + 2.0j, -0.2 - 5.0j, 4.0 + 0.1j])
    np.testing.assert_allclose(pair.interpolant(np.conj(lam)), np.conj(pair.interpolant(lam)))


def test_mellin_examples():
    assert np.all(mellin_coefficients(zero_jump, 5).values == 0)
    harm = mellin_coefficients(lambda x: 1 / x, 10).values
    np.testing.assert_allclose(harm, 1 / np.arange(1, 12), atol=1e-9)
    logp = mellin_coefficients(lambda x: np.log(x) / x, 10).values
    np.testing.assert_allclose(logp, 1 / np.arange(1, 12) ** 2, atol=1e-8)


def test_laplace_examples():
    assert laplace_interpolant(lambda v: np.exp(-v), 0) == pytest.approx(1.0, abs=1e-12)
    assert laplace_interpolant(lambda v: np.exp(-v), 4) == pytest.approx(0.2, abs=1e-12)
    assert laplace_interpolant(zero_jump, 1 + 1j) == 0


# --- inversion ---------------------------------------------------------------

def test_invert_examples():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        r = invert_interpolant(Interpolant(lambda lam: 1 / (lam + 1)), 0.0, [1.0])
    assert abs(r.values[0] - math.exp(-1)) <= 1e-6
    r = invert_interpolant(Interpolant(lambda lam: 1 / (lam + 1) ** 2), 0.0, [2.0])
    assert abs(r.values[0] - 2 * math.exp(-2)) <= 1e-6
    r = invert_interpolant(zero_interp, 0.0, [0.5, 1.0])
    assert np.all(r.values == 0)


def test_contour_shift_invariance():
    atilde = Interpolant(lambda lam: 1 / (lam + 1) ** 2)
    v = np.linspace(0.1, 5.0, 25)
    a = invert_interpolant(atilde, 0.0, v).values
    b = invert_interpolant(atilde, 0.5, v).values
    assert np.abs(a - b).max() <= 1e-5
    np.testing.assert_allclose(a, v * np.exp(-v), atol=1e-8)


def test_invert_warns_on_slow_decay():
    with pytest.warns(RuntimeWarning, match="decays too slowly"):
        invert_interpolant(Interpolant(lambda lam: 1 / (lam + 1)), 0.0, [1.0])


# --- Plancherel and Hardy norms ----------------------------------------------

def test_plancherel_exponential_boundary_line():
    p = pair_exponential(1.0)
    r = plancherel_check(p.interpolant, p.jump, -0.5, "v")
    assert r.lhs == pytest.approx(PLANCHEREL_EXP_HALF, rel=1e-6)
    assert r.rhs == pytest.approx(PLANCHEREL_EXP_HALF, rel=1e-6)
    assert r.residual <= 1e-6


def test_plancherel_power_law_x_form():
    p = pair_power_law(1.0)
    r = plancherel_check(p.interpolant, p.jump, 0.0, "x")
    assert r.lhs == pytest.approx(math.pi, rel=1e-9)
    assert r.rhs == pytest.approx(math.pi, rel=1e-9)


def test_plancherel_zero():
    r = plancherel_check(zero_interp, zero_jump, 0.0, "v")
    assert (r.lhs, r.rhs, r.residual) == (0.0, 0.0, 0.0)


@pytest.mark.parametrize("pair", ALL_PAIRS, ids=lambda p: p.name)
@pytest.mark.parametrize("sigma", [-0.5, 0.0, 1.0])
def test_plancherel_all_pairs(pair, sigma):
    r = plancherel_check(pair.interpolant, pair.jump, sigma, pair.geometry)
    assert r.residual <= 1e-6


@pytest.mark.parametrize("sigma,value", sorted(HARDY_HARMONIC.items()))
def test_hardy_norm_values(sigma, value):
    assert hardy_norm(pair_exponential(1.0).interpolant, sigma) == pytest.approx(value, rel=1e-9)


@pytest.mark.parametrize("pair", ALL_PAIRS, ids=lambda p: p.name)
def test_hardy_norm_monotone(pair):
    norms = [hardy_norm(pair.interpolant, s) for s in SIGMAS]
    assert all(b <= a for a, b in zip(norms, norms[1:]))


@given(st.floats(0.6, 4.0), st.floats(-0.5, 2.0), st.floats(0.0, 2.0))
def test_hardy_norm_monotone_power_law(beta, s0, ds):
    atilde = pair_power_law(beta).interpolant
    assert hardy_norm(atilde, s0 + ds) <= hardy_norm(atilde, s0) * (1 + 1e-10)


# --- jump bound ------------------------------------------------------------

def test_jump_bound_l1_divergent():
    p = pair_exponential(1.0)
    rep = jump_bound_check(p.interpolant, p.jump, 0.0, np.linspace(0.1, 5, 20))
    assert rep.status == "l1-divergent" and not rep.l1_finite


def test_jump_bound_holds_for_fast_decay():
    p = pair_log_power(1.0)
    rep = jump_bound_check(p.interpolant, p.jump_in("v"), 0.0, np.linspace(0.05, 6, 50))
    assert rep.l1_norm == pytest.approx(0.5, rel=1e-8)
    assert rep.holds
    rep = jump_bound_check(p.interpolant, p.jump, 0.0, np.geomspace(1.1, 100, 50), "x")
    assert rep.status == "holds"


def test_jump_bound_zero_and_violation():
    rep = jump_bound_check(zero_interp, zero_jump, 0.0, [1.0, 2.0])
    assert rep.holds
    p = pair_log_power(1.0)
    rep = jump_bound_check(p.interpolant, lambda v: 10 * p.jump_in("v")(v), 0.0, [1.0, 2.0])
    assert rep.status == "violated" and rep.violations == [1.0, 2.0]


# --- Cauchy integral and Taylor series ---------------------------------------

def test_cauchy_examples():
    assert cauchy_eval(zero_jump, 0.3) == 0
    for z, value in CAUCHY_ONE_OVER_X.items():
        assert cauchy_eval(lambda x: 1 / x, z) == pytest.approx(value, rel=1e-12)
    with pytest.raises(ValueError):
        cauchy_eval(lambda x: 1 / x, 2.0)


def test_cauchy_taylor_coefficients_match_mellin():
    p = pair_power_law(1.5)
    coef = cauchy_taylor_coefficients(p.jump, 6)
    np.testing.assert_allclose(coef, p.coefficients(6).values, atol=1e-9)


def test_taylor_examples():
    a = pair_power_law(1.0).coefficients(200)
    assert taylor_eval(a, 0).value == pytest.approx(1 / (2 * math.pi))
    t = taylor_eval(a, 0.5)
    assert t.value.real == pytest.approx(TAYLOR_HARMONIC_HALF, abs=1e-12)
    assert t.remainder < 1e-50
    assert abs(t.value - cauchy_eval(lambda x: 1 / x, 0.5)) <= 1e-8


def test_taylor_divergence_warning():
    with pytest.warns(RuntimeWarning):
        taylor_eval(MomentSequence([1.0, 1.0]), 1.2)


def test_l1_norm_with_zero_on_line():
    # |a(i nu)| = |nu| / (1 + nu^2)^{3/2} has a kink at nu = 0; total mass 2
    from pollaczek_jump.forward import l1_norm

    norm, p = l1_norm(Interpolant(lambda lam: lam / (lam + 1) ** 3), 0.0)
    assert p > 1.9
    assert norm == pytest.approx(1 / math.pi, rel=1e-8)
