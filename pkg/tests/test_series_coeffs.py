from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fcq import PrecisionContext, RuleParams
from fcq.reference_oracle import TestIntegrandF0, actual_error, chebyshev_coefficient
from fcq.series_coeffs import (
    CoeffIndex,
    F_closed,
    F_partial,
    beta_coeff,
    binomial_identity_sides,
    epsilon_paper,
    epsilon_true,
    gamma_coeff,
    omega_coeff,
    pi_multiple,
    remainder_via_expansion,
)


def test_coeff_index_block():
    assert CoeffIndex(3, 1, 12).block == 2
    assert CoeffIndex(3, 1, 7).block is None


def test_frozen_values_n1_s1():
    assert beta_coeff(1, 1, 0) == 4
    assert beta_coeff(1, 1, 2) == -8
    assert beta_coeff(2, 1, 2) == 0
    assert gamma_coeff(1, 1, 0) == Fraction(3, 2)
    assert gamma_coeff(1, 1, 1) == 0
    assert omega_coeff(1, 1, 0) == 6
    assert omega_coeff(1, 1, 2) == -4
    assert epsilon_true(1, 1, 0) == Fraction(3, 2)
    assert epsilon_true(1, 1, 2) == Fraction(-5, 2)
    assert epsilon_true(1, 2, 0) == 5


def test_epsilon_true_vanishes_off_blocks():
    for k in range(1, 12):
        if k % 6:
            assert epsilon_true(3, 2, k) == 0


def test_invalid_indices():
    with pytest.raises(ValueError):
        beta_coeff(0, 1, 0)
    with pytest.raises(ValueError):
        epsilon_true(1, 1, -2)


@pytest.mark.parametrize("s", range(1, 6))
def test_closed_form_is_twice_kernel_form(s):
    for n in (1, 2, 4):
        for m in range(31):
            assert epsilon_paper(n, s, 2 * n * m) == 2 * epsilon_true(n, s, 2 * n * m)


def test_beta_matches_series_of_reciprocal_power():
    # 1/T_n^{2s} = 4^s u^{-2ns} (1 + u^{-2n})^{-2s}
    ctx = PrecisionContext(128)
    mp = ctx.mp
    n, s = 2, 2
    u = mp.mpf(3)
    z = (u + 1 / u) / 2
    exact = 1 / mp.chebyt(n, z) ** (2 * s)
    series = sum(beta_coeff(n, s, k) * u ** (-2 * n * s - k) for k in range(400))
    assert abs(series / exact - 1) < 1e-30


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 20), st.data())
def test_binomial_identity(s, m, data):
    t = data.draw(st.integers(0, 2 * s))
    lhs, rhs = binomial_identity_sides(t, m, s)
    assert lhs == rhs


def test_binomial_identity_domain():
    with pytest.raises(ValueError):
        binomial_identity_sides(5, 0, 2)


def test_F_closed_value(ctx):
    assert F_closed("0.5", 1, ctx) == 5


@pytest.mark.parametrize("x", ["0.1", "0.5"])
@pytest.mark.parametrize("s", [1, 2, 3, 4])
def test_F_partial_converges(ctx, x, s):
    rel = abs(F_partial(x, s, 300, ctx) / F_closed(x, s, ctx) - 1)
    assert rel < 1e-25


def test_F_rejects_outside_unit_interval(ctx):
    with pytest.raises(ValueError):
        F_closed(1, 1, ctx)
    with pytest.raises(ValueError):
        F_partial(0, 1, 10, ctx)


def test_pi_multiple(ctx):
    assert pi_multiple(Fraction(1, 2), ctx) == ctx.pi / 2


@pytest.mark.parametrize("s", [1, 2])
def test_expansion_matches_actual_error(ctx, s):
    n = 4
    p = RuleParams(n, s)
    f = TestIntegrandF0(1)
    base = (2 * s + 1) * n
    coeffs = [0] * (base + 2 * n * 8 + 1)
    for m in range(9):
        coeffs[base + 2 * n * m] = chebyshev_coefficient(f, base + 2 * n * m, ctx)
    via = remainder_via_expansion(coeffs, p, ctx)
    err = actual_error(p, f, ctx)
    assert abs(abs(via) / err - 1) < 1e-3
