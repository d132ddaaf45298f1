from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fcq import PrecisionContext, RuleParams
from fcq.hermite_quadrature import (
    CallbackIntegrand,
    ChebyshevSeriesIntegrand,
    apply_rule,
    apply_weights,
    build_rule,
    hermite_chebyshev_coeffs,
    leja_order,
    monomial_cheb_coeffs,
    monomial_moment,
    remainder,
)
from fcq.series_coeffs import pi_multiple


def test_monomial_cheb_coeffs():
    assert monomial_cheb_coeffs(3) == [0, Fraction(3, 4), 0, Fraction(1, 4)]
    assert monomial_cheb_coeffs(0) == [1]


def test_monomial_moment():
    assert monomial_moment(3, 1) == Fraction(3, 8)
    assert monomial_moment(2, 2) == Fraction(1, 4)
    assert monomial_moment(1, 2) == 0
    with pytest.raises(ValueError):
        monomial_moment(2, 0)


def test_leja_order_is_permutation():
    nodes = [0.9, 0.5, 0.0, -0.5, -0.9]
    order = leja_order(nodes)
    assert sorted(order) == list(range(5)) and order[0] == 0


def test_hermite_reproduces_cubic(ctx):
    # p(t) = 1 + 2t + 3t^3 from values and first derivatives at two points
    p = ChebyshevSeriesIntegrand([1 + 0, Fraction(2) + Fraction(9, 4), 0, Fraction(3, 4)])
    pts = [ctx.mpf("0.3"), ctx.mpf("-0.6")]
    data = [p.value_and_derivs(x, 1, ctx) for x in pts]
    c = hermite_chebyshev_coeffs(pts, data, ctx)
    assert all(abs(a - float(b)) < 1e-60 for a, b in zip(c, p.coeffs))


def test_s1_rule_n1(ctx):
    rule = build_rule(RuleParams(1, 1), ctx)
    w = rule.weights
    assert abs(w[(1, 0)]) < 1e-70
    assert abs(w[(1, 1)] - ctx.pi / 2) < 1e-70


def test_first_failures_n1_s1(ctx):
    rule = build_rule(RuleParams(1, 1), ctx)
    r = remainder(rule, ChebyshevSeriesIntegrand.monomial(3), pi_multiple(Fraction(3, 8), ctx))
    assert abs(r - 3 * ctx.pi / 8) < 1e-70
    r = remainder(rule, ChebyshevSeriesIntegrand.chebyshev(3), 0)
    assert abs(r - 3 * ctx.pi / 2) < 1e-70


@pytest.mark.parametrize("n,s", [(1, 1), (2, 2), (3, 1), (4, 3), (5, 2)])
def test_exact_up_to_degree(ctx, n, s):
    p = RuleParams(n, s)
    rule = build_rule(p, ctx)
    for k in range(p.degree + 1):
        exact = pi_multiple(monomial_moment(k, n), ctx)
        assert abs(apply_rule(rule, ChebyshevSeriesIntegrand.monomial(k), ctx) - exact) < ctx.tol()
    k = p.degree + 1
    exact = pi_multiple(monomial_moment(k, n), ctx)
    assert abs(apply_rule(rule, ChebyshevSeriesIntegrand.monomial(k), ctx) - exact) > 1e-10


@pytest.mark.parametrize("n,s", [(3, 1), (4, 2), (5, 3)])
def test_weights_agree_with_direct_rule(ctx, n, s):
    rule = build_rule(RuleParams(n, s), ctx)
    f = ChebyshevSeriesIntegrand([Fraction(1, k + 1) for k in range(3 * n * s + 4)])
    assert abs(apply_weights(rule, f) - apply_rule(rule, f)) < 1e-60
    assert len(rule.weights) == n * 2 * s


@pytest.mark.parametrize("n,s", [(3, 2), (4, 1), (6, 2)])
def test_weight_symmetry(ctx, n, s):
    # f(-t) integrates to (-1)^n times f, so A_{i, n+1-v} = (-1)^{n+i} A_{i, v}
    w = build_rule(RuleParams(n, s), ctx).weights
    for (v, i), a in w.items():
        assert abs(w[(n + 1 - v, i)] - (-1) ** (n + i) * a) < 1e-60


def test_rule_at_other_precision(ctx):
    rule = build_rule(RuleParams(2, 1), ctx)
    hi = PrecisionContext(400)
    f = ChebyshevSeriesIntegrand.monomial(6)
    assert abs(apply_rule(rule, f, hi) - apply_rule(rule, f)) < 1e-70


def test_callback_integrand_checks_length(ctx):
    f = CallbackIntegrand(lambda z, k, c: [z] * k, lambda r, c: 1)
    with pytest.raises(ValueError):
        f.value_and_derivs(ctx.mpf(0), 2, ctx)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=50), min_size=1, max_size=12),
    st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=50), min_size=1, max_size=12),
    st.integers(min_value=-3, max_value=3),
)
def test_rule_is_linear(c1, c2, lam):
    ctx = PrecisionContext(128)
    rule = build_rule(RuleParams(3, 2), ctx)
    m = max(len(c1), len(c2))
    c1, c2 = c1 + [0] * (m - len(c1)), c2 + [0] * (m - len(c2))
    f, g = ChebyshevSeriesIntegrand(c1), ChebyshevSeriesIntegrand(c2)
    h = ChebyshevSeriesIntegrand([a + lam * b for a, b in zip(c1, c2)])
    lhs = apply_rule(rule, h)
    rhs = apply_rule(rule, f) + lam * apply_rule(rule, g)
    assert abs(lhs - rhs) <= 1e-30 * (1 + abs(rhs))
