import pytest

from fcq import PrecisionContext, RuleParams
from fcq.core_math import ellipse_length_upper
from fcq.error_bounds import (
    BoundReport,
    b3_theta_integral,
    bound_B1,
    bound_B1_fallback,
    bound_B2,
    bound_B3,
    compute_report,
    optimize_bound,
    trig_moment_I,
)
from fcq.errors import NotBracketedError, OffAxisMaximumError
from fcq.reference_oracle import TestIntegrandF0
from fcq.remainder_kernel import kernel_abs2_axis, kernel_l1_norm_numeric
from fcq.series_coeffs import F_closed, F_partial, epsilon_paper, pi_multiple
from fcq.verification import theta_quadrature_I

F1 = TestIntegrandF0(1)


def _rho_with_r4n(ctx, n, value):
    return ctx.mpf(value) ** (ctx.mpf(1) / (4 * n))


def test_trig_moment_frozen_values(ctx):
    p = RuleParams(1, 1)
    rho = _rho_with_r4n(ctx, 1, 16)
    i0 = trig_moment_I(rho, p, 0, ctx)
    i1 = trig_moment_I(rho, p, 1, ctx)
    assert abs(i0 - 4 * ctx.pi * 16 * 17 / ctx.mpf(15) ** 3) < 1e-70
    assert abs(i1 + 2048 * ctx.pi / 13500) < 1e-70
    a = ctx.mpf("2.125")
    assert abs(i0 - ctx.pi * a / (a * a - 1) ** ctx.mpf(1.5)) < 1e-70


@pytest.mark.parametrize("rho", [1.1, 3])
@pytest.mark.parametrize("n,s", [(1, 1), (2, 3), (4, 2)])
def test_trig_moment_against_quadrature(ctx, rho, n, s):
    p = RuleParams(n, s)
    for l in range(s + 1):
        closed = trig_moment_I(rho, p, l, ctx)
        assert abs(closed / theta_quadrature_I(rho, p, l, ctx) - 1) < 1e-30
        assert (closed > 0) == (l % 2 == 0)


def test_trig_moment_domain(ctx):
    with pytest.raises(ValueError):
        trig_moment_I(2, RuleParams(2, 1), 2, ctx)


def test_b1_reconstruction(ctx):
    # (length/2pi) * |K(a1)| * max|f| in tight form
    p = RuleParams(4, 2)
    rho = ctx.mpf("1.5")
    recon = ellipse_length_upper(rho, ctx) / (2 * ctx.pi) * ctx.mp.sqrt(kernel_abs2_axis(rho, p, ctx)) * F1.max_on_ellipse(rho, ctx)
    assert abs(bound_B1(rho, p, F1, ctx, tight=True, check_theta=False) / recon - 1) < 1e-60
    assert bound_B1(rho, p, F1, ctx, check_theta=False) >= recon


def test_b1_signals_off_axis(ctx):
    p = RuleParams(2, 1)
    with pytest.raises(OffAxisMaximumError) as info:
        bound_B1(1.1, p, F1, ctx)
    assert info.value.ratio > 1
    assert bound_B1_fallback(1.1, p, F1, ctx) > bound_B1(1.1, p, F1, ctx, check_theta=False)


def test_b2_matches_F_closed(ctx):
    p = RuleParams(2, 2)
    rho = ctx.mpf("1.5")
    x = rho ** -4
    via_f = 2 * ctx.pi * rho**-2 * F_closed(x, 2, ctx) * F1.max_on_ellipse(rho, ctx)
    assert abs(bound_B2(rho, p, F1, ctx) / via_f - 1) < ctx.tol()


def test_b2_matches_coefficient_series(ctx):
    # 2 max|f| sum_m |eps_paper(2nm)| pi rho^{-(2s+1)n-2nm}
    n, s = 2, 2
    rho = ctx.mpf("1.5")
    total = sum(abs(pi_multiple(epsilon_paper(n, s, 2 * n * m), ctx)) * rho ** (-(2 * s + 1) * n - 2 * n * m) for m in range(400))
    expect = 2 * total * F1.max_on_ellipse(rho, ctx)
    got = bound_B2(rho, RuleParams(n, s), F1, ctx)
    assert abs(got / expect - 1) < 1e-40
    assert abs(bound_B2(rho, RuleParams(n, s), F1, ctx, tight=True) * 2 - got) < 1e-60 * got


def test_b3_dominates_l1(ctx):
    p = RuleParams(8, 1)
    rho = 1.3
    assert kernel_l1_norm_numeric(rho, p, ctx) * F1.max_on_ellipse(rho, ctx) <= bound_B3(rho, p, F1, ctx)


def test_b3_theta_integral_quadrature(ctx):
    mp = ctx.mp
    n, s, rho = 2, 2, mp.mpf("1.4")
    r2n = rho ** (2 * n)
    a2n = (r2n + 1 / r2n) / 2

    def a(t):
        acc = sum(c * r2n**k * mp.expj(2 * n * k * t) for k, c in enumerate([1, 5, 10]))
        return abs(acc) ** 2 / (a2n + mp.cos(2 * n * t)) ** (2 * s)

    quad = mp.quad(a, [mp.pi * j / (2 * n) for j in range(2 * n + 1)])
    assert abs(b3_theta_integral(rho, RuleParams(n, s), ctx) / quad - 1) < 1e-40


def test_optimize_reference_values(ctx512):
    p = RuleParams(8, 1)
    assert abs(float(optimize_bound("B2", p, F1, ctx512).value) / 3.40e-14 - 1) < 0.01
    res = optimize_bound("B2", RuleParams(8, 3), TestIntegrandF0(20), ctx512)
    assert abs(float(res.value) / 1.90e-2 - 1) < 0.01
    res = optimize_bound("B1", RuleParams(12, 1), TestIntegrandF0(5), ctx512)
    assert abs(float(res.value) / 3.07e-11 - 1) < 0.01


def test_optimize_grid_invariance(ctx):
    p = RuleParams(8, 2)
    f = TestIntegrandF0(5)
    a = optimize_bound("B3", p, f, ctx).value
    b = optimize_bound("B3", p, f, ctx, points_per_decade=120).value
    assert abs(a / b - 1) < 1e-3


def test_optimize_not_bracketed(ctx):
    with pytest.raises(NotBracketedError):
        optimize_bound("B2", RuleParams(8, 1), F1, ctx, log2_range=(-20, -10))


def test_optimize_unknown_bound(ctx):
    with pytest.raises(ValueError):
        optimize_bound("B4", RuleParams(2, 1), F1, ctx)


def test_report_row_8_2_5(ctx512):
    rep = compute_report(RuleParams(8, 2), TestIntegrandF0(5), ctx512)
    assert isinstance(rep, BoundReport) and rep.is_valid()
    for got, ref in zip(rep.bounds + (rep.actual_error, rep.reference_integral), (4.43e-13, 3.32e-13, 1.66e-13, 1.47e-14, 5.28)):
        assert abs(float(got) / ref - 1) < 0.01
    assert bound_B3(rep.rho_star_3, RuleParams(8, 2), TestIntegrandF0(5), ctx512) == rep.r3


def test_report_without_actual(ctx):
    rep = compute_report(RuleParams(2, 1), F1, ctx, with_actual=False)
    assert rep.actual_error is None and rep.is_valid()
    assert all(r > 1 for r in rep.rho_star)
