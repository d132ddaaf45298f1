import os
import subprocess
import sys

import pytest

from fcq import EllipseCoord, PrecisionContext, RuleParams
from fcq.errors import PrecisionError
from fcq import scan
from fcq.remainder_kernel import (
    default_grid_size,
    kernel_abs2,
    kernel_abs2_axis,
    kernel_l1_norm_numeric,
    kernel_max_on_ellipse,
    kernel_value,
    modulus_parts,
    rho_ns,
    theta_scan,
)


def test_rho_ns_closed_form(ctx):
    # direct integration of w(t) T_1(t)^3 / (z - t) at z = 5/4
    assert abs(rho_ns("1.25", RuleParams(1, 1), ctx) - 13 * ctx.pi / 24) < 1e-70


def test_rho_ns_against_quadrature(ctx):
    mp = ctx.mp
    p = RuleParams(3, 2)
    z = mp.mpc("0.4", "0.9")
    quad = mp.quad(lambda th: mp.cos(3 * th) ** 5 / (z - mp.cos(th)), [0, mp.pi / 2, mp.pi])
    assert abs(rho_ns(z, p, ctx) - quad) < 1e-60


def test_rho_ns_rejects_interval(ctx):
    with pytest.raises(ValueError):
        rho_ns(0.5, RuleParams(1, 1), ctx)


def test_kernel_value_on_axis(ctx):
    k = kernel_value("1.25", RuleParams(1, 1), ctx)
    assert abs(k - (13 * ctx.pi / 24) / ctx.mpf("1.5625")) < 1e-70


@pytest.mark.parametrize("n,s,rho,theta", [(3, 2, 1.7, 0.4), (1, 1, 2, 1.0), (8, 3, 1.2, 0.05), (4, 1, 5, 2.5)])
def test_abs2_factorisation(ctx, n, s, rho, theta):
    p = RuleParams(n, s)
    c = EllipseCoord(rho, theta)
    direct = abs(kernel_value(c.z(ctx), p, ctx)) ** 2
    assert abs(kernel_abs2(c, p, ctx) / direct - 1) < 1e-60


def test_axis_value(ctx):
    p = RuleParams(4, 2)
    assert abs(kernel_abs2_axis(1.5, p, ctx) / abs(kernel_value((ctx.mpf(1.5) + 1 / ctx.mpf(1.5)) / 2, p, ctx)) ** 2 - 1) < 1e-60
    parts = modulus_parts(EllipseCoord(1.5, 0), p, ctx)
    assert parts.a == parts.A and parts.b == parts.B and parts.c == parts.C


def test_near_degenerate_ellipse_refused():
    ctx = PrecisionContext(64)
    with pytest.raises(PrecisionError):
        kernel_abs2(EllipseCoord(1 + 2.0**-20, 0), RuleParams(2, 1), ctx)


def test_scan_backends_agree():
    for n, s in ((2, 1), (8, 3), (12, 2)):
        m = default_grid_size(RuleParams(n, s))
        for rho in (1.05, 1.3, 3.0):
            a = scan.theta_scan_ratio(rho, n, s, m)
            b = scan.theta_scan_ratio_py(rho, n, s, m)
            assert a[0] == b[0]
            assert abs(a[1] - b[1]) <= 1e-12 * b[1]


def test_pure_python_switch():
    env = dict(os.environ, FCQ_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from fcq import scan; print(scan.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"


def test_scan_matches_mp_maximum(ctx):
    p = RuleParams(2, 1)
    theta, ratio = theta_scan(1.1, p)
    t_mp, kmax = kernel_max_on_ellipse(1.1, p, ctx)
    axis = kernel_abs2_axis(1.1, p, ctx)
    assert t_mp != 0 and ratio > 1
    assert kmax**2 / axis >= ratio * (1 - 1e-12)


def test_axis_maximum_for_large_rho(ctx):
    p = RuleParams(8, 2)
    assert theta_scan(3.0, p) == (0.0, 1.0)
    t, kmax = kernel_max_on_ellipse(3.0, p, ctx)
    assert t == 0 and abs(kmax**2 / kernel_abs2_axis(3.0, p, ctx) - 1) < 1e-60


def test_grid_size_minimum(ctx):
    with pytest.raises(ValueError):
        kernel_max_on_ellipse(2, RuleParams(2, 1), ctx, grid_size=5)


def test_l1_norm_below_max_times_length(ctx):
    from fcq.core_math import ellipse_length_upper

    p = RuleParams(4, 1)
    l1 = kernel_l1_norm_numeric(2, p, ctx)
    _, kmax = kernel_max_on_ellipse(2, p, ctx)
    assert 0 < l1 <= ellipse_length_upper(2, ctx) * kmax / (2 * ctx.pi)
