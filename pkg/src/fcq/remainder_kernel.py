"""The remainder kernel K_{n,s}(z) = rho_{n,s}(z) / T_n(z)^{2s} on confocal ellipses.

With u = rho e^{i theta} the squared modulus on E_rho factors as

    |K|^2 = pi^2 / (2^{2s-1} rho^{2(2s+1)n}) * a / (b c^{2s})

    a = |sum_{k=0}^{s} C(2s+1,k) u^{2nk}|^2
    b = a_2 - cos 2theta
    c = a_{2n} + cos 2n theta

A, B, C denote the values at theta = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core_math import (
    EllipseCoord,
    PrecisionContext,
    RuleParams,
    binomial_row,
    chebyshev_T,
    cosh_coeff,
    exterior_map,
)
from .errors import PrecisionError
from . import scan

__all__ = [
    "KernelModulusParts",
    "modulus_parts",
    "rho_ns",
    "kernel_value",
    "kernel_abs2",
    "kernel_abs2_axis",
    "kernel_max_on_ellipse",
    "kernel_l1_norm_numeric",
    "default_grid_size",
    "theta_scan",
]


def default_grid_size(params: RuleParams) -> int:
    # |K|^2 oscillates in theta with frequency up to 2ns; 4x oversampled
    return 8 * params.n * (2 * params.s + 1)


def _check_rho(rho, ctx: PrecisionContext):
    mp = ctx.mp
    rho = mp.mpf(rho)
    if rho <= 1:
        raise ValueError("rho must exceed 1")
    if rho - 1 < mp.ldexp(mp.mpf(1), -(ctx.bits // 4)):
        raise PrecisionError(
            f"rho - 1 = {mp.nstr(rho - 1, 5)} is below 2^-{ctx.bits // 4}; "
            "the ellipse is too close to [-1, 1] for this precision"
        )
    return rho


@dataclass(frozen=True)
class KernelModulusParts:
    a: object
    b: object
    c: object
    A: object
    B: object
    C: object


def modulus_parts(coord: EllipseCoord, params: RuleParams, ctx: PrecisionContext) -> KernelModulusParts:
    mp = ctx.mp
    n, s = params.n, params.s
    rho = _check_rho(coord.rho, ctx)
    theta = mp.mpf(coord.theta)
    r2n = rho ** (2 * n)
    row = binomial_row(s)
    re = im = mp.mpf(0)
    axis = mp.mpf(0)
    p = mp.mpf(1)
    for k, ck in enumerate(row):
        cs, sn = mp.cos_sin(2 * n * k * theta)
        re += ck * p * cs
        im += ck * p * sn
        axis += ck * p
        p *= r2n
    a2 = cosh_coeff(rho, 2, ctx)
    a2n = cosh_coeff(rho, 2 * n, ctx)
    b1 = (rho - 1 / rho) / 2
    # a_2 - 1 = 2 b1^2 and a_2 - cos 2t = 2 b1^2 + 2 sin^2 t, free of cancellation near rho = 1
    B = 2 * b1 * b1
    b = B + 2 * mp.sin(theta) ** 2
    c = a2n + mp.cos(2 * n * theta)
    return KernelModulusParts(re * re + im * im, b, c, axis * axis, B, a2n + 1)


def rho_ns(z, params: RuleParams, ctx: PrecisionContext):
    """int_{-1}^{1} w(t) T_n(t)^{2s+1} / (z - t) dt for z off [-1, 1], in closed form.

    pi/(2^{2s} sqrt(z^2-1)) sum_{k=0}^{s} C(2s+1,k) v^{(2s+1-2k)n}, v = z - sqrt(z^2-1)
    """
    mp = ctx.mp
    z = mp.mpc(z)
    if z.imag == 0 and -1 <= z.real <= 1:
        raise ValueError("z must not lie on [-1, 1]")
    n, s = params.n, params.s
    u = exterior_map(z, ctx)
    if abs(u) - 1 < mp.ldexp(mp.mpf(1), -(ctx.bits // 4)):
        raise PrecisionError("z is too close to [-1, 1] for this precision")
    v = 1 / u
    root = (u - v) / 2
    total = mp.mpc(0)
    for k, ck in enumerate(binomial_row(s)):
        total += ck * v ** ((2 * s + 1 - 2 * k) * n)
    return mp.pi * total / (4**s * root)


def kernel_value(z, params: RuleParams, ctx: PrecisionContext):
    """K_{n,s}(z) = rho_{n,s}(z) / T_n(z)^{2s}."""
    mp = ctx.mp
    t = chebyshev_T(params.n, mp.mpc(z), ctx)
    if abs(t) < ctx.eps:
        raise PrecisionError("|T_n(z)| underflows the working precision")
    return rho_ns(z, params, ctx) / t ** (2 * params.s)


def _abs2_from_parts(parts: KernelModulusParts, rho, params: RuleParams, ctx, axis=False):
    mp = ctx.mp
    n, s = params.n, params.s
    a, b, c = (parts.A, parts.B, parts.C) if axis else (parts.a, parts.b, parts.c)
    pref = mp.pi**2 / (mp.ldexp(mp.mpf(1), 2 * s - 1) * mp.mpf(rho) ** (2 * (2 * s + 1) * n))
    return pref * a / (b * c ** (2 * s))


def kernel_abs2(coord: EllipseCoord, params: RuleParams, ctx: PrecisionContext):
    """|K_{n,s}(z)|^2 at z on E_rho through the a, b, c factorisation."""
    parts = modulus_parts(coord, params, ctx)
    return _abs2_from_parts(parts, coord.rho, params, ctx)


def kernel_abs2_axis(rho, params: RuleParams, ctx: PrecisionContext):
    """|K|^2 at theta = 0, i.e. at z = a_1 on the positive real axis."""
    parts = modulus_parts(EllipseCoord(rho, 0), params, ctx)
    return _abs2_from_parts(parts, rho, params, ctx, axis=True)


def theta_scan(rho, params: RuleParams, grid_size: int | None = None):
    """Double-precision scan of |K(theta)|^2 / |K(0)|^2 on theta = i pi/m.

    By symmetry only (0, pi/2] is visited.

    Returns (theta_best, ratio_best). ratio_best <= 1 means the maximum
    sits on the real axis at grid resolution.
    """
    m = grid_size or default_grid_size(params)
    return scan.theta_scan_ratio(float(rho), params.n, params.s, m)


def kernel_max_on_ellipse(rho, params: RuleParams, ctx: PrecisionContext, grid_size: int | None = None):
    """(theta_star, max |K|) on E_rho.

    Scan of theta = i pi/grid_size over [0, pi/2] (the rest follows by
    symmetry), then golden-section refinement of the best cell to
    2**(-bits/2). The axis value wins ties.
    """
    mp = ctx.mp
    rho = _check_rho(rho, ctx)
    m = grid_size or default_grid_size(params)
    if m < 4 * params.n * (2 * params.s + 1):
        raise ValueError("grid_size must be at least 4n(2s+1)")

    def g(t):
        return kernel_abs2(EllipseCoord(rho, t), params, ctx)

    h = mp.pi / m
    half = m // 2
    vals = [g(i * h) for i in range(half + 1)]
    best = max(range(half + 1), key=lambda i: vals[i])
    axis_val = vals[0]
    if best == 0:
        return mp.mpf(0), mp.sqrt(axis_val)
    lo = max(best - 1, 0) * h
    hi = min(best + 1, half) * h
    t, v = _golden_max(g, lo, hi, ctx.tol(0.5), mp)
    if vals[best] > v:
        t, v = best * h, vals[best]
    if axis_val >= v:
        return mp.mpf(0), mp.sqrt(axis_val)
    return t, mp.sqrt(v)


def _golden_max(g, lo, hi, tol, mp):
    invphi = (mp.sqrt(5) - 1) / 2
    c = hi - invphi * (hi - lo)
    d = lo + invphi * (hi - lo)
    gc, gd = g(c), g(d)
    while hi - lo > tol:
        if gc > gd:
            hi, d, gd = d, c, gc
            c = hi - invphi * (hi - lo)
            gc = g(c)
        else:
            lo, c, gc = c, d, gd
            d = lo + invphi * (hi - lo)
            gd = g(d)
    return (c, gc) if gc > gd else (d, gd)


def kernel_l1_norm_numeric(rho, params: RuleParams, ctx: PrecisionContext):
    """(1/2pi) * contour integral of |K||dz| over E_rho.

    Evaluated as 1/(2^s rho^{(2s+1)n}) int_0^pi sqrt(a)/c^s dtheta with
    adaptive Gauss-Legendre panels split at the extrema of c.
    """
    mp = ctx.mp
    rho = _check_rho(rho, ctx)
    n, s = params.n, params.s
    row = binomial_row(s)
    r2n = rho ** (2 * n)
    weights = [ck * r2n**k for k, ck in enumerate(row)]
    a2n = cosh_coeff(rho, 2 * n, ctx)

    def integrand(t):
        acc = mp.mpc(0)
        for k, wk in enumerate(weights):
            acc += wk * mp.expj(2 * n * k * t)
        return abs(acc) / (a2n + mp.cos(2 * n * t)) ** s

    cuts = [mp.pi * j / (2 * n) for j in range(2 * n + 1)]
    val = mp.quad(integrand, cuts, method="gauss-legendre")
    return val / (mp.ldexp(rho ** ((2 * s + 1) * n), s))
