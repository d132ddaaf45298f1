"""Self-checks run by ``fcq verify``: each suite compares a closed form or a
structural property against an independent computation."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

from .core_math import PrecisionContext, RuleParams
from .error_bounds import OFF_AXIS_TOL, bound_B1, bound_B1_fallback, trig_moment_I
from .errors import OffAxisMaximumError
from .hermite_quadrature import ChebyshevSeriesIntegrand, apply_rule, build_rule, monomial_moment
from .reference_oracle import TestIntegrandF0
from .remainder_kernel import kernel_max_on_ellipse, theta_scan
from .series_coeffs import (
    F_closed,
    F_partial,
    binomial_identity_sides,
    epsilon_paper,
    epsilon_true,
    pi_multiple,
)

__all__ = [
    "SuiteResult",
    "exactness_suite",
    "epsilon_suite",
    "binomial_suite",
    "f_series_suite",
    "trig_moment_suite",
    "axis_maximum_suite",
    "SUITES",
    "run_all",
    "I_L_RHOS",
    "theta_quadrature_I",
    "axis_maximum_counterexamples",
]


# extra working precision for the rule and the quadrature oracles; pass/fail
# tolerances stay tied to the requested precision
GUARD_BITS = 64


def _guarded(ctx: PrecisionContext, extra: int = 0) -> PrecisionContext:
    return PrecisionContext(ctx.bits + GUARD_BITS + extra)


@dataclass
class SuiteResult:
    name: str
    passed: bool
    lines: list[str] = field(default_factory=list)
    seconds: float = 0.0


def exactness_suite(ctx: PrecisionContext, n_max: int = 8, s_max: int = 3) -> SuiteResult:
    """t^k integrated exactly up to the degree of exactness, and the first
    failing monomial's remainder equals 2^{1-K} pi epsilon_true(n, s, 0)."""
    tol = ctx.mp.ldexp(ctx.mp.mpf(1), -(ctx.bits // 2))
    ctx = _guarded(ctx)
    mp = ctx.mp
    bad = []
    worst = mp.mpf(0)
    for n in range(1, n_max + 1):
        for s in range(1, s_max + 1):
            p = RuleParams(n, s)
            rule = build_rule(p, ctx)
            K = p.degree + 1
            for k in range(K + 1):
                exact = pi_multiple(monomial_moment(k, n), ctx)
                r = exact - apply_rule(rule, ChebyshevSeriesIntegrand.monomial(k), ctx)
                if k < K:
                    worst = max(worst, abs(r))
                    if abs(r) >= tol:
                        bad.append(f"n={n} s={s} t^{k}: residual {mp.nstr(r, 3)}")
                else:
                    pred = mp.ldexp(pi_multiple(epsilon_true(n, s, 0), ctx), 1 - K)
                    if abs(r - pred) >= tol * abs(pred):
                        bad.append(f"n={n} s={s} t^{K}: remainder {mp.nstr(r, 10)} predicted {mp.nstr(pred, 10)}")
    lines = [f"{n_max * s_max} rules, worst residual below exactness degree {mp.nstr(worst, 3)}"] + bad
    return SuiteResult("exactness", not bad, lines)


def epsilon_suite(ctx: PrecisionContext) -> SuiteResult:
    """Remainder of T_{(2s+1)n+2nm} against epsilon_true, and the factor two
    between the closed-form coefficients and the kernel-derived ones."""
    tol = ctx.mp.ldexp(ctx.mp.mpf(1), 32 - ctx.bits)
    ctx = _guarded(ctx)
    mp = ctx.mp
    bad = []
    for n in (1, 2, 3):
        for s in (1, 2, 3):
            rule = build_rule(RuleParams(n, s), ctx)
            for m in (0, 1, 2):
                K = (2 * s + 1) * n + 2 * n * m
                r = -apply_rule(rule, ChebyshevSeriesIntegrand.chebyshev(K), ctx) / mp.pi
                e = epsilon_true(n, s, 2 * n * m)
                if abs(r * mp.pi - pi_multiple(e, ctx)) > tol * abs(pi_multiple(e, ctx)):
                    bad.append(f"n={n} s={s} m={m}: remainder/pi {mp.nstr(r, 15)} != {e}")
    for n in (1, 2, 3):
        for s in range(1, 6):
            for m in range(31):
                k = 2 * n * m
                if epsilon_paper(n, s, k) != 2 * epsilon_true(n, s, k):
                    bad.append(f"n={n} s={s} m={m}: epsilon_paper != 2 epsilon_true")
    lines = ["epsilon_paper / epsilon_true for n=1:"]
    lines.append("  s\\m " + " ".join(f"{m:>5}" for m in range(6)))
    for s in (1, 2, 3):
        ratios = [epsilon_paper(1, s, 2 * m) / epsilon_true(1, s, 2 * m) for m in range(6)]
        lines.append(f"  {s:>3} " + " ".join(f"{str(q):>5}" for q in ratios))
    return SuiteResult("epsilon", not bad, lines + bad)


def binomial_suite(ctx: PrecisionContext, s_max: int = 6, m_max: int = 20) -> SuiteResult:
    bad = []
    count = 0
    for s in range(1, s_max + 1):
        for m in range(m_max + 1):
            for t in range(2 * s + 1):
                lhs, rhs = binomial_identity_sides(t, m, s)
                count += 1
                if lhs != rhs:
                    bad.append(f"t={t} m={m} s={s}: {lhs} != {rhs}")
    return SuiteResult("binomial", not bad, [f"{count} cases checked exactly"] + bad)


def f_series_suite(ctx: PrecisionContext, xs=(0.1, 0.5, 0.9), s_max: int = 4, rtol: float = 1e-25) -> SuiteResult:
    """Partial sums converge to the closed form.

    M = 300 terms is enough for x <= 0.5. At x = 0.9 the tail after 300
    terms is about 0.9^300 * 300^(2s), so there M grows until the tail
    estimate drops below ``rtol``; the 300-term error is reported.
    """
    mp = ctx.mp
    bad = []
    lines = []
    for x in xs:
        xm = mp.mpf(x)
        M = 300
        while float(M) ** (2 * s_max) * float(x) ** M > rtol * 1e-3:
            M += 100
        for s in range(1, s_max + 1):
            closed = F_closed(xm, s, ctx)
            rel300 = abs(F_partial(xm, s, 300, ctx) / closed - 1)
            rel = rel300 if M == 300 else abs(F_partial(xm, s, M, ctx) / closed - 1)
            lines.append(f"x={x} s={s}: rel err {mp.nstr(rel300, 3)} at M=300" + ("" if M == 300 else f", {mp.nstr(rel, 3)} at M={M}"))
            if rel >= rtol:
                bad.append(f"x={x} s={s}: no convergence")
    return SuiteResult("F-series", not bad, lines + bad)


I_L_RHOS = (1.1, 1.5, 3, 10)


def theta_quadrature_I(rho, params: RuleParams, l: int, ctx: PrecisionContext, max_points: int = 1 << 16):
    """int_0^pi cos(2nl t)/(a_{2n} + cos 2nt)^{2s} dt by the periodic trapezoidal rule.

    With phi = 2nt the integral is half the integral of cos(l phi)/(a + cos phi)^{2s}
    over a full period. The trapezoidal rule converges geometrically for this
    analytic periodic integrand; points are doubled until two sums agree to
    2**(16-bits) of the sum of absolute values.
    """
    mp = ctx.mp
    n, s = params.n, params.s
    rho = mp.mpf(rho)
    a = (rho ** (2 * n) + rho ** (-2 * n)) / 2

    def trap(N):
        h = 2 * mp.pi / N
        tot = mag = mp.mpf(0)
        for j in range(N):
            c, v = mp.cos_sin(j * h)
            term = mp.cos(l * j * h) / (a + c) ** (2 * s)
            tot += term
            mag += abs(term)
        return tot * h / 2, mag * h / 2

    N = 32
    prev, _ = trap(N)
    while N < max_points:
        N *= 2
        cur, mag = trap(N)
        if abs(cur - prev) <= mp.ldexp(mag, 16 - ctx.bits):
            return cur
        prev = cur
    raise ArithmeticError("trapezoidal sums did not settle")


def trig_moment_suite(ctx: PrecisionContext, rtol: float = 1e-30, n_max: int = 4, s_max: int = 3) -> SuiteResult:
    mp = ctx.mp
    bad = []
    worst = 0.0
    for rho in I_L_RHOS:
        for n in range(1, n_max + 1):
            for s in range(1, s_max + 1):
                p = RuleParams(n, s)
                for l in range(s + 1):
                    closed = trig_moment_I(rho, p, l, ctx)
                    # the oscillating integrand is ~rho^{2nl} times larger than I_l
                    work = _guarded(ctx, int(2 * n * l * math.log2(rho)) + 1)
                    quad = theta_quadrature_I(rho, p, l, work)
                    rel = float(abs(closed / quad - 1))
                    worst = max(worst, rel)
                    if not rel < rtol or (closed > 0) != (l % 2 == 0):
                        bad.append(f"rho={rho} n={n} s={s} l={l}: rel {rel:.2e}")
    return SuiteResult("I_l closed forms", not bad, [f"worst relative deviation {worst:.2e}"] + bad)


def axis_maximum_counterexamples(ns=(2, 4, 8), ss=(1, 2, 3), rho_lo=1.05, rho_hi=16.0, points=60):
    """(n, s, rho, theta, ratio) where the scan finds max|K| off the real axis."""
    out = []
    step = math.log(rho_hi / rho_lo) / (points - 1)
    for n in ns:
        for s in ss:
            p = RuleParams(n, s)
            for i in range(points):
                rho = rho_lo * math.exp(i * step)
                theta, ratio = theta_scan(rho, p)
                if ratio > 1 + OFF_AXIS_TOL:
                    out.append((n, s, rho, theta, ratio))
    return out


def axis_maximum_suite(ctx: PrecisionContext) -> SuiteResult:
    """Scan for off-axis kernel maxima. Counterexamples are listed and each
    must be confirmed at full precision and handled by the B1 fallback."""
    mp = ctx.mp
    f = TestIntegrandF0(1)
    cex = axis_maximum_counterexamples()
    lines = [f"{len(cex)} off-axis maxima on the grid"]
    bad = []
    for n, s, rho, theta, ratio in cex:
        p = RuleParams(n, s)
        t_mp, kmax = kernel_max_on_ellipse(rho, p, ctx)
        try:
            bound_B1(rho, p, f, ctx)
            engaged = False
        except OffAxisMaximumError:
            engaged = True
        fb = bound_B1_fallback(rho, p, f, ctx)
        axis = bound_B1(rho, p, f, ctx, check_theta=False)
        ok = engaged and t_mp != 0 and fb > axis
        lines.append(
            f"  n={n} s={s} rho={rho:.4f}: theta*={theta:.4f} |K|^2 ratio {ratio:.4f}"
            f" fallback {'engaged' if ok else 'NOT engaged'}"
        )
        if not ok:
            bad.append(f"n={n} s={s} rho={rho}: fallback check failed")
    return SuiteResult("axis-maximum scan", not bad, lines + bad)


SUITES: tuple[tuple[str, Callable], ...] = (
    ("exactness", exactness_suite),
    ("epsilon", epsilon_suite),
    ("binomial", binomial_suite),
    ("F-series", f_series_suite),
    ("I_l", trig_moment_suite),
    ("axis-maximum", axis_maximum_suite),
)


def run_all(ctx: PrecisionContext) -> list[SuiteResult]:
    out = []
    for _, fn in SUITES:
        t0 = time.perf_counter()
        res = fn(ctx)
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out
