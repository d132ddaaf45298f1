"""Computable a-priori bounds for the remainder and their minimisation over rho.

B1  L-infinity bound: ellipse length * max|K| * max|f| / 2pi, with the kernel
    maximum taken on the real axis.
B2  series bound from |alpha_k| <= 2 max|f| / rho^k and the closed-form
    remainder coefficients.
B3  L1 bound: Cauchy-Schwarz applied to the contour integral of |K|, with the
    resulting theta integrals in closed form.

``tight=False`` (the default) evaluates B1 and B2 in the form that
reproduces ``fcq.reference_table``. ``tight=True`` selects the sharper
constants: sqrt(a_2 - 1) instead of sqrt(a_1 - 1) in the axis value of |K|
for B1, and half of B2 (the remainder coefficients are exactly twice the
ones obtained from the kernel expansion). Both forms are valid bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from .core_math import PrecisionContext, RuleParams, binomial_row, cosh_coeff
from .errors import NotBracketedError, OffAxisMaximumError, PrecisionError
from .hermite_quadrature import Integrand
from .remainder_kernel import theta_scan

__all__ = [
    "bound_B1",
    "bound_B1_fallback",
    "bound_B2",
    "bound_B3",
    "trig_moment_I",
    "optimize_bound",
    "OptimumResult",
    "BoundReport",
    "compute_report",
    "BOUNDS",
    "OFF_AXIS_TOL",
]

# relative excess of the double-precision scan ratio treated as a genuine
# off-axis maximum rather than rounding
OFF_AXIS_TOL = 1e-12


def _length_factor(a1):
    q = 1 / (a1 * a1)
    return 1 - q / 4 - 3 * q**2 / 64 - 5 * q**3 / 256


def _b1_kernel_part(rho, params: RuleParams, ctx: PrecisionContext, tight: bool):
    # (l/2pi) * |K(a_1)| without the max|f| factor
    mp = ctx.mp
    n, s = params.n, params.s
    rho = mp.mpf(rho)
    a1 = cosh_coeff(rho, 1, ctx)
    a2n = cosh_coeff(rho, 2 * n, ctx)
    r2n = rho ** (2 * n)
    num = mp.mpf(0)
    p = mp.mpf(1)
    for ck in binomial_row(s):
        num += ck * p
        p *= r2n
    if tight:
        axis = (rho - 1 / rho) ** 2 / 2  # a_2 - 1
    else:
        axis = (rho - 1) ** 2 / (2 * rho)  # a_1 - 1
    pref = mp.pi * a1 / (mp.ldexp(mp.sqrt(2), s - 1) * rho ** ((2 * s + 1) * n))
    return pref * num / (mp.sqrt(axis) * (a2n + 1) ** s) * _length_factor(a1)


def bound_B1(rho, params: RuleParams, f: Integrand, ctx: PrecisionContext, tight: bool = False,
             check_theta: bool = True, grid_size: int | None = None):
    """L-infinity bound at one ellipse, assuming max|K| is attained at theta = 0.

    With ``check_theta`` a double-precision scan confirms that assumption and
    :class:`OffAxisMaximumError` is raised when it fails.
    """
    if check_theta:
        theta, ratio = theta_scan(rho, params, grid_size)
        if ratio > 1 + OFF_AXIS_TOL:
            raise OffAxisMaximumError(rho, theta, ratio)
    return _b1_kernel_part(rho, params, ctx, tight) * f.max_on_ellipse(rho, ctx)


def bound_B1_fallback(rho, params: RuleParams, f: Integrand, ctx: PrecisionContext,
                      tight: bool = False, grid_size: int | None = None):
    """B1 with the grid maximum of |K| in place of the axis value."""
    _, ratio = theta_scan(rho, params, grid_size)
    scale = ctx.mp.sqrt(ctx.mp.mpf(max(ratio, 1.0)))
    return scale * _b1_kernel_part(rho, params, ctx, tight) * f.max_on_ellipse(rho, ctx)


def bound_B2(rho, params: RuleParams, f: Integrand, ctx: PrecisionContext, tight: bool = False):
    """2pi max|f| sum_k (-1)^k C(2s+1, s-k) rho^{2n(s-k)} / (rho^n (rho^{2n} - 1)^{2s})."""
    mp = ctx.mp
    n, s = params.n, params.s
    rho = mp.mpf(rho)
    r2n = rho ** (2 * n)
    num = sum(((-1) ** k * comb(2 * s + 1, s - k) * r2n ** (s - k) for k in range(s + 1)), mp.mpf(0))
    val = 2 * mp.pi * num / (rho**n * (r2n - 1) ** (2 * s)) * f.max_on_ellipse(rho, ctx)
    return val / 2 if tight else val


def trig_moment_I(rho, params: RuleParams, l: int, ctx: PrecisionContext):
    """int_0^pi cos(2nl theta) / (a_{2n} + cos 2n theta)^{2s} dtheta in closed form."""
    n, s = params.n, params.s
    if not 0 <= l <= s:
        raise ValueError("need 0 <= l <= s")
    mp = ctx.mp
    rho = mp.mpf(rho)
    r2n = rho ** (2 * n)
    d = r2n * r2n - 1
    total = mp.mpf(0)
    dm = mp.mpf(1)
    for m in range(2 * s):
        total += comb(2 * s + l - 1, m) * comb(4 * s - m - 2, 2 * s - 1) * dm
        dm *= d
    val = (2 * r2n) ** (2 * s) * mp.pi * total / (r2n**l * d ** (4 * s - 1))
    return -val if l % 2 else val


def b3_theta_integral(rho, params: RuleParams, ctx: PrecisionContext):
    """int_0^pi a / c^{2s} dtheta assembled from the trig moments."""
    mp = ctx.mp
    n, s = params.n, params.s
    rho = mp.mpf(rho)
    r2n = rho ** (2 * n)
    r4n = r2n * r2n
    row = [comb(2 * s + 1, k) for k in range(s + 1)]
    total = sum((row[k] ** 2 * r4n**k for k in range(s + 1)), mp.mpf(0)) * trig_moment_I(rho, params, 0, ctx)
    for l in range(1, s + 1):
        inner = sum((row[i] * row[i + l] * r4n**i for i in range(s - l + 1)), mp.mpf(0))
        total += 2 * r2n**l * inner * trig_moment_I(rho, params, l, ctx)
    return total


def bound_B3(rho, params: RuleParams, f: Integrand, ctx: PrecisionContext):
    """sqrt(pi)/(2^s rho^{(2s+1)n}) sqrt(int_0^pi a/c^{2s}) max|f|."""
    mp = ctx.mp
    n, s = params.n, params.s
    rho = mp.mpf(rho)
    integral = b3_theta_integral(rho, params, ctx)
    if integral <= 0:
        raise PrecisionError("B3: theta integral lost all significance")
    pref = mp.sqrt(mp.pi) / mp.ldexp(rho ** ((2 * s + 1) * n), s)
    return pref * mp.sqrt(integral) * f.max_on_ellipse(rho, ctx)


BOUNDS = ("B1", "B2", "B3")


@dataclass
class OptimumResult:
    rho: object
    value: object
    flags: list = field(default_factory=list)


def _bound_callable(bound: str, params, f, ctx, tight, flags: set) -> Callable:
    if bound == "B1":
        def g(rho):
            try:
                return bound_B1(rho, params, f, ctx, tight=tight)
            except OffAxisMaximumError:
                flags.add("scan")
                return bound_B1_fallback(rho, params, f, ctx, tight=tight)
        return g
    if bound == "B2":
        return lambda rho: bound_B2(rho, params, f, ctx, tight=tight)
    if bound == "B3":
        return lambda rho: bound_B3(rho, params, f, ctx)
    raise ValueError(f"unknown bound {bound!r}; expected one of {BOUNDS}")


def optimize_bound(bound: str, params: RuleParams, f: Integrand, ctx: PrecisionContext,
                   tight: bool = False, points_per_decade: int = 60,
                   log2_range: tuple[int, int] = (-20, 20), rel_tol: float = 2.0**-24) -> OptimumResult:
    """Minimise a bound over rho.

    Geometric scan of rho - 1 over 2^lo .. 2^hi at ``points_per_decade``,
    then golden-section search on the two cells around the best scan point
    until the bracket is below ``rel_tol`` relative in rho.
    """
    mp = ctx.mp
    flags: set = set()
    g = _bound_callable(bound, params, f, ctx, tight, flags)

    def h(x):
        try:
            v = g(1 + mp.exp(x))
        except (PrecisionError, ZeroDivisionError):
            return mp.inf
        return v if v > 0 else mp.inf

    lo, hi = log2_range
    decades = (hi - lo) * math.log10(2)
    count = int(math.ceil(decades * points_per_decade)) + 1
    x0 = lo * mp.ln2
    dx = (hi - lo) * mp.ln2 / (count - 1)
    xs = [x0 + i * dx for i in range(count)]
    vals = [h(x) for x in xs]
    best = min(range(count), key=lambda i: vals[i])
    if best in (0, count - 1) or vals[best] == mp.inf:
        raise NotBracketedError(
            f"{bound}: minimum at the edge of the scan (rho - 1 = 2^{lo if best == 0 else hi})"
        )
    a, b = xs[best - 1], xs[best + 1]
    invphi = (mp.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    hc, hd = h(c), h(d)
    while True:
        rho_mid = 1 + mp.exp((a + b) / 2)
        if (rho_mid - 1) * (b - a) < rel_tol * rho_mid:
            break
        if hc < hd:
            b, d, hd = d, c, hc
            c = b - invphi * (b - a)
            hc = h(c)
        else:
            a, c, hc = c, d, hd
            d = a + invphi * (b - a)
            hd = h(d)
    x_best, v_best = (c, hc) if hc < hd else (d, hd)
    if vals[best] < v_best:
        x_best, v_best = xs[best], vals[best]
    rho_star = 1 + mp.exp(x_best)
    out = []
    if bound == "B1" and flags:
        # off-axis maxima only matter when they occur at the optimum
        if theta_scan(rho_star, params)[1] > 1 + OFF_AXIS_TOL:
            out.append("B1:theta-fallback")
    return OptimumResult(rho_star, v_best, out)


@dataclass
class BoundReport:
    params: RuleParams
    integrand_id: str
    r1: object
    r2: object
    r3: object
    rho_star_1: object
    rho_star_2: object
    rho_star_3: object
    actual_error: object = None
    reference_integral: object = None
    bits: int = 0
    flags: list = field(default_factory=list)

    @property
    def rho_star(self) -> tuple:
        return (self.rho_star_1, self.rho_star_2, self.rho_star_3)

    @property
    def bounds(self) -> tuple:
        return (self.r1, self.r2, self.r3)

    def is_valid(self) -> bool:
        """actual_error <= min(r1, r2, r3), vacuously true without an error."""
        if self.actual_error is None:
            return True
        return self.actual_error <= min(self.bounds)


def compute_report(params: RuleParams, f: Integrand, ctx: PrecisionContext, with_actual: bool = True,
                   integrand_id: str | None = None, tight: bool = False) -> BoundReport:
    results = [optimize_bound(b, params, f, ctx, tight=tight) for b in BOUNDS]
    flags = sorted({fl for r in results for fl in r.flags})
    report = BoundReport(
        params=params,
        integrand_id=integrand_id or getattr(f, "name", "f"),
        r1=results[0].value,
        r2=results[1].value,
        r3=results[2].value,
        rho_star_1=results[0].rho,
        rho_star_2=results[1].rho,
        rho_star_3=results[2].rho,
        bits=ctx.bits,
        flags=flags,
    )
    if with_actual:
        from .reference_oracle import actual_error, reference_integral

        ref = reference_integral(f, params.n, ctx, min_nodes=4 * params.n * (2 * params.s + 1))
        report.reference_integral = ref
        try:
            report.actual_error = actual_error(params, f, ctx, reference=ref)
        except PrecisionError:
            # within the degree of exactness or below the noise floor
            report.actual_error = abs(ref - _rule_value(params, f, ctx))
            report.flags.append("error:at-noise-floor")
        if not report.is_valid():
            report.flags.append("bound-violated")
    return report


def _rule_value(params, f, ctx):
    from .hermite_quadrature import apply_rule, build_rule

    return apply_rule(build_rule(params, ctx), f, ctx)
