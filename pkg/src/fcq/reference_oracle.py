"""High-precision reference values: the Fourier-Chebyshev integral, the test
integrand exp(omega z^2), and the actual error of the rule."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from mpmath.ctx_mp_python import _mpf

from .core_math import PrecisionContext, RuleParams, cosh_coeff
from .errors import ConvergenceError, PrecisionError
from .hermite_quadrature import Integrand, apply_rule, build_rule

__all__ = [
    "TestIntegrandF0",
    "reference_integral",
    "f0_closed_form_integral",
    "bessel_i_series",
    "actual_error",
    "chebyshev_coefficient",
    "MAX_NODES",
]

MAX_NODES = 10**6


class TestIntegrandF0(Integrand):
    """f(z) = exp(omega z^2).

    Derivatives are p_k(z) exp(omega z^2) with p_0 = 1 and
    p_{k+1} = p_k' + 2 omega z p_k, kept as exact rational coefficient lists.
    On E_rho, max |f| = exp(omega a1^2), attained at theta = 0.
    """

    __test__ = False  # not a pytest class

    def __init__(self, omega_param):
        self.omega_param = Fraction(omega_param)
        if self.omega_param <= 0:
            raise ValueError("omega must be positive")
        self.name = f"exp({self.omega_param}*z^2)"
        self._p = [[Fraction(1)]]

    def poly(self, k: int) -> list[Fraction]:
        """Monomial coefficients of p_k, lowest degree first."""
        w2 = 2 * self.omega_param
        while len(self._p) <= k:
            p = self._p[-1]
            nxt = [Fraction(0)] * (len(p) + 1)
            for j in range(1, len(p)):
                nxt[j - 1] += j * p[j]
            for j, c in enumerate(p):
                nxt[j + 1] += w2 * c
            self._p.append(nxt)
        return self._p[k]

    def value_and_derivs(self, z, order, ctx):
        mp = ctx.mp
        z = mp.mpf(z) if isinstance(z, (int, float, _mpf)) else mp.mpc(z)
        w = mp.mpf(self.omega_param.numerator) / self.omega_param.denominator
        e = mp.exp(w * z * z)
        out = []
        for k in range(order + 1):
            acc = mp.mpf(0)
            for c in reversed(self.poly(k)):
                acc = acc * z + (mp.mpf(c.numerator) / c.denominator)
            out.append(acc * e)
        return out

    def max_on_ellipse(self, rho, ctx):
        mp = ctx.mp
        a1 = cosh_coeff(rho, 1, ctx)
        w = mp.mpf(self.omega_param.numerator) / self.omega_param.denominator
        return mp.exp(w * a1 * a1)


def _gauss_chebyshev(f: Integrand, n: int, N: int, ctx: PrecisionContext):
    # int g w dt ~ (pi/N) sum g(cos((2k-1)pi/(2N))); T_n(x_k) = cos(n(2k-1)pi/(2N))
    mp = ctx.mp
    total = mp.mpf(0)
    for k in range(1, N + 1):
        a = mp.mpf(2 * k - 1) / (2 * N)
        x = mp.cospi(a)
        total += mp.re(f.value(x, ctx)) * mp.cospi(n * a)
    return mp.pi * total / N


def reference_integral(f: Integrand, n: int, ctx: PrecisionContext, min_nodes: int | None = None):
    """int_{-1}^{1} f(t) T_n(t) dt / sqrt(1-t^2) by Gauss-Chebyshev with doubling.

    Starts at ``min_nodes`` (default 12n) nodes and doubles until two
    successive values agree to 2**(16-bits) relative. Sums are formed with
    guard bits covering the cancellation between the size of the integrand
    and the size of the integral. An integral that vanishes to working
    precision relative to pi * max|f| on [-1, 1] is returned as exact zero.
    """
    mp = ctx.mp
    N = max(min_nodes or 12 * n, n + 1, 4)
    scale = mp.pi * max(abs(f.value(mp.mpf(x), ctx)) for x in (-1, 0, 1))
    guard = 32
    work = PrecisionContext(ctx.bits + guard)
    prev = _gauss_chebyshev(f, n, N, work)
    while N < MAX_NODES:
        N *= 2
        cur = _gauss_chebyshev(f, n, N, work)
        if cur == 0 or abs(cur) <= mp.ldexp(scale, -ctx.bits):
            if abs(cur - prev) <= mp.ldexp(scale, -ctx.bits):
                return mp.mpf(0)
            prev = cur
            continue
        lost = int(mp.ceil(mp.log(scale / abs(cur), 2))) if scale > abs(cur) else 0
        if lost + 32 > guard:
            guard = lost + 32
            work = PrecisionContext(ctx.bits + guard)
            prev = _gauss_chebyshev(f, n, N // 2, work)
            cur = _gauss_chebyshev(f, n, N, work)
        if abs(cur - prev) <= mp.ldexp(abs(cur), 16 - ctx.bits):
            return mp.mpf(cur)
        prev = cur
    raise ConvergenceError(f"reference integral did not settle within {MAX_NODES} nodes")


def bessel_i_series(nu: int, x, ctx: PrecisionContext):
    """I_nu(x) for integer nu >= 0 by its ascending series."""
    mp = ctx.mp
    x = mp.mpf(x)
    h = x / 2
    term = h**nu / factorial(nu)
    total = term
    q = h * h
    k = 0
    while True:
        k += 1
        term = term * q / (k * (k + nu))
        total += term
        if term == 0 or abs(term) < ctx.eps * abs(total):
            return total


def f0_closed_form_integral(omega_param, n: int, ctx: PrecisionContext):
    """pi exp(omega/2) I_{n/2}(omega/2) for even n."""
    if n % 2:
        raise ValueError("closed form needs even n")
    mp = ctx.mp
    w = Fraction(omega_param)
    half = mp.mpf(w.numerator) / (2 * w.denominator)
    return mp.pi * mp.exp(half) * bessel_i_series(n // 2, half, ctx)


def chebyshev_coefficient(f: Integrand, k: int, ctx: PrecisionContext):
    """alpha_k = (2/pi) int f T_k w dt, so that f = alpha_0/2 + sum_{k>=1} alpha_k T_k."""
    return 2 * reference_integral(f, k, ctx) / ctx.pi


def actual_error(
    params: RuleParams, f: Integrand, ctx: PrecisionContext, reference=None, rule=None
):
    """|I(f) - Q(f)| with both sides at the context precision.

    Raises :class:`PrecisionError` when the difference falls below
    2**(32-bits) times |I|, where it would be rounding noise. When both
    sides vanish identically the exact answer 0 is returned.
    """
    mp = ctx.mp
    if reference is None:
        reference = reference_integral(f, params.n, ctx, min_nodes=4 * params.n * (2 * params.s + 1))
    rule = rule or build_rule(params, ctx)
    reference = mp.mpf(reference)
    err = abs(reference - apply_rule(rule, f, ctx))
    if err == 0 and reference == 0:
        return err
    if err < mp.ldexp(abs(reference), 32 - ctx.bits):
        raise PrecisionError(
            f"actual_error: |I - Q| = {mp.nstr(err, 5)} is below the noise floor at {ctx.bits} bits"
        )
    return err
