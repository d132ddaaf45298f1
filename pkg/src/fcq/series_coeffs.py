"""Expansion coefficients of the remainder in the Chebyshev coefficients of f.

beta, gamma, omega and the two epsilon variants are exact. Quantities that
carry a factor of pi are returned as :class:`fractions.Fraction` multipliers
of pi; use :func:`pi_multiple` to get a number at a given precision.

    1/T_n(z)^{2s}  = sum_k beta_k  u^{-2ns-k}
    rho_{n,s}(z)   = sum_k gamma_k u^{-n-k-1}
    K_{n,s}(z)     = sum_k omega_k u^{-(2s+1)n-k-1},   omega = beta * gamma
    R_{n,s}(f)     = sum_k alpha_{(2s+1)n+k} epsilon_k
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import NamedTuple, Sequence

from .core_math import PrecisionContext, RuleParams

__all__ = [
    "CoeffIndex",
    "beta_coeff",
    "gamma_coeff",
    "omega_coeff",
    "epsilon_true",
    "epsilon_paper",
    "pi_multiple",
    "binomial_identity_sides",
    "F_closed",
    "F_partial",
    "remainder_via_expansion",
]


class CoeffIndex(NamedTuple):
    n: int
    s: int
    k: int

    @property
    def block(self):
        """m with k = 2nm, or None when k is not a multiple of 2n."""
        q, r = divmod(self.k, 2 * self.n)
        return q if r == 0 else None


def _check(n, s, k):
    if n < 1 or s < 1:
        raise ValueError("n and s must be positive")
    if k < 0:
        raise ValueError("expansion index must be nonnegative")


def beta_coeff(n: int, s: int, k: int) -> int:
    """Coefficient of u^{-2ns-k} in 1/T_n(z)^{2s}."""
    _check(n, s, k)
    j, r = divmod(k, 2 * n)
    if r:
        return 0
    return 4**s * (-1) ** j * comb(j + 2 * s - 1, 2 * s - 1)


@lru_cache(maxsize=None)
def _gamma_block(s: int, j: int) -> Fraction:
    return Fraction(sum(comb(2 * s + 1, s - v) for v in range(min(j, s) + 1)), 2 ** (2 * s - 1))


def gamma_coeff(n: int, s: int, k: int) -> Fraction:
    """Coefficient of u^{-n-k-1} in rho_{n,s}, as a multiple of pi.

    Nonzero only for even k; block j = k // 2n covers k = 2nj, ..., 2n(j+1)-2.
    """
    _check(n, s, k)
    if k % 2:
        return Fraction(0)
    return _gamma_block(s, k // (2 * n))


@lru_cache(maxsize=None)
def omega_coeff(n: int, s: int, k: int) -> Fraction:
    """Kernel expansion coefficient (Cauchy product of beta and gamma), times 1/pi."""
    _check(n, s, k)
    if k % 2:
        return Fraction(0)
    return sum(
        (beta_coeff(n, s, j) * gamma_coeff(n, s, k - j) for j in range(0, k + 1, 2 * n)),
        Fraction(0),
    )


def epsilon_true(n: int, s: int, k: int) -> Fraction:
    """Remainder coefficient of alpha_{(2s+1)n+k}, times 1/pi.

    Obtained from the kernel coefficients by
    eps_0 = w_0/4, eps_1 = w_1/4, eps_k = (w_k - w_{k-2})/4.
    """
    _check(n, s, k)
    if k < 2:
        return omega_coeff(n, s, k) / 4
    return (omega_coeff(n, s, k) - omega_coeff(n, s, k - 2)) / 4


def epsilon_paper(n: int, s: int, k: int) -> Fraction:
    """Closed-form remainder coefficient as used by the series bound, times 1/pi.

    (-1)^m s(2m+2s+1)/((m+s)(m+s+1)) C(m+2s,2s) C(2s,s) for k = 2nm, else 0.
    This closed form is exactly twice :func:`epsilon_true`; the series bound
    (``bound_B2``) is built on it.
    """
    _check(n, s, k)
    m, r = divmod(k, 2 * n)
    if r:
        return Fraction(0)
    return (
        (-1) ** m
        * Fraction(s * (2 * m + 2 * s + 1), (m + s) * (m + s + 1))
        * comb(m + 2 * s, 2 * s)
        * comb(2 * s, s)
    )


def pi_multiple(q: Fraction, ctx: PrecisionContext):
    """q * pi at the context's precision."""
    mp = ctx.mp
    return mp.mpf(q.numerator) / q.denominator * mp.pi


def binomial_identity_sides(t: int, m: int, s: int) -> tuple[Fraction, Fraction]:
    """Both sides of the alternating binomial-sum identity, exactly.

    lhs = sum_{i=0}^t (-1)^i C(m+s-1+i, 2s-1) C(2s+1, i)
    rhs = (-1)^t (s(2m+2s+2) - t)/((m+s)(m+s+1)) C(m+s+t, 2s) C(2s, t)
    """
    if s < 1 or m < 0 or not 0 <= t <= 2 * s:
        raise ValueError("need s >= 1, m >= 0 and 0 <= t <= 2s")
    lhs = sum((-1) ** i * comb(m + s - 1 + i, 2 * s - 1) * comb(2 * s + 1, i) for i in range(t + 1))
    rhs = (
        (-1) ** t
        * Fraction(s * (2 * m + 2 * s + 2) - t, (m + s) * (m + s + 1))
        * comb(m + s + t, 2 * s)
        * comb(2 * s, t)
    )
    return Fraction(lhs), rhs


def _check_x(x, ctx):
    x = ctx.mp.mpf(x)
    if not 0 < x < 1:
        raise ValueError("x must lie in (0, 1)")
    return x


def F_closed(x, s: int, ctx: PrecisionContext):
    """sum_{k=0}^s (-1)^k C(2s+1, s+k+1) x^{s+k} / (1-x)^{2s}."""
    x = _check_x(x, ctx)
    num = sum((-1) ** k * comb(2 * s + 1, s + k + 1) * x ** (s + k) for k in range(s + 1))
    return num / (1 - x) ** (2 * s)


def F_partial(x, s: int, M: int, ctx: PrecisionContext):
    """First M terms of s C(2s,s) sum_m C(m+2s,2s)(2m+2s+1) x^{m+s}/((m+s)(m+s+1))."""
    x = _check_x(x, ctx)
    mp = ctx.mp
    total = mp.mpf(0)
    xp = x**s
    for m in range(M):
        c = Fraction(comb(m + 2 * s, 2 * s) * (2 * m + 2 * s + 1), (m + s) * (m + s + 1))
        total += mp.mpf(c.numerator) / c.denominator * xp
        xp *= x
    return s * comb(2 * s, s) * total


def remainder_via_expansion(
    cheb_coeffs: Sequence, params: RuleParams, ctx: PrecisionContext, M: int | None = None
):
    """sum_{m=0}^{M} alpha_{(2s+1)n+2nm} epsilon_true(2nm) from the coefficients of f.

    ``cheb_coeffs[k]`` is alpha_k = (2/pi) int f T_k w. Indices beyond the
    sequence count as zero. With ``M=None`` summation stops once a term falls
    below 2**-bits of the partial sum (after at least one nonzero term).
    """
    mp = ctx.mp
    n, s = params.n, params.s
    base = (2 * s + 1) * n
    total = mp.mpf(0)
    m = 0
    seen = False
    while True:
        if M is not None and m > M:
            break
        idx = base + 2 * n * m
        if idx >= len(cheb_coeffs):
            break
        term = mp.mpf(cheb_coeffs[idx]) * pi_multiple(epsilon_true(n, s, 2 * n * m), ctx)
        total += term
        if M is None and term != 0:
            if seen and abs(term) <= ctx.eps * abs(total):
                break
            seen = True
        m += 1
    return total
