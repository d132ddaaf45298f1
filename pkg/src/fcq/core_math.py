"""Precision handling, Chebyshev polynomials and confocal-ellipse geometry.

Every numeric routine in the package takes a :class:`PrecisionContext` and
does its arithmetic through the private mpmath context it owns, so two
computations at different precisions never interfere.

Branch convention: ``sqrt(z**2 - 1)`` is always taken so that
``u = z + sqrt(z**2 - 1)`` satisfies ``|u| >= 1`` (the exterior Joukowski
map). All multivalued formulas downstream inherit this choice.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import mpmath
from mpmath.ctx_mp_python import _mpf

__all__ = [
    "PrecisionContext",
    "EllipseCoord",
    "RuleParams",
    "RECURRENCE_RADIUS",
    "exterior_map",
    "chebyshev_T",
    "chebyshev_nodes",
    "cosh_coeff",
    "ellipse_point",
    "ellipse_length_upper",
    "binomial_row",
]

# |z| beyond which T_n is evaluated as (u^n + u^-n)/2 instead of by the
# three-term recurrence.
RECURRENCE_RADIUS = 2


@dataclass(frozen=True)
class PrecisionContext:
    """Binary working precision for a computation.

    The wrapped mpmath context is created once and never mutated, so an
    instance can be shared between threads.
    """

    bits: int = 256
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.bits, int) or self.bits < 64:
            raise ValueError(f"precision must be an integer >= 64 bits, got {self.bits!r}")
        ctx = mpmath.MPContext()
        ctx.prec = self.bits
        object.__setattr__(self, "mp", ctx)

    def mpf(self, x):
        return self.mp.mpf(x)

    def mpc(self, x, y=0):
        return self.mp.mpc(x, y)

    @property
    def pi(self):
        return self.mp.pi

    @property
    def eps(self):
        """2**-bits."""
        return self.mp.ldexp(self.mp.mpf(1), -self.bits)

    def tol(self, fraction=0.5):
        """2**(-bits*fraction); the default is the half-precision tolerance."""
        return self.mp.ldexp(self.mp.mpf(1), -int(self.bits * fraction))

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.bits)


@dataclass(frozen=True)
class EllipseCoord:
    """Point of the ellipse E_rho given by its parameter rho and angle theta."""

    rho: object
    theta: object = 0

    def u(self, ctx: PrecisionContext):
        mp = ctx.mp
        return mp.mpf(self.rho) * mp.expj(mp.mpf(self.theta))

    def z(self, ctx: PrecisionContext):
        return ellipse_point(self, ctx)


@dataclass(frozen=True)
class RuleParams:
    """Node count ``n`` and half-multiplicity ``s`` of the multiple-node rule."""

    n: int
    s: int

    def __post_init__(self):
        for name in ("n", "s"):
            v = getattr(self, name)
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")

    @property
    def degree(self) -> int:
        """Algebraic degree of exactness, n(2s+1) - 1."""
        return self.n * (2 * self.s + 1) - 1

    @property
    def multiplicity(self) -> int:
        return 2 * self.s


def binomial_row(s: int) -> list[int]:
    """C(2s+1, k) for k = 0..s."""
    return [comb(2 * s + 1, k) for k in range(s + 1)]


def _is_real(z) -> bool:
    return isinstance(z, (int, float, _mpf))


def exterior_map(z, ctx: PrecisionContext):
    """u = z + sqrt(z^2 - 1) on the branch with |u| >= 1."""
    mp = ctx.mp
    z = mp.mpc(z)
    w = mp.sqrt(z * z - 1)
    u = z + w
    if abs(u) < 1:
        u = z - w
    return u


def chebyshev_T(n: int, z, ctx: PrecisionContext):
    """T_n(z) for complex (or real) z.

    Real input gives a real result. Inside ``|z| <= RECURRENCE_RADIUS`` the
    three-term recurrence is used, outside it the closed form in u.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    mp = ctx.mp
    real = _is_real(z)
    z = mp.mpf(z) if real else mp.mpc(z)
    if n == 0:
        return mp.mpf(1) if real else mp.mpc(1)
    if abs(z) <= RECURRENCE_RADIUS:
        t0, t1 = (mp.mpf(1) if real else mp.mpc(1)), z
        for _ in range(n - 1):
            t0, t1 = t1, 2 * z * t1 - t0
        return t1
    if real:
        w = mp.sqrt(z * z - 1)
        u = z + w if z > 0 else z - w
        return (u**n + u ** (-n)) / 2
    u = exterior_map(z, ctx)
    return (u**n + u ** (-n)) / 2


def chebyshev_nodes(n: int, ctx: PrecisionContext) -> list:
    """Zeros cos((2v-1)pi/(2n)), v = 1..n, of T_n in decreasing order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    mp = ctx.mp
    nodes = []
    for v in range(1, n + 1):
        if 2 * (2 * v - 1) == 2 * n:
            nodes.append(mp.mpf(0))
        else:
            nodes.append(mp.cospi(mp.mpf(2 * v - 1) / (2 * n)))
    return nodes


def cosh_coeff(rho, j: int, ctx: PrecisionContext):
    """a_j(rho) = (rho^j + rho^-j)/2."""
    mp = ctx.mp
    rho = mp.mpf(rho)
    if rho <= 0:
        raise ValueError("rho must be positive")
    r = rho**j
    return (r + 1 / r) / 2


def ellipse_point(c: EllipseCoord, ctx: PrecisionContext):
    """z = (u + 1/u)/2 with u = rho e^{i theta}."""
    u = c.u(ctx)
    return (u + 1 / u) / 2


def ellipse_length_upper(rho, ctx: PrecisionContext):
    """Series upper estimate of the perimeter of E_rho.

    2 pi a1 (1 - a1^-2/4 - 3 a1^-4/64 - 5 a1^-6/256) with a1 = (rho + 1/rho)/2.
    """
    mp = ctx.mp
    rho = mp.mpf(rho)
    if rho <= 1:
        raise ValueError("rho must exceed 1")
    a1 = cosh_coeff(rho, 1, ctx)
    q = 1 / (a1 * a1)
    return 2 * mp.pi * a1 * (1 - q / 4 - 3 * q**2 / 64 - 5 * q**3 / 256)
