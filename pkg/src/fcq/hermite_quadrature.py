"""The multiple-node rule for Fourier-Chebyshev coefficients.

The rule approximates

    a_n(f) = int_{-1}^{1} f(t) T_n(t) dt / sqrt(1 - t^2)

by applying the integral to the Hermite interpolant of f that matches
f, f', ..., f^{(2s-1)} at each zero of T_n. Since int T_k T_n w = (pi/2) d_kn
for n >= 1, the rule value is pi/2 times the T_n coefficient of that
interpolant. The interpolant is built as a confluent Newton form (each node
repeated 2s times, nodes in Leja order) and converted to the Chebyshev basis
with exact polynomial arithmetic at the working precision.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial
from typing import Callable, Sequence

from mpmath.ctx_mp_python import _mpf

from .core_math import PrecisionContext, RuleParams, chebyshev_nodes, cosh_coeff

__all__ = [
    "Integrand",
    "CallbackIntegrand",
    "ChebyshevSeriesIntegrand",
    "MultipleNodeRule",
    "build_rule",
    "apply_rule",
    "apply_weights",
    "remainder",
    "hermite_chebyshev_coeffs",
    "monomial_moment",
    "monomial_cheb_coeffs",
    "leja_order",
]


class Integrand:
    """An analytic integrand that can report derivatives and its size on E_rho.

    Subclasses implement :meth:`value_and_derivs` returning
    ``[f(z), f'(z), ..., f^(order)(z)]`` and :meth:`max_on_ellipse` returning
    an upper bound for ``max |f|`` on E_rho (the exact maximum when known).
    """

    name = "f"

    def value_and_derivs(self, z, order: int, ctx: PrecisionContext) -> list:
        raise NotImplementedError

    def max_on_ellipse(self, rho, ctx: PrecisionContext):
        raise NotImplementedError

    def value(self, z, ctx: PrecisionContext):
        return self.value_and_derivs(z, 0, ctx)[0]


@dataclass
class CallbackIntegrand(Integrand):
    """Integrand assembled from two plain callables."""

    derivs: Callable
    maximum: Callable
    name: str = "callback"

    def value_and_derivs(self, z, order, ctx):
        out = list(self.derivs(z, order, ctx))
        if len(out) != order + 1:
            raise ValueError(f"integrand returned {len(out)} values, expected {order + 1}")
        return out

    def max_on_ellipse(self, rho, ctx):
        return self.maximum(rho, ctx)


def _cheb_derivative(c: list[Fraction]) -> list[Fraction]:
    n = len(c) - 1
    if n <= 0:
        return [Fraction(0)]
    d = [Fraction(0)] * (n + 2)
    for k in range(n, 0, -1):
        d[k - 1] = d[k + 1] + 2 * k * c[k]
    d[0] /= 2
    return d[:n]


def _clenshaw(c, x, mp):
    b1 = b2 = mp.mpf(0)
    for ck in reversed(c[1:]):
        b1, b2 = 2 * x * b1 - b2 + ck, b1
    return x * b1 - b2 + c[0]


def monomial_cheb_coeffs(k: int) -> list[Fraction]:
    """Coefficients c_j with t^k = sum_j c_j T_j(t) (no halved leading term)."""
    c = [Fraction(0)] * (k + 1)
    for j in range(k + 1):
        c[abs(k - 2 * j)] += Fraction(comb(k, j), 2**k)
    return c


class ChebyshevSeriesIntegrand(Integrand):
    """A polynomial given exactly by its Chebyshev coefficients.

    ``max_on_ellipse`` returns sum |c_k| a_k(rho), which bounds |p| on E_rho
    because |T_k| <= a_k there.
    """

    def __init__(self, coeffs: Sequence, name: str = "poly"):
        self.coeffs = [Fraction(c) for c in coeffs]
        self.name = name
        self._derivs = [self.coeffs]

    @classmethod
    def monomial(cls, k: int):
        return cls(monomial_cheb_coeffs(k), name=f"t^{k}")

    @classmethod
    def chebyshev(cls, k: int):
        return cls([0] * k + [1], name=f"T_{k}")

    def _deriv_coeffs(self, order):
        while len(self._derivs) <= order:
            self._derivs.append(_cheb_derivative(self._derivs[-1]))
        return self._derivs[order]

    def value_and_derivs(self, z, order, ctx):
        mp = ctx.mp
        x = mp.mpf(z) if isinstance(z, (int, float, _mpf)) else mp.mpc(z)
        out = []
        for i in range(order + 1):
            c = [mp.mpf(q.numerator) / q.denominator for q in self._deriv_coeffs(i)]
            out.append(_clenshaw(c, x, mp))
        return out

    def max_on_ellipse(self, rho, ctx):
        mp = ctx.mp
        return sum(
            (abs(mp.mpf(c.numerator) / c.denominator) * cosh_coeff(rho, k, ctx) for k, c in enumerate(self.coeffs)),
            mp.mpf(0),
        )


def monomial_moment(k: int, n: int) -> Fraction:
    """int_{-1}^{1} t^k T_n(t) dt/sqrt(1-t^2), as a multiple of pi (n >= 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = monomial_cheb_coeffs(k)
    return c[n] / 2 if n <= k else Fraction(0)


def leja_order(nodes: Sequence) -> list[int]:
    """Greedy Leja ordering: start at the largest |x|, then maximise the
    product of distances to the points already chosen."""
    remaining = list(range(len(nodes)))
    first = max(remaining, key=lambda i: (abs(nodes[i]), -i))
    order = [first]
    remaining.remove(first)
    prod = {i: abs(nodes[i] - nodes[first]) for i in remaining}
    while remaining:
        nxt = max(remaining, key=lambda i: (prod[i], -i))
        order.append(nxt)
        remaining.remove(nxt)
        for i in remaining:
            prod[i] *= abs(nodes[i] - nodes[nxt])
    return order


def hermite_chebyshev_coeffs(points: Sequence, data: Sequence[Sequence], ctx: PrecisionContext) -> list:
    """Chebyshev coefficients of the Hermite interpolant.

    ``data[j][i]`` is the i-th derivative at ``points[j]``; every point must
    carry the same number of derivatives. Points are used in the given order.
    """
    mp = ctx.mp
    mult = len(data[0])
    z = [mp.mpf(p) for p in points for _ in range(mult)]
    owner = [j for j in range(len(points)) for _ in range(mult)]
    N = len(z)
    coef = [mp.mpf(data[owner[i]][0]) for i in range(N)]
    for j in range(1, N):
        fj = factorial(j)
        for i in range(N - 1, j - 1, -1):
            if owner[i] == owner[i - j]:
                coef[i] = mp.mpf(data[owner[i]][j]) / fj
            else:
                coef[i] = (coef[i] - coef[i - 1]) / (z[i] - z[i - j])
    c = [coef[N - 1]]
    zero = mp.mpf(0)
    for j in range(N - 2, -1, -1):
        zj = z[j]
        new = [zero] * (len(c) + 1)
        new[1] += c[0]
        new[0] -= zj * c[0]
        for k in range(1, len(c)):
            h = c[k] / 2
            new[k + 1] += h
            new[k - 1] += h
            new[k] -= zj * c[k]
        new[0] += coef[j]
        c = new
    return c


@dataclass(frozen=True)
class MultipleNodeRule:
    """Nodes of the rule plus lazily computed weights.

    ``weights[(v, i)]`` (v = 1..n, i = 0..2s-1) multiplies f^(i)(xi_v).
    """

    params: RuleParams
    ctx: PrecisionContext = field(repr=False)
    nodes: tuple = field(init=False)
    order: tuple = field(init=False, repr=False)

    def __post_init__(self):
        nodes = tuple(chebyshev_nodes(self.params.n, self.ctx))
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "order", tuple(leja_order(nodes)))

    def _value(self, data_by_node) -> object:
        pts = [self.nodes[i] for i in self.order]
        data = [data_by_node[i] for i in self.order]
        c = hermite_chebyshev_coeffs(pts, data, self.ctx)
        return self.ctx.pi / 2 * c[self.params.n]

    @cached_property
    def weights(self) -> dict:
        mp = self.ctx.mp
        n, m = self.params.n, self.params.multiplicity
        out = {}
        for v in range(n):
            for i in range(m):
                data = [[mp.mpf(0)] * m for _ in range(n)]
                data[v][i] = mp.mpf(1)
                out[(v + 1, i)] = self._value(data)
        return out


def build_rule(params: RuleParams, ctx: PrecisionContext) -> MultipleNodeRule:
    return MultipleNodeRule(params, ctx)


def _node_data(rule: MultipleNodeRule, f: Integrand):
    mp = rule.ctx.mp
    order = rule.params.multiplicity - 1
    data = []
    for x in rule.nodes:
        vals = f.value_and_derivs(x, order, rule.ctx)
        data.append([mp.re(v) for v in vals])
    return data


def apply_rule(rule: MultipleNodeRule, f: Integrand, ctx: PrecisionContext | None = None):
    """Rule value via one interpolant build (no explicit weights)."""
    if ctx is not None and ctx.bits != rule.ctx.bits:
        rule = build_rule(rule.params, ctx)
    return rule._value(_node_data(rule, f))


def apply_weights(rule: MultipleNodeRule, f: Integrand):
    """Rule value as sum_v sum_i A_{i,v} f^(i)(xi_v) from explicit weights."""
    data = _node_data(rule, f)
    total = rule.ctx.mp.mpf(0)
    for (v, i), w in rule.weights.items():
        total += w * data[v - 1][i]
    return total


def remainder(rule: MultipleNodeRule, f: Integrand, reference, ctx: PrecisionContext | None = None):
    """reference - rule value."""
    ctx = ctx or rule.ctx
    return ctx.mp.mpf(reference) - apply_rule(rule, f, ctx)
