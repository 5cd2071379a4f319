"""Even moments of the weight w(x) = exp(-x^6 - t2*x^4 - t1*x^2) on the line.

Three base moments (orders 0, 2, 4) come from quadrature; everything above
follows from the exact integration-by-parts recursion

    mu[j+6] = ((j+1)*mu[j] - 2*t1*mu[j+2] - 4*t2*mu[j+4]) / 6,

obtained by integrating d/dx(x^(j+1) w(x)) over the real line.  Odd moments
vanish by symmetry and are stored as exact zeros so Hankel indexing stays
uniform.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .errors import PrecisionExhaustedError
from .numerics import PrecisionContext, de_quadrature

__all__ = [
    "Params",
    "MomentTable",
    "tail_cutoff",
    "base_moments",
    "extend_moments",
    "moment_table",
    "moment_cross_check",
]


@dataclass(frozen=True)
class Params:
    """Deformation coefficients of the weight: t1 multiplies x^2, t2 x^4.

    Any real values are admissible; the x^6 term keeps the weight
    integrable regardless of sign.
    """

    t1: object
    t2: object

    @classmethod
    def parse(cls, t1, t2, ctx: PrecisionContext) -> "Params":
        """Build from decimal strings (or ints) at working precision."""
        return cls(ctx.mpf(t1), ctx.mpf(t2))


def moment_integrand(order: int, params: Params):
    """Integrand x**order * w(x); call only under a working-precision scope."""
    t1, t2 = params.t1, params.t2

    def f(x):
        x2 = x * x
        x4 = x2 * x2
        return x**order * mpmath.exp(-x4 * x2 - t2 * x4 - t1 * x2)

    return f


def tail_cutoff(params: Params, ctx: PrecisionContext):
    """Truncation point beyond which the exp(-x^6) tail alone puts the
    integrand below quadrature noise, uniformly in the sign of t1, t2."""
    with ctx.workdps():
        budget = (
            ctx.working_digits * mpmath.ln(10)
            + abs(params.t1)
            + abs(params.t2)
            + 10
        )
        return mpmath.root(budget, 6) + 2


def base_moments(params: Params, ctx: PrecisionContext):
    """Moments of order 0, 2, 4 by double-exponential quadrature."""
    cutoff = tail_cutoff(params, ctx)
    out = []
    for order in (0, 2, 4):
        val = de_quadrature(moment_integrand(order, params), ctx, upper=cutoff)
        with ctx.workdps():
            out.append(2 * val)
    return tuple(out)


@dataclass(frozen=True)
class MomentTable:
    """Even moments mu[0..max_order] at fixed params; odd entries exact 0."""

    params: Params
    ctx: PrecisionContext
    mu: tuple

    @property
    def max_order(self) -> int:
        return len(self.mu) - 1

    def mu_at(self, j: int):
        if not 0 <= j <= self.max_order:
            raise IndexError(f"moment order {j} outside table (max {self.max_order})")
        return self.mu[j]


def extend_moments(base, params: Params, n_max: int, ctx: PrecisionContext) -> MomentTable:
    """Extend (mu0, mu2, mu4) to all even orders <= 2*n_max by the recursion."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    top = 2 * n_max
    with ctx.workdps():
        mu = [mpmath.mpf(0)] * (top + 1)
        mu[0], mu[2], mu[4] = (+mpmath.mpf(b) for b in base)
        t1, t2 = params.t1, params.t2
        for j in range(0, top - 5, 2):
            mu[j + 6] = ((j + 1) * mu[j] - 2 * t1 * mu[j + 2] - 4 * t2 * mu[j + 4]) / 6
    for j in range(0, top + 1, 2):
        if not mu[j] > 0:
            raise PrecisionExhaustedError(
                f"moment of order {j} is not positive; raise guard digits",
                suggested_guard_digits=2 * ctx.guard_digits,
            )
    return MomentTable(params, ctx, tuple(mu))


def moment_table(params: Params, max_order: int, ctx: PrecisionContext) -> MomentTable:
    """Base moments plus recursion, through the given even max order."""
    if max_order % 2 or max_order < 4:
        raise ValueError("max_order must be even and at least 4")
    return extend_moments(base_moments(params, ctx), params, max_order // 2, ctx)


def moment_cross_check(table: MomentTable, order: int, ctx: PrecisionContext | None = None):
    """|mu[order] - quadrature(2 x^order w)|: recursion vs direct integration."""
    if order % 2:
        raise ValueError("cross-check applies to even orders")
    ctx = ctx or table.ctx
    table.mu_at(order)
    val = de_quadrature(
        moment_integrand(order, table.params), ctx, upper=tail_cutoff(table.params, ctx)
    )
    with ctx.workdps():
        return abs(table.mu[order] - 2 * val)
