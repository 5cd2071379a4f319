"""Arbitrary-precision substrate: precision contexts, dense polynomials and
double-exponential quadrature on the half line.

All big-real arithmetic in the package goes through mpmath at a fixed
working precision chosen once per run; :class:`PrecisionContext` carries
that choice and every public operation wraps itself in ``ctx.workdps()``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath

from .errors import ContextMismatchError, QuadratureError

__all__ = ["PrecisionContext", "Polynomial", "de_quadrature"]


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal precision policy for one run.

    Results are trusted to ``target_digits``; everything is computed at
    ``working_digits = target_digits + guard_digits`` so that roundoff and
    cancellation live in the guard band.
    """

    target_digits: int = 50
    guard_digits: int = 30

    def __post_init__(self):
        if self.target_digits < 1:
            raise ValueError("target_digits must be positive")
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be at least 10")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    @classmethod
    def for_table_size(cls, target_digits: int, n_max: int) -> "PrecisionContext":
        """Guard-digit policy for recurrence tables of size n_max.

        Hankel conditioning costs roughly one digit per index for this
        weight, so the guard scales like 1.2 * n_max.
        """
        return cls(target_digits, max(30, math.ceil(1.2 * n_max)))

    def workdps(self):
        """Context manager pinning mpmath to this working precision."""
        return mpmath.workdps(self.working_digits)

    def mpf(self, value):
        """Parse ``value`` (decimal string, int, mpf) at working precision."""
        with self.workdps():
            return +mpmath.mpf(value)

    def nstr(self, x, digits: int | None = None) -> str:
        """Decimal-string form of x with target_digits significant digits."""
        return mpmath.nstr(x, digits or self.target_digits)


class Polynomial:
    """Dense univariate polynomial over one precision context.

    ``coeffs[k]`` is the coefficient of x**k.  Trailing zeros are trimmed;
    interior exact zeros are preserved, so the parity structure of the
    orthogonal polynomials survives arithmetic untouched.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, coeffs, ctx: PrecisionContext):
        with ctx.workdps():
            cs = [+mpmath.mpf(c) for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [mpmath.mpf(0)]
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls, ctx):
        return cls([0], ctx)

    @classmethod
    def one(cls, ctx):
        return cls([1], ctx)

    @classmethod
    def x(cls, ctx):
        return cls([0, 1], ctx)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int):
        """Coefficient of x**k (exact zero beyond the stored degree)."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return mpmath.mpf(0)

    def max_abs_coeff(self):
        return max(abs(c) for c in self.coeffs)

    def _require_same_ctx(self, other: "Polynomial"):
        if self.ctx != other.ctx:
            raise ContextMismatchError(
                "polynomial operands belong to different precision contexts"
            )

    def __add__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._require_same_ctx(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        with self.ctx.workdps():
            out = list(a)
            for k, c in enumerate(b):
                out[k] = out[k] + c
        return Polynomial(out, self.ctx)

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        with self.ctx.workdps():
            return Polynomial([-c for c in self.coeffs], self.ctx)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            self._require_same_ctx(other)
            with self.ctx.workdps():
                out = [mpmath.mpf(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
                for i, a in enumerate(self.coeffs):
                    if a == 0:
                        continue
                    for j, b in enumerate(other.coeffs):
                        if b == 0:
                            continue
                        out[i + j] += a * b
            return Polynomial(out, self.ctx)
        with self.ctx.workdps():
            s = mpmath.mpf(other)
            return Polynomial([c * s for c in self.coeffs], self.ctx)

    __rmul__ = __mul__

    def mul_x(self):
        """Multiply by the monomial x (degree shift)."""
        return Polynomial((mpmath.mpf(0),) + self.coeffs, self.ctx)

    def derivative(self):
        if len(self.coeffs) == 1:
            return Polynomial.zero(self.ctx)
        with self.ctx.workdps():
            out = [k * c for k, c in enumerate(self.coeffs)][1:]
        return Polynomial(out, self.ctx)

    def __call__(self, point):
        """Evaluate by Horner's rule at working precision."""
        with self.ctx.workdps():
            x = mpmath.mpf(point)
            acc = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc

    def __eq__(self, other):
        return (
            isinstance(other, Polynomial)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    __hash__ = None

    def __repr__(self):
        return f"Polynomial(degree={self.degree})"


# --------------------------------------------------------------------------
# Double-exponential quadrature on [0, oo) / [0, b].
#
# The open half line uses the exp-sinh map x = exp(pi/2 sinh t); a finite
# truncation [0, b] (used by the moment builder, whose integrands carry an
# exp(-x^6) tail bound) uses tanh-sinh.  Node/weight tables are cached per
# (map, endpoint, working-precision, level).

_NODE_CACHE: dict = {}


def _level_nodes(kind: str, b, wd: int, level: int):
    key = (kind, None if b is None else b._mpf_, wd, level)
    cached = _NODE_CACHE.get(key)
    if cached is not None:
        return cached
    # t-range generous enough that the weight alone is far below noise even
    # for integrand values up to ~1e300.
    t_max = math.log(2.0 * (wd + 320) * math.log(10.0) / math.pi) + 1.0
    with mpmath.workdps(wd + 10):
        h = mpmath.mpf(1) / (1 << level)
        if level == 0:
            pos_js = range(0, int(t_max) + 1)
            neg_js = range(1, int(t_max) + 1)
        else:
            top = int(t_max * (1 << level)) + 1
            pos_js = range(1, top + 1, 2)
            neg_js = pos_js
        half_pi = mpmath.pi / 2

        def transform(t):
            s = mpmath.sinh(t)
            c = mpmath.cosh(t)
            if kind == "es":
                x = mpmath.exp(half_pi * s)
                return x, half_pi * c * x
            u = half_pi * s
            x = b / (1 + mpmath.exp(-2 * u))
            w = b * half_pi / 2 * c / mpmath.cosh(u) ** 2
            return x, w

        pos = [transform(h * j) for j in pos_js]
        neg = [transform(-h * j) for j in neg_js]
    _NODE_CACHE[key] = (pos, neg)
    return pos, neg


def de_quadrature(f, ctx: PrecisionContext, upper=None, max_level: int = 12):
    """Integrate f over [0, oo) (or [0, upper] if given) to working accuracy.

    The double-exponential level is doubled until two successive levels
    agree to 10**(5 - working_digits), scaled by the magnitude of the
    estimate.  The integrand must be analytic on the open interval and
    decay super-exponentially when no upper endpoint is given.

    Raises QuadratureError (carrying the last two estimates) if max_level
    is exhausted without agreement.
    """
    wd = ctx.working_digits
    with ctx.workdps():
        if upper is not None:
            b = +mpmath.mpf(upper)
            if b <= 0:
                raise ValueError("upper endpoint must be positive")
            kind = "ts"
        else:
            b = None
            kind = "es"
        tol = mpmath.mpf(10) ** (5 - wd)
        cut = mpmath.mpf(10) ** (-(wd + 12))
        one = mpmath.mpf(1)
        history = []
        for level in range(max_level + 1):
            pos, neg = _level_nodes(kind, b, wd, level)
            h = one / (1 << level)
            eps_term = cut * (max(one, abs(history[-1])) if history else one)
            s = mpmath.mpf(0)
            for side in (pos, neg):
                quiet = 0
                for x, w in side:
                    term = w * f(x)
                    s += term
                    if abs(term) <= eps_term:
                        quiet += 1
                        if quiet >= 3:
                            break
                    else:
                        quiet = 0
            estimate = h * s if not history else history[-1] / 2 + h * s
            if len(history) >= 2 and abs(estimate - history[-1]) <= tol * max(
                one, abs(estimate)
            ):
                return +estimate
            history.append(estimate)
        raise QuadratureError(
            f"double-exponential quadrature did not converge in {max_level} levels",
            estimates=(history[-2], history[-1]),
        )
