"""Monic orthogonal polynomials for the sextic weight.

Builds the three-term recurrence P_{n+1} = x P_n - beta_n P_{n-1} in
coefficient space against a moment table, together with the normalization
constants h_n, the subleading coefficients p(n) (coefficient of x^(n-2)),
the auxiliary inner products r_n, R_n, and logarithms of the Hankel
determinants D_n = prod_{j<n} h_j.  A direct LU determinant serves as an
independent oracle for small n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath

from .errors import PrecisionExhaustedError
from .moments import MomentTable, Params, moment_table
from .numerics import Polynomial, PrecisionContext

__all__ = [
    "RecurrenceTable",
    "build_recurrence",
    "hankel_direct",
    "build_pipeline",
]


@dataclass
class RecurrenceTable:
    """Recurrence data up to index n_max.

    beta[0] == 0 and p[0] == p[1] == 0 by convention; small_r[0] is None
    (its defining inner product involves the degree -1 polynomial).
    """

    params: Params
    ctx: PrecisionContext
    n_max: int
    beta: tuple
    h: tuple
    p: tuple
    small_r: tuple
    big_r: tuple
    polys: tuple
    _log_h_prefix: list = field(default=None, repr=False, compare=False)

    def log_hankel(self, n: int):
        """log D_n = sum_{j<n} log h_j, with D_0 := 1 (empty product)."""
        if not 0 <= n <= self.n_max + 1:
            raise IndexError(f"log_hankel index {n} outside 0..{self.n_max + 1}")
        if self._log_h_prefix is None:
            with self.ctx.workdps():
                acc = mpmath.mpf(0)
                prefix = [acc]
                for hj in self.h:
                    acc = acc + mpmath.ln(hj)
                    prefix.append(acc)
            self._log_h_prefix = prefix
        return self._log_h_prefix[n]

    def partition_function_log(self, n: int):
        """log Z_n = log n! + log D_n."""
        with self.ctx.workdps():
            log_fact = mpmath.fsum(mpmath.ln(k) for k in range(1, n + 1))
            return self.log_hankel(n) + log_fact

    def sum_big_r(self, n: int):
        """sum_{j<n} R_j, used by the Hankel t2-derivative identity."""
        with self.ctx.workdps():
            return mpmath.fsum(self.big_r[:n])


def _inner(mu, a, b, shift):
    """sum_{i,j} a_i b_j mu[i+j+shift]; exact zeros are skipped, so the
    parity structure keeps this at ~(deg/2)^2 multiplications."""
    total = mpmath.mpf(0)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj == 0:
                continue
            total += ai * bj * mu[i + j + shift]
    return total


def build_recurrence(moments: MomentTable, n_max: int, ctx: PrecisionContext) -> RecurrenceTable:
    """Run the three-term recurrence up to n_max.

    Needs moments through order 2*n_max + 4 (the +4 feeds the R_n inner
    products).  Raises PrecisionExhaustedError when cancellation destroys
    positivity of some h_n, which is the loud symptom of an undersized
    guard band.
    """
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    need = 2 * n_max + 4
    if moments.max_order < need:
        raise ValueError(
            f"moment table covers order {moments.max_order}, need {need} for n_max={n_max}"
        )
    suggested = max(2 * ctx.guard_digits, math.ceil(1.2 * n_max) + 20)
    with ctx.workdps():
        mu = moments.mu
        polys = [Polynomial.one(ctx), Polynomial.x(ctx)]
        h = [mu[0], mu[2]]
        if not h[0] > 0 or not h[1] > 0:
            raise PrecisionExhaustedError(
                "non-positive norm at start; raise guard digits",
                suggested_guard_digits=suggested,
            )
        beta = [mpmath.mpf(0), mu[2] / mu[0]]
        for n in range(1, n_max):
            nxt = polys[n].mul_x() - polys[n - 1] * beta[n]
            hn = _inner(mu, nxt.coeffs, nxt.coeffs, 0)
            if not hn > 0:
                raise PrecisionExhaustedError(
                    f"norm h_{n + 1} lost positivity; retry with more guard digits",
                    suggested_guard_digits=suggested,
                )
            polys.append(nxt)
            h.append(hn)
            beta.append(hn / h[n])
        p = [mpmath.mpf(0), mpmath.mpf(0)]
        p.extend(polys[n].coeff(n - 2) for n in range(2, n_max + 1))
        small_r = [None]
        small_r.extend(
            _inner(mu, polys[n].coeffs, polys[n - 1].coeffs, 3) / h[n - 1]
            for n in range(1, n_max + 1)
        )
        big_r = [
            _inner(mu, polys[n].coeffs, polys[n].coeffs, 4) / h[n]
            for n in range(n_max + 1)
        ]
    return RecurrenceTable(
        params=moments.params,
        ctx=ctx,
        n_max=n_max,
        beta=tuple(beta),
        h=tuple(h),
        p=tuple(p),
        small_r=tuple(small_r),
        big_r=tuple(big_r),
        polys=tuple(polys),
    )


def hankel_direct(moments: MomentTable, n: int, ctx: PrecisionContext):
    """det(mu[i+j])_{i,j<n} by LU with partial pivoting (determinant oracle).

    Intended for n <= 12: beyond that the determinant under/overflows any
    fixed-exponent intuition and the log form should be used instead.
    """
    if n == 0:
        return mpmath.mpf(1)
    if moments.max_order < 2 * n - 2:
        raise ValueError("moment table too short for the requested determinant")
    with ctx.workdps():
        a = [[+moments.mu[i + j] for j in range(n)] for i in range(n)]
        det = mpmath.mpf(1)
        for col in range(n):
            piv = max(range(col, n), key=lambda r: abs(a[r][col]))
            if a[piv][col] == 0:
                raise PrecisionExhaustedError(
                    "Hankel matrix singular at working precision",
                    suggested_guard_digits=2 * ctx.guard_digits,
                )
            if piv != col:
                a[piv], a[col] = a[col], a[piv]
                det = -det
            det *= a[col][col]
            inv = 1 / a[col][col]
            for r in range(col + 1, n):
                factor = a[r][col] * inv
                if factor == 0:
                    continue
                row_r = a[r]
                row_c = a[col]
                for c2 in range(col + 1, n):
                    row_r[c2] -= factor * row_c[c2]
        return +det


def build_pipeline(t1, t2, n_max: int, target_digits: int = 50, guard_digits: int | None = None):
    """Convenience: parse params, build moments to 2*n_max+4 and the table.

    Returns (ctx, params, moments, table).  Guard digits default to the
    table-size policy max(30, ceil(1.2 * n_max)).
    """
    if guard_digits is None:
        ctx = PrecisionContext.for_table_size(target_digits, n_max)
    else:
        ctx = PrecisionContext(target_digits, guard_digits)
    params = Params.parse(t1, t2, ctx)
    moments = moment_table(params, 2 * n_max + 4, ctx)
    table = build_recurrence(moments, n_max, ctx)
    return ctx, params, moments, table
