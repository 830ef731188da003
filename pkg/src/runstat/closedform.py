"""Closed-form counts: joint rises/falls, Simon Newcomb numbers, Eulerian numbers.

The joint count is

    A(n; r, s) = sum' [ prod_i f(n_i, r-t+1, d_i, tau_i) - prod_i f(n_i, r-t, d_i, tau_i) ]

over vectors ``d`` and ``tau`` with ``0 <= d_i, tau_i <= n_i``,
``sum(d) + sum(tau) = r + s + 1`` and ``t = sum(tau) <= r``.  ``f`` is the
j-sum of the hypergeometric term ``h``; the helpers below also expose the
telescoping certificate that proves the first-order recurrence of ``f``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from runstat.model import Specification, as_spec


class FormulaIntegrityError(ArithmeticError):
    """The closed form produced a non-integral count."""


class CertificatePole(ZeroDivisionError):
    """The certificate is undefined at this point (``n - t + 1 == j``)."""


def binom_gen(a: int, b: int) -> int:
    """``a (a-1) ... (a-b+1) / b!`` for any integer ``a``; zero when ``b < 0``."""
    if b < 0:
        return 0
    if a >= 0:
        return math.comb(a, b)
    # C(a, b) = (-1)^b C(b - a - 1, b) for negative a
    return (-1) ** b * math.comb(b - a - 1, b)


@lru_cache(maxsize=None)
def f_term(n: int, m: int, d: int, t: int) -> Fraction:
    sign = -1 if t % 2 else 1
    if d == 0:
        return Fraction(sign * binom_gen(n - 1, t - 1) * binom_gen(m + t - 1, t))
    return Fraction(m, d) * (
        sign * binom_gen(n - 1, d + t - 1) * binom_gen(m + t - 1, d + t - 1) * binom_gen(d + t - 1, t)
    )


def h_term(n: int, j: int, m: int, d: int, t: int) -> int:
    sign = -1 if (j + d + t) % 2 else 1
    return (
        sign
        * binom_gen(j, d)
        * binom_gen(n - j, t)
        * binom_gen(m, j)
        * binom_gen(n - j + m - 1, n - j)
    )


def certificate(n: int, j: int, m: int, d: int, t: int) -> Fraction:
    """``G(n, j) = h(n, j) (d - j)(n + m - j) / (n - t + 1 - j)``."""
    denom = n - t + 1 - j
    if denom == 0:
        raise CertificatePole(f"certificate pole at n={n}, j={j}, t={t}")
    return Fraction(h_term(n, j, m, d, t) * (d - j) * (n + m - j), denom)


def wz_certificate_check(n: int, j: int, m: int, d: int, t: int) -> bool:
    """Check ``(n-d-t+1) h(n+1, j) - n h(n, j) == G(n, j+1) - G(n, j)`` exactly.

    Raises CertificatePole when either certificate value is undefined.
    """
    lhs = (n - d - t + 1) * h_term(n + 1, j, m, d, t) - n * h_term(n, j, m, d, t)
    rhs = certificate(n, j + 1, m, d, t) - certificate(n, j, m, d, t)
    return lhs == rhs


def f_recurrence_holds(n: int, m: int, d: int, t: int) -> bool:
    return (n - d - t + 1) * f_term(n + 1, m, d, t) == n * f_term(n, m, d, t)


def _pair_sum(counts: tuple[int, ...], dsum: int, tsum: int, m1: int, m2: int) -> Fraction:
    """Sum over (d, tau) compositions of prod f(.., m1, ..) - prod f(.., m2, ..)."""
    k = len(counts)
    # suffix capacities prune branches that can no longer reach the budgets
    cap = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        cap[i] = cap[i + 1] + counts[i]
    total = Fraction(0)

    def walk(i: int, drem: int, trem: int, p1: Fraction, p2: Fraction) -> None:
        nonlocal total
        if i == k:
            if drem == 0 and trem == 0:
                total += p1 - p2
            return
        ni = counts[i]
        for di in range(min(ni, drem) + 1):
            if drem - di > cap[i + 1]:
                continue
            for ti in range(min(ni, trem) + 1):
                if trem - ti > cap[i + 1]:
                    continue
                q1 = p1 * f_term(ni, m1, di, ti) if p1 else p1
                q2 = p2 * f_term(ni, m2, di, ti) if p2 else p2
                if q1 or q2:
                    walk(i + 1, drem - di, trem - ti, q1, q2)

    walk(0, dsum, tsum, Fraction(1), Fraction(1))
    return total


def count_rises_falls(spec, r: int, s: int) -> int:
    """Number of arrangements of ``spec`` with exactly ``r`` rises and ``s`` falls."""
    spec = as_spec(spec)
    if r < 0 or s < 0:
        raise ValueError("r and s must be non-negative")
    if r + s > spec.n - 1:
        raise ValueError(f"r + s = {r + s} exceeds n - 1 = {spec.n - 1}")
    total = Fraction(0)
    for t in range(0, min(r, spec.n) + 1):
        d = r + s + 1 - t
        if d > spec.n:
            continue
        total += _pair_sum(spec.counts, d, t, r - t + 1, r - t)
    if total.denominator != 1:
        raise FormulaIntegrityError(f"non-integral count {total} for spec {spec}, r={r}, s={s}")
    return total.numerator


def newcomb(spec, r: int) -> int:
    """Arrangements of ``spec`` with exactly ``r`` rises (Simon Newcomb's problem)."""
    spec = as_spec(spec)
    if r < 0:
        raise ValueError("r must be non-negative")
    total = 0
    for j in range(r + 1):
        term = binom_gen(spec.n + 1, j)
        for ni in spec.counts:
            term *= binom_gen(ni + r - j, ni)
        total += -term if j % 2 else term
    return total


def eulerian(k: int, r: int) -> int:
    """Permutations of ``1..k`` with ``r`` rises."""
    if k < 1:
        raise ValueError("k must be positive")
    return newcomb(Specification((1,) * k), r)


def eulerian_row(k: int) -> list[int]:
    return [eulerian(k, r) for r in range(k)]


def joint_table(spec) -> dict[tuple[int, int], int]:
    """All nonzero ``A(n; r, s)`` keyed by ``(r, s)``."""
    spec = as_spec(spec)
    out = {}
    for r in range(spec.n):
        for s in range(spec.n - r):
            c = count_rises_falls(spec, r, s)
            if c:
                out[r, s] = c
    return out
