"""Master generating function of the joint rise/fall/level/run distribution.

``G_k`` is assembled from one generating function ``g_i`` per symbol.  Three
routes are provided and are expected to agree exactly:

* ``gf_recursive``: add one symbol at a time,
  ``G_j = G_{j-1} + g_j (1 + w G_{j-1})(1 + u G_{j-1}) / (1 - w u g_j G_{j-1})``.
* ``gf_matrix``: ``e M^{-1} y`` with ``M = I - N``, summed as a terminating
  Neumann series.
* ``gf_explicit``: ``(P - Q) / (uQ - wP)`` with ``P = prod(1 + g_i u)`` and
  ``Q = prod(1 + g_i w)``.  ``gf_explicit_check`` verifies a candidate
  ``G`` against this identity by multiplication only.
"""

from __future__ import annotations

import enum
from functools import lru_cache

from runstat.algebra import (
    Polynomial,
    VarContext,
    coeff_extract,
    poly_exact_div_linear,
    poly_inv_unit,
)
from runstat.model import (
    DistributionTable,
    Mode,
    Specification,
    StatProfile,
    as_mode,
    as_spec,
)


class GfPath(enum.Enum):
    RECURSIVE = "recursive"
    MATRIX = "matrix"
    EXPLICIT_CHECK = "explicit"


def build_g(i: int, spec: Specification, mode: Mode) -> Polynomial:
    """Per-symbol generating function for symbol ``i`` (1-based), truncated at ``n_i``.

    ======================  ==================================
    mode                    g_i
    ======================  ==================================
    RS                      sum_j x_i^j
    RS_TOTALRUNS            t sum_j x_i^j
    RSL_TOTALRUNS           t sum_j x_i^j v^(j-1)
    RSL_PERRUNS             t_i sum_j x_i^j v^(j-1)
    ======================  ==================================
    """
    spec, mode = as_spec(spec), as_mode(mode)
    if not 1 <= i <= spec.k:
        raise IndexError(f"symbol index {i} out of range 1..{spec.k}")
    ctx = spec.context()
    xi = ctx.x_index(i)
    terms = {}
    for j in range(1, spec.counts[i - 1] + 1):
        exps = [0] * ctx.nvars
        exps[xi] = j
        if mode is Mode.RS_TOTALRUNS:
            exps[3] = 1
        elif mode is Mode.RSL_TOTALRUNS:
            exps[3] = 1
            exps[2] = j - 1
        elif mode is Mode.RSL_PERRUNS:
            exps[ctx.t_index(i)] = 1
            exps[2] = j - 1
        terms[tuple(exps)] = 1
    return Polynomial.from_terms(ctx, terms)


def _gs(spec: Specification, mode: Mode) -> list[Polynomial]:
    return [build_g(i, spec, mode) for i in range(1, spec.k + 1)]


@lru_cache(maxsize=512)
def _recursive(spec: Specification, mode: Mode) -> Polynomial:
    ctx = spec.context()
    w, u = ctx.var("w"), ctx.var("u")
    wu = w * u
    gs = _gs(spec, mode)
    G = gs[0]
    for g in gs[1:]:
        gG = g * G
        numer = g * (1 + w * G) * (1 + u * G)
        G = G + numer * poly_inv_unit(1 - wu * gG)
    return G


def gf_recursive(spec, mode) -> Polynomial:
    return _recursive(as_spec(spec), as_mode(mode))


@lru_cache(maxsize=512)
def _matrix(spec: Specification, mode: Mode) -> Polynomial:
    ctx = spec.context()
    w, u = ctx.var("w"), ctx.var("u")
    gs = _gs(spec, mode)
    k = spec.k
    gu = [g * u for g in gs]
    gw = [g * w for g in gs]

    # (N v)_i = g_i (u sum_{j<i} v_j + w sum_{j>i} v_j); every entry of N has
    # positive x-degree, so N^j y vanishes for j > n
    vec = list(gs)
    acc = list(gs)
    for _ in range(spec.n):
        total = ctx.zero()
        for p in vec:
            total = total + p
        below = ctx.zero()
        nxt = []
        for i in range(k):
            above = total - below - vec[i]
            nxt.append(gu[i] * below + gw[i] * above)
            below = below + vec[i]
        vec = nxt
        if not any(vec):
            break
        acc = [a + b for a, b in zip(acc, vec)]
    G = ctx.zero()
    for p in acc:
        G = G + p
    return G


def gf_matrix(spec, mode) -> Polynomial:
    return _matrix(as_spec(spec), as_mode(mode))


def _products(spec: Specification, mode: Mode) -> tuple[Polynomial, Polynomial]:
    ctx = spec.context()
    w, u = ctx.var("w"), ctx.var("u")
    P = Q = ctx.one()
    for g in _gs(spec, mode):
        P = P * (1 + g * u)
        Q = Q * (1 + g * w)
    return P, Q


def gf_explicit_check(spec, mode, G: Polynomial) -> bool:
    """True iff ``(uQ - wP) G == P - Q`` holds exactly in the truncated ring."""
    spec, mode = as_spec(spec), as_mode(mode)
    ctx = spec.context()
    if G.ctx != ctx:
        return False
    w, u = ctx.var("w"), ctx.var("u")
    P, Q = _products(spec, mode)
    return (u * Q - w * P) * G == P - Q


@lru_cache(maxsize=512)
def _explicit(spec: Specification, mode: Mode) -> Polynomial:
    ctx = spec.context()
    w, u = ctx.var("w"), ctx.var("u")
    P, Q = _products(spec, mode)
    # both numerator and denominator vanish at u = w; after cancelling (u - w)
    # the denominator has constant term 1
    numer = poly_exact_div_linear(P - Q)
    denom = poly_exact_div_linear(u * Q - w * P)
    return numer * poly_inv_unit(denom)


def gf_explicit(spec, mode) -> Polynomial:
    """Construct ``G_k`` from the closed product form via exact division by ``u - w``."""
    return _explicit(as_spec(spec), as_mode(mode))


def generating_function(spec, mode, path: GfPath | str = GfPath.RECURSIVE) -> Polynomial:
    path = GfPath(path)
    if path is GfPath.RECURSIVE:
        return gf_recursive(spec, mode)
    if path is GfPath.MATRIX:
        return gf_matrix(spec, mode)
    return gf_explicit(spec, mode)


def coefficient(spec, mode, path: GfPath | str = GfPath.RECURSIVE) -> Polynomial:
    """``[x^n] G_k`` as a polynomial in the statistic variables."""
    spec = as_spec(spec)
    return coeff_extract(generating_function(spec, mode, path), spec.counts)


def clear_cache() -> None:
    for fn in (_recursive, _matrix, _explicit):
        fn.cache_clear()


# -- coefficient <-> table ------------------------------------------------------


def table_from_coefficient(spec, mode, coeff: Polynomial) -> DistributionTable:
    """Read an extracted coefficient as a table of profiles.

    Statistics the mode does not track are recovered from ``b = r + s + 1``
    and ``b + l = n``; ``b_per`` stays ``None`` unless the mode tracks it.
    """
    spec, mode = as_spec(spec), as_mode(mode)
    ctx = coeff.ctx
    k = ctx.k
    table = DistributionTable(spec)
    for exps, c in coeff.terms().items():
        r, s, v, t = exps[:4]
        tis = exps[4:4 + k]
        if any(exps[4 + k:]):
            raise ValueError("coefficient still carries x variables")
        if mode is Mode.RS:
            b = r + s + 1
            profile = StatProfile(r, s, spec.n - b, b)
        elif mode is Mode.RS_TOTALRUNS:
            profile = StatProfile(r, s, spec.n - t, t)
        elif mode is Mode.RSL_TOTALRUNS:
            profile = StatProfile(r, s, v, t)
        else:
            profile = StatProfile(r, s, v, sum(tis), tuple(tis))
        table.add(profile, c)
    return table


def coefficient_from_table(table: DistributionTable, mode, ctx: VarContext | None = None) -> Polynomial:
    """Marginalize a full table onto the variables ``mode`` tracks."""
    mode = as_mode(mode)
    ctx = ctx or table.spec.context()
    k = ctx.k
    terms: dict[tuple[int, ...], int] = {}
    for p, c in table.entries.items():
        exps = [0] * ctx.nvars
        exps[0], exps[1] = p.r, p.s
        if mode is Mode.RS_TOTALRUNS:
            exps[3] = p.b
        elif mode is Mode.RSL_TOTALRUNS:
            exps[2], exps[3] = p.l, p.b
        elif mode is Mode.RSL_PERRUNS:
            if p.b_per is None:
                raise ValueError("table has no per-symbol run counts")
            exps[2] = p.l
            exps[4:4 + k] = p.b_per
        key = tuple(exps)
        terms[key] = terms.get(key, 0) + c
    return Polynomial.from_terms(ctx, terms)


def distribution(spec, mode, path: GfPath | str = GfPath.RECURSIVE) -> DistributionTable:
    spec = as_spec(spec)
    return table_from_coefficient(spec, mode, coefficient(spec, mode, path))
