"""Exact sparse multivariate polynomials over the integers, truncated in x.

Variables are laid out in a fixed order::

    w, u, v, t, t1..tk, x1..xk

``w``, ``u``, ``v`` track rises, falls and levels, ``t`` the total number of
runs, ``t_i`` the runs of symbol ``i`` and ``x_i`` the number of copies of
symbol ``i``.  The ring is truncated in every ``x_i`` at a cap: any product
term whose ``x_i`` degree exceeds ``caps[i]`` is dropped on the spot.

Internally a monomial is a single Python int holding one 16-bit field per
variable (15 payload bits plus a guard bit), so monomial multiplication is an
integer addition and the truncation test is one add and one mask.  The public
surface speaks plain exponent tuples.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

FIELD_BITS = 16
_PAYLOAD = (1 << (FIELD_BITS - 1)) - 1  # largest storable exponent
_FIELD_MASK = (1 << FIELD_BITS) - 1

W, U, V, T = 0, 1, 2, 3


class AlgebraError(ArithmeticError):
    pass


class ContextError(AlgebraError):
    """Operands live in different variable contexts."""


class NotAUnitError(AlgebraError):
    pass


class DivergenceError(AlgebraError):
    """The series for an inverse does not terminate in the truncated ring."""


class DivisibilityError(AlgebraError):
    pass


@dataclass(frozen=True)
class VarContext:
    """Variable layout and x-truncation caps for ``k`` symbols."""

    k: int
    caps: tuple[int, ...]
    names: tuple[str, ...] = field(init=False, compare=False, repr=False)
    _xbias: int = field(init=False, compare=False, repr=False)
    _guard: int = field(init=False, compare=False, repr=False)
    _xguard: int = field(init=False, compare=False, repr=False)
    _xmask: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        caps = tuple(int(c) for c in self.caps)
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if len(caps) != self.k:
            raise ValueError(f"expected {self.k} caps, got {len(caps)}")
        if any(c < 1 or c > _PAYLOAD for c in caps):
            raise ValueError(f"caps must lie in [1, {_PAYLOAD}]: {caps}")
        object.__setattr__(self, "caps", caps)
        names = ("w", "u", "v", "t") + tuple(f"t{i}" for i in range(1, self.k + 1))
        names += tuple(f"x{i}" for i in range(1, self.k + 1))
        object.__setattr__(self, "names", names)

        guard_bit = 1 << (FIELD_BITS - 1)
        xbias = xguard = xmask = guard = 0
        for pos in range(self.nvars):
            guard |= guard_bit << (pos * FIELD_BITS)
        for i, cap in enumerate(caps):
            pos = self.x_index(i + 1) * FIELD_BITS
            # e + (PAYLOAD - cap) reaches the guard bit exactly when e > cap
            xbias |= (_PAYLOAD - cap) << pos
            xguard |= guard_bit << pos
            xmask |= _FIELD_MASK << pos
        object.__setattr__(self, "_xbias", xbias)
        object.__setattr__(self, "_guard", guard)
        object.__setattr__(self, "_xguard", xguard)
        object.__setattr__(self, "_xmask", xmask)

    @property
    def nvars(self) -> int:
        return 4 + 2 * self.k

    def t_index(self, i: int) -> int:
        if not 1 <= i <= self.k:
            raise IndexError(f"symbol index {i} out of range 1..{self.k}")
        return 3 + i

    def x_index(self, i: int) -> int:
        if not 1 <= i <= self.k:
            raise IndexError(f"symbol index {i} out of range 1..{self.k}")
        return 3 + self.k + i

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    # -- packing -----------------------------------------------------------

    def pack(self, exponents: Iterable[int]) -> int:
        exps = tuple(exponents)
        if len(exps) != self.nvars:
            raise ValueError(f"monomial needs {self.nvars} exponents, got {len(exps)}")
        m = 0
        for pos, e in enumerate(exps):
            if e < 0 or e > _PAYLOAD:
                raise ValueError(f"exponent {e} out of range for {self.names[pos]}")
            m |= e << (pos * FIELD_BITS)
        return m

    def unpack(self, m: int) -> tuple[int, ...]:
        return tuple((m >> (pos * FIELD_BITS)) & _FIELD_MASK for pos in range(self.nvars))

    def in_caps(self, m: int) -> bool:
        return not (m + self._xbias) & self._xguard

    # -- constructors --------------------------------------------------------

    def zero(self) -> Polynomial:
        return Polynomial(self, {})

    def const(self, c: int) -> Polynomial:
        return Polynomial(self, {0: c} if c else {})

    def one(self) -> Polynomial:
        return self.const(1)

    def var(self, name: str, power: int = 1) -> Polynomial:
        exps = [0] * self.nvars
        exps[self.index(name)] = power
        return Polynomial.from_terms(self, {tuple(exps): 1})

    def monomial(self, coeff: int = 1, **powers: int) -> Polynomial:
        exps = [0] * self.nvars
        for name, e in powers.items():
            exps[self.index(name)] = e
        return Polynomial.from_terms(self, {tuple(exps): coeff})


class Polynomial:
    """Immutable sparse polynomial; never stores a zero coefficient."""

    __slots__ = ("ctx", "_terms", "_hash", "_groups")

    def __init__(self, ctx: VarContext, terms: dict[int, int]):
        # trusted constructor: packed, in-caps, zero-free
        self.ctx = ctx
        self._terms = terms
        self._hash = None
        self._groups = None

    def _x_groups(self) -> dict[int, list[tuple[int, int]]]:
        """Terms bucketed by x-part: ``{x-part: [(other part, coeff), ...]}``."""
        if self._groups is None:
            xmask = self.ctx._xmask
            groups: dict[int, list[tuple[int, int]]] = {}
            for m, c in self._terms.items():
                x = m & xmask
                groups.setdefault(x, []).append((m - x, c))
            self._groups = groups
        return self._groups

    @classmethod
    def from_terms(cls, ctx: VarContext, terms: Mapping[tuple[int, ...], int]) -> Polynomial:
        """Build from ``{exponent tuple: coefficient}``; out-of-cap terms are dropped."""
        out: dict[int, int] = {}
        for exps, c in terms.items():
            m = ctx.pack(exps)
            if c and ctx.in_caps(m):
                out[m] = out.get(m, 0) + int(c)
        return cls(ctx, {m: c for m, c in out.items() if c})

    def terms(self) -> dict[tuple[int, ...], int]:
        unpack = self.ctx.unpack
        return {unpack(m): c for m, c in self._terms.items()}

    def sorted_terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in graded lexicographic order (total degree, then exponent tuple)."""
        return sorted(self.terms().items(), key=lambda tc: (sum(tc[0]), tc[0]))

    def coefficient(self, exponents: Iterable[int]) -> int:
        return self._terms.get(self.ctx.pack(exponents), 0)

    def constant_term(self) -> int:
        return self._terms.get(0, 0)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ctx == other.ctx and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self._terms.items())))
        return self._hash

    def __add__(self, other):
        return poly_add(self, _coerce(self.ctx, other))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ctx, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return poly_add(self, -_coerce(self.ctx, other))

    def __rsub__(self, other):
        return poly_add(_coerce(self.ctx, other), -self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return self.ctx.zero()
            return Polynomial(self.ctx, {m: c * other for m, c in self._terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        result = self.ctx.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __str__(self):
        return to_text(self)

    def __repr__(self):
        return f"Polynomial({to_text(self)!r}, caps={self.ctx.caps})"


def _coerce(ctx: VarContext, value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, int):
        return ctx.const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


def _same_ctx(a: Polynomial, b: Polynomial) -> VarContext:
    if a.ctx != b.ctx:
        raise ContextError(f"context mismatch: {a.ctx} vs {b.ctx}")
    return a.ctx


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    ctx = _same_ctx(a, b)
    if not b._terms:
        return a
    if not a._terms:
        return b
    out = dict(a._terms)
    get = out.get
    for m, c in b._terms.items():
        s = get(m, 0) + c
        if s:
            out[m] = s
        else:
            del out[m]
    return Polynomial(ctx, out)


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    """Product in the x-truncated ring."""
    ctx = _same_ctx(a, b)
    if not a._terms or not b._terms:
        return ctx.zero()
    bias, guard, xguard = ctx._xbias, ctx._guard, ctx._xguard
    b_groups = list(b._x_groups().items())
    out: dict[int, int] = {}
    get = out.get
    # whole blocks sharing an x-part are kept or dropped together
    for xa, a_terms in a._x_groups().items():
        xab = xa + bias
        for xb, b_terms in b_groups:
            if (xab + xb) & xguard:
                continue
            base = xa + xb
            for ma, ca in a_terms:
                mab = base + ma
                for mb, cb in b_terms:
                    m = mab + mb
                    out[m] = get(m, 0) + ca * cb
    # inputs keep every field below the guard bit, so an overflowing sum
    # lands on its own guard bit without carrying into the next field
    if any(m & guard for m in out):
        raise OverflowError("exponent exceeds packed field width")
    return Polynomial(ctx, {m: c for m, c in out.items() if c})


def x_degree(ctx: VarContext, m: int) -> int:
    return sum(ctx.unpack(m & ctx._xmask))


def poly_inv_unit(d: Polynomial) -> Polynomial:
    """Inverse of ``d`` in the truncated ring, as the finite sum of ``(1 - d)**j``.

    ``d`` must be ``1 + e`` with every term of ``e`` carrying positive
    x-degree; then ``e**j`` vanishes once ``j`` exceeds the sum of the caps.
    """
    ctx = d.ctx
    if d.constant_term() != 1:
        raise NotAUnitError(f"constant term is {d.constant_term()}, not 1")
    xmask = ctx._xmask
    for m in d._terms:
        if m and not m & xmask:
            raise DivergenceError(f"term {ctx.unpack(m)} has zero x-degree")
    e = ctx.one() - d
    result = ctx.one()
    power = ctx.one()
    for _ in range(sum(ctx.caps)):
        power = power * e
        if not power:
            break
        result = result + power
    return result


def coeff_extract(p: Polynomial, pattern: Iterable[int]) -> Polynomial:
    """Coefficient of ``x1**n1 ... xk**nk``, as a polynomial in the other variables."""
    ctx = p.ctx
    pattern = tuple(pattern)
    if len(pattern) != ctx.k:
        raise ValueError(f"pattern needs {ctx.k} exponents, got {len(pattern)}")
    if any(e < 0 for e in pattern):
        raise ValueError("negative exponent in pattern")
    if any(e > c for e, c in zip(pattern, ctx.caps)):
        return ctx.zero()
    exps = [0] * ctx.nvars
    for i, e in enumerate(pattern, start=1):
        exps[ctx.x_index(i)] = e
    target = ctx.pack(exps)
    xmask = ctx._xmask
    return Polynomial(ctx, {m - target: c for m, c in p._terms.items() if m & xmask == target})


def poly_exact_div_linear(p: Polynomial, which: str = "u-w") -> Polynomial:
    """Exact quotient ``p / (u - w)`` by synthetic division in ``u``.

    Raises DivisibilityError when the remainder is nonzero.
    """
    if which.replace(" ", "") not in ("u-w", "u−w"):
        raise ValueError(f"unsupported divisor {which!r}")
    ctx = p.ctx
    ushift = U * FIELD_BITS
    wstep = 1 << (W * FIELD_BITS)
    by_deg: dict[int, dict[int, int]] = {}
    for m, c in p._terms.items():
        e = (m >> ushift) & _FIELD_MASK
        by_deg.setdefault(e, {})[m - (e << ushift)] = c
    if not by_deg:
        return ctx.zero()

    # p = (u - w) q  =>  q_{e-1} = c_e + w q_e, remainder c_0 + w q_0
    quotient: dict[int, int] = {}
    carry: dict[int, int] = {}
    for e in range(max(by_deg), 0, -1):
        nxt = dict(by_deg.get(e, {}))
        for m, c in carry.items():
            if (m & _FIELD_MASK) >= _PAYLOAD:
                raise OverflowError("w exponent exceeds packed field width")
            key = m + wstep
            s = nxt.get(key, 0) + c
            if s:
                nxt[key] = s
            else:
                nxt.pop(key, None)
        carry = nxt
        for m, c in carry.items():
            quotient[m + ((e - 1) << ushift)] = c
    remainder = dict(by_deg.get(0, {}))
    for m, c in carry.items():
        key = m + wstep
        remainder[key] = remainder.get(key, 0) + c
    if any(remainder.values()):
        raise DivisibilityError("polynomial is not divisible by (u - w)")
    return Polynomial(ctx, quotient)


def fold(p: Polynomial, mapping: Mapping[str, str | None]) -> Polynomial:
    """Substitute variables by exponent folding.

    ``mapping`` sends a variable name to another name (its exponent is moved
    there) or to ``None`` (the variable is set to 1).
    """
    ctx = p.ctx
    moves = [(ctx.index(src), None if dst is None else ctx.index(dst)) for src, dst in mapping.items()]
    out: dict[tuple[int, ...], int] = {}
    for exps, c in p.terms().items():
        e = list(exps)
        for src, dst in moves:
            if dst is not None:
                e[dst] += exps[src]
            e[src] -= exps[src]
        key = tuple(e)
        out[key] = out.get(key, 0) + c
    return Polynomial.from_terms(ctx, out)


def to_text(p: Polynomial) -> str:
    """Canonical text form, e.g. ``u + w + 3*w*u + 2*w*u^2``."""
    names = p.ctx.names
    parts = []
    for exps, c in p.sorted_terms():
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
        if not factors:
            parts.append(str(c))
        elif c == 1:
            parts.append("*".join(factors))
        elif c == -1:
            parts.append("-" + "*".join(factors))
        else:
            parts.append(f"{c}*" + "*".join(factors))
    return " + ".join(parts) if parts else "0"
