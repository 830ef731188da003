"""Shared domain types: specifications, tracking modes, profiles and tables."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

from runstat.algebra import VarContext


@dataclass(frozen=True)
class Specification:
    """Multiplicities ``[n_1..n_k]`` of the symbols ``1..k``."""

    counts: tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if not counts:
            raise ValueError("specification needs at least one symbol")
        if any(c < 1 for c in counts):
            raise ValueError(f"every multiplicity must be positive: {list(counts)}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def parse(cls, text: str) -> Specification:
        """Parse ``"2,3"`` into ``Specification((2, 3))``."""
        try:
            counts = [int(part) for part in text.split(",")]
        except ValueError:
            raise ValueError(f"cannot parse specification {text!r}") from None
        return cls(tuple(counts))

    @property
    def k(self) -> int:
        return len(self.counts)

    @property
    def n(self) -> int:
        return sum(self.counts)

    @property
    def multinomial(self) -> int:
        total = math.factorial(self.n)
        for c in self.counts:
            total //= math.factorial(c)
        return total

    def context(self) -> VarContext:
        return VarContext(self.k, self.counts)

    def __str__(self):
        return ",".join(map(str, self.counts))


class Mode(enum.Enum):
    """Which statistics the per-symbol generating functions track."""

    RS = "rs"
    RS_TOTALRUNS = "rsb"
    RSL_TOTALRUNS = "rslb"
    RSL_PERRUNS = "rslB"


@dataclass(frozen=True)
class StatProfile:
    """Rises, falls, levels, total runs and (when known) runs per symbol."""

    r: int
    s: int
    l: int
    b: int
    b_per: tuple[int, ...] | None = None

    def sort_key(self):
        return (self.r, self.s, self.l, self.b, self.b_per or ())

    def violations(self, spec: Specification) -> list[str]:
        """Broken linear relations for this profile (empty when consistent)."""
        n = spec.n
        bad = []
        if self.r + self.s + self.l != n - 1:
            bad.append("r+s+l != n-1")
        if self.b + self.l != n:
            bad.append("b+l != n")
        if self.r + self.s + 1 != self.b:
            bad.append("r+s+1 != b")
        if self.b_per is not None:
            if len(self.b_per) != spec.k:
                bad.append("len(b_per) != k")
            elif sum(self.b_per) != self.b:
                bad.append("sum(b_per) != b")
            elif not all(1 <= bi <= ni for bi, ni in zip(self.b_per, spec.counts)):
                bad.append("b_i outside [1, n_i]")
        return bad


@dataclass
class DistributionTable:
    """Counts of sequences per profile for one specification."""

    spec: Specification
    entries: dict[StatProfile, int] = field(default_factory=dict)

    def add(self, profile: StatProfile, count: int = 1) -> None:
        self.entries[profile] = self.entries.get(profile, 0) + count

    def merge(self, other: DistributionTable) -> DistributionTable:
        if other.spec != self.spec:
            raise ValueError("cannot merge tables of different specifications")
        out = DistributionTable(self.spec, dict(self.entries))
        for p, c in other.entries.items():
            out.add(p, c)
        return out

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def items(self) -> Iterator[tuple[StatProfile, int]]:
        """Entries in ascending (r, s, l, b, b_per) order."""
        return iter(sorted(self.entries.items(), key=lambda pc: pc[0].sort_key()))

    def project(self, keep_b_per: bool) -> DistributionTable:
        if keep_b_per:
            return self
        out = DistributionTable(self.spec)
        for p, c in self.entries.items():
            out.add(StatProfile(p.r, p.s, p.l, p.b), c)
        return out

    def rise_fall(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for p, c in self.entries.items():
            out[p.r, p.s] = out.get((p.r, p.s), 0) + c
        return out


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``k`` positive integers summing to ``n``, in lex order."""
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in compositions(n - first, k - 1):
            yield (first,) + rest


def specifications(max_n: int, max_k: int) -> Iterator[Specification]:
    """Every specification with ``k <= max_k`` symbols and ``n <= max_n``."""
    for n in range(1, max_n + 1):
        for k in range(1, min(max_k, n) + 1):
            for counts in compositions(n, k):
                yield Specification(counts)


def as_spec(spec: Specification | Iterable[int] | str) -> Specification:
    if isinstance(spec, Specification):
        return spec
    if isinstance(spec, str):
        return Specification.parse(spec)
    return Specification(tuple(spec))


def as_mode(mode: Mode | str) -> Mode:
    if isinstance(mode, Mode):
        return mode
    try:
        return Mode(mode)
    except ValueError:
        try:
            return Mode[mode]
        except KeyError:
            raise ValueError(f"unknown mode {mode!r}; choose from {[m.value for m in Mode]}") from None


_MODE_DOC: Mapping[Mode, str] = {
    Mode.RS: "rises and falls",
    Mode.RS_TOTALRUNS: "rises, falls and total runs",
    Mode.RSL_TOTALRUNS: "rises, falls, levels and total runs",
    Mode.RSL_PERRUNS: "rises, falls, levels and runs of each symbol",
}


def describe(mode: Mode) -> str:
    return _MODE_DOC[mode]
