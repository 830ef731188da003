"""Cross-validation sweep over every small specification."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from runstat import closedform, genfun
from runstat.algebra import fold
from runstat.model import Mode, Specification, specifications
from runstat.oracle import enumerate_stats

CHECKS = ("paths", "explicit", "oracle", "closed", "mass", "modes", "structure", "newcomb", "symmetry")


@dataclass
class SpecResult:
    spec: Specification
    outcomes: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.outcomes.values())

    def first_failure(self) -> tuple[str, str] | None:
        for name in CHECKS:
            if not self.outcomes.get(name, True):
                return name, self.details.get(name, "")
        return None


@dataclass
class Report:
    results: list[SpecResult]
    eulerian_ok: bool = True
    eulerian_detail: str = ""

    @property
    def ok(self) -> bool:
        return self.eulerian_ok and all(r.ok for r in self.results)

    def first_failure(self) -> tuple[str, str, str] | None:
        for res in self.results:
            fail = res.first_failure()
            if fail:
                return str(res.spec), fail[0], fail[1]
        if not self.eulerian_ok:
            return "-", "eulerian", self.eulerian_detail
        return None

    def render(self) -> str:
        width = max([len(str(r.spec)) for r in self.results] + [4])
        head = "spec".ljust(width) + " " + " ".join(c.rjust(9) for c in CHECKS)
        lines = [head]
        for res in self.results:
            cells = " ".join(("ok" if res.outcomes.get(c) else "FAIL").rjust(9) for c in CHECKS)
            lines.append(str(res.spec).ljust(width) + " " + cells)
        lines.append(f"eulerian rows: {'ok' if self.eulerian_ok else 'FAIL ' + self.eulerian_detail}")
        passed = sum(r.ok for r in self.results)
        lines.append(f"{passed}/{len(self.results)} specifications passed")
        return "\n".join(lines)


# -- individual checks -------------------------------------------------------------
# each returns an empty string on success, otherwise a short description


def _check_paths(spec, ctx_cache):
    for mode in Mode:
        rec = genfun.gf_recursive(spec, mode)
        if rec != genfun.gf_matrix(spec, mode):
            return f"recursive != matrix in mode {mode.value}"
        if rec != genfun.gf_explicit(spec, mode):
            return f"recursive != explicit in mode {mode.value}"
    return ""


def _check_explicit(spec, ctx_cache):
    for mode in Mode:
        for build in (genfun.gf_recursive, genfun.gf_matrix):
            if not genfun.gf_explicit_check(spec, mode, build(spec, mode)):
                return f"identity fails for {build.__name__} in mode {mode.value}"
    return ""


def _check_oracle(spec, ctx_cache):
    table = ctx_cache["oracle"]
    for mode in Mode:
        if genfun.coefficient_from_table(table, mode) != genfun.coefficient(spec, mode):
            return f"oracle marginal differs in mode {mode.value}"
    return ""


def _check_closed(spec, ctx_cache):
    coeff = genfun.coefficient(spec, Mode.RS)
    want = {(e[0], e[1]): c for e, c in coeff.terms().items()}
    for r in range(spec.n):
        for s in range(spec.n - r):
            got = closedform.count_rises_falls(spec, r, s)
            if got != want.pop((r, s), 0):
                return f"closed form differs at r={r}, s={s}"
    if want:
        return f"coefficient has terms outside r+s<=n-1: {sorted(want)}"
    return ""


def _check_mass(spec, ctx_cache):
    target = spec.multinomial
    if ctx_cache["oracle"].total != target:
        return "oracle total != multinomial"
    for mode in Mode:
        coeff = genfun.coefficient(spec, mode)
        flat = fold(coeff, {name: None for name in coeff.ctx.names[:4 + spec.k]})
        if flat != target:
            return f"total mass {flat} != {target} in mode {mode.value}"
    return ""


def _check_modes(spec, ctx_cache):
    rs = genfun.coefficient(spec, Mode.RS)
    rsb = genfun.coefficient(spec, Mode.RS_TOTALRUNS)
    rslb = genfun.coefficient(spec, Mode.RSL_TOTALRUNS)
    rslB = genfun.coefficient(spec, Mode.RSL_PERRUNS)
    if fold(rsb, {"t": None}) != rs:
        return "t=1 in rsb != rs"
    per_to_total = {f"t{i}": "t" for i in range(1, spec.k + 1)}
    per_to_total["v"] = None
    if fold(rslB, per_to_total) != rsb:
        return "t_i=t, v=1 in rslB != rsb"
    if fold(rslb, {"v": None}) != rsb:
        return "v=1 in rslb != rsb"
    return ""


def _check_structure(spec, ctx_cache):
    n = spec.n
    for exps in genfun.coefficient(spec, Mode.RS_TOTALRUNS).terms():
        if exps[3] != exps[0] + exps[1] + 1:
            return f"rsb term {exps} breaks r+s+1=b"
    for exps in genfun.coefficient(spec, Mode.RSL_TOTALRUNS).terms():
        if exps[3] + exps[2] != n or exps[0] + exps[1] + exps[2] != n - 1:
            return f"rslb term {exps} breaks b+l=n or r+s+l=n-1"
    tables = [("oracle", ctx_cache["oracle"])]
    tables += [(m.value, genfun.distribution(spec, m)) for m in Mode]
    for label, table in tables:
        for profile in table.entries:
            bad = profile.violations(spec)
            if bad:
                return f"{label} profile {profile} violates {', '.join(bad)}"
    return ""


def _check_newcomb(spec, ctx_cache):
    joint = closedform.joint_table(spec)
    by_rise = ctx_cache["oracle"].rise_fall()
    for r in range(spec.n):
        marginal = sum(c for (rr, _), c in joint.items() if rr == r)
        oracle_marginal = sum(c for (rr, _), c in by_rise.items() if rr == r)
        nc = closedform.newcomb(spec, r)
        if not marginal == oracle_marginal == nc:
            return f"r={r}: joint {marginal}, oracle {oracle_marginal}, newcomb {nc}"
    return ""


def _check_symmetry(spec, ctx_cache):
    for r in range(spec.n):
        for s in range(r + 1, spec.n - r):
            if closedform.count_rises_falls(spec, r, s) != closedform.count_rises_falls(spec, s, r):
                return f"A(r={r}, s={s}) != A(r={s}, s={r})"
    return ""


_CHECK_FNS: dict[str, Callable] = {
    "paths": _check_paths,
    "explicit": _check_explicit,
    "oracle": _check_oracle,
    "closed": _check_closed,
    "mass": _check_mass,
    "modes": _check_modes,
    "structure": _check_structure,
    "newcomb": _check_newcomb,
    "symmetry": _check_symmetry,
}


def verify_spec(spec: Specification) -> SpecResult:
    res = SpecResult(spec)
    cache = {"oracle": enumerate_stats(spec)}
    for name in CHECKS:
        try:
            detail = _CHECK_FNS[name](spec, cache)
        except ArithmeticError as exc:
            detail = f"{type(exc).__name__}: {exc}"
        res.outcomes[name] = not detail
        if detail:
            res.details[name] = detail
    return res


def check_eulerian(max_k: int) -> tuple[bool, str]:
    import math

    for k in range(1, max_k + 1):
        row = closedform.eulerian_row(k)
        if sum(row) != math.factorial(k):
            return False, f"row {k} sums to {sum(row)}"
        if row != row[::-1]:
            return False, f"row {k} is not palindromic"
    return True, ""


def run_sweep(max_n: int, max_k: int, seed: int = 0, jobs: int = 1) -> Report:
    """Run every check on every specification with ``n <= max_n`` and ``k <= max_k``.

    ``seed`` only shuffles the dispatch order; the report is always in sweep order.
    """
    specs = list(specifications(max_n, max_k))
    order = list(range(len(specs)))
    random.Random(seed).shuffle(order)
    shuffled = [specs[i] for i in order]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            done = list(pool.map(verify_spec, shuffled))
    else:
        done = [verify_spec(s) for s in shuffled]
    results: list[SpecResult] = [None] * len(specs)  # type: ignore[list-item]
    for i, res in zip(order, done):
        results[i] = res
    ok, detail = check_eulerian(max_n)
    return Report(results, ok, detail)
