"""Fuel-bounded evaluation of pp formulas.

The engine realizes the dovetailed witness search as constraint propagation:
rows with a single unknown variable of unit coefficient are solved exactly,
relation blocks with finitely enumerable fibers branch over the fixture's
``complete_block`` completions, and every candidate that survives is checked
against ``holds`` before it can produce a True verdict.  When a formula does
not resolve this way the engine falls back to the plain bounded scan over
quantifier candidates: fixture witness bounds make the scan's exhaustion a
definite False, fixture witness suggestions make deep witnesses reachable,
and fuel exhaustion surfaces as Unknown, never as a wrong label.

Verdicts are monotone in fuel: the search order is deterministic, so more
fuel replays the same prefix and only ever continues it.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .errors import ContractViolation
from .structures import (
    PPFormula,
    StructureOracle,
    TriBool,
    canonical_tuples,
    row_value,
)

DEFAULT_FUEL = 200_000


class _FuelOut(Exception):
    pass


class _Budget:
    __slots__ = ("left",)

    def __init__(self, fuel: int):
        self.left = fuel

    def spend(self, n: int = 1) -> None:
        self.left -= n
        if self.left < 0:
            raise _FuelOut


class _Search:
    """Collector for the DFS: satisfied assignments and stuck branches."""

    def __init__(self, want_all: bool, cap: int = 1_000_000):
        self.want_all = want_all
        self.cap = cap
        self.sats: list[dict[int, int]] = []
        self.stuck = False

    @property
    def done(self) -> bool:
        return bool(not self.want_all and self.sats) or len(self.sats) >= self.cap


def _apply_completion(oracle, rows, comp, assign, budget) -> bool:
    """Assign variables so each row evaluates to the completion value.

    Returns False when the completion contradicts the current assignment.
    Only called when every unknown row has one unknown of coefficient +-1.
    """
    g = oracle.group
    for row, target in zip(rows, comp):
        budget.spend()
        v, unk = row_value(oracle, row, assign)
        if not unk:
            if v != target:
                return False
            continue
        (var, c) = unk[0]
        if g is None:
            assign[var] = target
        elif c == 1:
            assign[var] = g.sub(target, v)
        else:
            assign[var] = g.sub(v, target)
    return True


def _dfs(oracle: StructureOracle, pp: PPFormula, assign: dict[int, int],
         pending: list[int], budget: _Budget, out: _Search) -> None:
    assign = dict(assign)
    pending = list(pending)
    g = oracle.group

    while True:
        progress = False
        branch: Optional[tuple[int, list, tuple]] = None  # (block idx, comps, rows)
        for bi in list(pending):
            sym, rows = pp.blocks[bi]
            if sym is None:
                if g is None:
                    raise ContractViolation("zero-target blocks need group ops")
                solved_all = True
                for row in rows:
                    budget.spend()
                    v, unk = row_value(oracle, row, assign)
                    if not unk:
                        if v != g.zero:
                            return  # conflict on this branch
                    elif len(unk) == 1 and unk[0][1] in (1, -1):
                        var, c = unk[0]
                        assign[var] = g.neg(v) if c == 1 else v
                        progress = True
                        solved_all = False
                        break
                    else:
                        solved_all = False
                if solved_all:
                    pending.remove(bi)
                    progress = True
                continue

            vals = []
            unks = []
            for row in rows:
                budget.spend()
                v, unk = row_value(oracle, row, assign)
                vals.append(v if not unk else None)
                unks.append(unk)
            if all(u == [] for u in unks):
                budget.spend()
                if oracle.holds(sym, tuple(vals)):
                    pending.remove(bi)
                    progress = True
                    continue
                return  # conflict
            if oracle.complete_block is None:
                continue
            if any(len(u) > 1 or (u and u[0][1] not in (1, -1)) for u in unks):
                continue  # not completion-solvable yet
            budget.spend()
            comps = oracle.complete_block(sym, tuple(vals))
            if comps is None:
                continue
            if len(comps) == 0:
                return  # definite conflict: no tuple of the relation extends this
            if len(comps) == 1:
                if not _apply_completion(oracle, rows, comps[0], assign, budget):
                    return
                progress = True
                continue
            if branch is None or len(comps) < len(branch[1]):
                branch = (bi, comps, rows)
        if progress:
            continue

        if not pending:
            out.sats.append(assign)
            return
        if branch is not None:
            _, comps, rows = branch
            for comp in comps:
                child = dict(assign)
                budget.spend()
                if _apply_completion(oracle, rows, comp, child, budget):
                    _dfs(oracle, pp, child, pending, budget, out)
                    if out.done:
                        return
            return
        out.stuck = True
        return


def _full_check(oracle: StructureOracle, pp: PPFormula, assign: dict[int, int],
                budget: _Budget) -> bool:
    g = oracle.group
    for sym, rows in pp.blocks:
        vals = []
        for row in rows:
            budget.spend()
            v, unk = row_value(oracle, row, assign)
            if unk:
                raise ContractViolation("full check with unassigned variable")
            vals.append(v)
        if sym is None:
            if any(v != g.zero for v in vals):
                return False
        else:
            budget.spend()
            if not oracle.holds(sym, tuple(vals)):
                return False
    return True


def eval_pp(oracle: StructureOracle, pp: PPFormula, args: tuple[int, ...],
            fuel: int = DEFAULT_FUEL) -> TriBool:
    """Three-valued satisfaction of ``pp`` at a free-variable tuple."""
    if len(args) != pp.n_free:
        raise ContractViolation(f"expected {pp.n_free} arguments, got {len(args)}")
    assign = {i: a for i, a in enumerate(args)}
    budget = _Budget(fuel)
    out = _Search(want_all=False)
    try:
        _dfs(oracle, pp, assign, list(range(len(pp.blocks))), budget, out)
    except _FuelOut:
        return TriBool.UNKNOWN
    if out.sats:
        return TriBool.TRUE
    if not out.stuck:
        return TriBool.FALSE

    # fallback: fixture-suggested witnesses, then the bounded dovetailed scan
    params = tuple(args)
    quant = list(range(pp.n_free, pp.n_free + pp.n_quant))
    try:
        if oracle.suggest_witnesses is not None:
            for cand in oracle.suggest_witnesses(pp, params):
                if len(cand) != pp.n_quant:
                    continue
                full = dict(assign)
                full.update(zip(quant, cand))
                if _full_check(oracle, pp, full, budget):
                    return TriBool.TRUE
        bound = oracle.witness_bound(pp, params) if oracle.witness_bound else None
        if bound is not None:
            for cand in itertools.product(range(bound), repeat=pp.n_quant):
                budget.spend()
                full = dict(assign)
                full.update(zip(quant, cand))
                if _full_check(oracle, pp, full, budget):
                    return TriBool.TRUE
            return TriBool.FALSE
        for cand in canonical_tuples(oracle, pp.n_quant):
            budget.spend()
            full = dict(assign)
            full.update(zip(quant, cand))
            if _full_check(oracle, pp, full, budget):
                return TriBool.TRUE
        if oracle.universe_size is not None:
            return TriBool.FALSE  # finite universe scanned completely
    except _FuelOut:
        pass
    return TriBool.UNKNOWN


def solutions(oracle: StructureOracle, pp: PPFormula,
              fuel: int = DEFAULT_FUEL) -> Iterator[tuple[int, ...]]:
    """Yield exactly the True tuples among the first ``fuel`` candidates in
    canonical (stage-wise) order.  Deterministic; Unknowns are skipped."""
    for i, tup in enumerate(canonical_tuples(oracle, pp.n_free)):
        if i >= fuel:
            return
        if eval_pp(oracle, pp, tup, fuel) is TriBool.TRUE:
            yield tup


def solve_assignments(oracle: StructureOracle, pp: PPFormula, pinned: dict[int, int],
                      fuel: int = DEFAULT_FUEL, cap: int = 10_000,
                      ) -> tuple[list[tuple[int, ...]], bool]:
    """Enumerate assignments of the unpinned free variables that satisfy pp.

    Returns (solutions, complete): each solution is the full free-variable
    tuple (pins included); ``complete`` is True only when the enumeration
    provably exhausted the solution set.  Quantified variables are projected
    out, duplicates collapse.
    """
    budget = _Budget(fuel)
    out = _Search(want_all=True, cap=cap)
    free = list(range(pp.n_free))
    try:
        _dfs(oracle, pp, dict(pinned), list(range(len(pp.blocks))), budget, out)
    except _FuelOut:
        return _scan_assignments(oracle, pp, pinned, fuel)
    if out.stuck:
        return _scan_assignments(oracle, pp, pinned, fuel)
    seen = []
    for assign in out.sats:
        if any(v not in assign for v in free):
            # a free variable is unconstrained; enumeration cannot be finite
            return _scan_assignments(oracle, pp, pinned, fuel)
        tup = tuple(assign[v] for v in free)
        if tup not in seen:
            seen.append(tup)
    # a capped collector may have stopped early; solutions are still sound
    return seen, len(out.sats) < cap


def _scan_assignments(oracle: StructureOracle, pp: PPFormula, pinned: dict[int, int],
                      fuel: int) -> tuple[list[tuple[int, ...]], bool]:
    """Fallback: scan candidate free tuples consistent with the pins.

    Complete only when a finite universe was scanned to its end with every
    verdict definite."""
    open_vars = [v for v in range(pp.n_free) if v not in pinned]
    found = []
    complete = oracle.universe_size is not None
    count = 0
    for cand in canonical_tuples(oracle, len(open_vars)):
        if count >= fuel:
            complete = False
            break
        count += 1
        tup = [0] * pp.n_free
        for v, val in pinned.items():
            tup[v] = val
        for v, val in zip(open_vars, cand):
            tup[v] = val
        verdict = eval_pp(oracle, pp, tuple(tup), fuel)
        if verdict is TriBool.TRUE:
            if tuple(tup) not in found:
                found.append(tuple(tup))
        elif verdict is TriBool.UNKNOWN:
            complete = False
    return found, complete
