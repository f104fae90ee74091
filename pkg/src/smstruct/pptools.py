"""Bounded procedures on pp-definable groups: rank, equality, axioms.

Rank is probed through coordinate projections: a pp-definable subgroup of
M^n has rank at least k exactly when some k-subset of coordinates projects
onto tuples that place a generic element at each position in turn.  Equality
reduces to comparing ranks, then a shared rank-witnessing coordinate set,
then the fibers over the zero tuple and the generic permutation tuples.

All verdicts are three-valued; fuel exhaustion surfaces as Unknown.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

from .errors import ConfigurationError, ContractViolation
from .ppeval import eval_pp, solve_assignments
from .structures import (
    PPBuilder,
    PPFormula,
    StructureOracle,
    TriBool,
    canonical_tuples,
    conj_pp,
    project_pp,
)


def _generic_and_zero(oracle: StructureOracle) -> tuple[int, int]:
    if oracle.generic_hint is None:
        raise ConfigurationError("procedure needs a declared generic element")
    if oracle.group is None:
        raise ConfigurationError("procedure needs group operations")
    return oracle.generic_hint, oracle.group.zero


def _perm_tuple(k: int, pos: int, gen: int, zero: int) -> tuple[int, ...]:
    return tuple(gen if i == pos else zero for i in range(k))


def pp_rank_at_least(oracle: StructureOracle, pp: PPFormula, k: int,
                     fuel: int) -> TriBool:
    """Does the pp-definable group have rank at least k?

    True when some k-coordinate projection contains every tuple placing the
    generic at one position and zero elsewhere; False when all projections
    certainly miss one; Unknown on fuel.
    """
    gen, zero = _generic_and_zero(oracle)
    n = pp.n_free
    if k == 0:
        return TriBool.TRUE
    if k > n:
        return TriBool.FALSE
    saw_unknown = False
    for combo in itertools.combinations(range(n), k):
        proj = project_pp(pp, combo)
        verdict = TriBool.TRUE
        for pos in range(k):
            v = eval_pp(oracle, proj, _perm_tuple(k, pos, gen, zero), fuel)
            if v is TriBool.FALSE:
                verdict = TriBool.FALSE
                break
            if v is TriBool.UNKNOWN:
                verdict = TriBool.UNKNOWN
        if verdict is TriBool.TRUE:
            return TriBool.TRUE
        if verdict is TriBool.UNKNOWN:
            saw_unknown = True
    return TriBool.UNKNOWN if saw_unknown else TriBool.FALSE


def pp_rank(oracle: StructureOracle, pp: PPFormula, fuel: int) -> Optional[int]:
    """Exact rank, or None when fuel leaves it undetermined."""
    vals = [pp_rank_at_least(oracle, pp, k, fuel) for k in range(pp.n_free + 1)]
    best = max(k for k, v in enumerate(vals) if v is TriBool.TRUE)
    if any(v is TriBool.UNKNOWN for v in vals[best + 1 :]):
        return None
    return best


def _proj_hits(oracle: StructureOracle, pp: PPFormula, combo: tuple[int, ...],
               gen: int, zero: int, fuel: int) -> TriBool:
    """Does proj_combo(pp) contain all |combo| generic permutation tuples?"""
    k = len(combo)
    proj = project_pp(pp, combo)
    verdict = TriBool.TRUE
    for pos in range(k):
        v = eval_pp(oracle, proj, _perm_tuple(k, pos, gen, zero), fuel)
        if v is TriBool.FALSE:
            return TriBool.FALSE
        if v is TriBool.UNKNOWN:
            verdict = TriBool.UNKNOWN
    return verdict


def pp_equal(oracle: StructureOracle, pp1: PPFormula, pp2: PPFormula,
             fuel: int) -> TriBool:
    """Do two pp formulas define the same subset of M^n?

    Procedure: syntactic identity shortcut; rank comparison; a common
    rank-witnessing coordinate set; fiber-set comparison over the zero tuple
    and the generic permutation tuples.  Any step starved of fuel or of a
    complete fiber enumeration yields Unknown.
    """
    if pp1.n_free != pp2.n_free:
        raise ContractViolation("pp_equal needs matching free arities")
    if pp1.blocks == pp2.blocks and pp1.n_quant == pp2.n_quant:
        return TriBool.TRUE
    gen, zero = _generic_and_zero(oracle)
    n = pp1.n_free

    r1 = pp_rank(oracle, pp1, fuel)
    r2 = pp_rank(oracle, pp2, fuel)
    if r1 is None or r2 is None:
        return TriBool.UNKNOWN
    if r1 != r2:
        return TriBool.FALSE
    k = r1

    chosen: Optional[tuple[int, ...]] = None
    saw_unknown = False
    for combo in itertools.combinations(range(n), k):
        h1 = _proj_hits(oracle, pp1, combo, gen, zero, fuel)
        h2 = _proj_hits(oracle, pp2, combo, gen, zero, fuel)
        if h1 is TriBool.TRUE and h2 is TriBool.TRUE:
            chosen = combo
            break
        pair = {h1, h2}
        if TriBool.TRUE in pair and TriBool.FALSE in pair:
            return TriBool.FALSE  # a permutation tuple separates the projections
        if TriBool.UNKNOWN in pair:
            saw_unknown = True
    if chosen is None:
        return TriBool.UNKNOWN if saw_unknown else TriBool.FALSE

    probes = [tuple(zero for _ in range(k))]
    probes += [_perm_tuple(k, pos, gen, zero) for pos in range(k)]
    for probe in probes:
        pins = {c: v for c, v in zip(chosen, probe)}
        sols1, complete1 = solve_assignments(oracle, pp1, pins, fuel)
        sols2, complete2 = solve_assignments(oracle, pp2, pins, fuel)
        if not (complete1 and complete2):
            return TriBool.UNKNOWN
        if set(sols1) != set(sols2):
            return TriBool.FALSE
    return TriBool.TRUE


# ---------------------------------------------------------------------------
# axiom enumeration


COMMUTATIVE_GROUP_AXIOMS = (
    "forall x y . x + y = y + x",
    "forall x y z . (x + y) + z = x + (y + z)",
    "forall x . x + 0 = x",
    "forall x . x + (-x) = 0",
)


def _full_line_pp() -> PPFormula:
    return PPBuilder(1).build(out_var=0)


def _zero_pp() -> PPFormula:
    b = PPBuilder(1)
    b.zero_row({0: 1})
    return b.build(out_var=0)


def _graph_power_pp(sym: str, m: int) -> PPFormula:
    """Graph of the m-fold composition of a binary symbol: (x, s^m x)."""
    b = PPBuilder(2)
    prev = 0
    for step in range(m):
        nxt = 1 if step == m - 1 else b.fresh()
        b.block(sym, ({prev: 1}, None), ({nxt: 1}, None))
        prev = nxt
    return b.build(out_var=1)


def _kernel_power_pp(sym: str, m: int) -> PPFormula:
    """Kernel of s^m - 1: the x with an s-chain of length m returning to x."""
    b = PPBuilder(1)
    prev = 0
    for step in range(m):
        nxt = 0 if step == m - 1 else b.fresh()
        b.block(sym, ({prev: 1}, None), ({nxt: 1}, None))
        prev = nxt
    return b.build(out_var=0)


def _sym_name(sym: str, m: int) -> str:
    return sym if m == 1 else f"{sym}^{m}"


MAX_POWER = 4


def _axiom_stream(oracle: StructureOracle) -> tuple[list, list]:
    """Named pp formulas plus nested dimension pairs, fixed deterministic order.

    Returns (members, dim_pairs); members are (name, pp), dim_pairs are
    (sub_name, sub_pp, super_name, super_pp) with containment by construction.
    """
    sig = oracle.signature
    gens = [s for s in oracle.word_generators if sig.decl(s).arity == 2]
    if not gens:
        gens = [d.name for d in sig.symbols if d.arity == 2 and d.kind == "group"]
    members: list[tuple[str, PPFormula]] = []
    members.append(("M", _full_line_pp()))
    members.append(("zero", _zero_pp()))
    graphs: dict[tuple[str, int], PPFormula] = {}
    for s in gens:
        for m in range(1, MAX_POWER + 1):
            g = _graph_power_pp(s, m)
            graphs[(s, m)] = g
            members.append((f"graph({_sym_name(s, m)})", g))
        for m in range(1, MAX_POWER + 1):
            members.append((f"ker({_sym_name(s, m)} - 1)", _kernel_power_pp(s, m)))
    inters: list[tuple[str, PPFormula, str]] = []
    for s in gens:
        g1 = graphs[(s, 1)]
        inters.append((f"graph({s}) ^ graph({s})", conj_pp(g1, g1), s))
        inters.append((f"graph({s}) ^ graph({_sym_name(s, 2)})",
                       conj_pp(g1, graphs[(s, 2)]), s))
    for name, pp, _ in inters:
        members.append((name, pp))

    dim_pairs: list[tuple[str, PPFormula, str, PPFormula]] = []
    m_pp = members[0][1]
    dim_pairs.append(("zero", _zero_pp(), "M", m_pp))
    for s in gens:
        for m in range(1, MAX_POWER + 1):
            dim_pairs.append((f"ker({_sym_name(s, m)} - 1)", _kernel_power_pp(s, m),
                              "M", m_pp))
        for a, bb in ((1, 2), (1, 3), (1, 4), (2, 4)):
            dim_pairs.append((f"ker({_sym_name(s, a)} - 1)", _kernel_power_pp(s, a),
                              f"ker({_sym_name(s, bb)} - 1)", _kernel_power_pp(s, bb)))
    for name, pp, s in inters:
        dim_pairs.append((name, pp, f"graph({s})", graphs[(s, 1)]))
    return members, dim_pairs


class _DimScan:
    """Incremental coset-representative search for one dimension pair.

    Scans raw candidate tuples itself so that a genuine end of the universe
    (finite fixture) is distinguishable from a fuel cutoff; only the former
    may certify an exact index.
    """

    def __init__(self, oracle: StructureOracle, sub_name: str, sub: PPFormula,
                 super_name: str, sup: PPFormula, fuel: int):
        self.oracle = oracle
        self.sub_name = sub_name
        self.sub = sub
        self.super_name = super_name
        self.sup = sup
        self.fuel = fuel
        self.source = canonical_tuples(oracle, sup.n_free)
        self.scanned = 0
        self.reps: list[tuple[int, ...]] = []
        self.all_covered = True
        self.exhausted = False

    def step(self) -> Optional[str]:
        """Advance by one candidate tuple; maybe emit a sentence."""
        if self.exhausted:
            return None
        if self.scanned >= self.fuel:
            self.exhausted = True  # cutoff, not completion: no exact index
            return None
        try:
            x = next(self.source)
        except StopIteration:
            self.exhausted = True
            if self.all_covered and self.reps:
                return f"[{self.super_name} : {self.sub_name}] = {len(self.reps)}"
            return None
        self.scanned += 1
        member = eval_pp(self.oracle, self.sup, x, self.fuel)
        if member is TriBool.FALSE:
            return None
        if member is TriBool.UNKNOWN:
            self.all_covered = False
            return None
        g = self.oracle.group
        for rep in self.reps:
            diff = tuple(g.sub(a, b) for a, b in zip(x, rep))
            v = eval_pp(self.oracle, self.sub, diff, self.fuel)
            if v is TriBool.TRUE:
                return None  # covered by an existing representative
            if v is TriBool.UNKNOWN:
                self.all_covered = False
                return None  # cannot certify disjointness; skip this element
        self.reps.append(x)
        return f"[{self.super_name} : {self.sub_name}] >= {len(self.reps)}"


def enumerate_axioms(oracle: StructureOracle, fuel: int) -> Iterator[str]:
    """Deterministic sentence stream: group laws, subgroup facts, constant
    facts, certified equivalences, and dimension sentences.

    At most ``fuel`` sentences are emitted, and each section examines at
    most ``fuel`` candidates, so the output is a finite prefix of the ideal
    axiom list.
    """
    emitted = 0

    def _cap(seq: Iterator[str]) -> Iterator[str]:
        nonlocal emitted
        for sentence in seq:
            if emitted >= fuel:
                return
            emitted += 1
            yield sentence

    yield from _cap(_axiom_sections(oracle, fuel))


def _axiom_sections(oracle: StructureOracle, fuel: int) -> Iterator[str]:
    sig = oracle.signature
    if oracle.group is not None:
        yield from COMMUTATIVE_GROUP_AXIOMS
        for decl in sig.symbols:
            if decl.kind == "group":
                yield f"0 in {decl.name}"
                yield f"forall u v in {decl.name} . u - v in {decl.name}"

    names = sorted(oracle.named_constants)
    for i, c in enumerate(names):
        for d in names[i + 1 :]:
            rel = "=" if oracle.named_constants[c] == oracle.named_constants[d] else "!="
            yield f"{c} {rel} {d}"
    seen = 0
    for decl in sig.symbols:
        if not names or len(names) ** decl.arity > 64:
            continue
        for combo in itertools.product(names, repeat=decl.arity):
            if seen >= fuel:
                break
            seen += 1
            args = tuple(oracle.named_constants[c] for c in combo)
            fact = oracle.holds(decl.name, args)
            text = f"{decl.name}({', '.join(combo)})"
            yield text if fact else f"not {text}"

    if oracle.group is None or oracle.generic_hint is None:
        return
    members, dim_pairs = _axiom_stream(oracle)

    pairs_examined = 0
    for i in range(len(members)):
        for j in range(i + 1, len(members)):
            if pairs_examined >= fuel:
                break
            name_i, pp_i = members[i]
            name_j, pp_j = members[j]
            if pp_i.n_free != pp_j.n_free:
                continue
            pairs_examined += 1
            if pp_equal(oracle, pp_i, pp_j, fuel) is TriBool.TRUE:
                yield f"forall . {name_i} = {name_j}"

    scans = []
    for sub_name, sub, super_name, sup in dim_pairs:
        if pp_equal(oracle, sub, sup, fuel) is TriBool.TRUE:
            yield f"[{super_name} : {sub_name}] = 1"
        else:
            scans.append(_DimScan(oracle, sub_name, sub, super_name, sup, fuel))
    for _round in range(fuel):
        if all(s.exhausted for s in scans):
            return
        for scan in scans:
            sentence = scan.step()
            if sentence is not None:
                yield sentence
