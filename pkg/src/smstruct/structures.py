"""Computable structures with decidable atomic diagrams, and the positive
primitive (pp) formula layer over them.

A structure lives on the naturals (all of them, or an initial segment).
``holds`` must be total and decidable; searches never trust anything else.
Optional hooks let a fixture expose what is in principle recoverable from
the atomic diagram by bounded search -- the group operation, finite fiber
enumeration per relation symbol, witness bounds and solved witnesses -- so
that desk-scale runs terminate in reasonable time.  Every hook result that
feeds a positive verdict is re-checked against ``holds``.

Three-valued results: fuel-bounded searches return TRUE, FALSE, or UNKNOWN,
and verdicts are monotone in fuel (more fuel never flips TRUE/FALSE).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .errors import ConfigurationError, ContractViolation


class TriBool(Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    def __bool__(self) -> bool:
        raise TypeError("TriBool has no implicit truth value; compare explicitly")


def tri_and(*vals: TriBool) -> TriBool:
    if any(v is TriBool.FALSE for v in vals):
        return TriBool.FALSE
    if any(v is TriBool.UNKNOWN for v in vals):
        return TriBool.UNKNOWN
    return TriBool.TRUE


def tri_or(*vals: TriBool) -> TriBool:
    if any(v is TriBool.TRUE for v in vals):
        return TriBool.TRUE
    if any(v is TriBool.UNKNOWN for v in vals):
        return TriBool.UNKNOWN
    return TriBool.FALSE


@dataclass(frozen=True)
class SymbolDecl:
    name: str
    arity: int
    kind: str  # "group" (interprets a subgroup of M^arity) or "plain"


@dataclass(frozen=True)
class MorleyMeta:
    """Rank/degree metadata, always supplied by fixture tables."""

    rank: int
    degree: int = 1
    connected: Optional[bool] = None


@dataclass(frozen=True)
class Signature:
    symbols: tuple[SymbolDecl, ...]
    morley: dict = field(default_factory=dict, hash=False, compare=False)

    def decl(self, name: str) -> SymbolDecl:
        for s in self.symbols:
            if s.name == name:
                return s
        raise ConfigurationError(f"unknown symbol {name!r}")

    def arity(self, name: str) -> int:
        return self.decl(name).arity


@dataclass
class GroupOps:
    """Computable abelian group structure on element codes."""

    zero: int
    add: Callable[[int, int], int]
    neg: Callable[[int], int]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def scalar(self, k: int, a: int) -> int:
        if k == 1:
            return a
        if k == -1:
            return self.neg(a)
        if k < 0:
            return self.neg(self.scalar(-k, a))
        acc = self.zero
        base = a
        while k:
            if k & 1:
                acc = self.add(acc, base)
            base = self.add(base, base)
            k >>= 1
        return acc


# A row is (coeffs, offset): the linear form sum(coeffs[v] * x_v) + offset,
# with offset an optional universe element (requires group ops to fold in).
Row = tuple[tuple[int, ...], Optional[int]]
# A block is (symbol, rows): the tuple of row values must satisfy the symbol;
# symbol None is the zero target (every row value must be the group zero).
Block = tuple[Optional[str], tuple[Row, ...]]


@dataclass(frozen=True)
class PPFormula:
    """Positive primitive formula in matrix normal form.

    Free variables are indices 0..n_free-1, quantified variables follow.
    Satisfaction at a free-variable tuple: some assignment of the quantified
    variables makes every block hold.
    """

    n_free: int
    n_quant: int
    blocks: tuple[Block, ...]
    out_var: int = 1

    @property
    def n_vars(self) -> int:
        return self.n_free + self.n_quant

    @property
    def targets(self) -> tuple[Optional[str], ...]:
        return tuple(sym for sym, _ in self.blocks)

    def a_matrix(self) -> list[list[int]]:
        return [list(coeffs[: self.n_free]) for _, rows in self.blocks for coeffs, _ in rows]

    def p_matrix(self) -> list[list[int]]:
        return [list(coeffs[self.n_free :]) for _, rows in self.blocks for coeffs, _ in rows]

    def validate(self) -> "PPFormula":
        for sym, rows in self.blocks:
            for coeffs, _ in rows:
                if len(coeffs) != self.n_vars:
                    raise ContractViolation("row width does not match variable count")
        if self.n_free and not 0 <= self.out_var < self.n_free:
            raise ContractViolation("distinguished output variable out of range")
        return self


class PPBuilder:
    """Incremental construction of PPFormula values.

    Forms are dicts var->coeff plus an optional element offset, so client
    code reads close to the formulas it implements.
    """

    def __init__(self, n_free: int):
        self.n_free = n_free
        self.n_quant = 0
        self._blocks: list[tuple[Optional[str], list[tuple[dict, Optional[int]]]]] = []

    def fresh(self) -> int:
        v = self.n_free + self.n_quant
        self.n_quant += 1
        return v

    def block(self, symbol: Optional[str], *forms: tuple[dict, Optional[int]]) -> None:
        self._blocks.append((symbol, list(forms)))

    def zero_row(self, form: dict, offset: Optional[int] = None) -> None:
        self._blocks.append((None, [(form, offset)]))

    def build(self, out_var: Optional[int] = None) -> PPFormula:
        if out_var is None:
            out_var = min(1, max(self.n_free - 1, 0))
        n = self.n_free + self.n_quant
        blocks = []
        for sym, rows in self._blocks:
            packed = []
            for form, offset in rows:
                coeffs = [0] * n
                for v, c in form.items():
                    coeffs[v] += c
                packed.append((tuple(coeffs), offset))
            blocks.append((sym, tuple(packed)))
        return PPFormula(self.n_free, self.n_quant, tuple(blocks), out_var).validate()


def atomic_pp(signature: Signature, symbol: str) -> PPFormula:
    """The relation symbol itself as a pp formula (no quantifiers)."""
    k = signature.arity(symbol)
    b = PPBuilder(k)
    b.block(symbol, *(({i: 1}, None) for i in range(k)))
    return b.build(out_var=min(1, k - 1))


def pin_pp(oracle: "StructureOracle", pp: PPFormula, pins: dict[int, int]) -> PPFormula:
    """Substitute constants for some free variables (folds into row offsets)."""
    keep = [v for v in range(pp.n_free) if v not in pins]
    remap = {old: new for new, old in enumerate(keep)}
    for q in range(pp.n_quant):
        remap[pp.n_free + q] = len(keep) + q
    g = oracle.group
    blocks = []
    for sym, rows in pp.blocks:
        new_rows = []
        for coeffs, offset in rows:
            const = offset
            new_coeffs = [0] * (len(keep) + pp.n_quant)
            for v, c in enumerate(coeffs):
                if c == 0:
                    continue
                if v in pins:
                    if g is None:
                        if c == 1 and const is None:
                            const = pins[v]
                            continue
                        raise ContractViolation("pinning with coefficients requires group ops")
                    part = g.scalar(c, pins[v])
                    const = part if const is None else g.add(const, part)
                else:
                    new_coeffs[remap[v]] = c
            new_rows.append((tuple(new_coeffs), const))
        blocks.append((sym, tuple(new_rows)))
    out = pp.out_var if pp.out_var in remap else 0
    return PPFormula(len(keep), pp.n_quant, tuple(blocks), out if keep else 0)


def conj_pp(a: PPFormula, b: PPFormula) -> PPFormula:
    """Conjunction of two pp formulas over the same free variables."""
    if a.n_free != b.n_free:
        raise ContractViolation("conjunction needs matching free arities")
    shift = a.n_quant
    pad = (0,) * b.n_quant
    blocks = [
        (sym, tuple((coeffs + pad, offset) for coeffs, offset in rows))
        for sym, rows in a.blocks
    ]
    for sym, rows in b.blocks:
        new_rows = []
        for coeffs, offset in rows:
            new_coeffs = list(coeffs[: b.n_free]) + [0] * shift + list(coeffs[b.n_free :])
            new_rows.append((tuple(new_coeffs), offset))
        blocks.append((sym, tuple(new_rows)))
    return PPFormula(a.n_free, a.n_quant + b.n_quant, tuple(blocks), a.out_var).validate()


def project_pp(pp: PPFormula, keep: Sequence[int]) -> PPFormula:
    """Existentially quantify all free variables outside ``keep``."""
    keep = list(keep)
    dropped = [v for v in range(pp.n_free) if v not in keep]
    remap = {}
    for new, old in enumerate(keep):
        remap[old] = new
    for i, old in enumerate(dropped):
        remap[old] = len(keep) + i
    for q in range(pp.n_quant):
        remap[pp.n_free + q] = len(keep) + len(dropped) + q
    blocks = []
    for sym, rows in pp.blocks:
        new_rows = []
        for coeffs, offset in rows:
            new_coeffs = [0] * pp.n_vars
            for v, c in enumerate(coeffs):
                new_coeffs[remap[v]] = c
            new_rows.append((tuple(new_coeffs), offset))
        blocks.append((sym, tuple(new_rows)))
    return PPFormula(len(keep), pp.n_quant + len(dropped), tuple(blocks), 0 if keep else 0)


@dataclass
class StructureOracle:
    """A computable structure plus optional computable hints.

    Required: ``signature``, ``holds`` (total), element supply (infinite
    universe on all naturals unless ``universe_size`` is set).

    Hints (all optional, all re-checked where they feed positive verdicts):

    - ``group``: computable group operations; required by coefficient
      arithmetic in pp rows.
    - ``complete_block(symbol, partial)``: exhaustive list of tuples in the
      symbol's relation extending ``partial`` (a tuple with None holes), or
      None when that set is not finitely enumerable here.  An empty list is
      a definite "no extension exists".
    - ``complement_block(symbol, partial)``: same for the complement.
    - ``witness_bound(pp, params)``: n such that the pp has a witness at
      ``params`` iff it has one with all quantified coordinates < n.
    - ``suggest_witnesses(pp, params)``: candidate witness tuples; wrong
      suggestions cost time, never correctness.
    """

    signature: Signature
    holds: Callable[[str, tuple[int, ...]], bool]
    universe_size: Optional[int] = None
    named_constants: dict[str, int] = field(default_factory=dict)
    generic_hint: Optional[int] = None
    group: Optional[GroupOps] = None
    complete_block: Optional[Callable[[str, tuple], Optional[list[tuple[int, ...]]]]] = None
    complement_block: Optional[Callable[[str, tuple], Optional[list[int]]]] = None
    witness_bound: Optional[Callable[[PPFormula, tuple[int, ...]], Optional[int]]] = None
    suggest_witnesses: Optional[Callable[[PPFormula, tuple[int, ...]], list[tuple[int, ...]]]] = None
    # disintegrated-path metadata
    valence_bound: Optional[int] = None
    edge_candidates: Optional[tuple[tuple[str, int, int], ...]] = None
    declared_exceptional: Optional[dict] = None
    # abelian-path metadata
    word_generators: tuple[str, ...] = ()
    fiber_bounds: Optional[dict[str, int]] = None
    is_algebraic: Optional[Callable[[int], Optional[bool]]] = None
    prime_part: Optional[Callable[[], "StructureOracle"]] = None
    name: str = "anonymous"

    def elements(self) -> Iterator[int]:
        if self.universe_size is None:
            return itertools.count(0)
        return iter(range(self.universe_size))

    def element_at(self, i: int) -> int:
        if self.universe_size is not None and i >= self.universe_size:
            raise IndexError("element index beyond finite universe")
        return i

    def element_prefix(self, n: int) -> list[int]:
        if self.universe_size is not None:
            n = min(n, self.universe_size)
        return list(range(n))

    def check_tuple(self, symbol: str, args: Sequence[int]) -> bool:
        decl = self.signature.decl(symbol)
        if len(args) != decl.arity:
            raise ContractViolation(
                f"symbol {symbol!r} expects {decl.arity} arguments, got {len(args)}"
            )
        return self.holds(symbol, tuple(args))


def row_value(oracle: StructureOracle, row: Row, assign: dict[int, int]) -> tuple[Optional[int], list[tuple[int, int]]]:
    """Evaluate a row under a partial assignment.

    Returns (known_part, unknowns); known_part is the evaluated sum of the
    assigned portion plus offset (None only when nothing known contributes
    and group ops are absent), unknowns lists (var, coeff) pairs.
    """
    coeffs, offset = row
    unknowns = [(v, c) for v, c in enumerate(coeffs) if c != 0 and v not in assign]
    g = oracle.group
    if g is None:
        # pure-selector rows only: one variable with coefficient 1, or a bare offset
        known = [(v, c) for v, c in enumerate(coeffs) if c != 0 and v in assign]
        total = len(unknowns) + len(known)
        if offset is not None and total == 0:
            return offset, []
        if offset is None and total == 1 and (known + unknowns)[0][1] == 1:
            if known:
                return assign[known[0][0]], []
            return None, unknowns
        raise ContractViolation("non-selector rows need group ops on the oracle")
    acc = g.zero if offset is None else offset
    for v, c in enumerate(coeffs):
        if c == 0 or v not in assign:
            continue
        acc = g.add(acc, g.scalar(c, assign[v]))
    return acc, unknowns


def canonical_tuples(oracle: StructureOracle, arity: int) -> Iterator[tuple[int, ...]]:
    """Stage-wise tuple enumeration: stage s yields tuples over the first
    s+1 elements whose maximum enumerator index is exactly s, in lex order."""
    if arity == 0:
        yield ()
        return
    size = oracle.universe_size
    s = 0
    while size is None or s < size:
        for tup in itertools.product(range(s + 1), repeat=arity):
            if max(tup) == s:
                yield tup
        s += 1


__all__ = [
    "TriBool",
    "tri_and",
    "tri_or",
    "Row",
    "Block",
    "SymbolDecl",
    "MorleyMeta",
    "Signature",
    "GroupOps",
    "PPFormula",
    "PPBuilder",
    "StructureOracle",
    "atomic_pp",
    "pin_pp",
    "conj_pp",
    "project_pp",
    "row_value",
    "canonical_tuples",
]
