"""Row reduction of two-variable pp relations to single ring terms.

A pp formula theta(x, y) over binary generator atoms rewrites as an
augmented matrix: one row per atomic conjunct, with term coefficients for
the x column, the y column, and one column per quantified variable, plus a
constant-class augmentation entry.  Three row operations (absorbing a
constant coefficient into the augmentation, adding a term multiple of one
row to another, scaling a row by a nonconstant term) each keep the matrix's
solution relation a finite-index supergroup of theta.  When theta has
finite output fibers over generic inputs, elimination drives the matrix to
a single surviving relation between x and y, and the quotient of its two
coefficients is a term whose correspondence agrees with theta up to a
translation by algebraic elements; that agreement is then spot-checked on
samples before the term is returned.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Optional

from .errors import (
    ContractViolation,
    FuelExhausted,
    NotQuasiendomorphism,
)
from .ppeval import DEFAULT_FUEL, solve_assignments
from .qring import (
    Gen,
    Inv,
    Neg,
    Prod,
    Sum,
    Word,
    WordCache,
    WordClass,
    render_word,
)
from .structures import PPFormula, StructureOracle


# ---------------------------------------------------------------------------
# term builders with class-preserving elisions
#
# Each rule rewrites to a term whose correspondence is pointwise equal or
# ring-equal to the verbatim combination (zero annihilates, the identity is
# neutral, negation commutes with composition, transposition is involutive).
# Keeping pipeline terms small keeps the later pp evaluations cheap.


def neg_word(cache: WordCache, w: Word) -> Word:
    if w == cache.zero_word():
        return w
    if isinstance(w, Neg):
        return w.child
    return Neg(w)


def sum_word(cache: WordCache, u: Word, v: Word) -> Word:
    zero = cache.zero_word()
    if u == zero:
        return v
    if v == zero:
        return u
    return Sum(u, v)


def prod_word(cache: WordCache, u: Word, v: Word) -> Word:
    zero = cache.zero_word()
    one = cache.identity_word()
    if u == zero or v == zero:
        return zero
    if u == one:
        return v
    if v == one:
        return u
    if isinstance(u, Neg):
        return neg_word(cache, prod_word(cache, u.child, v))
    if isinstance(v, Neg):
        return neg_word(cache, prod_word(cache, u, v.child))
    return Prod(u, v)


def inv_word(cache: WordCache, w: Word) -> Word:
    one = cache.identity_word()
    if w == one or w == Neg(one):
        return w
    if isinstance(w, Inv):
        return w.child
    return Inv(w)


def int_multiple(cache: WordCache, w: Word, k: int) -> Word:
    """k-fold sum of the term (negated for k < 0); zero generator for k = 0."""
    if k == 0:
        return cache.zero_word()
    acc = w
    for _ in range(abs(k) - 1):
        acc = sum_word(cache, acc, w)
    return neg_word(cache, acc) if k < 0 else acc


# ---------------------------------------------------------------------------
# augmented matrices


@dataclass(frozen=True)
class AugRow:
    """One matrix row: b applies to x, c applies to y, zs[j] to the j-th
    quantified variable, and the augmentation is a constant-class term
    recording absorbed translations.  The row relation is
    0 in b(x) + c(y) + sum_j zs[j](z_j) + aug."""

    b: Word
    c: Word
    zs: tuple[Word, ...]
    aug: Word

    def coeff(self, col: int) -> Word:
        if col == 0:
            return self.b
        if col == 1:
            return self.c
        return self.zs[col - 2]

    def with_coeff(self, col: int, w: Word) -> "AugRow":
        if col == 0:
            return replace(self, b=w)
        if col == 1:
            return replace(self, c=w)
        zs = list(self.zs)
        zs[col - 2] = w
        return replace(self, zs=tuple(zs))


@dataclass(frozen=True)
class AugMatrix:
    """Immutable snapshot; row operations return new matrices.  Column 0 is
    the x column, column 1 the y column, columns 2..2+n_z the quantified
    ones.  The classification cache rides along but is not part of value
    identity."""

    cache: WordCache = field(compare=False, repr=False)
    n_z: int
    rows: tuple[AugRow, ...]

    @property
    def n_cols(self) -> int:
        return 2 + self.n_z

    def describe(self) -> str:
        out = []
        for row in self.rows:
            cells = [render_word(row.coeff(c)) for c in range(self.n_cols)]
            out.append("(" + ", ".join(cells) + " | " + render_word(row.aug) + ")")
        return "\n".join(out)


def from_pp(theta: PPFormula, cache: WordCache) -> AugMatrix:
    """Rewrite a two-free-variable pp formula as an augmented matrix.

    A generator atom s(u-form, v-form) becomes the row of coefficient terms
    alpha*s - beta per variable, where alpha and beta are that variable's
    integer coefficients in the two forms; a plain linear conjunct becomes a
    row of integer-multiple terms.  Augmentations start at the zero
    generator.  Element offsets and non-binary atoms are outside the
    admissible shape.
    """
    if theta.n_free != 2:
        raise ContractViolation(
            f"matrix rewriting needs exactly two free variables, got {theta.n_free}")
    zero = cache.zero_word()
    one = cache.identity_word()
    n_z = theta.n_quant
    rows: list[AugRow] = []

    def build_row(words: list[Word]) -> AugRow:
        return AugRow(b=words[0], c=words[1], zs=tuple(words[2:]), aug=zero)

    for sym, block_rows in theta.blocks:
        if sym is None:
            for coeffs, offset in block_rows:
                if offset is not None:
                    raise ContractViolation("element offsets are outside the matrix shape")
                rows.append(build_row(
                    [int_multiple(cache, one, k) for k in coeffs]))
            continue
        decl = cache.oracle.signature.decl(sym)
        if decl.arity != 2 or len(block_rows) != 2:
            raise ContractViolation(
                f"atom {sym!r} is not a binary generator application")
        (u_coeffs, u_off), (v_coeffs, v_off) = block_rows
        if u_off is not None or v_off is not None:
            raise ContractViolation("element offsets are outside the matrix shape")
        words = []
        for alpha, beta in zip(u_coeffs, v_coeffs):
            words.append(sum_word(cache,
                                  int_multiple(cache, Gen(sym), alpha),
                                  int_multiple(cache, one, -beta)))
        rows.append(build_row(words))
    return AugMatrix(cache=cache, n_z=n_z, rows=tuple(rows))


# ---------------------------------------------------------------------------
# the three row operations


def absorb_constant(m: AugMatrix, row: int, col: int,
                    fuel: int = DEFAULT_FUEL) -> AugMatrix:
    """Zero out a constant-class coefficient, crediting it to the row's
    augmentation.  Exact: a constant correspondence ignores its argument."""
    old = m.rows[row].coeff(col)
    if m.cache.classify(old, fuel).kind is not WordClass.ZERO:
        raise ContractViolation(
            f"entry {render_word(old)!r} at ({row}, {col}) is not constant-class")
    new_aug = sum_word(m.cache, m.rows[row].aug, old)
    m.cache.note_zero(new_aug)
    new_row = replace(m.rows[row].with_coeff(col, m.cache.zero_word()), aug=new_aug)
    return replace(m, rows=m.rows[:row] + (new_row,) + m.rows[row + 1:])


def add_multiple(m: AugMatrix, src_row: int, dst_row: int, w: Word,
                 fuel: int = DEFAULT_FUEL) -> AugMatrix:
    """Add the w-composite of one row to another; augmentations combine the
    same way and stay constant-class because constants form an ideal."""
    if src_row == dst_row:
        raise ContractViolation("source and destination rows must differ")
    if m.cache.classify(w, fuel).kind is WordClass.NON_KOSHER:
        raise ContractViolation(f"multiplier {render_word(w)!r} is not admissible")
    cache = m.cache
    src = m.rows[src_row]
    dst = m.rows[dst_row]
    new_words = [sum_word(cache, dst.coeff(c), prod_word(cache, w, src.coeff(c)))
                 for c in range(m.n_cols)]
    new_aug = sum_word(cache, dst.aug, prod_word(cache, w, src.aug))
    cache.note_zero(new_aug)
    new_row = AugRow(b=new_words[0], c=new_words[1], zs=tuple(new_words[2:]),
                     aug=new_aug)
    return replace(m, rows=m.rows[:dst_row] + (new_row,) + m.rows[dst_row + 1:])


def scale_row(m: AugMatrix, row: int, v: Word,
              fuel: int = DEFAULT_FUEL) -> AugMatrix:
    """Compose every entry of a row with a nonconstant term on the left.
    Inverting back is possible because composing with the inverse and then
    the term differs from the identity by a constant class only."""
    if m.cache.classify(v, fuel).kind is not WordClass.NON_ZERO:
        raise ContractViolation(
            f"row scale by {render_word(v)!r} needs a nonconstant admissible term")
    cache = m.cache
    old = m.rows[row]
    new_words = [prod_word(cache, v, old.coeff(c)) for c in range(m.n_cols)]
    new_aug = prod_word(cache, v, old.aug)
    cache.note_zero(new_aug)
    new_row = AugRow(b=new_words[0], c=new_words[1], zs=tuple(new_words[2:]),
                     aug=new_aug)
    return replace(m, rows=m.rows[:row] + (new_row,) + m.rows[row + 1:])


# ---------------------------------------------------------------------------
# the reduction pipeline


def _normalize_row(m: AugMatrix, i: int, fuel: int) -> AugMatrix:
    """Restore the invariant on one row: every coefficient either is the
    zero generator or classifies nonconstant (constant ones get absorbed)."""
    zero = m.cache.zero_word()
    for col in range(m.n_cols):
        entry = m.rows[i].coeff(col)
        if entry == zero:
            continue
        kind = m.cache.classify(entry, fuel).kind
        if kind is WordClass.NON_KOSHER:
            raise ContractViolation(
                f"coefficient {render_word(entry)!r} is not admissible")
        if kind is WordClass.ZERO:
            m = absorb_constant(m, i, col, fuel)
    return m


def normalize(m: AugMatrix, fuel: int = DEFAULT_FUEL) -> AugMatrix:
    for i in range(len(m.rows)):
        m = _normalize_row(m, i, fuel)
    return m


def _eliminate_column(m: AugMatrix, solver: int, col: int, fuel: int) -> AugMatrix:
    """Assuming the solver row's entry at col composes with its inverse to
    the identity class, zero out col in every other row."""
    cache = m.cache
    zero = cache.zero_word()
    for i in range(len(m.rows)):
        if i == solver or m.rows[i].coeff(col) == zero:
            continue
        w = neg_word(cache, m.rows[i].coeff(col))
        m = add_multiple(m, solver, i, w, fuel)
        # the targeted entry is old + (-old)(a^-1 a): constant by construction
        cache.note_zero(m.rows[i].coeff(col))
        m = absorb_constant(m, i, col, fuel)
        m = _normalize_row(m, i, fuel)
    return m


def reduce_to_word(theta: PPFormula, oracle: StructureOracle,
                   fuel: int = DEFAULT_FUEL, *,
                   cache: Optional[WordCache] = None,
                   samples: int = 16) -> Word:
    """Reduce a pp-defined finite-fibered correspondence to a single term.

    Pipeline: rewrite to a matrix, absorb constants, isolate one row
    carrying y, eliminate quantified columns by pivoting rows to identity
    entries, reject leftovers that would make the output depend on an
    unconstrained quantifier or pin down the input, and read the final term
    off the surviving row.  The term is then compared with theta on sample
    inputs: their output fibers must agree up to translation by algebraic
    elements.  Classification timeouts surface as fuel errors, never as
    verdicts.
    """
    if samples < 1:
        raise ContractViolation("sample verification is mandatory; need samples >= 1")
    if cache is None:
        cache = WordCache(oracle)
    elif cache.oracle is not oracle:
        raise ContractViolation("classification cache belongs to a different structure")
    zero = cache.zero_word()

    m = from_pp(theta, cache)
    m = normalize(m, fuel)

    # one row keeps y: a nonconstant y-coefficient must exist
    pivot = next((i for i, row in enumerate(m.rows) if row.c != zero), None)
    if pivot is None:
        raise NotQuasiendomorphism("every coefficient of the output variable is constant")
    c_p = m.rows[pivot].c
    for i in range(len(m.rows)):
        if i == pivot or m.rows[i].c == zero:
            continue
        w = neg_word(cache, prod_word(cache, m.rows[i].c, inv_word(cache, c_p)))
        m = add_multiple(m, pivot, i, w, fuel)
        cache.note_zero(m.rows[i].c)
        m = absorb_constant(m, i, 1, fuel)
        m = _normalize_row(m, i, fuel)
        c_p = m.rows[pivot].c

    # quantified columns: sweep to a reduced echelon until no progress
    processed: set[int] = set()
    solved: set[int] = set()
    while True:
        progress = False
        for j in range(m.n_z):
            if j in solved:
                continue
            col = 2 + j
            solver = next((i for i in range(len(m.rows))
                           if i != pivot and i not in processed
                           and m.rows[i].coeff(col) != zero), None)
            if solver is None:
                continue
            entry = m.rows[solver].coeff(col)
            m = scale_row(m, solver, inv_word(cache, entry), fuel)
            m = _eliminate_column(m, solver, col, fuel)
            processed.add(solver)
            solved.add(j)
            progress = True
        if not progress:
            break

    # leftovers decide the verdict
    for j in range(m.n_z):
        if m.rows[pivot].coeff(2 + j) != zero:
            raise NotQuasiendomorphism(
                "output depends on an unconstrained quantified variable "
                "(no admissible proportionality eliminates it)")
    for i in range(len(m.rows)):
        if i == pivot or i in processed:
            continue
        if m.rows[i].b != zero:
            raise NotQuasiendomorphism(
                "a residual conjunct confines the input to an algebraic set")

    word = neg_word(cache, prod_word(cache, inv_word(cache, m.rows[pivot].c),
                                     m.rows[pivot].b))
    _verify_by_sampling(theta, word, oracle, cache, fuel, samples)
    return word


def _verify_by_sampling(theta: PPFormula, word: Word, oracle: StructureOracle,
                        cache: WordCache, fuel: int, samples: int) -> None:
    """Check on deterministic sample inputs that theta's output fiber and
    the term's agree up to translation by algebraic elements."""
    phi = cache.graph_pp(word)
    group = oracle.group
    alg = oracle.is_algebraic
    if alg is None:
        def alg(v: int) -> bool:
            return v == group.zero
    generic = oracle.generic_hint
    for k in range(1, samples + 1):
        x = group.scalar(k, generic)
        got_t, comp_t = solve_assignments(oracle, theta, {0: x}, fuel, cap=64)
        got_w, comp_w = solve_assignments(oracle, phi, {0: x}, fuel, cap=64)
        ys_t = {sol[1] for sol in got_t}
        ys_w = {sol[1] for sol in got_w}
        if not ys_t:
            if comp_t:
                raise NotQuasiendomorphism(
                    f"input relation has empty output fiber at sample {k}")
            raise FuelExhausted(f"could not enumerate the input fiber at sample {k}")
        if not ys_w:
            if comp_w:
                raise ContractViolation(
                    f"reduced term {render_word(word)!r} has empty fiber at sample {k}")
            raise FuelExhausted(f"could not enumerate the term fiber at sample {k}")
        t_matched = all(any(alg(group.sub(yt, yw)) for yw in ys_w) for yt in ys_t)
        w_matched = all(any(alg(group.sub(yw, yt)) for yt in ys_t) for yw in ys_w)
        if t_matched and w_matched:
            continue
        if comp_t and comp_w:
            raise ContractViolation(
                f"reduced term {render_word(word)!r} disagrees with the input "
                f"relation at sample {k}")
        raise FuelExhausted(f"fiber comparison inconclusive at sample {k}")


__all__ = [
    "AugRow",
    "AugMatrix",
    "from_pp",
    "absorb_constant",
    "add_multiple",
    "scale_row",
    "normalize",
    "reduce_to_word",
    "neg_word",
    "sum_word",
    "prod_word",
    "inv_word",
    "int_multiple",
]
