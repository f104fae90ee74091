"""Independent ground-truth engines for the test suite.

Everything here is deliberately written from scratch against the math, not
against the package: rational functions over the 3-element field as
normalized coefficient tuples, a term-denotation walker over that
arithmetic, mixed-radix tuple arithmetic for finite abelian groups, and a
brute-force pp evaluator that searches assignments by nested loops.  When a
test compares the package to these, agreement is evidence, not tautology.
"""

from __future__ import annotations

import itertools
from typing import Optional

from smstruct.qring import Gen, Inv, Neg, Prod, Sum, Word

P = 3

# --- polynomials over GF(3), little-endian coefficient tuples ---------------


def pnorm(cs) -> tuple[int, ...]:
    out = [c % P for c in cs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def padd(a, b) -> tuple[int, ...]:
    n = max(len(a), len(b))
    return pnorm([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
                  for i in range(n)])


def pneg(a) -> tuple[int, ...]:
    return pnorm([-c for c in a])


def pmul(a, b) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return pnorm(out)


def _inv3(c: int) -> int:
    # 1*1 = 1, 2*2 = 4 = 1
    return c % P


def pdivmod(a, b) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [0] * max(len(a) - len(b) + 1, 0)
    lead_inv = _inv3(b[-1])
    while len(pnorm(rem)) >= len(b):
        rem = list(pnorm(rem))
        shift = len(rem) - len(b)
        factor = (rem[-1] * lead_inv) % P
        quo[shift] = factor
        for i, c in enumerate(b):
            rem[shift + i] -= factor * c
        rem = list(pnorm(rem))
    return pnorm(quo), pnorm(rem)


def pgcd(a, b) -> tuple[int, ...]:
    a, b = pnorm(a), pnorm(b)
    while b:
        _, r = pdivmod(a, b)
        a, b = b, r
    if a:
        a = pmul(a, (_inv3(a[-1]),))
    return a


class Frac:
    """num/den with monic denominator and no common factor."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num, den = pnorm(num), pnorm(den)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = pgcd(num, den)
        if g:
            num, _ = pdivmod(num, g)
            den, _ = pdivmod(den, g)
        lead = _inv3(den[-1])
        num = pmul(num, (lead,))
        den = pmul(den, (lead,))
        self.num, self.den = num, den

    def __eq__(self, other) -> bool:
        return isinstance(other, Frac) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __repr__(self) -> str:
        return f"Frac({self.num}, {self.den})"

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "Frac") -> "Frac":
        return Frac(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                    pmul(self.den, other.den))

    def __neg__(self) -> "Frac":
        return Frac(pneg(self.num), self.den)

    def __mul__(self, other: "Frac") -> "Frac":
        return Frac(pmul(self.num, other.num), pmul(self.den, other.den))

    def inv(self) -> Optional["Frac"]:
        if self.is_zero():
            return None
        return Frac(self.den, self.num)


F_ZERO = Frac(())
F_ONE = Frac((1,))
F_T = Frac((0, 1))


def word_value(word: Word) -> Optional[Frac]:
    """Denotation of a term in GF(3)(t); None means a subterm inverted zero."""
    if isinstance(word, Gen):
        return {"1": F_ONE, "0": F_ZERO, "t": F_T}[word.name]
    if isinstance(word, Neg):
        v = word_value(word.child)
        return None if v is None else -v
    if isinstance(word, Inv):
        v = word_value(word.child)
        return None if v is None else v.inv()
    if isinstance(word, Sum):
        a, b = word_value(word.left), word_value(word.right)
        return None if a is None or b is None else a + b
    if isinstance(word, Prod):
        a, b = word_value(word.left), word_value(word.right)
        return None if a is None or b is None else a * b
    raise TypeError(f"not a word: {word!r}")


# --- mixed-radix tuple arithmetic for finite abelian fixtures ----------------


def mr_encode(tup, moduli) -> int:
    code = 0
    for r, m in zip(reversed(tup), reversed(moduli)):
        code = code * m + (r % m)
    return code


def mr_decode(code, moduli) -> tuple[int, ...]:
    out = []
    for m in moduli:
        out.append(code % m)
        code //= m
    return tuple(out)


def mr_add(a, b, moduli) -> tuple[int, ...]:
    return tuple((x + y) % m for x, y, m in zip(a, b, moduli))


def mr_neg(a, moduli) -> tuple[int, ...]:
    return tuple((-x) % m for x, m in zip(a, moduli))


# --- brute-force pp evaluation on finite structures --------------------------


def brute_rows_ok(oracle, pp, assign) -> bool:
    g = oracle.group
    for sym, rows in pp.blocks:
        vals = []
        for coeffs, offset in rows:
            if g is None:
                picked = [assign[v] for v, c in enumerate(coeffs) if c != 0]
                if offset is not None:
                    picked.append(offset)
                if len(picked) != 1:
                    raise ValueError("selector rows only without group ops")
                vals.append(picked[0])
                continue
            acc = g.zero if offset is None else offset
            for v, c in enumerate(coeffs):
                if c:
                    acc = g.add(acc, g.scalar(c, assign[v]))
            vals.append(acc)
        if sym is None:
            zero = 0 if g is None else g.zero
            if any(v != zero for v in vals):
                return False
        elif not oracle.holds(sym, tuple(vals)):
            return False
    return True


def brute_eval(oracle, pp, args) -> bool:
    """Exhaustive witness search; the oracle must have a finite universe."""
    n = oracle.universe_size
    assert n is not None, "brute_eval needs a finite universe"
    for q in itertools.product(range(n), repeat=pp.n_quant):
        if brute_rows_ok(oracle, pp, tuple(args) + q):
            return True
    return False


def brute_solutions(oracle, pp) -> list[tuple[int, ...]]:
    n = oracle.universe_size
    assert n is not None
    return [t for t in itertools.product(range(n), repeat=pp.n_free)
            if brute_eval(oracle, pp, t)]
