"""Term algebra over a structure's declared binary generators.

A term built from the generators with ``+``, unary ``-``, ``*``, and ``^-1``
denotes a binary correspondence on the structure: each generator is a rank-1
subgroup of M x M, and the term combinators compose, add, negate, and
transpose those subgroups.  This module compiles terms to pp formulas,
classifies terms into three buckets, and does exact ring arithmetic on the
classes:

- ``NonKosher``: some subterm transposes a constant correspondence.  Such
  terms are rejected from the ring carrier entirely.
- ``Zero``: every subterm is admissible and the term's correspondence is
  constant; detected by the term relating a generic element to zero.
- ``NonZeroKosher``: admissible with a nonconstant correspondence; detected
  by the generic element lying in the term's image.

Both detection facts are one-existential-quantifier searches over a
computable structure, so the decision procedure interleaves them under a
shared budget and raises on a timeout rather than ever guessing a label.
The quotient of the admissible terms by the constant ones is the ring this
package presents; ``canonical_rep`` picks reproducible class representatives.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional, Sequence

from .errors import ConfigurationError, ContractViolation, FuelExhausted
from .ppeval import DEFAULT_FUEL, eval_pp
from .structures import (
    PPBuilder,
    PPFormula,
    Signature,
    StructureOracle,
    TriBool,
    project_pp,
)


# ---------------------------------------------------------------------------
# terms


class Word:
    """Base class for term nodes.  Instances are immutable and hashable;
    ``length`` counts nodes.  Operator sugar builds bigger terms."""

    __slots__ = ()
    length: int

    def __add__(self, other: "Word") -> "Word":
        return Sum(self, other)

    def __sub__(self, other: "Word") -> "Word":
        return Sum(self, Neg(other))

    def __neg__(self) -> "Word":
        return Neg(self)

    def __mul__(self, other: "Word") -> "Word":
        return Prod(self, other)

    def inv(self) -> "Word":
        return Inv(self)

    def __repr__(self) -> str:
        return f"<word {render_word(self)}>"


@dataclass(frozen=True, repr=False)
class Gen(Word):
    name: str

    @property
    def length(self) -> int:
        return 1


@dataclass(frozen=True, repr=False)
class Neg(Word):
    child: Word
    length: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", 1 + self.child.length)


@dataclass(frozen=True, repr=False)
class Inv(Word):
    child: Word
    length: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", 1 + self.child.length)


@dataclass(frozen=True, repr=False)
class Sum(Word):
    left: Word
    right: Word
    length: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", 1 + self.left.length + self.right.length)


@dataclass(frozen=True, repr=False)
class Prod(Word):
    left: Word
    right: Word
    length: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "length", 1 + self.left.length + self.right.length)


_KIND_RANK = {Gen: 0, Neg: 1, Inv: 2, Sum: 3, Prod: 4}


def children(word: Word) -> tuple[Word, ...]:
    if isinstance(word, Gen):
        return ()
    if isinstance(word, (Neg, Inv)):
        return (word.child,)
    if isinstance(word, (Sum, Prod)):
        return (word.left, word.right)
    raise ContractViolation(f"unknown term node {type(word).__name__}")


def term_key(word: Word, gen_order: dict[str, int]) -> tuple:
    """Total order key: length first, then node kind, then children, then
    generator position.  Uniform tuple shape so nested keys compare."""
    if isinstance(word, Gen):
        if word.name not in gen_order:
            raise ContractViolation(f"generator {word.name!r} not in the declared order")
        return (1, 0, (), gen_order[word.name])
    rank = _KIND_RANK[type(word)]
    return (word.length, rank,
            tuple(term_key(c, gen_order) for c in children(word)), -1)


def words_up_to(generators: Sequence[str], max_len: int) -> list[Word]:
    """Every term of length <= max_len over the generators, in term order."""
    if max_len < 0:
        raise ContractViolation("negative term length bound")
    order = {name: i for i, name in enumerate(generators)}
    by_len: list[list[Word]] = [[]]
    for n in range(1, max_len + 1):
        bucket: list[Word] = []
        if n == 1:
            bucket.extend(Gen(name) for name in generators)
        else:
            bucket.extend(Neg(v) for v in by_len[n - 1])
            bucket.extend(Inv(v) for v in by_len[n - 1])
            for kind in (Sum, Prod):
                for lu in range(1, n - 1):
                    for u in by_len[lu]:
                        for v in by_len[n - 1 - lu]:
                            bucket.append(kind(u, v))
        bucket.sort(key=lambda w: term_key(w, order))
        by_len.append(bucket)
    out: list[Word] = []
    for bucket in by_len:
        out.extend(bucket)
    return out


# ---------------------------------------------------------------------------
# expression grammar: identifiers, + - * ^-1, parentheses

_LEVEL_SUM, _LEVEL_PROD, _LEVEL_NEG, _LEVEL_INV, _LEVEL_ATOM = 0, 1, 2, 3, 4


def _level(word: Word) -> int:
    if isinstance(word, Gen):
        return _LEVEL_ATOM
    if isinstance(word, Inv):
        return _LEVEL_INV
    if isinstance(word, Neg):
        return _LEVEL_NEG
    if isinstance(word, Prod):
        return _LEVEL_PROD
    return _LEVEL_SUM


def render_word(word: Word) -> str:
    """Deterministic text form; ``parse_word`` inverts it exactly."""

    def p(w: Word, floor: int) -> str:
        if isinstance(w, Gen):
            s = w.name
        elif isinstance(w, Inv):
            s = p(w.child, _LEVEL_INV) + "^-1"
        elif isinstance(w, Neg):
            s = "-" + p(w.child, _LEVEL_NEG)
        elif isinstance(w, Prod):
            s = p(w.left, _LEVEL_PROD) + " * " + p(w.right, _LEVEL_NEG)
        elif isinstance(w, Sum):
            s = p(w.left, _LEVEL_SUM) + " + " + p(w.right, _LEVEL_PROD)
        else:
            raise ContractViolation(f"unknown term node {type(w).__name__}")
        return "(" + s + ")" if _level(w) < floor else s

    return p(word, _LEVEL_SUM)


def _tokenize(text: str) -> list[str]:
    toks: list[str] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*()":
            toks.append(ch)
            i += 1
        elif ch == "^":
            j = i + 1
            while j < n and text[j].isspace():
                j += 1
            if j >= n or text[j] != "-":
                raise ContractViolation(f"expected ^-1 at position {i} in {text!r}")
            j += 1
            while j < n and text[j].isspace():
                j += 1
            if j >= n or text[j] != "1":
                raise ContractViolation(f"expected ^-1 at position {i} in {text!r}")
            toks.append("^-1")
            i = j + 1
        elif ch.isalnum() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(text[i:j])
            i = j
        else:
            raise ContractViolation(f"stray character {ch!r} in term {text!r}")
    return toks


def parse_word(text: str, generators: Optional[Sequence[str]] = None) -> Word:
    """Parse the term grammar.  ``+`` and binary ``-`` associate left;
    ``*`` binds tighter; unary ``-`` tighter still; postfix ``^-1`` tightest.
    When ``generators`` is given, identifiers must be among them."""
    toks = _tokenize(text)
    pos = 0

    def peek() -> Optional[str]:
        return toks[pos] if pos < len(toks) else None

    def take(expected: Optional[str] = None) -> str:
        nonlocal pos
        if pos >= len(toks):
            raise ContractViolation(f"term {text!r} ends unexpectedly")
        tok = toks[pos]
        if expected is not None and tok != expected:
            raise ContractViolation(f"expected {expected!r}, found {tok!r} in {text!r}")
        pos += 1
        return tok

    def atom() -> Word:
        tok = take()
        if tok == "(":
            inner = expr()
            take(")")
            return inner
        if tok in ("+", "-", "*", ")", "^-1"):
            raise ContractViolation(f"expected a generator or '(' before {tok!r} in {text!r}")
        if generators is not None and tok not in generators:
            raise ContractViolation(f"unknown generator {tok!r} in term {text!r}")
        return Gen(tok)

    def postfix() -> Word:
        w = atom()
        while peek() == "^-1":
            take()
            w = Inv(w)
        return w

    def factor() -> Word:
        if peek() == "-":
            take()
            return Neg(factor())
        return postfix()

    def term() -> Word:
        w = factor()
        while peek() == "*":
            take()
            w = Prod(w, factor())
        return w

    def expr() -> Word:
        w = term()
        while peek() in ("+", "-"):
            if take() == "+":
                w = Sum(w, term())
            else:
                w = Sum(w, Neg(term()))
        return w

    result = expr()
    if pos != len(toks):
        raise ContractViolation(f"trailing tokens after term in {text!r}")
    return result


# ---------------------------------------------------------------------------
# term -> pp formula

def word_pp(signature: Signature, word: Word) -> PPFormula:
    """The term's correspondence as a pp formula in two free variables.

    x is variable 0, the output y is variable 1.  Transposition swaps the
    variable roles, negation flips the output sign in place, a sum adds two
    witnesses tied by one linear row, a product chains one witness; so the
    quantifier count is twice the sum nodes plus the product nodes.
    """
    b = PPBuilder(2)

    def emit(w: Word, xv: int, xs: int, yv: int, ys: int) -> None:
        if isinstance(w, Gen):
            decl = signature.decl(w.name)
            if decl.arity != 2:
                raise ContractViolation(
                    f"generator {w.name!r} has arity {decl.arity}, need 2")
            b.block(w.name, ({xv: xs}, None), ({yv: ys}, None))
        elif isinstance(w, Neg):
            emit(w.child, xv, xs, yv, -ys)
        elif isinstance(w, Inv):
            emit(w.child, yv, ys, xv, xs)
        elif isinstance(w, Sum):
            zl = b.fresh()
            zr = b.fresh()
            emit(w.left, xv, xs, zl, 1)
            emit(w.right, xv, xs, zr, 1)
            b.zero_row({yv: ys, zl: -1, zr: -1})
        elif isinstance(w, Prod):
            mid = b.fresh()
            emit(w.right, xv, xs, mid, 1)
            emit(w.left, mid, 1, yv, ys)
        else:
            raise ContractViolation(f"unknown term node {type(w).__name__}")

    emit(word, 0, 1, 1, 1)
    return b.build(out_var=1)


# ---------------------------------------------------------------------------
# classification


class WordClass(Enum):
    NON_KOSHER = "NonKosher"
    ZERO = "Zero"
    NON_ZERO = "NonZeroKosher"


@dataclass(frozen=True)
class Classification:
    kind: WordClass
    # the pair that witnessed a Zero verdict, or the image element that
    # witnessed a NonZeroKosher one; None when the complementary search
    # closed the question or the label is structural
    witness: Optional[tuple[int, ...]] = None


@dataclass
class _CanonClass:
    rep: Word
    members: list[Word]


CACHE_HEADER = "smstruct-cache 1"


class WordCache:
    """Shared state for one structure's term classification.

    Construction probes the declared generators: exactly one must relate a
    generic element to itself (the diagonal) and exactly one must relate it
    to zero (the constant map); any further generator relating the generic
    element to zero is a constant correspondence in disguise and the fixture
    is rejected.  Canonicalization state is insertion-ordered, so the
    representative a term receives depends only on the call sequence.
    """

    def __init__(self, oracle: StructureOracle):
        if not oracle.word_generators:
            raise ConfigurationError(
                f"structure {oracle.name!r} declares no binary generators")
        if oracle.generic_hint is None:
            raise ConfigurationError("term classification needs a generic element")
        if oracle.group is None:
            raise ConfigurationError("term classification needs group operations")
        self.oracle = oracle
        self.generators = tuple(oracle.word_generators)
        self._order = {name: i for i, name in enumerate(self.generators)}
        t = oracle.generic_hint
        zero = oracle.group.zero
        diagonal = [s for s in self.generators if oracle.check_tuple(s, (t, t))]
        constant = [s for s in self.generators if oracle.check_tuple(s, (t, zero))]
        if not diagonal:
            raise ConfigurationError("no generator acts as the identity on the generic element")
        if not constant:
            raise ConfigurationError("no generator maps the generic element to zero")
        if len(constant) > 1:
            raise ConfigurationError(
                f"generators {constant!r} are all constant; normalize the fixture "
                "so the zero map is the only constant generator")
        self.identity_name = diagonal[0]
        self.zero_name = constant[0]
        self._cls: dict[Word, Classification] = {}
        self._pp: dict[Word, PPFormula] = {}
        self._img: dict[Word, PPFormula] = {}
        self._canon: list[_CanonClass] = []
        self._zero_class: Optional[_CanonClass] = None

    # -- term utilities ----------------------------------------------------

    def key(self, word: Word) -> tuple:
        return term_key(word, self._order)

    def identity_word(self) -> Word:
        return Gen(self.identity_name)

    def zero_word(self) -> Word:
        return Gen(self.zero_name)

    def integer_word(self, k: int) -> Word:
        """k as a term: iterated sums of the identity generator (negated for
        k < 0), the zero generator for k = 0."""
        if k == 0:
            return self.zero_word()
        w: Word = self.identity_word()
        for _ in range(abs(k) - 1):
            w = Sum(w, self.identity_word())
        return Neg(w) if k < 0 else w

    def graph_pp(self, word: Word) -> PPFormula:
        got = self._pp.get(word)
        if got is None:
            got = word_pp(self.oracle.signature, word)
            self._pp[word] = got
        return got

    def image_pp(self, word: Word) -> PPFormula:
        got = self._img.get(word)
        if got is None:
            got = project_pp(self.graph_pp(word), [1])
            self._img[word] = got
        return got

    # -- classification ----------------------------------------------------

    def classify(self, word: Word, fuel: int = DEFAULT_FUEL) -> Classification:
        got = self._cls.get(word)
        if got is not None:
            return got
        kids = children(word)
        kid_cls = [self.classify(c, fuel) for c in kids]
        if any(c.kind is WordClass.NON_KOSHER for c in kid_cls):
            result = Classification(WordClass.NON_KOSHER)
        elif isinstance(word, Inv) and kid_cls[0].kind is WordClass.ZERO:
            # transposing a constant correspondence is the one forbidden step
            result = Classification(WordClass.NON_KOSHER)
        elif isinstance(word, Neg):
            # negation preserves constancy both ways
            result = Classification(kid_cls[0].kind)
        else:
            result = self._decide(word, fuel)
        self._cls[word] = result
        return result

    def _decide(self, word: Word, fuel: int) -> Classification:
        """Interleave the two searches under escalating budget slices.

        Membership of (generic, zero) certifies Zero; the generic element in
        the image certifies NonZeroKosher.  An admissible term satisfies
        exactly one of the two, so a definite miss on either side also
        closes the question.  Verdicts are fuel-monotone because eval_pp is.
        """
        oracle = self.oracle
        t = oracle.generic_hint
        zero = oracle.group.zero
        phi = self.graph_pp(word)
        img = self.image_pp(word)
        budget = 1024
        while True:
            b = min(budget, fuel)
            v = eval_pp(oracle, phi, (t, zero), b)
            if v is TriBool.TRUE:
                return Classification(WordClass.ZERO, (t, zero))
            if v is TriBool.FALSE:
                return Classification(WordClass.NON_ZERO)
            v = eval_pp(oracle, img, (t,), b)
            if v is TriBool.TRUE:
                return Classification(WordClass.NON_ZERO, (t,))
            if v is TriBool.FALSE:
                return Classification(WordClass.ZERO)
            if b >= fuel:
                raise FuelExhausted(
                    f"term {render_word(word)!r} unclassified at fuel {fuel}")
            budget *= 4

    def note_zero(self, word: Word) -> None:
        """Record a term that is constant by construction.

        Row operations build sums and multiples of already-constant terms;
        the caller certifies that algebra, and recording it here spares the
        search.  Never use this for terms of unknown provenance.
        """
        existing = self._cls.get(word)
        if existing is not None:
            if existing.kind is not WordClass.ZERO:
                raise ContractViolation(
                    f"term {render_word(word)!r} already classified {existing.kind.value}")
            return
        self._cls[word] = Classification(WordClass.ZERO)

    # -- ring arithmetic ---------------------------------------------------

    def ring_eq(self, w1: Word, w2: Word, fuel: int = DEFAULT_FUEL) -> bool:
        k1 = self.classify(w1, fuel)
        k2 = self.classify(w2, fuel)
        if k1.kind is WordClass.NON_KOSHER or k2.kind is WordClass.NON_KOSHER:
            raise ContractViolation("ring equality is defined on admissible terms only")
        if w1 == w2:
            return True
        if {k1.kind, k2.kind} == {WordClass.ZERO, WordClass.NON_ZERO}:
            return False
        if k1.kind is WordClass.ZERO and k2.kind is WordClass.ZERO:
            return True
        return self.classify(Sum(w1, Neg(w2)), fuel).kind is WordClass.ZERO

    def canonical_rep(self, word: Word, fuel: int = DEFAULT_FUEL) -> Word:
        """Least term (in term order) among the previously canonicalized
        terms that are ring-equal to this one; joins its class as a side
        effect, so results depend only on the call sequence."""
        kind = self.classify(word, fuel).kind
        if kind is WordClass.NON_KOSHER:
            raise ContractViolation("only admissible terms have ring representatives")
        if kind is WordClass.ZERO:
            if self._zero_class is None:
                self._zero_class = _CanonClass(rep=word, members=[word])
                self._canon.append(self._zero_class)
            cls = self._zero_class
        else:
            cls = None
            for cand in self._canon:
                if cand is self._zero_class:
                    continue
                if self.ring_eq(word, cand.rep, fuel):
                    cls = cand
                    break
            if cls is None:
                cls = _CanonClass(rep=word, members=[word])
                self._canon.append(cls)
                return word
        if word not in cls.members:
            cls.members.append(word)
        if self.key(word) < self.key(cls.rep):
            cls.rep = word
        return cls.rep

    def canonical_reps(self) -> list[Word]:
        return [cls.rep for cls in self._canon]

    # -- persistence ---------------------------------------------------------

    def save(self, path: str) -> None:
        lines = [CACHE_HEADER]
        for word, cls in self._cls.items():
            lines.append(f"{render_word(word)}\t{cls.kind.value}")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")

    def load(self, path: str) -> int:
        """Merge a saved classification table; returns the entry count.
        Entries are trusted, so feed this only caches this package wrote."""
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
        if not lines or lines[0] != CACHE_HEADER:
            raise ContractViolation(f"{path}: not a classification cache")
        count = 0
        for line in lines[1:]:
            if not line.strip():
                continue
            expr, _, label = line.partition("\t")
            if label not in tuple(k.value for k in WordClass):
                raise ContractViolation(f"{path}: bad class label {label!r}")
            word = parse_word(expr, self.generators)
            self._cls.setdefault(word, Classification(WordClass(label)))
            count += 1
        return count


# ---------------------------------------------------------------------------
# module-level entry points


def classify(word: Word, oracle: StructureOracle, fuel: int = DEFAULT_FUEL,
             cache: Optional[WordCache] = None) -> Classification:
    cache = _resolve_cache(oracle, cache)
    return cache.classify(word, fuel)


def ring_eq(w1: Word, w2: Word, oracle: StructureOracle, fuel: int = DEFAULT_FUEL,
            cache: Optional[WordCache] = None) -> bool:
    cache = _resolve_cache(oracle, cache)
    return cache.ring_eq(w1, w2, fuel)


def canonical_rep(word: Word, oracle: StructureOracle, fuel: int = DEFAULT_FUEL,
                  cache: Optional[WordCache] = None) -> Word:
    cache = _resolve_cache(oracle, cache)
    return cache.canonical_rep(word, fuel)


@dataclass(frozen=True)
class WordCensus:
    """Classification sweep over all terms up to a length bound, term order.

    ``kosher`` lists every admissible term (the constant ones included);
    ``zero`` lists the constant ones; ``undecided`` flags the terms whose
    searches ran out of fuel, so the census is partial iff it is nonempty.
    """

    max_len: int
    kosher: tuple[Word, ...]
    zero: tuple[Word, ...]
    undecided: tuple[Word, ...]

    @property
    def complete(self) -> bool:
        return not self.undecided


def word_census(oracle: StructureOracle, max_len: int, fuel: int = DEFAULT_FUEL,
                cache: Optional[WordCache] = None) -> WordCensus:
    cache = _resolve_cache(oracle, cache)
    kosher: list[Word] = []
    zero: list[Word] = []
    undecided: list[Word] = []
    for word in words_up_to(cache.generators, max_len):
        try:
            cls = cache.classify(word, fuel)
        except FuelExhausted:
            undecided.append(word)
            continue
        if cls.kind is WordClass.NON_KOSHER:
            continue
        kosher.append(word)
        if cls.kind is WordClass.ZERO:
            zero.append(word)
    return WordCensus(max_len=max_len, kosher=tuple(kosher), zero=tuple(zero),
                      undecided=tuple(undecided))


def _resolve_cache(oracle: StructureOracle, cache: Optional[WordCache]) -> WordCache:
    if cache is None:
        return WordCache(oracle)
    if cache.oracle is not oracle:
        raise ContractViolation("classification cache belongs to a different structure")
    return cache


__all__ = [
    "Word",
    "Gen",
    "Neg",
    "Inv",
    "Sum",
    "Prod",
    "children",
    "term_key",
    "words_up_to",
    "render_word",
    "parse_word",
    "word_pp",
    "WordClass",
    "Classification",
    "WordCache",
    "WordCensus",
    "CACHE_HEADER",
    "classify",
    "ring_eq",
    "canonical_rep",
    "word_census",
]
