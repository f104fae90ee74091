"""Signature reductions and model synthesis for the group-like case.

Four reductions prepare a structure for the ring machinery: restricting a
group symbol to its finite-index connected part (with coset-representative
constants), decomposing a higher-arity group along a surjective coordinate
projection with finite kernel, replacing an n-ary group by its consecutive
binary projections plus their fiber product, and enumerating the algebraic
closure of the empty set as the union of images of constant-class terms.

The synthesis side builds concrete computable models: a frozen table of
canonical ring classes, the d-dimensional coordinate module over that table
(for finite d and for finite-support omega), and the direct sum of an
algebraic prime part with such a module, which presents a model of every
dimension.  All universes are initial segments of the naturals (or all of
them) under encoders documented field by field, so dumps reproduce exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import islice
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .encoding import cantor_pair, cantor_unpair
from .errors import (
    ConfigurationError,
    ContractViolation,
    FuelExhausted,
    TableExhausted,
)
from .ppeval import DEFAULT_FUEL, eval_pp, solutions, solve_assignments
from .qring import (
    Gen,
    Neg,
    Prod,
    Sum,
    Word,
    WordCache,
    render_word,
    word_census,
)
from .structures import (
    GroupOps,
    PPBuilder,
    PPFormula,
    Signature,
    StructureOracle,
    SymbolDecl,
    TriBool,
    atomic_pp,
    project_pp,
)

RelationLike = Union[str, PPFormula]


def _as_pp(oracle: StructureOracle, g: RelationLike) -> tuple[PPFormula, Optional[str]]:
    if isinstance(g, str):
        return atomic_pp(oracle.signature, g), g
    return g, None


def _embed(builder: PPBuilder, pp: PPFormula, free_map: Sequence[int]) -> None:
    """Append pp's blocks to a builder, sending its free variables to
    free_map and its quantified variables to fresh ones."""
    if len(free_map) != pp.n_free:
        raise ContractViolation("free-variable map does not match the formula")
    remap = list(free_map) + [builder.fresh() for _ in range(pp.n_quant)]
    for sym, rows in pp.blocks:
        forms = []
        for coeffs, offset in rows:
            form: dict[int, int] = {}
            for v, k in enumerate(coeffs):
                if k:
                    form[remap[v]] = form.get(remap[v], 0) + k
            forms.append((form, offset))
        if sym is None:
            for f, off in forms:
                builder.zero_row(f, off)
        else:
            builder.block(sym, *forms)


def _sample_codes(oracle: StructureOracle, count: int, seed: int,
                  window: int = 10_000) -> list[int]:
    """Deterministic sample of element codes: a canonical prefix plus a
    seeded spread over a window (clamped to the universe)."""
    bound = oracle.universe_size if oracle.universe_size is not None else window
    rng = random.Random(seed)
    seen: list[int] = []
    used = set()
    prefix = min(count // 2 + 1, bound)
    for c in range(prefix):
        seen.append(c)
        used.add(c)
    while len(seen) < min(count, bound):
        c = rng.randrange(bound)
        if c not in used:
            used.add(c)
            seen.append(c)
    return seen


# ---------------------------------------------------------------------------
# connected component reduction


@dataclass(frozen=True)
class ConnectedReduction:
    """Outcome of restricting a group symbol to a declared finite-index
    part: the enlarged signature (new subgroup symbol), the defining pp
    formula, and the coset-representative constants, named per coordinate."""

    signature: Signature
    g_symbol: str
    subgroup_symbol: str
    subgroup: PPFormula
    constants: dict[str, int]
    coset_reps: tuple[tuple[int, ...], ...]


def connected_reduce(oracle: StructureOracle, g_symbol: str, g0: PPFormula,
                     coset_reps: Sequence[Sequence[int]], *,
                     samples: int = 200, seed: int = 0,
                     fuel: int = DEFAULT_FUEL) -> ConnectedReduction:
    """Verify that the declared subgroup and representatives cover the
    group symbol exactly, then emit the extended signature.

    The check is extensional: on sampled tuples (exhaustive when the
    universe is small enough), membership in the symbol must coincide with
    membership of tuple - rep in the subgroup for some representative.  Any
    mismatch is reported with the offending tuple.
    """
    arity = oracle.signature.arity(g_symbol)
    if g0.n_free != arity:
        raise ContractViolation(
            f"subgroup formula has {g0.n_free} free variables, symbol wants {arity}")
    reps = tuple(tuple(r) for r in coset_reps)
    if not reps or any(len(r) != arity for r in reps):
        raise ContractViolation("need nonempty representatives of the symbol's arity")
    if oracle.group is None:
        raise ConfigurationError("coset translation needs group operations")
    sub = oracle.group.sub

    size = oracle.universe_size
    if size is not None and size ** arity <= max(samples, 4096):
        pool: Iterable[tuple[int, ...]] = _all_tuples(size, arity)
    else:
        codes = _sample_codes(oracle, max(samples, 8), seed)
        rng = random.Random(seed + 1)
        pool = [tuple(rng.choice(codes) for _ in range(arity))
                for _ in range(samples)]
        pool.extend(tuple(r) for r in reps)

    for tup in pool:
        in_g = oracle.check_tuple(g_symbol, tup)
        covered = False
        unknown = False
        for rep in reps:
            shifted = tuple(sub(a, c) for a, c in zip(tup, rep))
            v = eval_pp(oracle, g0, shifted, fuel)
            if v is TriBool.TRUE:
                covered = True
                break
            if v is TriBool.UNKNOWN:
                unknown = True
        if in_g and not covered:
            if unknown:
                raise FuelExhausted(f"cover check inconclusive at {tup}")
            raise ContractViolation(
                f"{g_symbol} member {tup} is outside every representative coset")
        if covered and not in_g:
            raise ContractViolation(
                f"representative cosets reach {tup}, which is outside {g_symbol}")

    sub_name = f"{g_symbol}0"
    if sub_name in {d.name for d in oracle.signature.symbols}:
        raise ConfigurationError(f"derived name {sub_name!r} collides with the signature")
    symbols = oracle.signature.symbols + (SymbolDecl(sub_name, arity, "group"),)
    morley = dict(oracle.signature.morley)
    if g_symbol in morley:
        src = morley[g_symbol]
        morley[sub_name] = type(src)(rank=src.rank, degree=1, connected=True)
    constants: dict[str, int] = {}
    for i, rep in enumerate(reps):
        for k, c in enumerate(rep):
            constants[f"{g_symbol}.c{i}.{k}"] = c
    return ConnectedReduction(
        signature=Signature(symbols=symbols, morley=morley),
        g_symbol=g_symbol,
        subgroup_symbol=sub_name,
        subgroup=g0,
        constants=constants,
        coset_reps=reps,
    )


def _all_tuples(size: int, arity: int) -> Iterator[tuple[int, ...]]:
    tup = [0] * arity
    while True:
        yield tuple(tup)
        i = 0
        while i < arity:
            tup[i] += 1
            if tup[i] < size:
                break
            tup[i] = 0
            i += 1
        if i == arity:
            return


# ---------------------------------------------------------------------------
# rank-one decomposition


def rank_one_decompose(oracle: StructureOracle, g: RelationLike,
                       basis_coords: int, kernel: Iterable[Sequence[int]], *,
                       fuel: int = DEFAULT_FUEL) -> Callable[[Sequence[int]], bool]:
    """Membership procedure for an n-ary group whose projection to the
    first r coordinates is surjective with the given finite kernel.

    For input (a, b): for each basis coordinate, search a member above the
    unit-supported tuple (0,..,a_i,..,0); membership holds iff b minus the
    sum of the found tails lands in the kernel.  The kernel tuples list
    only the trailing n - r coordinates.
    """
    pp, _ = _as_pp(oracle, g)
    n = pp.n_free
    r = basis_coords
    if not 1 <= r < n:
        raise ContractViolation(f"basis width {r} out of range for arity {n}")
    if oracle.group is None:
        raise ConfigurationError("decomposition needs group operations")
    kernel_set = {tuple(k) for k in kernel}
    if any(len(k) != n - r for k in kernel_set):
        raise ContractViolation("kernel tuples must list the trailing coordinates")
    group = oracle.group

    def member(args: Sequence[int]) -> bool:
        tup = tuple(args)
        if len(tup) != n:
            raise ContractViolation(f"membership wants {n} coordinates, got {len(tup)}")
        tails = [group.zero] * (n - r)
        for i in range(r):
            pins = {k: (tup[i] if k == i else group.zero) for k in range(r)}
            sols, complete = solve_assignments(oracle, pp, pins, fuel, cap=1)
            if not sols:
                if complete:
                    raise ContractViolation(
                        f"projection is not surjective: no member over slot {i}")
                raise FuelExhausted(f"no witness found over basis slot {i} within fuel")
            tail = sols[0][r:]
            tails = [group.add(t, c) for t, c in zip(tails, tail)]
        residual = tuple(group.sub(tup[r + k], tails[k]) for k in range(n - r))
        return residual in kernel_set

    return member


# ---------------------------------------------------------------------------
# binary projections and the fiber product


@dataclass(frozen=True)
class BinaryProjections:
    """Consecutive-coordinate binary projections of an n-ary relation,
    realized as decidable predicates through the declared fiber bound, and
    their fiber product (conjunction along the chain)."""

    source: PPFormula
    projections: tuple[PPFormula, ...]
    fiber_bound: int
    fiber_product: PPFormula
    _oracle: StructureOracle = field(compare=False, repr=False)
    _fuel: int = field(compare=False, repr=False, default=DEFAULT_FUEL)

    def fiber(self, i: int, u: int, fuel: Optional[int] = None) -> tuple[int, ...]:
        """The complete fiber of the i-th projection over first coordinate
        u, in enumeration order.  Decidable: the search stops at the
        declared bound or at exhaustion, and overflow is a misdeclaration."""
        fuel = self._fuel if fuel is None else fuel
        sols, complete = solve_assignments(
            self._oracle, self.projections[i], {0: u}, fuel, cap=self.fiber_bound + 1)
        if len(sols) > self.fiber_bound:
            raise ContractViolation(
                f"projection {i} has more than {self.fiber_bound} values over {u}")
        if len(sols) < self.fiber_bound and not complete:
            raise FuelExhausted(f"fiber of projection {i} over {u} not exhausted")
        return tuple(s[1] for s in sols)

    def decide(self, i: int, u: int, v: int, fuel: Optional[int] = None) -> bool:
        return v in self.fiber(i, u, fuel)


def binary_projections(oracle: StructureOracle, g: RelationLike, *,
                       fiber_bound: Optional[int] = None, samples: int = 40,
                       fuel: int = DEFAULT_FUEL) -> BinaryProjections:
    """Project an n-ary group relation to each consecutive coordinate pair
    and form the fiber-product supergroup (the chain conjunction).

    The fiber bound makes each projection a decidable predicate; it comes
    from the fixture's declaration unless passed explicitly.  Containment
    of the relation in the fiber product is asserted on enumerated samples.
    """
    pp, sym = _as_pp(oracle, g)
    n = pp.n_free
    if n < 2:
        raise ContractViolation("projections need at least two coordinates")
    if fiber_bound is None and sym is not None:
        fiber_bound = (oracle.fiber_bounds or {}).get(sym)
    if fiber_bound is None or fiber_bound < 1:
        raise ConfigurationError(
            "no fiber-size bound declared for the relation; decidability needs one")

    projections = tuple(project_pp(pp, [i, i + 1]) for i in range(n - 1))
    b = PPBuilder(n)
    for i, proj in enumerate(projections):
        _embed(b, proj, [i, i + 1])
    product = b.build(out_var=min(1, n - 1))

    result = BinaryProjections(
        source=pp,
        projections=projections,
        fiber_bound=fiber_bound,
        fiber_product=product,
        _oracle=oracle,
        _fuel=fuel,
    )
    for tup in islice(solutions(oracle, pp, fuel), samples):
        for i in range(n - 1):
            if not result.decide(i, tup[i], tup[i + 1]):
                raise ContractViolation(
                    f"member {tup} escapes projection {i}: containment fails")
    return result


# ---------------------------------------------------------------------------
# algebraic-closure enumerators


def _image_source(oracle: StructureOracle, item: Union[Word, PPFormula],
                  cache: Optional[WordCache],
                  ) -> tuple[PPFormula, int, Optional[WordCache]]:
    """Formula to enumerate plus the free-variable index carrying the image.

    Binary graphs are enumerated as pairs and projected afterwards: a pinned
    pair is decided by plain propagation, where the projected image formula
    would demand a genuine witness search per candidate."""
    if isinstance(item, Word):
        if cache is None:
            cache = WordCache(oracle)
        return cache.graph_pp(item), 1, cache
    if item.n_free == 2:
        return item, 1, cache
    if item.n_free == 1:
        return item, 0, cache
    raise ContractViolation("image enumeration wants a term or a 1- or 2-variable formula")


def acl0_enum(oracle: StructureOracle, z_list: Iterable[Union[Word, PPFormula]],
              fuel: int = DEFAULT_FUEL, *,
              cache: Optional[WordCache] = None) -> Iterator[int]:
    """Enumerate the algebraic closure of the empty set: the union of the
    images of the given constant-class terms (or image formulas), dovetailed
    fairly, first-seen order, no duplicates.  Fuel bounds each per-item
    search, so the output is a correct prefix rather than an error."""
    sources = []
    for item in z_list:
        pp, at, cache = _image_source(oracle, item, cache)
        sources.append((solutions(oracle, pp, fuel), at))
    seen: set[int] = set()
    alive = list(range(len(sources)))
    while alive:
        still = []
        for k in alive:
            it, at = sources[k]
            try:
                sol = next(it)
            except StopIteration:
                continue
            except TableExhausted:
                # a frozen-table model ran out of window: the source has
                # yielded everything the table can certify
                continue
            still.append(k)
            code = sol[at]
            if code not in seen:
                seen.add(code)
                yield code
        alive = still


def acl_of(oracle: StructureOracle, a: int,
           k_list: Iterable[Word], z_list: Iterable[Union[Word, PPFormula]],
           fuel: int = DEFAULT_FUEL, *,
           cache: Optional[WordCache] = None,
           acl0_cap: int = 32, fiber_cap: int = 32) -> Iterator[int]:
    """Enumerate the algebraic closure of a single element: every b such
    that some nonconstant admissible term relates a to b + d for an already
    enumerated algebraic d.  Emission order is term-major, deterministic."""
    if oracle.group is None:
        raise ConfigurationError("translation by algebraic elements needs group ops")
    if cache is None:
        cache = WordCache(oracle)
    z_items = list(z_list)
    z_set = {z for z in z_items if isinstance(z, Word)}
    ds = list(islice(acl0_enum(oracle, z_items, fuel, cache=cache), acl0_cap))
    sub = oracle.group.sub
    seen: set[int] = set()
    for w in k_list:
        if w in z_set:
            continue
        phi = cache.graph_pp(w)
        try:
            sols, _complete = solve_assignments(oracle, phi, {0: a}, fuel,
                                                cap=fiber_cap)
        except TableExhausted:
            continue  # fiber beyond a frozen table's window: skip the term
        for sol in sols:
            y = sol[1]
            for d in ds:
                b = sub(y, d)
                if b not in seen:
                    seen.add(b)
                    yield b


# ---------------------------------------------------------------------------
# the frozen ring table


@dataclass
class RingTable:
    """Finite window of the term ring: canonical class representatives in a
    frozen order (class 0 is the zero class, class 1 the identity class)
    with memoized arithmetic.  Operations whose result falls outside the
    window raise a "table exhausted" error instead of guessing."""

    cache: WordCache
    fuel: int
    max_len: int
    reps: tuple[Word, ...]
    index: dict[Word, int]
    gens: dict[str, int]
    _add: dict[tuple[int, int], int] = field(default_factory=dict)
    _neg: dict[int, int] = field(default_factory=dict)
    _mul: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.reps)

    def _resolve(self, word: Word, what: str) -> int:
        rep = self.cache.canonical_rep(word, self.fuel)
        got = self.index.get(rep)
        if got is None:
            raise TableExhausted(
                f"table exhausted: {what} {render_word(word)!r} lands outside "
                f"the length-{self.max_len} window")
        return got

    def add(self, i: int, j: int) -> int:
        key = (i, j)
        got = self._add.get(key)
        if got is None:
            got = self._resolve(Sum(self.reps[i], self.reps[j]), "sum")
            self._add[key] = got
        return got

    def neg(self, i: int) -> int:
        got = self._neg.get(i)
        if got is None:
            got = self._resolve(Neg(self.reps[i]), "negation")
            self._neg[i] = got
        return got

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        got = self._mul.get(key)
        if got is None:
            got = self._resolve(Prod(self.reps[i], self.reps[j]), "product")
            self._mul[key] = got
        return got

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))


def build_ring_table(oracle: StructureOracle, max_len: int,
                     fuel: int = DEFAULT_FUEL, *,
                     cache: Optional[WordCache] = None) -> RingTable:
    """Classify and canonicalize every term up to max_len into a frozen
    class table.  Canonicalization order is fixed (zero class, identity
    class, then census order), so table indices are reproducible."""
    if cache is None:
        cache = WordCache(oracle)
    census = word_census(oracle, max_len, fuel, cache=cache)
    if census.undecided:
        raise FuelExhausted(
            f"{len(census.undecided)} terms of length <= {max_len} remain unclassified")
    reps: list[Word] = []
    index: dict[Word, int] = {}

    def note(word: Word) -> None:
        rep = cache.canonical_rep(word, fuel)
        if rep not in index:
            index[rep] = len(reps)
            reps.append(rep)

    note(cache.zero_word())
    note(cache.identity_word())
    for w in census.kosher:
        note(w)
    gens = {name: index[cache.canonical_rep(Gen(name), fuel)]
            for name in cache.generators}
    return RingTable(cache=cache, fuel=fuel, max_len=max_len,
                     reps=tuple(reps), index=index, gens=gens)


# ---------------------------------------------------------------------------
# coordinate modules over the table


def _digits(code: int, base: int) -> list[int]:
    out = []
    while code:
        code, d = divmod(code, base)
        out.append(d)
    return out


def _undigits(digits: Sequence[int], base: int) -> int:
    code = 0
    for d in reversed(digits):
        code = code * base + d
    return code


def build_vector_model(table: RingTable, d: Optional[int]) -> StructureOracle:
    """The d-dimensional coordinate module over the ring table as a
    computable structure.

    Universe encoding (bit-exact): an element is its little-endian base-T
    digit string over the class table of size T, digit k = class index of
    coordinate k; finite d means codes below T**d, d = None means the
    finite-support omega power (every natural is such a code).  Addition is
    coordinatewise table addition; each declared generator is the graph of
    coordinatewise left multiplication by its class.
    """
    if d is not None and d < 0:
        raise ContractViolation("dimension must be a natural or None")
    base = table.size
    dim_name = "omega" if d is None else str(d)
    size = None if d is None else base ** d

    src = table.cache.oracle.signature
    gens = table.gens
    keep: list[SymbolDecl] = []
    add_sym: Optional[str] = None
    for decl in src.symbols:
        if decl.name in gens:
            keep.append(decl)
        elif decl.arity == 3 and decl.kind == "group" and add_sym is None:
            add_sym = decl.name
            keep.append(decl)
    if add_sym is None:
        raise ConfigurationError("source signature declares no 3-ary group symbol")
    morley = {add_sym: src.morley[add_sym]} if add_sym in src.morley else {}
    sig = Signature(symbols=tuple(keep), morley=morley)

    def decode(code: int) -> list[int]:
        if code < 0 or (size is not None and code >= size):
            raise ContractViolation(f"code {code} outside the universe")
        return _digits(code, base)

    def zip_digits(*codes: int) -> Iterator[tuple[int, ...]]:
        vecs = [decode(c) for c in codes]
        width = max((len(v) for v in vecs), default=0)
        for k in range(width):
            yield tuple(v[k] if k < len(v) else 0 for v in vecs)

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        if sym == add_sym:
            return all(table.add(x, y) == z for x, y, z in zip_digits(*args))
        gi = gens.get(sym)
        if gi is None:
            raise ContractViolation(f"unknown symbol {sym!r}")
        return all(table.mul(gi, x) == y for x, y in zip_digits(*args))

    def vec_add(a: int, b: int) -> int:
        return _undigits([table.add(x, y) for x, y in zip_digits(a, b)], base)

    def vec_neg(a: int) -> int:
        return _undigits([table.neg(x) for x, in zip_digits(a)], base)

    ops = GroupOps(zero=0, add=vec_add, neg=vec_neg)

    def complete(sym: str, partial: tuple) -> Optional[list[tuple[int, ...]]]:
        holes = [i for i, v in enumerate(partial) if v is None]
        if not holes:
            return [tuple(partial)] if holds(sym, tuple(partial)) else []
        if sym == add_sym and len(holes) == 1:
            a, b, c = partial
            if holes[0] == 2:
                return [(a, b, vec_add(a, b))]
            if holes[0] == 1:
                return [(a, vec_add(c, vec_neg(a)), c)]
            return [(vec_add(c, vec_neg(b)), b, c)]
        gi = gens.get(sym)
        if gi is not None and holes == [1]:
            x = partial[0]
            y = _undigits([table.mul(gi, xd) for xd, in zip_digits(x)], base)
            return [(x, y)]
        return None

    return StructureOracle(
        signature=sig,
        holds=holds,
        universe_size=size,
        group=ops,
        generic_hint=None if d == 0 else _undigits([1], base),
        complete_block=complete,
        word_generators=tuple(gens),
        fiber_bounds={name: 1 for name in gens},
        is_algebraic=lambda x: x == 0,
        name=f"ringpower:{dim_name}",
    )


# ---------------------------------------------------------------------------
# direct sums


@dataclass(frozen=True)
class ModelPresentation:
    """A computable model assembled from an algebraic prime part and a
    coordinate-module part.  ``oracle`` is the combined structure; the
    parts stay available for componentwise inspection.  ``encoder``
    documents the exact pairing of the two universes."""

    kind: str
    prime: StructureOracle
    vector: StructureOracle
    oracle: StructureOracle
    encoder: str


def direct_sum(prime: StructureOracle, vector: StructureOracle, *,
               strip_constants: bool = False) -> ModelPresentation:
    """Combine an algebraic part with a module part componentwise.

    Universe pairing (bit-exact): with the prime universe finite of size P,
    code = p + P * v; with only the vector universe finite of size V,
    code = v + V * p; with both infinite, the diagonal pairing
    (p + v)(p + v + 1)/2 + v.  A relation holds iff it holds in both parts
    coordinatewise; every other hint combines componentwise as well.
    """
    a = {(s.name, s.arity) for s in prime.signature.symbols}
    b = {(s.name, s.arity) for s in vector.signature.symbols}
    if a != b:
        raise ContractViolation(
            f"signature mismatch between parts: {sorted(a ^ b)}")
    psize = prime.universe_size
    vsize = vector.universe_size

    if psize is not None:
        def pair(p: int, v: int) -> int:
            return p + psize * v

        def unpair(c: int) -> tuple[int, int]:
            return c % psize, c // psize
        encoder = f"code = prime + {psize} * vector"
    elif vsize is not None:
        def pair(p: int, v: int) -> int:
            return v + vsize * p

        def unpair(c: int) -> tuple[int, int]:
            return c // vsize, c % vsize
        encoder = f"code = vector + {vsize} * prime"
    else:
        pair, unpair = cantor_pair, cantor_unpair
        encoder = "code = diagonal pairing of (prime, vector)"
    size = psize * vsize if psize is not None and vsize is not None else None

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        parts = [unpair(c) for c in args]
        return (prime.holds(sym, tuple(p for p, _ in parts))
                and vector.holds(sym, tuple(v for _, v in parts)))

    pg, vg = prime.group, vector.group
    ops = None
    if pg is not None and vg is not None:
        ops = GroupOps(
            zero=pair(pg.zero, vg.zero),
            add=lambda x, y: pair(pg.add(unpair(x)[0], unpair(y)[0]),
                                  vg.add(unpair(x)[1], unpair(y)[1])),
            neg=lambda x: pair(pg.neg(unpair(x)[0]), vg.neg(unpair(x)[1])),
        )

    def complete(sym: str, partial: tuple) -> Optional[list[tuple[int, ...]]]:
        if prime.complete_block is None or vector.complete_block is None:
            return None
        pp = tuple(None if c is None else unpair(c)[0] for c in partial)
        vp = tuple(None if c is None else unpair(c)[1] for c in partial)
        lp = prime.complete_block(sym, pp)
        lv = vector.complete_block(sym, vp)
        if lp is None or lv is None:
            return None
        out = []
        for tp in lp:
            for tv in lv:
                cand = tuple(pair(x, y) for x, y in zip(tp, tv))
                ok = all(partial[i] is None or partial[i] == cand[i]
                         for i in range(len(partial)))
                if ok and cand not in out:
                    out.append(cand)
        return out

    generic = None
    if vector.generic_hint is not None and pg is not None:
        generic = pair(pg.zero, vector.generic_hint)

    def algebraic(c: int) -> Optional[bool]:
        if vector.is_algebraic is None:
            return None
        return vector.is_algebraic(unpair(c)[1])

    constants = {}
    if not strip_constants:
        constants = {name: pair(c, vg.zero if vg else 0)
                     for name, c in prime.named_constants.items()}

    combined = StructureOracle(
        signature=vector.signature,
        holds=holds,
        universe_size=size,
        named_constants=constants,
        group=ops,
        generic_hint=generic,
        complete_block=complete,
        word_generators=vector.word_generators,
        fiber_bounds=vector.fiber_bounds,
        is_algebraic=algebraic,
        name=f"{prime.name}(+){vector.name}",
    )
    return ModelPresentation(
        kind="abelian-direct-sum",
        prime=prime,
        vector=vector,
        oracle=combined,
        encoder=encoder,
    )


__all__ = [
    "ConnectedReduction",
    "connected_reduce",
    "rank_one_decompose",
    "BinaryProjections",
    "binary_projections",
    "acl0_enum",
    "acl_of",
    "RingTable",
    "build_ring_table",
    "build_vector_model",
    "ModelPresentation",
    "direct_sum",
]
