"""Component analysis and model construction for disintegrated structures.

Pipeline: every relation symbol of rank at most 1 induces derived binary
edge relations (one per ordered coordinate pair); finitely many elements of
unbounded valence are split off as named constants and the edge sense is
inverted around them, so that an edge always certifies interalgebraicity.
Neighborhood balls in the resulting colored graph grow computably, ball
isomorphism over the constants detects membership in acl(empty), and models
of any dimension are assembled as one acl(empty) part plus disjoint copies
of a generic component glued over the constants.

Also here: the extensional rank-reduction of an explicit finite relation
into coordinate projections plus two low-rank correction sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ConfigurationError, ContractViolation, FuelExhausted
from .ppeval import DEFAULT_FUEL, eval_pp, solve_assignments
from .structures import (
    PPBuilder,
    PPFormula,
    Signature,
    StructureOracle,
    TriBool,
)


def _tri_not(v: TriBool) -> TriBool:
    if v is TriBool.TRUE:
        return TriBool.FALSE
    if v is TriBool.FALSE:
        return TriBool.TRUE
    return TriBool.UNKNOWN


def projection_pp(signature: Signature, symbol: str, i: int, j: int) -> PPFormula:
    """The derived binary predicate: project the symbol onto coordinates
    (i, j), existentially closing the rest."""
    arity = signature.arity(symbol)
    if not (0 <= i < arity and 0 <= j < arity) or i == j:
        raise ContractViolation(f"bad coordinate pair ({i}, {j}) for {symbol!r}")
    b = PPBuilder(2)
    rows = []
    for pos in range(arity):
        if pos == i:
            rows.append(({0: 1}, None))
        elif pos == j:
            rows.append(({1: 1}, None))
        else:
            rows.append(({b.fresh(): 1}, None))
    b.block(symbol, *rows)
    return b.build(out_var=1)


@dataclass(frozen=True)
class EdgeRelation:
    """One derived edge color: the (i, j) projection of a source symbol,
    with the finitely many source/target elements of unbounded valence."""

    symbol: str
    i: int
    j: int
    proj: PPFormula
    sources_exceptional: tuple[int, ...] = ()
    targets_exceptional: tuple[int, ...] = ()


@dataclass(frozen=True)
class EdgeSystem:
    """All derived edge relations of a structure plus the constants naming
    the exceptional elements."""

    edges: tuple[EdgeRelation, ...]
    constants: dict[str, int] = field(default_factory=dict, hash=False, compare=False)

    def constant_labels(self) -> dict[int, str]:
        by_value: dict[int, list[str]] = {}
        for name, value in self.constants.items():
            by_value.setdefault(value, []).append(name)
        return {v: ",".join(sorted(names)) for v, names in by_value.items()}


def edge_verdict(oracle: StructureOracle, edge: EdgeRelation, a: int, b: int,
                 fuel: int = DEFAULT_FUEL) -> TriBool:
    """Decide the derived edge at (a, b).

    Around an exceptional endpoint the projected relation is inverted; the
    inverted sense is what certifies interalgebraicity there, since such an
    element is related to all but finitely many others.
    """
    base = eval_pp(oracle, edge.proj, (a, b), fuel)
    if a in edge.sources_exceptional or b in edge.targets_exceptional:
        return _tri_not(base)
    return base


def _complement_fill(oracle: StructureOracle, edge: EdgeRelation, v: int,
                     forward: bool) -> Optional[list[int]]:
    # finite list of w with NOT proj(v, w) (forward) or NOT proj(w, v)
    if oracle.complement_block is None:
        return None
    arity = oracle.signature.arity(edge.symbol)
    if arity != 2:
        return None  # complement of a proper projection is not a fiber query
    pin_pos = edge.i if forward else edge.j
    partial: list[Optional[int]] = [None, None]
    partial[pin_pos] = v
    return oracle.complement_block(edge.symbol, tuple(partial))


def _edge_fiber(oracle: StructureOracle, edge: EdgeRelation, v: int,
                forward: bool, fuel: int) -> list[int]:
    """All w with edge(v, w) (forward) or edge(w, v) (backward).

    Finite for every element: ordinary elements have finitely many related
    partners, exceptional ones a finite complement."""
    near = edge.sources_exceptional if forward else edge.targets_exceptional
    far = edge.targets_exceptional if forward else edge.sources_exceptional
    if v in near:
        fill = _complement_fill(oracle, edge, v, forward)
        if fill is None:
            raise ConfigurationError(
                f"cannot enumerate the cofinite edge fiber at constant {v}"
                f" for {edge.symbol}({edge.i},{edge.j})")
        return sorted(set(fill))
    pin = {0: v} if forward else {1: v}
    sols, complete = solve_assignments(oracle, edge.proj, pin, fuel)
    if not complete:
        raise FuelExhausted(
            f"edge fiber at {v} for {edge.symbol}({edge.i},{edge.j})"
            " not exhausted within fuel")
    take = 1 if forward else 0
    out = {tup[take] for tup in sols if tup[take] not in far}
    for w in far:
        pair = (v, w) if forward else (w, v)
        verdict = eval_pp(oracle, edge.proj, pair, fuel)
        if verdict is TriBool.UNKNOWN:
            raise FuelExhausted(
                f"edge test against constant {w} undecided within fuel")
        if verdict is TriBool.FALSE:
            out.add(w)
    return sorted(out)


def edge_neighbors(oracle: StructureOracle, edges: EdgeSystem, v: int,
                   fuel: int = DEFAULT_FUEL) -> list[int]:
    """Union of all edge fibers at v, both directions, ascending."""
    out: set[int] = set()
    for edge in edges.edges:
        out.update(_edge_fiber(oracle, edge, v, True, fuel))
        out.update(_edge_fiber(oracle, edge, v, False, fuel))
    return sorted(out)


def derive_edges(oracle: StructureOracle, fuel: int = 64) -> EdgeSystem:
    """Assemble the derived edge system of a structure.

    Candidate (symbol, i, j) triples come from the fixture declaration when
    present, otherwise all ordered coordinate pairs of rank-1 symbols are
    taken.  Exceptional elements are the declared ones, or else those among
    the first ``fuel`` elements related to more than ``valence_bound``
    others in that prefix.
    """
    sig = oracle.signature
    for decl in sig.symbols:
        if decl.arity == 0:
            continue
        meta = sig.morley.get(decl.name)
        if meta is None:
            raise ConfigurationError(f"no rank metadata for symbol {decl.name!r}")
        if meta.rank > 1:
            raise ConfigurationError(
                f"symbol {decl.name!r} has rank {meta.rank}; reduce it first")
    candidates = oracle.edge_candidates
    if candidates is None:
        candidates = tuple(
            (decl.name, i, j)
            for decl in sig.symbols
            if decl.arity >= 2 and sig.morley[decl.name].rank == 1
            for i in range(decl.arity)
            for j in range(decl.arity)
            if i != j)
    declared = oracle.declared_exceptional
    if declared is None and candidates and oracle.valence_bound is None:
        raise ConfigurationError(
            "need either declared exceptional elements or a valence bound")
    prefix = oracle.element_prefix(fuel)
    edges = []
    constants: dict[str, int] = {}
    for sym, i, j in candidates:
        proj = projection_pp(sig, sym, i, j)
        if declared is not None:
            c_list, d_list = declared.get((sym, i, j), ((), ()))
        else:
            c_list = _valence_census(oracle, proj, prefix, oracle.valence_bound,
                                     forward=True, fuel=fuel)
            d_list = _valence_census(oracle, proj, prefix, oracle.valence_bound,
                                     forward=False, fuel=fuel)
        edge = EdgeRelation(sym, i, j, proj, tuple(c_list), tuple(d_list))
        edges.append(edge)
        for k, c in enumerate(edge.sources_exceptional):
            constants[f"{sym}.{i}{j}.c{k}"] = c
        for k, d in enumerate(edge.targets_exceptional):
            constants[f"{sym}.{i}{j}.d{k}"] = d
    return EdgeSystem(tuple(edges), constants)


def _valence_census(oracle: StructureOracle, proj: PPFormula, prefix: list[int],
                    bound: int, forward: bool, fuel: int) -> list[int]:
    found = []
    for a in prefix:
        degree = 0
        for b in prefix:
            pair = (a, b) if forward else (b, a)
            if eval_pp(oracle, proj, pair, fuel) is TriBool.TRUE:
                degree += 1
                if degree > bound:
                    found.append(a)
                    break
    return found


@dataclass
class ComponentGraph:
    """A neighborhood ball: vertices in discovery order, induced colored
    directed edges, and the constant labels pinned inside the ball."""

    center: int
    radius: int
    order: tuple[int, ...]
    depths: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (color, source, target)
    pinned: dict[int, str] = field(default_factory=dict)

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.order)

    def edge_set(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(self.edges)


def _induced_graph(oracle: StructureOracle, edges: EdgeSystem, center: int,
                   radius: int, order: list[int], depths: list[int], fuel: int,
                   strict: bool) -> ComponentGraph:
    labels = edges.constant_labels()
    for name, value in oracle.named_constants.items():
        labels.setdefault(value, name)
    pos = {v: k for k, v in enumerate(order)}
    colored = []
    for color, edge in enumerate(edges.edges):
        for u in order:
            for w in order:
                verdict = edge_verdict(oracle, edge, u, w, fuel)
                if verdict is TriBool.UNKNOWN:
                    if strict:
                        raise FuelExhausted(
                            f"edge ({u}, {w}) undecided within fuel",
                            partial=_induced_graph(oracle, edges, center, radius,
                                                   order, depths, fuel, False))
                    continue
                if verdict is TriBool.TRUE:
                    colored.append((color, u, w))
    colored.sort(key=lambda t: (t[0], pos[t[1]], pos[t[2]]))
    pinned = {v: labels[v] for v in order if v in labels}
    return ComponentGraph(center, radius, tuple(order), tuple(depths),
                          tuple(colored), pinned)


def neighborhood(oracle: StructureOracle, edges: EdgeSystem, a: int, n: int,
                 fuel: int = DEFAULT_FUEL) -> ComponentGraph:
    """The radius-n ball around a in the derived edge graph.

    Breadth first, new vertices in ascending order within each level; the
    returned graph is the induced colored subgraph on the ball.  Fuel
    exhaustion mid-expansion raises with the partial ball attached.
    """
    order = [a]
    depths = [0]
    seen = {a}
    frontier = [a]
    for level in range(1, n + 1):
        nxt = []
        for u in frontier:
            try:
                nbrs = edge_neighbors(oracle, edges, u, fuel)
            except FuelExhausted as err:
                partial = _induced_graph(oracle, edges, a, level - 1,
                                         order, depths, fuel, False)
                raise FuelExhausted(
                    f"neighborhood of {a} stalled at radius {level}: {err}",
                    partial=partial) from err
            for w in nbrs:
                if w not in seen:
                    seen.add(w)
                    order.append(w)
                    depths.append(level)
                    nxt.append(w)
        frontier = nxt
        if not frontier:
            break
    return _induced_graph(oracle, edges, a, n, order, depths, fuel, True)


def components_isomorphic(g1: ComponentGraph, g2: ComponentGraph) -> bool:
    """Colored-digraph isomorphism, center to center, constants fixed
    pointwise.  Iterated degree refinement prunes before backtracking."""
    if g1.radius != g2.radius:
        raise ContractViolation("component graphs have different radii")
    if len(g1.order) != len(g2.order) or len(g1.edges) != len(g2.edges):
        return False
    if g1.pinned != g2.pinned:
        return False
    e1, e2 = g1.edge_set(), g2.edge_set()

    def refine(g: ComponentGraph, eset) -> dict[int, tuple]:
        succ: dict[int, list] = {v: [] for v in g.order}
        pred: dict[int, list] = {v: [] for v in g.order}
        loops: dict[int, list] = {v: [] for v in g.order}
        for color, u, w in eset:
            if u == w:
                loops[u].append(color)
            else:
                succ[u].append((color, w))
                pred[w].append((color, u))
        depth = dict(zip(g.order, g.depths))
        colors = {
            v: (depth[v], v == g.center, g.pinned.get(v), tuple(sorted(loops[v])))
            for v in g.order
        }
        while True:
            table: dict[tuple, int] = {}
            new = {}
            for v in g.order:
                key = (colors[v],
                       tuple(sorted((c, colors[w]) for c, w in succ[v])),
                       tuple(sorted((c, colors[w]) for c, w in pred[v])))
                new[v] = table.setdefault(key, len(table))
            if len(set(new.values())) == len(set(colors.values())):
                return new
            colors = new

    c1 = refine(g1, e1)
    c2 = refine(g2, e2)
    if sorted(c1.values()) != sorted(c2.values()):
        return False
    palette = {t[0] for t in e1} | {t[0] for t in e2}

    def compatible(u: int, x: int, mapping: dict[int, int]) -> bool:
        for v, y in mapping.items():
            for color in palette:
                if ((color, u, v) in e1) != ((color, x, y) in e2):
                    return False
                if ((color, v, u) in e1) != ((color, y, x) in e2):
                    return False
        return True

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def place(k: int) -> bool:
        if k == len(g1.order):
            return True
        u = g1.order[k]
        forced: set[int] = set()
        if u == g1.center:
            forced.add(g2.center)
        if u in g1.pinned:
            forced.add(u)  # constants are shared elements, fixed pointwise
        if len(forced) > 1:
            return False
        cands = sorted(forced) if forced else [
            x for x in g2.order if x not in used and c2[x] == c1[u]]
        for x in cands:
            if x in used or c2.get(x) != c1[u]:
                continue
            if not compatible(u, x, mapping):
                continue
            mapping[u] = x
            used.add(x)
            if place(k + 1):
                return True
            del mapping[u]
            used.discard(x)
        return False

    return place(0)


def ball_tower(oracle: StructureOracle, edges: EdgeSystem, a: int, n: int,
               fuel: int = DEFAULT_FUEL) -> list[ComponentGraph]:
    """All balls of radius 0..n around a, computed from one BFS pass.

    Equivalent to calling ``neighborhood`` at each radius, but the induced
    edges are evaluated once on the outermost ball and sliced."""
    full = neighborhood(oracle, edges, a, n, fuel)
    depth = dict(zip(full.order, full.depths))
    towers = []
    for i in range(n + 1):
        cut = 0
        while cut < len(full.order) and full.depths[cut] <= i:
            cut += 1
        order = full.order[:cut]
        inside = set(order)
        sliced = tuple((c, u, w) for c, u, w in full.edges
                       if u in inside and w in inside and depth[u] <= i and depth[w] <= i)
        towers.append(ComponentGraph(a, i, order, full.depths[:cut], sliced,
                                     {v: lbl for v, lbl in full.pinned.items()
                                      if v in inside}))
    return towers


def enumerate_acl0(oracle: StructureOracle, edges: EdgeSystem, fuel: int,
                   eval_fuel: int = DEFAULT_FUEL,
                   limit: Optional[int] = None) -> Iterator[int]:
    """Enumerate elements certified algebraic over the empty set.

    An element is emitted as soon as one of its balls of radius at most
    ``fuel`` fails to match the generic ball of the same radius over the
    constants.  ``limit`` truncates the element stream so callers can take
    a finite census; None scans the whole universe.
    """
    generic = oracle.generic_hint
    if generic is None:
        raise ConfigurationError("acl(empty) enumeration needs a generic_hint")
    reference = ball_tower(oracle, edges, generic, fuel, eval_fuel)
    stream = oracle.elements()
    if limit is not None:
        stream = itertools.islice(stream, limit)
    for b in stream:
        try:
            tower = ball_tower(oracle, edges, b, fuel, eval_fuel)
        except FuelExhausted:
            # certify with whatever single radii still complete
            tower = []
            for i in range(fuel + 1):
                try:
                    tower.append(neighborhood(oracle, edges, b, i, eval_fuel))
                except FuelExhausted:
                    break
        for ref, ball in zip(reference, tower):
            if not components_isomorphic(ref, ball):
                yield b
                break


def generic_template(oracle: StructureOracle, edges: EdgeSystem,
                     fuel: int = DEFAULT_FUEL) -> Iterator[ComponentGraph]:
    """Balls of radius 0, 1, 2, ... around the declared generic element."""
    if oracle.generic_hint is None:
        raise ConfigurationError("model template needs a generic_hint")
    for r in itertools.count(0):
        yield neighborhood(oracle, edges, oracle.generic_hint, r, fuel)


class _TemplateFeed:
    """Caches template balls by radius and exposes the per-radius growth."""

    def __init__(self, template: Iterator[ComponentGraph]):
        self.template = template
        self.graphs: list[ComponentGraph] = []
        self.saturated_at: Optional[int] = None

    def graph(self, r: int) -> ComponentGraph:
        while len(self.graphs) <= r:
            if self.saturated_at is not None:
                return self.graphs[-1]
            g = next(self.template)
            if self.graphs:
                prev = self.graphs[-1].order
                if g.order[: len(prev)] != prev:
                    raise ContractViolation(
                        "template balls do not extend one another")
                if len(g.order) == len(prev):
                    self.saturated_at = len(self.graphs)
            self.graphs.append(g)
        return self.graphs[r]

    def new_at(self, r: int) -> tuple[int, ...]:
        if r == 0:
            return self.graph(0).order
        if self.saturated_at is not None and r >= self.saturated_at:
            return ()
        before = self.graph(r - 1).order
        return self.graph(r).order[len(before):]


class _ModelLayout:
    """Universe bookkeeping for an assembled model: which code belongs to
    the acl(empty) part and which to which component copy."""

    def __init__(self, acl_list: list[int], feed: _TemplateFeed, d: Optional[int]):
        self.acl_list = acl_list
        self.feed = feed
        self.d = d
        self.slots: list[tuple] = []
        self.stage = 0
        self.size: Optional[int] = None
        if d == 0:
            self.slots = [("acl", m) for m in acl_list]
            self.size = len(self.slots)

    def _run_stage(self) -> None:
        s = self.stage
        if s < len(self.acl_list):
            self.slots.append(("acl", self.acl_list[s]))
        copies = itertools.count(0) if self.d is None else range(self.d)
        for k in copies:
            if k > s:
                break
            for m in self.feed.new_at(s - k):
                self.slots.append(("copy", k, m))
        self.stage += 1
        if (self.d is not None and self.size is None
                and self.stage > len(self.acl_list)
                and self.feed.saturated_at is not None
                and self.stage - self.d >= self.feed.saturated_at):
            self.size = len(self.slots)

    def slot(self, code: int) -> tuple:
        while code >= len(self.slots):
            if self.size is not None and code >= self.size:
                raise ContractViolation(
                    f"code {code} beyond the finite assembled universe")
            self._run_stage()
        return self.slots[code]

    def code_of(self, slot: tuple) -> Optional[int]:
        # only consults what is already materialized
        try:
            return self.slots.index(slot)
        except ValueError:
            return None


def build_model(oracle: StructureOracle, acl0: Iterable[int],
                template: Iterator[ComponentGraph], d: Optional[int],
                constants: Optional[dict[str, int]] = None) -> StructureOracle:
    """Assemble the model of dimension d from an acl(empty) enumeration and
    a generic component template.

    d = None means countably many copies.  The universe interleaves the
    acl(empty) part with the copies, one stage at a time: copy k receives
    its radius-r ring at stage k + r.  Relations hold within a copy or
    within the acl part exactly as in the source structure; tuples meeting
    a copy may otherwise only contain named constants, and tuples meeting
    two copies never hold.
    """
    if d is not None and d < 0:
        raise ContractViolation("dimension must be a natural or None")
    acl_list = list(dict.fromkeys(acl0))
    if d == 0 and not acl_list:
        raise ConfigurationError("dimension 0 with empty acl(empty): no universe")
    if constants is None:
        constants = dict(oracle.named_constants)
    missing = sorted(set(constants.values()) - set(acl_list))
    if missing:
        raise ConfigurationError(
            f"constants {missing} are not in the supplied acl(empty) list")
    layout = _ModelLayout(acl_list, _TemplateFeed(template), d)
    constant_values = set(constants.values())
    base_holds = oracle.holds

    def holds(sym: str, args: tuple[int, ...]) -> bool:
        slots = [layout.slot(x) for x in args]
        copies = {s[1] for s in slots if s[0] == "copy"}
        if len(copies) > 1:
            return False
        if len(copies) == 1:
            for s in slots:
                if s[0] == "acl" and s[1] not in constant_values:
                    return False
        codes = tuple(s[-1] for s in slots)
        return base_holds(sym, codes)

    named = {}
    for name, value in constants.items():
        named[name] = acl_list.index(value)
    generic = None
    if d is None or d > 0:
        center = layout.feed.graph(0).center
        # force materialization far enough to locate copy 0's center
        probe = 0
        while generic is None:
            slot = layout.slot(probe)
            if slot == ("copy", 0, center):
                generic = probe
            probe += 1
    built = StructureOracle(
        signature=oracle.signature,
        holds=holds,
        universe_size=layout.size if d == 0 else None,
        named_constants=named,
        generic_hint=generic,
        name=f"{oracle.name};model(d={'w' if d is None else d})",
    )
    built.layout = layout
    return built


@dataclass
class RankReduction:
    """Extensional decomposition of a finite explicit relation into
    projections plus correction sets."""

    arity: int
    algebraic_coords: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    point_projections: dict[int, frozenset[int]]
    block_projections: tuple[frozenset[tuple[int, ...]], ...]
    beta1: frozenset[tuple[int, ...]]
    beta2: frozenset[tuple[int, ...]]

    def alpha_contains(self, tup: tuple[int, ...]) -> bool:
        for i in self.algebraic_coords:
            if tup[i] not in self.point_projections[i]:
                return False
        for coords, proj in zip(self.blocks, self.block_projections):
            if tuple(tup[i] for i in coords) not in proj:
                return False
        return True

    def reconstructed(self, tup: tuple[int, ...]) -> bool:
        if tup in self.beta1:
            return True
        return self.alpha_contains(tup) and tup not in self.beta2

    def alpha(self) -> Iterator[tuple[int, ...]]:
        axes: list[list[tuple[tuple[int, ...], tuple[int, ...]]]] = []
        parts = [((i,), tuple((v,) for v in sorted(self.point_projections[i])))
                 for i in self.algebraic_coords]
        parts += [(coords, tuple(sorted(proj)))
                  for coords, proj in zip(self.blocks, self.block_projections)]
        for choice in itertools.product(*(vals for _, vals in parts)):
            tup = [0] * self.arity
            for (coords, _), vals in zip(parts, choice):
                for c, v in zip(coords, vals):
                    tup[c] = v
            yield tuple(tup)


def rank_reduce(relation: Iterable[tuple[int, ...]],
                partition: tuple[Sequence[int], Sequence[Sequence[int]]],
                oracle: Optional[StructureOracle] = None) -> RankReduction:
    """Decompose an explicit relation along a coordinate partition.

    ``partition`` is (algebraic coordinates D, list of blocks C_1..C_k),
    0-based, jointly covering every coordinate exactly once.  The result
    carries the per-coordinate projections for D, the per-block projections,
    and the two correction sets making the reconstruction identity
    relation = beta1 union (alpha minus beta2) hold extensionally.
    """
    rel = {tuple(t) for t in relation}
    algebraic, blocks = partition
    algebraic = tuple(algebraic)
    blocks = tuple(tuple(b) for b in blocks)
    covered = list(algebraic) + [i for b in blocks for i in b]
    if rel:
        arity = len(next(iter(rel)))
        if any(len(t) != arity for t in rel):
            raise ContractViolation("relation tuples have mixed arities")
    else:
        arity = len(covered)
    if sorted(covered) != list(range(arity)):
        raise ContractViolation(
            "partition must cover every coordinate exactly once")
    if oracle is not None and oracle.universe_size is not None:
        bad = [t for t in rel if any(x >= oracle.universe_size for x in t)]
        if bad:
            raise ContractViolation(f"tuples outside the universe: {sorted(bad)[:3]}")
    point = {i: frozenset(t[i] for t in rel) for i in algebraic}
    bproj = tuple(frozenset(tuple(t[i] for i in coords) for t in rel)
                  for coords in blocks)
    out = RankReduction(arity, algebraic, blocks, point, bproj,
                        frozenset(), frozenset())
    beta1 = frozenset(t for t in rel if not out.alpha_contains(t))
    beta2 = frozenset(t for t in out.alpha() if t not in rel)
    return RankReduction(arity, algebraic, blocks, point, bproj, beta1, beta2)


__all__ = [
    "EdgeRelation",
    "EdgeSystem",
    "ComponentGraph",
    "RankReduction",
    "projection_pp",
    "edge_verdict",
    "edge_neighbors",
    "derive_edges",
    "neighborhood",
    "components_isomorphic",
    "enumerate_acl0",
    "generic_template",
    "build_model",
    "rank_reduce",
]
