"""Coset combinatorics on finite abelian groups, implemented exactly.

A definable set in a modular group reduces to a finite union of coset
differences.  This module realizes that reduction at desk scale: cosets and
subgroups are materialized element sets, the disjunctive normal form is
computed symbolically and verified exhaustively, and the three steps that
recover a single group coset out of such a union (translate intersection,
translate-union cover, group stripping) are exact set computations with
their defining identities asserted rather than trusted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import (
    ContractViolation,
    CoverImpossible,
    InsufficientGenericity,
)
from .fixtures import mixed_radix_decode, mixed_radix_encode, parse_moduli

Element = tuple[int, ...]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by generators, with its element set materialized."""

    generators: tuple[Element, ...]
    elements: frozenset[Element]

    def __contains__(self, x: Element) -> bool:
        return x in self.elements

    def __len__(self) -> int:
        return len(self.elements)


@dataclass(frozen=True)
class FinAbGroup:
    """A finite abelian group as a product of cyclic factors.

    Elements are residue tuples; the enumeration order is the mixed-radix
    code order shared with the finab fixtures.
    """

    moduli: tuple[int, ...]

    @classmethod
    def from_spec(cls, spec: str) -> "FinAbGroup":
        return cls(parse_moduli(spec))

    @property
    def size(self) -> int:
        n = 1
        for m in self.moduli:
            n *= m
        return n

    @property
    def zero(self) -> Element:
        return (0,) * len(self.moduli)

    def add(self, a: Element, b: Element) -> Element:
        return tuple((x + y) % m for x, y, m in zip(a, b, self.moduli))

    def neg(self, a: Element) -> Element:
        return tuple((-x) % m for x, m in zip(a, self.moduli))

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def element_at(self, code: int) -> Element:
        return mixed_radix_decode(code, self.moduli)

    def code_of(self, x: Element) -> int:
        return mixed_radix_encode(x, self.moduli)

    def elements(self) -> Iterable[Element]:
        return (self.element_at(c) for c in range(self.size))

    def check_element(self, x: Element) -> Element:
        x = tuple(x)
        if len(x) != len(self.moduli) or any(
                not 0 <= r < m for r, m in zip(x, self.moduli)):
            raise ContractViolation(f"{x} is not an element of {self.moduli}")
        return x

    def span(self, gens: Iterable[Element]) -> frozenset[Element]:
        seen = {self.zero}
        frontier = [self.zero]
        gens = [self.check_element(g) for g in gens]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.add(x, g)
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def subgroup(self, gens: Iterable[Element]) -> Subgroup:
        gens = tuple(self.check_element(g) for g in gens)
        return Subgroup(gens, self.span(gens))

    def trivial(self) -> Subgroup:
        return Subgroup((), frozenset({self.zero}))

    def full(self) -> Subgroup:
        gens = tuple(tuple(1 if i == k else 0 for i in range(len(self.moduli)))
                     for k in range(len(self.moduli)))
        return Subgroup(gens, frozenset(self.elements()))

    def generators_of(self, elems: frozenset[Element]) -> tuple[Element, ...]:
        """A deterministic generating list for a subgroup element set."""
        gens: list[Element] = []
        span = {self.zero}
        for code in range(self.size):
            x = self.element_at(code)
            if x in elems and x not in span:
                gens.append(x)
                span = set(self.span(gens))
        return tuple(gens)

    def as_subgroup(self, elems: Iterable[Element]) -> Subgroup:
        elems = frozenset(tuple(x) for x in elems)
        sub = Subgroup(self.generators_of(elems), elems)
        self.check_subgroup(sub)
        return sub

    def check_subgroup(self, sub: Subgroup) -> Subgroup:
        elems = sub.elements
        if self.zero not in elems:
            raise ContractViolation("subgroup misses 0")
        for x in elems:
            if self.neg(x) not in elems:
                raise ContractViolation(f"subgroup not closed under negation at {x}")
            for y in elems:
                if self.add(x, y) not in elems:
                    raise ContractViolation(
                        f"subgroup not closed under addition at {x}+{y}")
        return sub

    def intersect(self, a: Subgroup, b: Subgroup) -> Subgroup:
        elems = a.elements & b.elements
        return Subgroup(self.generators_of(elems), elems)

    def coset(self, base: Element, sub: Subgroup) -> frozenset[Element]:
        base = self.check_element(base)
        return frozenset(self.add(base, h) for h in sub.elements)

    def translate(self, shift: Element, xs: Iterable[Element]) -> frozenset[Element]:
        return frozenset(self.add(shift, x) for x in xs)

    def min_element(self, xs: Iterable[Element]) -> Element:
        return self.element_at(min(self.code_of(x) for x in xs))


@dataclass(frozen=True)
class CosetPart:
    """One positive coset with the finitely many subcosets removed from it."""

    base: Element
    group: Subgroup
    removed: tuple[tuple[Element, Subgroup], ...] = ()


@dataclass(frozen=True)
class CosetCombo:
    """A finite union of coset differences; the normal form of a boolean
    combination of cosets."""

    parts: tuple[CosetPart, ...]

    def denotation(self, group: FinAbGroup) -> frozenset[Element]:
        out: set[Element] = set()
        for part in self.parts:
            cell = set(group.coset(part.base, part.group))
            for b, h in part.removed:
                cell -= group.coset(b, h)
            out |= cell
        return frozenset(out)

    def validate(self, group: FinAbGroup) -> "CosetCombo":
        for part in self.parts:
            group.check_subgroup(part.group)
            cell = group.coset(part.base, part.group)
            for b, h in part.removed:
                group.check_subgroup(h)
                if not h.elements <= part.group.elements:
                    raise ContractViolation("removed subgroup not below the part")
                if not group.coset(b, h) <= cell:
                    raise ContractViolation("removed coset leaks out of the part")
        return self


# Expression layer: nested tuples describing a boolean combination of cosets.
#   ("coset", base, Subgroup)        a single coset
#   ("union", e1, e2, ...)           finite union
#   ("inter", e1, e2, ...)           finite intersection, at least one operand
#   ("diff", e1, e2)                 set difference


def eval_expr(group: FinAbGroup, expr: tuple) -> frozenset[Element]:
    tag = expr[0]
    if tag == "coset":
        _, base, sub = expr
        _check_atom(group, base, sub)
        return group.coset(base, sub)
    if tag == "union":
        out: frozenset[Element] = frozenset()
        for sub in expr[1:]:
            out |= eval_expr(group, sub)
        return out
    if tag == "inter":
        if len(expr) < 2:
            raise ContractViolation("intersection needs at least one operand")
        out = eval_expr(group, expr[1])
        for sub in expr[2:]:
            out &= eval_expr(group, sub)
        return out
    if tag == "diff":
        _, left, right = expr
        return eval_expr(group, left) - eval_expr(group, right)
    raise ContractViolation(f"unknown coset expression tag {tag!r}")


def _check_atom(group: FinAbGroup, base: Element, sub: Subgroup) -> None:
    if not isinstance(sub, Subgroup):
        raise ContractViolation("coset atom needs a Subgroup instance")
    group.check_element(base)
    group.check_subgroup(sub)


def _dnf_terms(group: FinAbGroup, expr: tuple) -> list[tuple[list, list]]:
    """Rewrite to a union of terms (positive atoms, negated atoms)."""
    tag = expr[0]
    if tag == "coset":
        _, base, sub = expr
        _check_atom(group, base, sub)
        return [([(tuple(base), sub)], [])]
    if tag == "union":
        out = []
        for sub in expr[1:]:
            out.extend(_dnf_terms(group, sub))
        return out
    if tag == "inter":
        if len(expr) < 2:
            raise ContractViolation("intersection needs at least one operand")
        terms = _dnf_terms(group, expr[1])
        for sub in expr[2:]:
            nxt = _dnf_terms(group, sub)
            terms = [(p1 + p2, n1 + n2) for p1, n1 in terms for p2, n2 in nxt]
        return terms
    if tag == "diff":
        _, left, right = expr
        lterms = _dnf_terms(group, left)
        rterms = _dnf_terms(group, right)
        # left and not(union of terms): each negated term contributes one
        # failing literal, either a negated positive atom or a restored
        # removed atom
        out = lterms
        for pos, neg in rterms:
            expanded = []
            for lpos, lneg in out:
                for atom in pos:
                    expanded.append((list(lpos), lneg + [atom]))
                for atom in neg:
                    expanded.append((lpos + [atom], list(lneg)))
            out = expanded
        return out
    raise ContractViolation(f"unknown coset expression tag {tag!r}")


def to_coset_dnf(group: FinAbGroup, parts: tuple) -> CosetCombo:
    """Normalize a boolean combination of cosets.

    Positive intersections collapse to single cosets of intersection
    subgroups; removals are clipped into each positive cell and discarded
    or promoted when improper.  The result's denotation is asserted equal
    to the input's, exhaustively.
    """
    want = eval_expr(group, parts)
    built: list[CosetPart] = []
    for pos, neg in _dnf_terms(group, parts):
        base, sub = pos[0]
        cell = group.coset(base, sub)
        for b2, h2 in pos[1:]:
            cell = cell & group.coset(b2, h2)
            sub = group.intersect(sub, h2)
            if not cell:
                break
        if not cell:
            continue
        base = group.min_element(cell)
        removed = []
        removed_sets = []
        alive = set(cell)
        for b2, h2 in neg:
            clip = cell & group.coset(b2, h2)
            if not clip:
                continue
            inner = group.intersect(sub, h2)
            rb = group.min_element(clip)
            if (rb, inner.elements) in {(b, h.elements) for b, h in removed}:
                continue
            removed.append((rb, inner))
            removed_sets.append(clip)
            alive -= clip
        if not alive:
            continue
        part = CosetPart(base, sub, tuple(removed))
        if part not in built:
            built.append(part)
    combo = CosetCombo(tuple(built)).validate(group)
    if combo.denotation(group) != want:
        raise ContractViolation("normal form changed the denotation")
    return combo


@dataclass(frozen=True)
class TranslateResult:
    """Outcome of a translate intersection: the set, the picks that cut it,
    and the union of target cosets it must land in."""

    elements: frozenset[Element]
    picks: tuple[Element, ...]
    target: frozenset[Element]


def a_coset_union(group: FinAbGroup, combo: CosetCombo,
                  a_sub: Subgroup) -> frozenset[Element]:
    """Union of the positive cosets of the combo whose subgroup is A."""
    out: set[Element] = set()
    for part in combo.parts:
        if part.group.elements == a_sub.elements:
            out |= group.coset(part.base, part.group)
    return frozenset(out)


def translate_intersection(group: FinAbGroup, combo: CosetCombo,
                           a_sub: Subgroup,
                           picks: Optional[Sequence[Element]] = None,
                           ) -> TranslateResult:
    """Intersect translates of the combo along A until only the A-part
    survives.

    Picks default to the first admissible elements of A in enumeration
    order: zero first, then elements whose pairwise differences avoid every
    foreign subgroup.  One pick beyond the number of foreign parts is
    enough to empty every foreign coset from the intersection.
    """
    if combo.parts and not any(
            part.group.elements == a_sub.elements for part in combo.parts):
        raise ContractViolation("A does not appear among the combo's subgroups")
    foreign = [part for part in combo.parts
               if part.group.elements != a_sub.elements]
    target = a_coset_union(group, combo, a_sub)
    if picks is None:
        needed = len(foreign) + 1
        chosen: list[Element] = [group.zero]
        for code in range(group.size):
            if len(chosen) >= needed:
                break
            cand = group.element_at(code)
            if cand not in a_sub or cand in chosen:
                continue
            ok = all(
                group.sub(cand, prev) not in part.group
                for prev in chosen for part in foreign)
            if ok:
                chosen.append(cand)
        if len(chosen) < needed:
            raise InsufficientGenericity(
                f"only {len(chosen)} of {needed} sufficiently generic"
                f" translates exist in A at this scale")
        picks = chosen
    else:
        picks = [group.check_element(p) for p in picks]
        for p in picks:
            if p not in a_sub:
                raise ContractViolation(f"pick {p} is not in A")
    denot = combo.denotation(group)
    out = group.translate(picks[0], denot)
    for p in picks[1:]:
        out &= group.translate(p, denot)
    if not out <= target:
        raise ContractViolation(
            "translate intersection leaked outside the A-cosets;"
            " picks were not generic enough")
    return TranslateResult(frozenset(out), tuple(picks), target)


def translate_union(group: FinAbGroup, s_set: Iterable[Element],
                    b_set: Iterable[Element]) -> tuple[Element, ...]:
    """Cover B by translates of S, greedily, largest gain first.

    Every returned shift keeps its translate inside B; exact cover is
    asserted.  Empty S with nonempty B cannot cover anything.
    """
    s_set = frozenset(tuple(x) for x in s_set)
    b_set = frozenset(tuple(x) for x in b_set)
    if not b_set:
        return ()
    if not s_set:
        raise CoverImpossible("cannot cover a nonempty set by translates of nothing")
    admissible = []
    for code in range(group.size):
        e = group.element_at(code)
        t = group.translate(e, s_set)
        if t <= b_set:
            admissible.append((e, t))
    uncovered = set(b_set)
    shifts: list[Element] = []
    while uncovered:
        best = None
        best_gain = 0
        for e, t in admissible:
            gain = len(uncovered & t)
            if gain > best_gain:
                best, best_gain = (e, t), gain
        if best is None:
            raise CoverImpossible(
                f"{len(uncovered)} elements of B lie in no admissible translate")
        shifts.append(best[0])
        uncovered -= best[1]
    covered: set[Element] = set()
    for e in shifts:
        covered |= group.translate(e, s_set)
    if covered != b_set:
        raise ContractViolation("cover identity failed")
    return tuple(shifts)


def group_strip(group: FinAbGroup, b_set: Iterable[Element], b1: Element,
                a_sub: Optional[Subgroup] = None,
                ) -> tuple[Subgroup, frozenset[Element]]:
    """Strip a translated coset union down to a group.

    Starting from the translate containing zero, repeatedly intersect with
    its own element shifts: the fixpoint is the largest subset closed under
    addition, hence a group G with A <= G <= B - b1.  Returns (G, X) with
    X = G + b1.
    """
    b_set = frozenset(tuple(x) for x in b_set)
    b1 = group.check_element(b1)
    if b1 not in b_set:
        raise ContractViolation("b1 must belong to B")
    if a_sub is not None:
        group.check_subgroup(a_sub)
        cosets = {group.min_element(group.coset(x, a_sub)) for x in b_set}
        rebuilt: set[Element] = set()
        for rep in cosets:
            rebuilt |= group.coset(rep, a_sub)
        if rebuilt != b_set:
            raise ContractViolation("B is not a union of A-cosets")
    current = frozenset(group.sub(x, b1) for x in b_set)
    if a_sub is not None and not a_sub.elements <= current:
        raise ContractViolation("B - b1 does not contain A")
    steps = 0
    while True:
        if a_sub is None:
            reps: Iterable[Element] = current
        else:
            reps = {group.min_element(group.coset(x, a_sub)) for x in current}
        nxt = current
        for c in reps:
            nxt = nxt & frozenset(group.sub(x, c) for x in current)
        if nxt == current:
            break
        current = nxt
        steps += 1
        if steps > len(b_set):
            raise ContractViolation("strip iteration exceeded the size bound")
    g_sub = group.as_subgroup(current)
    if a_sub is not None and not a_sub.elements <= g_sub.elements:
        raise ContractViolation("stripped group lost A")
    if not g_sub.elements <= frozenset(group.sub(x, b1) for x in b_set):
        raise ContractViolation("stripped group escaped B - b1")
    return g_sub, frozenset(group.add(x, b1) for x in g_sub.elements)


__all__ = [
    "Element",
    "Subgroup",
    "FinAbGroup",
    "CosetPart",
    "CosetCombo",
    "TranslateResult",
    "eval_expr",
    "to_coset_dnf",
    "a_coset_union",
    "translate_intersection",
    "translate_union",
    "group_strip",
]
