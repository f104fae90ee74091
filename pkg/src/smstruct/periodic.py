"""Periodic residue sequences: the desk realization of the algebraic part
of the base-3 shift fixture.

A periodic two-way-infinite sequence over Z/p is stored by its minimal
period pattern.  Position i carries pattern[i mod n].  The shift sends a to
the sequence b with b[i+1] = a[i], i.e. rotates the pattern one slot to the
right; addition expands both operands to the lcm period and re-minimizes.

Coding: sequences are enumerated by period length n = 1, 2, ..., and inside
a fixed n by the base-p value of the pattern read little-endian, skipping
patterns whose minimal period is a proper divisor of n.  Index 0 is the zero
sequence.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _minimize(pattern: tuple[int, ...]) -> tuple[int, ...]:
    n = len(pattern)
    for d in range(1, n):
        if n % d:
            continue
        if all(pattern[i] == pattern[i % d] for i in range(n)):
            return pattern[:d]
    return pattern


@dataclass(frozen=True)
class Periodic:
    """Minimal-period pattern; pattern[i] is the residue at position i."""

    pattern: tuple[int, ...]
    p: int

    @staticmethod
    def make(pattern: tuple[int, ...], p: int) -> "Periodic":
        if not pattern:
            raise ValueError("pattern must be nonempty")
        return Periodic(_minimize(tuple(c % p for c in pattern)), p)

    @staticmethod
    def zero(p: int) -> "Periodic":
        return Periodic((0,), p)

    @staticmethod
    def const(k: int, p: int) -> "Periodic":
        return Periodic((k % p,), p)

    @property
    def period(self) -> int:
        return len(self.pattern)

    def at(self, i: int) -> int:
        return self.pattern[i % self.period]

    def is_zero(self) -> bool:
        return self.pattern == (0,)

    def __add__(self, other: "Periodic") -> "Periodic":
        p = self.p
        n = _lcm(self.period, other.period)
        return Periodic.make(tuple((self.at(i) + other.at(i)) % p for i in range(n)), p)

    def __neg__(self) -> "Periodic":
        return Periodic(tuple((-c) % self.p for c in self.pattern), self.p)

    def __sub__(self, other: "Periodic") -> "Periodic":
        return self + (-other)

    def shift(self, k: int = 1) -> "Periodic":
        """k applications of the shift (b[i+1] = a[i]); negative k undoes."""
        n = self.period
        k %= n
        # new pattern: value at position i is old value at position i-k
        return Periodic(tuple(self.pattern[(i - k) % n] for i in range(n)), self.p)

    def scale(self, k: int) -> "Periodic":
        return Periodic.make(tuple((c * k) % self.p for c in self.pattern), self.p)


class PeriodicCoder:
    """Bijection naturals <-> periodic sequences, ordered by (period, pattern)."""

    def __init__(self, p: int):
        self.p = p
        self._by_index: list[Periodic] = []
        self._by_value: dict[Periodic, int] = {}
        self._n = 1
        self._k = 0

    def _grow(self) -> None:
        p = self.p
        while True:
            if self._k >= p ** self._n:
                self._n += 1
                self._k = 0
            k = self._k
            self._k += 1
            pattern = []
            v = k
            for _ in range(self._n):
                pattern.append(v % p)
                v //= p
            pat = tuple(pattern)
            if len(_minimize(pat)) != self._n:
                continue
            elem = Periodic(pat, p)
            self._by_value[elem] = len(self._by_index)
            self._by_index.append(elem)
            return

    def decode(self, i: int) -> Periodic:
        while i >= len(self._by_index):
            self._grow()
        return self._by_index[i]

    def encode(self, elem: Periodic) -> int:
        while elem not in self._by_value:
            self._grow()
        return self._by_value[elem]
