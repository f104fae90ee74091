"""Rational-function arithmetic over GF(p), p prime.

This is the independent ground-truth engine used by the fixture registry:
exact field arithmetic for GF(p)(t), with polynomials stored as little-endian
coefficient tuples.  Nothing here knows about words, correspondences, or
pp formulas; it is deliberately kept self-contained so it can serve as an
anti-regression oracle for the symbolic machinery built on top of it.

Polynomial <-> natural codes: little-endian base-p digits, so code 0 is the
zero polynomial, code 1 the constant 1, and code p the monomial t.  Rational
functions are enumerated by diagonal sweep over normalized (num, den) code
pairs; see RatCoder.
"""

from __future__ import annotations

from dataclasses import dataclass

Poly = tuple[int, ...]  # little-endian, no trailing zeros, coefficients in [0, p)

PZERO: Poly = ()
PONE: Poly = (1,)


def _trim(cs: list[int]) -> Poly:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def padd(a: Poly, b: Poly, p: int) -> Poly:
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def pneg(a: Poly, p: int) -> Poly:
    return tuple((-c) % p for c in a)


def psub(a: Poly, b: Poly, p: int) -> Poly:
    return padd(a, pneg(b, p), p)


def pmul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return PZERO
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def pscale(a: Poly, k: int, p: int) -> Poly:
    k %= p
    return _trim([(c * k) % p for c in a])


def pdivmod(a: Poly, b: Poly, p: int) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(b[-1], p - 2, p)
    rem = list(a)
    quo = [0] * max(0, len(a) - len(b) + 1)
    while True:
        rem = list(_trim(rem))
        if len(rem) < len(b):
            break
        k = len(rem) - len(b)
        q = (rem[-1] * inv_lead) % p
        quo[k] = q
        for i, c in enumerate(b):
            rem[k + i] = (rem[k + i] - q * c) % p
    return _trim(quo), tuple(rem)


def pgcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, pdivmod(a, b, p)[1]
    return pmonic(a, p)


def pmonic(a: Poly, p: int) -> Poly:
    if not a or a[-1] == 1:
        return a
    return pscale(a, pow(a[-1], p - 2, p), p)


def poly_code(a: Poly, p: int) -> int:
    n = 0
    for c in reversed(a):
        n = n * p + c
    return n


def code_poly(n: int, p: int) -> Poly:
    cs = []
    while n:
        cs.append(n % p)
        n //= p
    return tuple(cs)


@dataclass(frozen=True)
class RatFunc:
    """Normalized fraction num/den: den monic, gcd(num, den) = 1, den != 0."""

    num: Poly
    den: Poly
    p: int

    @staticmethod
    def make(num: Poly, den: Poly, p: int) -> "RatFunc":
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return RatFunc(PZERO, PONE, p)
        g = pgcd(num, den, p)
        if g != PONE:
            num = pdivmod(num, g, p)[0]
            den = pdivmod(den, g, p)[0]
        lead = den[-1]
        if lead != 1:
            inv = pow(lead, p - 2, p)
            num = pscale(num, inv, p)
            den = pscale(den, inv, p)
        return RatFunc(num, den, p)

    @staticmethod
    def zero(p: int) -> "RatFunc":
        return RatFunc(PZERO, PONE, p)

    @staticmethod
    def one(p: int) -> "RatFunc":
        return RatFunc(PONE, PONE, p)

    @staticmethod
    def const(k: int, p: int) -> "RatFunc":
        k %= p
        return RatFunc((k,) if k else PZERO, PONE, p)

    @staticmethod
    def gen(p: int) -> "RatFunc":
        """The generator t."""
        return RatFunc((0, 1), PONE, p)

    def is_zero(self) -> bool:
        return not self.num

    def __add__(self, other: "RatFunc") -> "RatFunc":
        p = self.p
        num = padd(pmul(self.num, other.den, p), pmul(other.num, self.den, p), p)
        return RatFunc.make(num, pmul(self.den, other.den, p), p)

    def __neg__(self) -> "RatFunc":
        return RatFunc(pneg(self.num, self.p), self.den, self.p)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        p = self.p
        return RatFunc.make(pmul(self.num, other.num, p), pmul(self.den, other.den, p), p)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverting the zero rational function")
        return RatFunc.make(self.den, self.num, self.p)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def __str__(self) -> str:
        def fmt(poly: Poly) -> str:
            if not poly:
                return "0"
            terms = []
            for i, c in enumerate(poly):
                if c == 0:
                    continue
                if i == 0:
                    terms.append(str(c))
                elif i == 1:
                    terms.append(f"{c if c != 1 else ''}t".strip())
                else:
                    terms.append(f"{c if c != 1 else ''}t^{i}")
            return "+".join(terms)

        if self.den == PONE:
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


class RatCoder:
    """Bijection between the naturals and GF(p)(t).

    Enumeration: diagonal sweep over code pairs (n, d) with n + d = s for
    s = 0, 1, 2, ..., n ascending inside a diagonal, keeping the pairs that
    name a normalized fraction (den monic, coprime, zero only as 0/1).
    Index 0 is 0, index 1 is 1.
    """

    def __init__(self, p: int):
        self.p = p
        self._by_index: list[RatFunc] = []
        self._by_value: dict[RatFunc, int] = {}
        self._s = 0
        self._n = 0

    def _grow(self) -> None:
        p = self.p
        while True:
            if self._n > self._s:
                self._s += 1
                self._n = 0
            n, d = self._n, self._s - self._n
            self._n += 1
            num, den = code_poly(n, p), code_poly(d, p)
            if not den or den[-1] != 1:
                continue
            if not num:
                if den != PONE:
                    continue
            elif pgcd(num, den, p) != PONE:
                continue
            rf = RatFunc(num, den, p)
            self._by_value[rf] = len(self._by_index)
            self._by_index.append(rf)
            return

    def decode(self, i: int) -> RatFunc:
        while i >= len(self._by_index):
            self._grow()
        return self._by_index[i]

    def encode(self, rf: RatFunc) -> int:
        while rf not in self._by_value:
            self._grow()
        return self._by_value[rf]
