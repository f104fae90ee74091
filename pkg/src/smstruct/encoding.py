"""Bit-exact encoders shared by the fixtures and the model builders.

Every universe in this package is an initial segment of the naturals or all
of them, so structured elements (pairs, integers, finite-support sequences)
are squeezed through the bijections below.  The exact formulas are part of
the dump-format contract and are documented in the README; changing any of
them silently invalidates stored dumps.
"""

from __future__ import annotations

from math import isqrt


def cantor_pair(x: int, y: int) -> int:
    """Diagonal pairing: (x + y)(x + y + 1)/2 + y."""
    s = x + y
    return s * (s + 1) // 2 + y


def cantor_unpair(z: int) -> tuple[int, int]:
    # largest s with s(s+1)/2 <= z
    s = (isqrt(8 * z + 1) - 1) // 2
    y = z - s * (s + 1) // 2
    return s - y, y


def zigzag(n: int) -> int:
    """Fold the integers onto the naturals: 0, 1, -1, 2, -2, ... -> 0, 1, 2, 3, 4."""
    return 2 * n if n >= 0 else -2 * n - 1


def unzigzag(m: int) -> int:
    return -(m + 1) // 2 if m % 2 else m // 2


def tuple_encode(parts: tuple[int, ...]) -> int:
    """Left-fold Cantor pairing; the arity must be known to decode.

    Empty tuple encodes to 0 (the unique point of a 0-dimensional space).
    """
    if not parts:
        return 0
    acc = parts[0]
    for p in parts[1:]:
        acc = cantor_pair(acc, p)
    return acc


def tuple_decode(code: int, arity: int) -> tuple[int, ...]:
    if arity == 0:
        return ()
    out = []
    for _ in range(arity - 1):
        code, last = cantor_unpair(code)
        out.append(last)
    out.append(code)
    return tuple(reversed(out))


_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def _prime(k: int) -> int:
    while k >= len(_PRIMES):
        c = _PRIMES[-1] + 2
        while any(c % p == 0 for p in _PRIMES if p * p <= c):
            c += 2
        _PRIMES.append(c)
    return _PRIMES[k]


def support_encode(seq: dict[int, int]) -> int:
    """Finite-support sequence of naturals -> natural, via n+1 = prod p_k^seq[k]."""
    n = 1
    for k, e in seq.items():
        if e < 0:
            raise ValueError("exponents must be naturals")
        if e:
            n *= _prime(k) ** e
    return n - 1


def support_decode(n: int) -> dict[int, int]:
    n += 1
    out: dict[int, int] = {}
    k = 0
    while n > 1:
        p = _prime(k)
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out[k] = e
        k += 1
    return out
