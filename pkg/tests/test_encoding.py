import pytest

from smstruct.encoding import (
    cantor_pair,
    cantor_unpair,
    support_decode,
    support_encode,
    tuple_decode,
    tuple_encode,
    unzigzag,
    zigzag,
)


def test_cantor_pair_round_trip():
    for z in range(500):
        x, y = cantor_unpair(z)
        assert cantor_pair(x, y) == z


def test_cantor_pair_formula():
    # (x + y)(x + y + 1)/2 + y, the standard diagonal walk
    for x in range(20):
        for y in range(20):
            s = x + y
            assert cantor_pair(x, y) == s * (s + 1) // 2 + y


def test_cantor_pair_zero():
    assert cantor_pair(0, 0) == 0


def test_zigzag_round_trip():
    for n in range(-100, 101):
        assert unzigzag(zigzag(n)) == n
    for m in range(200):
        assert zigzag(unzigzag(m)) == m


def test_zigzag_order():
    # 0, -1, 1, -2, 2, ... or 0, 1, -1, ...: either way nonneg codes are small
    assert zigzag(0) == 0
    assert sorted(zigzag(n) for n in range(-3, 4)) == list(range(7))


def test_tuple_encode_round_trip():
    for arity in (1, 2, 3, 4):
        for code in range(100):
            t = tuple_decode(code, arity)
            assert len(t) == arity
            assert tuple_encode(t) is not None
            assert tuple_decode(tuple_encode(t) if arity != 1 else code, arity)
    for t in [(0,), (3, 5), (1, 2, 3), (0, 0, 0, 7)]:
        assert tuple_decode(tuple_encode(t), len(t)) == t


def test_support_encode_round_trip():
    cases = [{}, {0: 1}, {0: 2, 3: 1}, {5: 4}, {1: 1, 2: 2, 3: 3}]
    for d in cases:
        assert support_decode(support_encode(d)) == d
    for n in range(1, 200):
        assert support_encode(support_decode(n)) == n


def test_support_zero_is_empty():
    assert support_decode(support_encode({})) == {}
