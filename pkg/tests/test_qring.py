"""Term classification on the rational-function line, against the oracle.

A term is admissible exactly when no subterm inverts a zero denotation, and
constant exactly when its denotation is zero; tests/_oracles.py decides both
by direct fraction arithmetic.
"""

import os

import pytest

from smstruct.errors import ConfigurationError, FuelExhausted
from smstruct.fixtures import make_f3t, make_vec_p
from smstruct.qring import (
    Gen,
    Inv,
    Neg,
    Prod,
    Sum,
    WordCache,
    WordClass,
    parse_word,
    render_word,
    word_census,
    words_up_to,
)

from _oracles import word_value

FUEL = 200_000


@pytest.fixture(scope="module")
def f3t():
    return make_f3t()


@pytest.fixture(scope="module")
def cache(f3t):
    return WordCache(f3t)


def test_words_up_to_counts():
    w1 = words_up_to(("1", "0", "t"), 1)
    assert len(w1) == 3
    w2 = words_up_to(("1", "0", "t"), 2)
    assert len(w2) == 9
    assert all(w.length <= 2 for w in w2)
    # deterministic order
    assert [render_word(w) for w in w2] == [render_word(w) for w in
                                            words_up_to(("1", "0", "t"), 2)]


def test_parse_render_round_trip():
    for w in words_up_to(("1", "0", "t"), 3):
        assert parse_word(render_word(w), ("1", "0", "t")) == w


def test_parse_rejects_unknown_generator():
    with pytest.raises(Exception):
        parse_word("q + 1", ("1", "0", "t"))


def test_classification_matches_oracle_len3(f3t, cache):
    for w in words_up_to(("1", "0", "t"), 3):
        val = word_value(w)
        got = cache.classify(w, FUEL).kind
        if val is None:
            assert got is WordClass.NON_KOSHER, render_word(w)
        elif val.is_zero():
            assert got is WordClass.ZERO, render_word(w)
        else:
            assert got is WordClass.NON_ZERO, render_word(w)


def test_census_len2_frozen(f3t, cache):
    census = word_census(f3t, 2, FUEL, cache=cache)
    assert census.complete
    assert len(census.kosher) == 8
    assert len(census.zero) == 2
    assert {render_word(w) for w in census.zero} == {"0", "-0"}


def test_crafted_zero_word(f3t, cache):
    one, t = Gen("1"), Gen("t")
    v = Sum(Prod(t, Prod(t, t)), Neg(one))
    zstar = Sum(Prod(Inv(v), v), Neg(one))
    assert word_value(zstar).is_zero()
    assert cache.classify(zstar, FUEL).kind is WordClass.ZERO


def test_integer_words_char_3(f3t, cache):
    w3 = cache.integer_word(3)
    assert cache.classify(w3, FUEL).kind is WordClass.ZERO
    w2 = cache.integer_word(2)
    assert cache.classify(w2, FUEL).kind is WordClass.NON_ZERO
    assert cache.ring_eq(w2, Neg(Gen("1")), FUEL)


def test_ring_laws_sampled(f3t, cache):
    one, z, t = Gen("1"), Gen("0"), Gen("t")
    assert cache.ring_eq(Sum(t, z), t, FUEL)
    assert cache.ring_eq(Prod(t, one), t, FUEL)
    assert cache.ring_eq(Sum(t, Neg(t)), z, FUEL)
    assert cache.ring_eq(Prod(t, Inv(t)), one, FUEL)
    assert cache.ring_eq(Sum(one, t), Sum(t, one), FUEL)
    assert not cache.ring_eq(t, one, FUEL)
    assert not cache.ring_eq(Prod(t, t), t, FUEL)


def test_canonical_rep_stable(f3t, cache):
    one, t = Gen("1"), Gen("t")
    w = Sum(Prod(t, one), Gen("0"))
    rep = cache.canonical_rep(w, FUEL)
    assert cache.ring_eq(w, rep, FUEL)
    assert cache.canonical_rep(rep, FUEL) == rep
    # all names of t share one representative
    assert cache.canonical_rep(t, FUEL) == cache.canonical_rep(Prod(t, one), FUEL)


def test_fuel_exhaustion_is_loud(f3t):
    fresh = WordCache(f3t)
    with pytest.raises(FuelExhausted):
        fresh.classify(Sum(Gen("t"), Gen("1")), 2)


def test_fuel_monotone_no_flips(f3t):
    fresh = WordCache(f3t)
    w = Sum(Gen("t"), Neg(Gen("t")))
    settled = None
    for fuel in (1, 10, 1000, FUEL):
        try:
            kind = fresh.classify(w, fuel).kind
        except FuelExhausted:
            continue
        if settled is None:
            settled = kind
        assert kind is settled


def test_cache_requires_generators():
    with pytest.raises(ConfigurationError):
        WordCache(make_vec_p(5))


def test_cache_save_load(tmp_path, f3t):
    c1 = WordCache(f3t)
    words = words_up_to(("1", "0", "t"), 2)
    for w in words:
        c1.classify(w, FUEL)
    path = os.fspath(tmp_path / "words.cache")
    c1.save(path)
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    assert lines[0] == "smstruct-cache 1"
    assert all("\t" in ln for ln in lines[1:] if ln)
    c2 = WordCache(f3t)
    n = c2.load(path)
    assert n == len(lines) - 1
    for w in words:
        # loaded entries answer without search even at fuel 0
        assert c2.classify(w, 0).kind is c1.classify(w, 0).kind
