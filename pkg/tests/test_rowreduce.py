"""Matrix rewriting and the reduction pipeline.

Row operations are checked denotationally: every entry is a term, the
test-local fraction arithmetic evaluates entries before and after an
operation, and the after-vector must be the stated combination of the
before-vectors.  Reduction outputs are frozen render strings plus ring
equalities against the starting term.
"""

import pytest

from smstruct.errors import ContractViolation, NotQuasiendomorphism
from smstruct.fixtures import make_f3t
from smstruct.qring import Gen, Inv, Neg, Prod, Sum, WordCache, render_word, word_pp, words_up_to
from smstruct.rowreduce import (
    absorb_constant,
    add_multiple,
    from_pp,
    int_multiple,
    inv_word,
    neg_word,
    prod_word,
    reduce_to_word,
    scale_row,
    sum_word,
)
from smstruct.structures import PPBuilder

from _oracles import F_ONE, F_T, F_ZERO, word_value

FUEL = 50_000


@pytest.fixture(scope="module")
def f3t():
    return make_f3t()


@pytest.fixture(scope="module")
def cache(f3t):
    return WordCache(f3t)


def _chain(syms):
    b = PPBuilder(2)
    vs = [b.fresh() for _ in syms[:-1]]
    path = [0] + vs + [1]
    for s, u, v in zip(syms, path, path[1:]):
        b.block(s, ({u: 1}, None), ({v: 1}, None))
    return b.build(out_var=1)


def _row_frac(row, n_cols):
    return [word_value(row.coeff(c)) for c in range(n_cols)] + [word_value(row.aug)]


def test_simplifiers_preserve_denotation(cache):
    one, z, t = Gen("1"), Gen("0"), Gen("t")
    samples = [one, z, t, Sum(t, one), Prod(t, t), Neg(t), Inv(t)]
    for u in samples:
        vu = word_value(u)
        assert word_value(neg_word(cache, u)) == -vu
        for v in samples:
            vv = word_value(v)
            assert word_value(sum_word(cache, u, v)) == vu + vv
            assert word_value(prod_word(cache, u, v)) == vu * vv
        if not vu.is_zero():
            assert word_value(inv_word(cache, u)) == vu.inv()
    assert word_value(int_multiple(cache, t, 4)) == F_T  # 4 = 1 mod 3
    assert word_value(int_multiple(cache, t, -1)) == -F_T
    assert word_value(int_multiple(cache, t, 0)) == F_ZERO


def test_from_pp_chain_rows(cache):
    m = from_pp(_chain(["t", "t"]), cache)
    assert m.n_z == 1
    assert m.n_cols == 3
    assert len(m.rows) == 2
    # row semantics: 0 in b(x) + c(y) + zs[0](z) + aug
    assert _row_frac(m.rows[0], 3) == [F_T, F_ZERO, -F_ONE, F_ZERO]   # t(x) - z = 0
    assert _row_frac(m.rows[1], 3) == [F_ZERO, -F_ONE, F_T, F_ZERO]   # t(z) - y = 0


def test_from_pp_rejects_wrong_arity(cache):
    b = PPBuilder(3)
    b.zero_row({0: 1, 1: 1, 2: 1})
    with pytest.raises(ContractViolation):
        from_pp(b.build(out_var=2), cache)


def test_from_pp_rejects_offsets(cache):
    b = PPBuilder(2)
    b.block("t", ({0: 1}, 5), ({1: 1}, None))
    with pytest.raises(ContractViolation):
        from_pp(b.build(out_var=1), cache)


def test_add_multiple_is_linear(cache):
    m = from_pp(_chain(["t", "t"]), cache)
    w = Gen("t")
    wv = word_value(w)
    before = [_row_frac(r, m.n_cols) for r in m.rows]
    m2 = add_multiple(m, 0, 1, w, FUEL)
    after = [_row_frac(r, m2.n_cols) for r in m2.rows]
    assert after[0] == before[0]
    for av, bv_dst, bv_src in zip(after[1], before[1], before[0]):
        assert av == bv_dst + wv * bv_src


def test_add_multiple_rejects_same_row(cache):
    m = from_pp(_chain(["t", "t"]), cache)
    with pytest.raises(ContractViolation):
        add_multiple(m, 1, 1, Gen("t"), FUEL)


def test_add_multiple_rejects_inadmissible_multiplier(cache):
    m = from_pp(_chain(["t", "t"]), cache)
    with pytest.raises(ContractViolation):
        add_multiple(m, 0, 1, Inv(Gen("0")), FUEL)


def test_scale_row_multiplies_every_entry(cache):
    m = from_pp(_chain(["t", "t"]), cache)
    v = Sum(Gen("t"), Gen("1"))
    vv = word_value(v)
    before = _row_frac(m.rows[0], m.n_cols)
    m2 = scale_row(m, 0, v, FUEL)
    after = _row_frac(m2.rows[0], m2.n_cols)
    assert after == [vv * x for x in before]
    assert _row_frac(m2.rows[1], m2.n_cols) == _row_frac(m.rows[1], m.n_cols)


def test_scale_by_constant_rejected(cache):
    m = from_pp(_chain(["t"]), cache)
    with pytest.raises(ContractViolation):
        scale_row(m, 0, Sum(Gen("t"), Neg(Gen("t"))), FUEL)


def test_absorb_constant_moves_to_augmentation(cache):
    # x + t(z) = 0 together with y + 3z = 0; char 3 makes 3z constant-class
    b = PPBuilder(2)
    z = b.fresh()
    b.block("t", ({z: 1}, None), ({0: -1}, None))
    b.zero_row({1: 1, z: 3})
    m = from_pp(b.build(out_var=1), cache)
    entry = m.rows[1].coeff(2)
    assert render_word(entry) != "0"
    assert word_value(entry) == F_ZERO
    m2 = absorb_constant(m, 1, 2, FUEL)
    assert render_word(m2.rows[1].coeff(2)) == "0"
    assert word_value(m2.rows[1].aug) == F_ZERO
    # non-constant entries refuse to be absorbed
    with pytest.raises(ContractViolation):
        absorb_constant(m, 0, 0, FUEL)


def test_reduce_identity_graph(f3t, cache):
    w = reduce_to_word(word_pp(f3t.signature, Gen("t")), f3t, FUEL, cache=cache)
    assert render_word(w) == "t"


def test_reduce_composition(f3t, cache):
    w = reduce_to_word(_chain(["t", "t"]), f3t, FUEL, cache=cache)
    assert render_word(w) == "t * t"
    assert word_value(w) == F_T * F_T


def test_reduce_zero_tail(f3t, cache):
    w = reduce_to_word(_chain(["t", "0"]), f3t, FUEL, cache=cache)
    assert render_word(w) == "0"


def test_reduce_shared_source(f3t, cache):
    # t(z, x) and t(z, y): y retraces x through the generator and back
    b = PPBuilder(2)
    z = b.fresh()
    b.block("t", ({z: 1}, None), ({0: 1}, None))
    b.block("t", ({z: 1}, None), ({1: 1}, None))
    w = reduce_to_word(b.build(out_var=1), f3t, FUEL, cache=cache)
    assert render_word(w) == "t * t^-1"
    assert cache.ring_eq(w, Gen("1"), FUEL)
    assert word_value(w) == F_ONE


def test_reduce_round_trip_len3(f3t, cache):
    words = [w for w in words_up_to(("1", "0", "t"), 3)
             if word_value(w) is not None]
    assert len(words) == 35
    for w in words:
        got = reduce_to_word(word_pp(f3t.signature, w), f3t, FUEL, cache=cache)
        assert cache.ring_eq(got, w, FUEL), render_word(w)
        assert word_value(got) == word_value(w), render_word(w)


def test_reduce_rejects_pinned_input(f3t, cache):
    # t(x, y) and t(y, x) force (t*t - 1) x = 0, confining the input
    b = PPBuilder(2)
    b.block("t", ({0: 1}, None), ({1: 1}, None))
    b.block("t", ({1: 1}, None), ({0: 1}, None))
    with pytest.raises(NotQuasiendomorphism):
        reduce_to_word(b.build(out_var=1), f3t, FUEL, cache=cache)


def test_reduce_rejects_unconstrained_output(f3t, cache):
    b = PPBuilder(2)
    b.zero_row({0: 1})
    with pytest.raises(NotQuasiendomorphism):
        reduce_to_word(b.build(out_var=1), f3t, FUEL, cache=cache)


def test_reduce_requires_samples(f3t, cache):
    with pytest.raises(ContractViolation):
        reduce_to_word(_chain(["t"]), f3t, FUEL, cache=cache, samples=0)
