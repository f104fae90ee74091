import itertools

import pytest

from smstruct.errors import ContractViolation
from smstruct.fixtures import make_finab, make_vec_p
from smstruct.structures import (
    GroupOps,
    PPBuilder,
    PPFormula,
    atomic_pp,
    canonical_tuples,
    conj_pp,
    pin_pp,
    project_pp,
)

from _oracles import brute_eval, brute_solutions, mr_add, mr_decode, mr_encode


def test_canonical_tuples_box_staged():
    infinite = make_vec_p(5)
    pairs = list(itertools.islice(canonical_tuples(infinite, 2), 16))
    # stage s introduces element s: every tuple in stage s has max exactly s
    assert pairs[0] == (0, 0)
    stages = {}
    for t in pairs:
        stages.setdefault(max(t), []).append(t)
    for s, ts in stages.items():
        assert all(max(t) == s for t in ts)
    # (0, k) opens stage k at index k*k
    assert pairs[1] == (0, 1)
    assert pairs[4] == (0, 2)
    assert pairs[9] == (0, 3)


def test_canonical_tuples_finite_universe():
    trips = list(canonical_tuples(make_finab((2,)), 3))
    assert len(trips) == 8
    assert set(trips) == set(itertools.product(range(2), repeat=3))


def test_canonical_tuples_exhaustive_prefix():
    n = 3
    pref = list(itertools.islice(canonical_tuples(make_vec_p(5), 2), n * n))
    assert set(pref) == set(itertools.product(range(n), repeat=2))


def test_group_ops_scalar():
    g = make_finab((7,)).group
    for a in range(7):
        assert g.scalar(0, a) == 0
        assert g.scalar(1, a) == a
        assert g.scalar(-1, a) == (7 - a) % 7
        assert g.scalar(5, a) == (5 * a) % 7
        assert g.scalar(-9, a) == (-9 * a) % 7


def test_ppbuilder_fresh_and_out_var():
    b = PPBuilder(2)
    z = b.fresh()
    assert z == 2
    b.block("add", ({0: 1}, None), ({1: 1}, None), ({z: 1}, None))
    pp = b.build(out_var=1)
    assert pp.n_free == 2 and pp.n_quant == 1 and pp.out_var == 1


def test_ppbuilder_duplicate_targets_fold():
    b = PPBuilder(1)
    b.zero_row({0: 2})
    pp = b.build(out_var=0)
    ((sym, rows),) = pp.blocks
    assert sym is None
    assert rows[0][0][0] == 2


def test_atomic_pp_matches_relation():
    orc = make_finab((2, 3))
    pp = atomic_pp(orc.signature, "add")
    for t in itertools.product(range(6), repeat=3):
        assert brute_eval(orc, pp, t) == orc.holds("add", t)


def test_pin_pp_is_substitution():
    orc = make_finab((2, 3))
    pp = atomic_pp(orc.signature, "add")
    pinned = pin_pp(orc, pp, {0: 3})
    assert pinned.n_free == 2
    for t in itertools.product(range(6), repeat=2):
        assert brute_eval(orc, pinned, t) == orc.holds("add", (3,) + t)


def test_conj_pp_intersects():
    orc = make_finab((4,))
    b1 = PPBuilder(2)
    b1.block("add", ({0: 1}, None), ({0: 1}, None), ({1: 1}, None))  # y = 2x
    d = b1.build(out_var=1)
    b2 = PPBuilder(2)
    b2.zero_row({0: 1, 1: -1})  # y = x
    e = b2.build(out_var=1)
    both = conj_pp(d, e)
    sols = brute_solutions(orc, both)
    # x = 2x mod 4 means x = 0
    assert sols == [(0, 0)]


def test_project_pp_quantifies():
    orc = make_finab((2, 3))
    pp = atomic_pp(orc.signature, "add")
    proj = project_pp(pp, [0])
    assert proj.n_free == 1
    got = {t[0] for t in brute_solutions(orc, proj)}
    assert got == set(range(6))  # addition is total


def test_arity_validation():
    orc = make_finab((5,))
    with pytest.raises(ContractViolation):
        orc.check_tuple("add", (0, 1))


def test_vec_p_group_digitwise():
    orc = make_vec_p(5)
    g = orc.group
    # codes are base-5 digit strings added pointwise
    a, b = 7, 13  # digits (2,1) and (3,2)
    s = g.add(a, b)
    assert s % 5 == (7 + 13) % 5
    assert (s // 5) % 5 == ((7 // 5) + (13 // 5)) % 5
    assert g.add(s, g.neg(b)) == a
