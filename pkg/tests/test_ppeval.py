"""Fuel-bounded pp evaluation against exhaustive search.

On finite fixtures every verdict must be definite and must match the
brute-force evaluator from tests/_oracles.py.  On infinite fixtures the
checks are soundness (TRUE/FALSE verdicts never contradict brute facts on
witnessed tuples) and fuel monotonicity.
"""

import itertools

import pytest

from smstruct.fixtures import f3t_encode, make_f3t, make_finab, make_vec_p
from smstruct.periodic import Periodic
from smstruct.ppeval import DEFAULT_FUEL, eval_pp, solutions, solve_assignments
from smstruct.ratfunc import RatFunc
from smstruct.structures import PPBuilder, TriBool, atomic_pp

from _oracles import brute_eval, brute_solutions


def _chain_pp(n_quant_mid: bool = True):
    b = PPBuilder(2)
    z = b.fresh()
    b.block("t", ({0: 1}, None), ({z: 1}, None))
    b.block("t", ({z: 1}, None), ({1: 1}, None))
    return b.build(out_var=1)


def test_finite_fixture_definite_and_correct():
    orc = make_finab((2, 4))
    pp = atomic_pp(orc.signature, "add")
    for tup in itertools.product(range(8), repeat=3):
        got = eval_pp(orc, pp, tup, 4000)
        want = brute_eval(orc, pp, tup)
        assert got is not TriBool.UNKNOWN, tup
        assert (got is TriBool.TRUE) == want, tup


def test_finite_fixture_with_quantifier():
    orc = make_finab((3, 3))
    b = PPBuilder(1)
    z = b.fresh()
    b.block("add", ({z: 1}, None), ({z: 1}, None), ({0: 1}, None))  # x = 2z
    pp = b.build(out_var=0)
    want = {t[0] for t in brute_solutions(orc, pp)}
    got = {x for x in range(9) if eval_pp(orc, pp, (x,), 4000) is TriBool.TRUE}
    assert got == want
    for x in range(9):
        assert eval_pp(orc, pp, (x,), 4000) is not TriBool.UNKNOWN


def test_vec_p_inverse_pair():
    orc = make_vec_p(5)
    b = PPBuilder(2)
    b.zero_row({0: 1, 1: 1})
    pp = b.build(out_var=1)
    assert eval_pp(orc, pp, (2, 3), 1000) is TriBool.TRUE
    assert eval_pp(orc, pp, (2, 2), 1000) is TriBool.FALSE


def test_identity_always_true():
    orc = make_vec_p(5)
    b = PPBuilder(1)
    b.zero_row({0: 1, 0: 1})  # dict folding: single key
    b = PPBuilder(1)
    b.zero_row({0: 0})
    pp = b.build(out_var=0)
    for x in (0, 1, 17):
        assert eval_pp(orc, pp, (x,), 100) is TriBool.TRUE


def test_f3t_two_step_composition():
    orc = make_f3t()
    pp = _chain_pp()
    one = f3t_encode(Periodic.zero(3), RatFunc.one(3))
    tsq = f3t_encode(Periodic.zero(3), RatFunc.gen(3) * RatFunc.gen(3))
    tcu = f3t_encode(Periodic.zero(3), RatFunc.gen(3) * RatFunc.gen(3) * RatFunc.gen(3))
    assert eval_pp(orc, pp, (one, tsq), DEFAULT_FUEL) is TriBool.TRUE
    assert eval_pp(orc, pp, (one, tcu), DEFAULT_FUEL) is TriBool.FALSE
    assert eval_pp(orc, pp, (one, one), DEFAULT_FUEL) is TriBool.FALSE


def test_fuel_monotone():
    orc = make_f3t()
    pp = _chain_pp()
    one = f3t_encode(Periodic.zero(3), RatFunc.one(3))
    tsq = f3t_encode(Periodic.zero(3), RatFunc.gen(3) * RatFunc.gen(3))
    settled = {}
    for fuel in (1, 10, 100, 5000, 100_000):
        for tup in ((one, tsq), (one, one)):
            v = eval_pp(orc, pp, tup, fuel)
            if tup in settled:
                assert v is settled[tup], (tup, fuel)
            elif v is not TriBool.UNKNOWN:
                settled[tup] = v
    assert settled  # something resolved


def test_solutions_box_order_and_exactness():
    orc = make_finab((2, 3))
    b = PPBuilder(2)
    b.block("add", ({0: 1}, None), ({0: 1}, None), ({1: 1}, None))  # y = 2x
    pp = b.build(out_var=1)
    got = list(solutions(orc, pp, 5000))
    want = brute_solutions(orc, pp)
    assert set(got) == set(want)
    assert len(got) == len(set(got))
    # deterministic: same call, same order
    assert got == list(solutions(orc, pp, 5000))


def test_solutions_fuel_is_scan_bound():
    orc = make_vec_p(5)
    b = PPBuilder(1)
    b.zero_row({0: 1})
    pp = b.build(out_var=0)
    assert list(solutions(orc, pp, 50)) == [(0,)]
    assert list(solutions(orc, pp, 1)) == [(0,)]


def test_solve_assignments_complete_on_finite():
    orc = make_finab((2, 4))
    pp = atomic_pp(orc.signature, "add")
    sols, complete = solve_assignments(orc, pp, {0: 3, 1: 5}, 4000, cap=16)
    assert complete
    assert len(sols) == 1
    assert sols[0][2] == orc.group.add(3, 5)


def test_solve_assignments_cap_keeps_soundness():
    orc = make_finab((2, 4))
    pp = atomic_pp(orc.signature, "add")
    # cap only bounds the propagation collector; a finished finite scan may
    # return the whole set.  Either way every tuple must be sound, and
    # complete=True must mean the full solution set.
    sols, complete = solve_assignments(orc, pp, {0: 3}, 4000, cap=3)
    for t in sols:
        assert t[0] == 3
        assert orc.holds("add", t)
    full = {(3, y, orc.group.add(3, y)) for y in range(8)}
    if complete:
        assert set(sols) == full
    else:
        assert len(sols) == 3 and set(sols) <= full


def test_solve_assignments_unconstrained_scan():
    orc = make_finab((6,))
    b = PPBuilder(2)
    b.zero_row({0: 1, 1: 0})  # x = 0, y free
    pp = b.build(out_var=1)
    sols, complete = solve_assignments(orc, pp, {0: 0}, 4000, cap=32)
    assert complete
    assert {t[1] for t in sols} == set(range(6))
