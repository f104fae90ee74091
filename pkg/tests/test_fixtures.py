import pytest

from smstruct.errors import ConfigurationError
from smstruct.fixtures import (
    FIXTURE_FAMILIES,
    f3t_decode,
    f3t_encode,
    make_f3t,
    make_finab,
    make_fixture,
    make_vec_p,
    mixed_radix_decode,
    mixed_radix_encode,
    parse_moduli,
    selfcheck,
)
from smstruct.periodic import Periodic
from smstruct.ratfunc import RatFunc

from _oracles import mr_add, mr_decode, mr_encode


ALL_SPECS = ["vec_p", "vec_p:7", "f3t", "f3t-corr", "lines", "lines:tri",
             "hub-lines", "hub-lines:tri", "finab:6", "finab:2x8"]


def test_registry_lists_five_families():
    assert len(FIXTURE_FAMILIES) == 5
    names = [n for n, _ in FIXTURE_FAMILIES]
    assert names == ["vec_p", "f3t", "lines", "hub-lines", "finab"]


@pytest.mark.parametrize("spec", ALL_SPECS)
def test_selfcheck_every_fixture(spec):
    report = selfcheck(make_fixture(spec), fuel=512)
    assert isinstance(report, list)


def test_unknown_fixture_rejected():
    with pytest.raises(ConfigurationError):
        make_fixture("no-such-thing")


def test_f3t_codes_round_trip():
    # zero is code 0; every code splits back into the same (periodic, vector)
    assert f3t_encode(Periodic.zero(3), RatFunc.zero(3)) == 0
    for code in range(300):
        per, vec = f3t_decode(code)
        assert f3t_encode(per, vec) == code
    per = Periodic.make((1, 2), 3)
    vec = RatFunc.gen(3)
    assert f3t_decode(f3t_encode(per, vec)) == (per, vec)


def test_f3t_group_matches_parts():
    orc = make_f3t()
    g = orc.group
    a = f3t_encode(Periodic.make((1, 0), 3), RatFunc.one(3))
    b = f3t_encode(Periodic.make((2,), 3), RatFunc.gen(3))
    s = g.add(a, b)
    pa, va = f3t_decode(a)
    pb, vb = f3t_decode(b)
    ps, vs = f3t_decode(s)
    assert ps == pa + pb
    assert vs == va + vb
    assert g.add(s, g.neg(b)) == a


def test_f3t_shift_acts_on_both_parts():
    orc = make_f3t()
    a = f3t_encode(Periodic.make((1, 0), 3), RatFunc.one(3))
    fills = orc.complete_block("t", (a, None))
    assert fills and len(fills) == 1
    pa, va = f3t_decode(a)
    pt, vt = f3t_decode(fills[0][1])
    assert pt == pa.shift(1)
    assert vt == va * RatFunc.gen(3)


def test_f3t_generic_is_pure_vector_one():
    orc = make_f3t()
    per, vec = f3t_decode(orc.generic_hint)
    assert per.is_zero()
    assert vec == RatFunc.one(3)


def test_f3t_corr_has_extra_symbol():
    plain = make_f3t()
    corr = make_fixture("f3t-corr")
    plain_syms = {(s.name, s.arity) for s in plain.signature.symbols}
    corr_syms = {(s.name, s.arity) for s in corr.signature.symbols}
    assert ("e", 3) in corr_syms - plain_syms


def test_f3t_prime_part():
    orc = make_f3t()
    prime = orc.prime_part()
    assert prime.universe_size is None
    assert prime.generic_hint is None
    # every element is algebraic in the prime part
    for x in range(10):
        assert prime.is_algebraic(x) is True
    # codes enumerate periodic elements only: addition is periodic addition
    g = prime.group
    assert g.add(1, 1) == 2 or g.add(1, 1) in range(40)


def test_parse_moduli():
    assert parse_moduli("8") == (8,)
    assert parse_moduli("2x8") == (2, 8)
    assert parse_moduli("3x9") == (3, 9)
    with pytest.raises(ConfigurationError):
        parse_moduli("0x3")


def test_finab_mixed_radix_agrees_with_oracle_arithmetic():
    moduli = (2, 8)
    orc = make_finab(moduli)
    assert orc.universe_size == 16
    g = orc.group
    for a in range(16):
        for b in range(16):
            want = mr_encode(mr_add(mr_decode(a, moduli), mr_decode(b, moduli),
                                    moduli), moduli)
            assert g.add(a, b) == want
    assert mixed_radix_encode((1, 3), moduli) == mr_encode((1, 3), moduli)
    assert mixed_radix_decode(11, moduli) == mr_decode(11, moduli)


def test_finab_holds_is_addition():
    orc = make_finab((3, 3))
    g = orc.group
    for a in range(9):
        for b in range(9):
            assert orc.holds("add", (a, b, g.add(a, b)))
            assert not orc.holds("add", (a, b, g.add(g.add(a, b), 1)))


def test_vec_p_scalars():
    orc = make_vec_p(7)
    g = orc.group
    assert g.scalar(7, 5) == 0
    assert g.scalar(8, 5) == 5


def test_lines_adjacency_shape():
    orc = make_fixture("lines")
    # each plain vertex has exactly two neighbors among a big prefix
    degs = []
    for v in range(6):
        degs.append(sum(1 for u in range(400) if orc.holds("R", (v, u))))
    assert all(d == 2 for d in degs)


def test_hub_lines_hub_is_everywhere():
    orc = make_fixture("hub-lines")
    for u in range(1, 50):
        assert orc.holds("R", (0, u))
        assert orc.holds("R", (u, 0))
    assert not orc.holds("R", (0, 0))


def test_lines_tri_marks_triangle():
    orc = make_fixture("lines:tri")
    assert orc.holds("R", (0, 1)) and orc.holds("R", (1, 2)) and orc.holds("R", (2, 0))
