"""The package's rational-function engine against the test-local one.

tests/_oracles.py implements GF(3)(t) arithmetic from scratch; here random
expressions are evaluated through both and compared after normalization.
"""

import random

import pytest

from smstruct.ratfunc import RatCoder, RatFunc, pgcd, pmonic

from _oracles import Frac, pnorm


def _to_frac(rf: RatFunc) -> Frac:
    return Frac(tuple(rf.num), tuple(rf.den))


def _rand_poly(rng: random.Random, max_deg: int = 4) -> tuple[int, ...]:
    return pnorm([rng.randrange(3) for _ in range(rng.randrange(max_deg + 1))])


def test_arithmetic_matches_oracle():
    rng = random.Random(11)
    pool = []
    for _ in range(40):
        num = _rand_poly(rng)
        den = _rand_poly(rng)
        if not den:
            den = (1,)
        pool.append(RatFunc.make(list(num), list(den), 3))
    for _ in range(400):
        a, b = rng.choice(pool), rng.choice(pool)
        fa, fb = _to_frac(a), _to_frac(b)
        assert _to_frac(a + b) == fa + fb
        assert _to_frac(a - b) == fa + (-fb)
        assert _to_frac(a * b) == fa * fb
        assert _to_frac(-a) == -fa
        if not b.is_zero():
            assert _to_frac(a / b) == fa * fb.inv()


def test_normal_form_unique():
    # 2t/2 and t normalize identically: monic denominator, reduced
    a = RatFunc.make([0, 2], [2], 3)
    b = RatFunc.make([0, 1], [1], 3)
    assert a == b
    c = RatFunc.make([0, 2, 1], [0, 1], 3)  # (t^2 + 2t)/t = t + 2
    d = RatFunc.make([2, 1], [1], 3)
    assert c == d


def test_inverse_of_zero_rejected():
    z = RatFunc.zero(3)
    with pytest.raises(ZeroDivisionError):
        z.inverse()


def test_gcd_monic():
    g = pgcd([0, 0, 2], [0, 2], 3)
    assert list(g) == list(pmonic(g, 3))
    assert list(g) == [0, 1]


def test_coder_round_trip():
    coder = RatCoder(3)
    seen = set()
    for i in range(300):
        rf = coder.decode(i)
        assert coder.encode(rf) == i
        key = (tuple(rf.num), tuple(rf.den))
        assert key not in seen
        seen.add(key)


def test_coder_zero_one_small():
    coder = RatCoder(3)
    codes = {coder.encode(RatFunc.zero(3)), coder.encode(RatFunc.one(3)),
             coder.encode(RatFunc.gen(3))}
    assert max(codes) < 16
