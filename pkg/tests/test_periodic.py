import pytest

from smstruct.periodic import Periodic, PeriodicCoder


def test_pattern_minimized():
    assert Periodic.make((1, 1, 1), 3).pattern == (1,)
    assert Periodic.make((1, 2, 1, 2), 3).pattern == (1, 2)
    assert Periodic.make((0, 1, 2), 3).period == 3


def test_addition_lcm_expansion():
    a = Periodic.make((1, 0), 3)      # period 2
    b = Periodic.make((0, 1, 2), 3)   # period 3
    s = a + b
    for i in range(12):
        assert s.at(i) == (a.at(i) + b.at(i)) % 3


def test_shift_rotates():
    a = Periodic.make((0, 1, 2), 3)
    # one convention, held consistently: shift moves the sequence forward
    for i in range(9):
        assert a.shift(1).at(i + 1) == a.at(i)
        assert a.shift(2).at(i + 2) == a.at(i)
    assert a.shift(3) == a
    assert a.shift(1).shift(2) == a


def test_group_laws():
    xs = [Periodic.make(p, 3) for p in [(0,), (1,), (1, 2), (0, 1, 1)]]
    for a in xs:
        for b in xs:
            assert a + b == b + a
            assert (a + (-a)).is_zero()
            for c in xs:
                assert (a + b) + c == a + (b + c)


def test_coder_orders_by_period_then_pattern():
    coder = PeriodicCoder(3)
    # the three constants come first
    firsts = [coder.decode(i) for i in range(3)]
    assert all(p.period == 1 for p in firsts)
    # then six proper period-2 patterns, then period-3
    assert all(coder.decode(i).period == 2 for i in range(3, 9))
    assert all(coder.decode(i).period == 3 for i in range(9, 33))


def test_coder_round_trip():
    coder = PeriodicCoder(3)
    for i in range(120):
        assert coder.encode(coder.decode(i)) == i


def test_kernel_of_t3_minus_1_is_27_elements():
    # x shifted three times equals x exactly when the period divides 3
    coder = PeriodicCoder(3)
    hits = [i for i in range(200) if (p := coder.decode(i)).shift(3) == p]
    assert len(hits) == 27
    assert all(coder.decode(i).period in (1, 3) for i in hits)
