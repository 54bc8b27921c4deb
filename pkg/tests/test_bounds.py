import pytest

from rainbowsets.bounds import m_bound

from oracles import m_recurrence

# evaluated by a separate script before the library existed
FROZEN = {
    (2, 2, 1, 1): 472393,
    (2, 2, 1, 2): 2066242625,
    (3, 2, 1, 1): 2 ** 9 * (4 * (3 ** 81 - 1) + 9) + 1,
    (3, 2, 1, 2): 2 ** 16 * (4 * (3 ** 256 - 1) + 16) + 1,
}


@pytest.mark.parametrize("args,value", sorted(FROZEN.items()))
def test_frozen_values(args, value):
    assert m_bound(*args) == value
    assert m_recurrence(*args) == value


def test_base_cases():
    for d in range(1, 7):
        for r in range(1, 5):
            for p in range(d):
                assert m_bound(d, 1, p, r) == 1
            for n in range(1, 6):
                assert m_bound(d, n, 0, r) == d * (n - 1) + 1
    assert m_bound(5, 1, 3, 2) == 1
    assert m_bound(3, 2, 0, 1) == 4


@pytest.mark.parametrize("d,n,p,r", [(2, 3, 1, 1), (3, 2, 2, 1), (2, 2, 1, 3)])
def test_matches_plain_recurrence(d, n, p, r):
    assert m_bound(d, n, p, r) == m_recurrence(d, n, p, r)


def test_monotone_in_n():
    assert m_bound(2, 3, 1, 1) > m_bound(2, 2, 1, 1) > m_bound(2, 1, 1, 1)


@pytest.mark.parametrize("args", [(0, 1, 0, 1), (2, 0, 0, 1), (2, 2, 0, 0), (2, 2, 2, 1), (2, 2, -1, 1)])
def test_range_errors(args):
    with pytest.raises(ValueError):
        m_bound(*args)


def test_overflow_guard():
    with pytest.raises(OverflowError):
        m_bound(6, 3, 5, 4)
