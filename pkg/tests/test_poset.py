import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from omvar.homology import order_complex
from omvar.poset import FinitePoset, PosetError, antichain, boolean_lattice, chain_poset


def test_mobius_basic():
    C = chain_poset(3)
    assert C.mobius(0, 0) == 1
    assert C.mobius(0, 1) == -1
    assert C.mobius(0, 2) == 0


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_boolean_lattice(k):
    B = boolean_lattice(k)
    assert B.mobius(0, (1 << k) - 1) == (-1) ** k


def test_mobius_numbers():
    assert FinitePoset([], []).mobius_number() == -1
    assert chain_poset(1).mobius_number() == 0
    assert antichain(2).mobius_number() == 1
    assert antichain(3).mobius_number() == 2


def test_incomparable():
    with pytest.raises(PosetError):
        antichain(2).mobius(0, 1)


def test_intervals():
    B = boolean_lattice(2)
    assert set(B.open_interval(0, 3)) == {1, 2}
    assert set(B.closed_interval(1, 3)) == {1, 3}
    assert B.covers() == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert B.to_json()["covers"] == [[0, 1], [0, 2], [1, 3], [2, 3]]


def test_check_rejects_non_order():
    with pytest.raises(PosetError):
        FinitePoset([0, 1], [0b11, 0b11], check=True)


@st.composite
def random_posets(draw):
    # a random DAG on a topological order, then transitively closed
    n = draw(st.integers(0, 7))
    down = []
    for i in range(n):
        m = 1 << i
        for j in range(i):
            if draw(st.booleans()):
                m |= down[j]
        down.append(m)
    return FinitePoset(range(n), down, check=True)


@settings(max_examples=60, deadline=None)
@given(random_posets())
def test_mobius_number_is_reduced_euler_characteristic(P):
    assert P.mobius_number() == order_complex(P).reduced_euler_characteristic()
