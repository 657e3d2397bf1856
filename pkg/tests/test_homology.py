import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import invariant_factors

from omvar.homology import (
    ComplexTooLarge,
    HomologyGroup,
    SimplicialComplex,
    elementary_divisors,
    is_homology_contractible,
    order_complex,
    reduced_homology,
)
from omvar.poset import antichain, boolean_lattice, chain_poset


def groups(K):
    return [str(h) for h in reduced_homology(K)]


def test_point_and_two_points():
    assert is_homology_contractible(SimplicialComplex((0,), ((0,),)))
    assert groups(SimplicialComplex((0, 1), ((0,), (1,)))) == ["0", "Z"]


def test_circle():
    K = SimplicialComplex((0, 1, 2), ((0, 1), (1, 2), (0, 2)))
    assert K.f_vector() == [3, 3]
    assert groups(K) == ["0", "0", "Z"]
    assert not is_homology_contractible(K)


def test_cone_and_sphere():
    cone = SimplicialComplex(range(4), ((0, 1, 3), (1, 2, 3), (0, 2, 3)))
    assert is_homology_contractible(cone)
    sphere = SimplicialComplex(range(4), ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)))
    assert groups(sphere) == ["0", "0", "0", "Z"]


def test_projective_plane_torsion():
    # six-vertex triangulation of RP^2
    facets = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
              (1, 2, 4), (2, 3, 5), (1, 3, 4), (1, 3, 5), (2, 4, 5)]
    H = reduced_homology(SimplicialComplex(range(6), facets))
    assert H[2] == HomologyGroup(1, 0, (2,))
    assert H[3].is_trivial()


def test_order_complexes():
    assert order_complex(chain_poset(3)).facets == ((0, 1, 2),)
    assert order_complex(antichain(3)).facets == ((0,), (1,), (2,))
    diamond = boolean_lattice(2).open_interval(0, 3)
    assert groups(order_complex(diamond)) == ["0", "Z"]


def test_facets_are_maximal():
    K = SimplicialComplex((0, 1, 2), ((0, 1), (0,), (0, 1, 2)))
    assert K.facets == ((0, 1, 2),)


def test_size_guard():
    K = SimplicialComplex(range(14), (tuple(range(14)),))
    with pytest.raises(ComplexTooLarge):
        reduced_homology(K, max_faces=5000)


def test_empty_complex():
    assert groups(SimplicialComplex((), ())) == ["Z"]


mats = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=80, deadline=None)
@given(mats)
def test_elementary_divisors_match_sympy(rows):
    cols = [{i: rows[i][j] for i in range(len(rows)) if rows[i][j]} for j in range(len(rows[0]))]
    got = elementary_divisors(cols)
    want = [abs(int(x)) for x in invariant_factors(sympy.Matrix(rows)) if x != 0]
    assert got == sorted(want)
