import pytest

from omvar.fixtures import F3, F4
from omvar.matroid import underlying
from omvar.om import (
    GroundSet,
    OMError,
    check_axioms,
    contraction,
    defines_proper_face,
    deletion,
    from_arrangement,
    from_covectors,
    max_face_at,
    permute,
    reorient,
    restriction,
    star,
)
from omvar.signs import SignVector

ALL2 = ["00", "+0", "-0", "0+", "0-", "++", "+-", "-+", "--"]


def sv(s):
    return SignVector.parse(s)


def test_rank_one():
    M = from_covectors(1, ["0", "+", "-"])
    assert M.rank == 1
    assert [str(t) for t in M.topes] == ["+", "-"]


def test_all_nine_vectors(f2):
    M = from_covectors(2, ALL2)
    assert M.rank == 2 and len(M.topes) == 4
    assert M == f2


def test_missing_zero_rejected():
    with pytest.raises(OMError):
        from_covectors(1, ["+", "-"])


def test_loop_rejected():
    with pytest.raises(OMError):
        from_covectors(2, ["00", "+0", "-0"])
    with pytest.raises(OMError):
        from_arrangement([[1, 0], [0, 0]])


def test_axioms_pass(f2, f3, f4, ap):
    for M in (f2, f3, f4, ap):
        assert check_axioms(M).passed


def test_axioms_zero_rank():
    M = from_covectors(GroundSet(0), [SignVector.zero(0)])
    assert check_axioms(M).passed


def test_axioms_tope_removed():
    M = from_covectors(2, [x for x in ALL2 if x != "+-"])
    rep = check_axioms(M)
    assert not rep.passed
    assert not rep.details["composition"]
    assert not rep.details["symmetry"]


def test_arrangement_counts(f2, f3, f4):
    assert (len(f2.covectors), len(f2.topes)) == (9, 4)
    assert (len(f3.covectors), len(f3.topes)) == (13, 6)
    assert (len(f4.covectors), len(f4.topes)) == (27, 8)


def test_arrangement_rationals():
    M = from_arrangement([["1/2", "0"], [0, "3"], ["-1/3", "-1/3"]])
    assert len(M.topes) == 6


def test_restriction(f2, f3):
    assert restriction(f3, [0, 1]) == f2
    assert restriction(f3, [0, 1, 2]) == f3
    R = restriction(f3, [1])
    assert R.rank == 1 and len(R.covectors) == 3
    with pytest.raises(OMError):
        restriction(f3, [])


def test_contraction(f2, f3, f4):
    C = contraction(f3, [2])
    assert (C.n, C.rank, len(C.topes)) == (2, 1, 2)
    assert contraction(f3, []) == f3
    assert contraction(f4, [0]) == f2


def test_contraction_by_everything(f3):
    C = contraction(f3, [0, 1, 2])
    assert C.n == 0 and C.rank == 0 and len(C.topes) == 1


def test_deletion(f2, f3, f1):
    assert deletion(f3, 2) == f2
    with pytest.raises(OMError):
        deletion(f1, 0)


def test_reorient(f3):
    assert reorient(f3, []) == f3
    assert reorient(reorient(f3, [0, 2]), [0, 2]) == f3
    assert reorient(f3, [0, 1, 2]) == f3  # the covector set is symmetric
    assert underlying(reorient(f3, [0])).rank_of_flat == underlying(f3).rank_of_flat


def test_permute(f3):
    P = permute(f3, [2, 0, 1])
    assert len(P.topes) == 6 and check_axioms(P).passed
    with pytest.raises(OMError):
        permute(f3, [0, 0, 1])


def test_star(f3):
    assert set(star(f3, SignVector.zero(3))) == set(f3.topes)
    T = f3.topes[0]
    assert star(f3, T) == (T,)
    assert {str(t) for t in star(f3, sv("0++"))} == {"+++", "-++"}
    with pytest.raises(OMError):
        star(f3, sv("0+-"))


def test_defines_proper_face(f1, f2, f3):
    assert defines_proper_face(f2, 0, sv("++"))
    assert not defines_proper_face(f1, 0, sv("+"))
    # in the triangle arrangement each element misses exactly the two bounded topes
    missing = [(e, str(P)) for e in range(3) for P in f3.topes if not defines_proper_face(f3, e, P)]
    assert missing == [(0, "+-+"), (0, "-+-"), (1, "+--"), (1, "-++"), (2, "+++"), (2, "---")]


def test_max_face_at(f3):
    assert max_face_at(f3, sv("+++"), 0) == sv("0++")
    assert max_face_at(f3, sv("+-+"), 0) == SignVector.zero(3)


def test_topes_antipodal_and_halved(f3, f4, ap):
    for M in (f3, f4, ap):
        assert {-t for t in M.topes} == set(M.topes)
        for e in range(M.n):
            assert 2 * sum(1 for t in M.topes if t[e] > 0) == len(M.topes)


def test_contraction_rank_identity(f3, f4):
    for M in (f3, f4):
        U = underlying(M)
        for flat in U.rank_of_flat:
            assert contraction(M, flat).rank + U.rank_mask(flat) == M.rank


def test_labels():
    g = GroundSet(2, ("a", "b"))
    assert g.index("b") == 1 and g.label(0) == "a"
    with pytest.raises(OMError):
        GroundSet(2, ("a", "a"))
