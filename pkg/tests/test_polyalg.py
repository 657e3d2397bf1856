import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from omvar.polyalg import (
    DEFAULT_PRIME,
    MultiPoly,
    PolyMatrix,
    PrimeField,
    SizeGuardError,
    UniverseMismatch,
    det_mod,
    det_modp,
    det_symbolic,
    is_identity,
    is_probable_prime,
)
from omvar.varchenko import varchenko_matrix

N = 3
U = [MultiPoly.var(N, i) for i in range(N)]
SYMS = sympy.symbols(f"U0:{N}")


def P(s, n=N):
    return MultiPoly.parse(s, n)


def to_sympy(p):
    return sympy.expand(sympy.sympify(str(p).replace("^", "**"), locals=dict(zip([f"U{i}" for i in range(N)], SYMS))))


def test_basic_ring():
    one = MultiPoly.one(1)
    u = MultiPoly.var(1, 0)
    assert (one - u * u) + u * u == one
    assert (one - u) * (one + u) == one - u * u
    assert MultiPoly.monomial(3, [1, 2]) ** 2 == P("U1^2*U2^2")


def test_serialization():
    p = (1 - U[0] ** 2 * U[1] ** 2) * (1 + U[2])
    assert str(p) == "1 + U2 - U0^2*U1^2 - U0^2*U1^2*U2"
    assert P(str(p)) == p
    assert str(MultiPoly.zero(2)) == "0"


def test_substitute_zero():
    p = 1 - U[1] ** 2 * U[2] ** 2
    assert p.substitute_zero(1) == 1
    assert U[1].substitute_zero(1) == 0
    assert MultiPoly.constant(N, 5).substitute_zero(0) == 5


def test_eval_modp():
    u = MultiPoly.var(1, 0)
    assert (1 - u * u).eval_modp([1], 101) == 0
    assert (1 - u * u).eval_modp([0], 101) == 1
    assert (U[1] * U[2]).eval_modp({1: 2, 2: 3}, 7) == 6
    with pytest.raises(ValueError):
        (U[1] * U[2]).eval_modp({1: 2}, 7)


def test_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        MultiPoly.var(2, 0) + MultiPoly.var(3, 0)


def test_exponent_overflow():
    with pytest.raises(OverflowError):
        U[0] ** 300


def test_exact_division():
    f = 1 - U[0] ** 2
    g = f ** 3 * (1 - U[1] ** 2 * U[2] ** 2)
    assert g.exact_div(f) == f ** 2 * (1 - U[1] ** 2 * U[2] ** 2)
    q, r = (g + 1).divmod(f)
    assert r
    with pytest.raises(ArithmeticError):
        (g + 1).exact_div(f)


def test_det_small():
    n = 1
    u = MultiPoly.var(n, 0)
    one = MultiPoly.one(n)
    A = PolyMatrix([[one, u], [u, one]], n)
    assert det_symbolic(A) == one - u * u
    assert det_symbolic(PolyMatrix.identity(7, 2)) == 1


def test_det_f2(f2):
    V = varchenko_matrix(f2)
    want = (1 - MultiPoly.var(2, 0) ** 2) ** 2 * (1 - MultiPoly.var(2, 1) ** 2) ** 2
    assert det_symbolic(V) == want
    assert det_symbolic(V, method="bareiss") == want
    # (1-4)^2 (1-9)^2 = 576 = 71 mod 101
    assert det_modp(V, [2, 3], 101) == 71


def test_det_guard():
    with pytest.raises(SizeGuardError):
        det_symbolic(PolyMatrix.identity(13, 1))
    assert det_symbolic(PolyMatrix.identity(13, 1), force=True) == 1


def test_det_mod_singular():
    assert det_mod([[1, 2], [2, 4]], 101) == 0
    assert det_mod([[1, 0], [0, 1]]) == 1


def test_matmul_identity():
    one, zero = MultiPoly.one(N), MultiPoly.zero(N)
    A = PolyMatrix([[U[0], one], [zero, U[1] * U[2]]], N)
    assert A @ PolyMatrix.identity(2, N) == A
    assert is_identity(PolyMatrix.identity(3, N))
    B = PolyMatrix([[U[1], zero], [U[0], one]], N)
    assert (A @ B).entries == [[U[0] * U[1] + U[0], one], [U[0] * U[1] * U[2], U[1] * U[2]]]


def test_primes():
    assert is_probable_prime(DEFAULT_PRIME)
    assert is_probable_prime(101)
    assert not is_probable_prime(100)
    assert not is_probable_prime(1)
    with pytest.raises(ValueError):
        PrimeField(91)
    F = PrimeField(7)
    assert F.mul(3, F.inv(3)) == 1


# --- properties ----------------------------------------------------------

terms = st.dictionaries(
    st.tuples(*[st.integers(0, 3)] * N), st.integers(-5, 5), max_size=5
)
polys = terms.map(lambda t: MultiPoly(N, t))


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(polys, polys, st.lists(st.integers(0, 10**6), min_size=N, max_size=N))
def test_eval_homomorphism(a, b, pt):
    p = 1000003
    assert (a * b).eval_modp(pt, p) == a.eval_modp(pt, p) * b.eval_modp(pt, p) % p
    assert (a + b).eval_modp(pt, p) == (a.eval_modp(pt, p) + b.eval_modp(pt, p)) % p


@given(polys, polys)
def test_against_sympy(a, b):
    assert to_sympy(a * b) == sympy.expand(to_sympy(a) * to_sympy(b))


@given(polys)
def test_parse_roundtrip(a):
    assert P(str(a)) == a


small = st.dictionaries(st.tuples(*[st.integers(0, 1)] * N), st.integers(-2, 2), max_size=2).map(
    lambda t: MultiPoly(N, t)
)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(lambda k: st.lists(st.lists(small, min_size=k, max_size=k), min_size=k, max_size=k)))
def test_det_methods_agree(rows):
    A = PolyMatrix(rows, N)
    d = det_symbolic(A, method="bareiss")
    assert det_symbolic(A, method="minors") == d
    rng = random.Random(len(rows))
    for _ in range(3):
        pt = [rng.randrange(DEFAULT_PRIME) for _ in range(N)]
        assert det_modp(A, pt) == d.eval_modp(pt)
    if len(rows) <= 4:
        S = sympy.Matrix([[to_sympy(x) for x in r] for r in rows])
        assert to_sympy(d) == sympy.expand(S.det(method="berkowitz"))
