"""Oriented matroids given by their covector sets, and their minors."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .report import Report
from .signs import SignVector, bits, compose, separator_mask, to_mask


class OMError(ValueError):
    """Invalid oriented-matroid input (length mismatch, loops, missing zero, ...)."""


@dataclass(frozen=True)
class GroundSet:
    size: int
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 0:
            raise OMError("ground set size must be nonnegative")
        if self.labels is not None:
            if len(self.labels) != self.size:
                raise OMError("labels do not match ground set size")
            if len(set(self.labels)) != self.size:
                raise OMError("labels are not unique")

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels is not None else str(i)

    def index(self, name: str | int) -> int:
        if isinstance(name, int):
            if not 0 <= name < self.size:
                raise OMError(f"element {name} out of range")
            return name
        if self.labels is not None and name in self.labels:
            return self.labels.index(name)
        try:
            i = int(name)
        except ValueError:
            raise OMError(f"unknown element {name!r}") from None
        return self.index(i)

    def subset(self, positions: Sequence[int]) -> "GroundSet":
        if self.labels is None:
            return GroundSet(len(positions))
        return GroundSet(len(positions), tuple(self.labels[i] for i in positions))

    @property
    def full(self) -> int:
        return (1 << self.size) - 1


class OrientedMatroid:
    """Covector set of an oriented matroid on the ground set ``0..n-1``.

    Covectors are deduplicated and kept in canonical order (lexicographic
    with 0 < + < -).  Construction does not verify the covector axioms; use
    :func:`check_axioms` for that.
    """

    def __init__(self, ground: GroundSet | int, vectors: Iterable[SignVector]):
        if isinstance(ground, int):
            ground = GroundSet(ground)
        self.ground = ground
        n = ground.size
        uniq = set()
        for v in vectors:
            if v.n != n:
                raise OMError(f"sign vector {v} has length {v.n}, expected {n}")
            uniq.add(v)
        if SignVector.zero(n) not in uniq:
            raise OMError("the zero vector is missing")
        support = 0
        for v in uniq:
            support |= v.support
        if support != ground.full:
            loops = sorted(bits(ground.full & ~support))
            raise OMError(f"loop detected at element(s) {loops}")
        self.covectors: tuple[SignVector, ...] = tuple(sorted(uniq, key=SignVector.sort_key))
        self._set = frozenset(uniq)
        self._hash = hash((n, self.covectors))

    @property
    def n(self) -> int:
        return self.ground.size

    @property
    def full(self) -> int:
        return self.ground.full

    def __contains__(self, x: SignVector) -> bool:
        return x in self._set

    def __len__(self) -> int:
        return len(self.covectors)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrientedMatroid):
            return NotImplemented
        return self.n == other.n and self._set == other._set

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"<OrientedMatroid n={self.n} rank={self.rank} covectors={len(self)} topes={len(self.topes)}>"

    @cached_property
    def topes(self) -> tuple[SignVector, ...]:
        """Covectors maximal in the product order, in canonical order."""
        by_support = sorted(self.covectors, key=lambda x: -bin(x.support).count("1"))
        maximal: list[SignVector] = []
        for x in by_support:
            if not any(x <= t for t in maximal):
                maximal.append(x)
        return tuple(sorted(maximal, key=SignVector.sort_key))

    @cached_property
    def tope_set(self) -> frozenset[SignVector]:
        return frozenset(self.topes)

    @cached_property
    def _zero_set_heights(self) -> dict[int, int]:
        # rank_L(X) depends only on z(X): it is the length of the longest
        # chain of zero sets from E down to z(X).
        zsets = sorted({x.zeros for x in self.covectors}, key=lambda z: -bin(z).count("1"))
        height: dict[int, int] = {}
        for z in zsets:
            h = 0
            for w, hw in height.items():
                if z & ~w == 0 and z != w and hw + 1 > h:
                    h = hw + 1
            height[z] = h
        return height

    def covector_rank(self, x: SignVector) -> int:
        if x not in self:
            raise OMError(f"{x} is not a covector")
        return self._zero_set_heights[x.zeros]

    @cached_property
    def rank(self) -> int:
        return max(self._zero_set_heights.values())

    @cached_property
    def _faces_below(self) -> dict[SignVector, tuple[SignVector, ...]]:
        return {t: tuple(x for x in self.covectors if x <= t) for t in self.topes}

    def faces_below(self, tope: SignVector) -> tuple[SignVector, ...]:
        """All covectors X <= tope (including 0 and the tope itself)."""
        try:
            return self._faces_below[tope]
        except KeyError:
            raise OMError(f"{tope} is not a tope") from None

    def label(self, i: int) -> str:
        return self.ground.label(i)


def from_covectors(ground: GroundSet | int, vectors: Iterable[SignVector | str]) -> OrientedMatroid:
    vs = [SignVector.parse(v) if isinstance(v, str) else v for v in vectors]
    return OrientedMatroid(ground, vs)


def check_axioms(M: OrientedMatroid) -> Report:
    """Brute-force check of the covector axioms.

    Checks the zero vector, symmetry (-X in L), closure under composition and
    covector elimination: for X, Y in L and e in Sep(X, Y) some Z in L has
    Z_e = 0 and Z_f = (X o Y)_f for every f outside Sep(X, Y).
    """
    L = M.covectors
    S = M._set
    n = M.n
    failures: dict[str, list[str]] = {}

    def fail(axiom: str, witness: str) -> None:
        w = failures.setdefault(axiom, [])
        if len(w) < 5:
            w.append(witness)

    if SignVector.zero(n) not in S:
        fail("zero_vector", "0 missing")
    for x in L:
        if -x not in S:
            fail("symmetry", f"-({x}) missing")
    for x in L:
        for y in L:
            if compose(x, y) not in S:
                fail("composition", f"{x} o {y} = {compose(x, y)} missing")

    index: dict[int, set[tuple[int, int]]] = {}

    def patterns(mask: int) -> set[tuple[int, int]]:
        got = index.get(mask)
        if got is None:
            got = index[mask] = {(z.plus & mask, z.minus & mask) for z in L}
        return got

    for i, x in enumerate(L):
        for y in L[i + 1:]:
            sep = separator_mask(x, y)
            if not sep:
                continue
            w = compose(x, y)
            for e in bits(sep):
                mask = (M.full & ~sep) | (1 << e)
                want = (w.plus & mask & ~(1 << e), w.minus & mask & ~(1 << e))
                if want not in patterns(mask):
                    fail("elimination", f"X={x} Y={y} e={e}")

    axioms = ["zero_vector", "symmetry", "composition", "elimination"]
    details = {a: a not in failures for a in axioms}
    witnesses = [{"axiom": a, "examples": failures[a]} for a in axioms if a in failures]
    return Report("covector axioms", not failures, witnesses, details)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    m = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def matrix_rank(rows: list[list[Fraction]], ncols: int) -> int:
    return len(_rref(rows, ncols)[1])


def nullspace(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} over Q."""
    red, pivots = _rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[f]
        basis.append(x)
    return basis


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def from_arrangement(normals: Sequence[Sequence[Fraction | int | str]]) -> OrientedMatroid:
    """Covectors of the central arrangement with the given normal vectors.

    Cocircuits are read off the one-dimensional solution spaces of corank-one
    subsets of normals; the covector set is their closure under composition.
    """
    if not normals:
        raise OMError("empty list of normals")
    N = [[Fraction(v) for v in row] for row in normals]
    d = len(N[0])
    if any(len(row) != d for row in N):
        raise OMError("normals have inconsistent dimension")
    for i, row in enumerate(N):
        if all(v == 0 for v in row):
            raise OMError(f"normal {i} is zero (loop)")
    n = len(N)
    r = matrix_rank(N, d)
    lineality = nullspace(N, d)

    cocircuits: set[SignVector] = set()
    for subset in itertools.combinations(range(n), r - 1):
        rows = [N[i] for i in subset]
        if matrix_rank(rows, d) != r - 1:
            continue
        sol = nullspace(rows + lineality, d)
        assert len(sol) == 1
        x = sol[0]
        c = SignVector.from_signs([_sign(sum(a * b for a, b in zip(row, x))) for row in N])
        cocircuits.add(c)
        cocircuits.add(-c)

    zero = SignVector.zero(n)
    found = {zero}
    frontier = [zero]
    cocs = sorted(cocircuits, key=SignVector.sort_key)
    while frontier:
        nxt = []
        for x in frontier:
            for c in cocs:
                y = compose(x, c)
                if y not in found:
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return OrientedMatroid(GroundSet(n), found)


def _as_mask(M: OrientedMatroid, A: Iterable[int | str] | int) -> int:
    if isinstance(A, int):
        return A
    return to_mask(M.ground.index(a) for a in A)


def restriction(M: OrientedMatroid, A: Iterable[int | str] | int) -> OrientedMatroid:
    """L|_A = {F|_A : F in L}."""
    mask = _as_mask(M, A) & M.full
    if not mask:
        raise OMError("restriction to the empty set")
    pos = list(bits(mask))
    return OrientedMatroid(M.ground.subset(pos), {x.restrict(pos) for x in M.covectors})


def contraction(M: OrientedMatroid, A: Iterable[int | str] | int) -> OrientedMatroid:
    """L/A = {F|_(E minus A) : F in L, A contained in z(F)}."""
    mask = _as_mask(M, A) & M.full
    pos = list(bits(M.full & ~mask))
    vecs = {x.restrict(pos) for x in M.covectors if x.zeros & mask == mask}
    return OrientedMatroid(M.ground.subset(pos), vecs)


def deletion(M: OrientedMatroid, f: int | str) -> OrientedMatroid:
    if M.n < 2:
        raise OMError("cannot delete from a ground set with fewer than two elements")
    i = M.ground.index(f)
    return restriction(M, M.full & ~(1 << i))


def reorient(M: OrientedMatroid, A: Iterable[int | str] | int) -> OrientedMatroid:
    mask = _as_mask(M, A) & M.full
    return OrientedMatroid(M.ground, (x.reorient(mask) for x in M.covectors))


def permute(M: OrientedMatroid, order: Sequence[int | str]) -> OrientedMatroid:
    """Relabel so that ``order[k]`` becomes element ``k``."""
    pos = [M.ground.index(o) for o in order]
    if sorted(pos) != list(range(M.n)):
        raise OMError("element order must be a permutation of the ground set")
    return OrientedMatroid(M.ground.subset(pos), (x.restrict(pos) for x in M.covectors))


def star(M: OrientedMatroid, X: SignVector) -> tuple[SignVector, ...]:
    if X not in M:
        raise OMError(f"{X} is not a covector")
    return tuple(t for t in M.topes if X <= t)


def _check_tope(M: OrientedMatroid, P: SignVector) -> None:
    if P not in M.tope_set:
        raise OMError(f"{P} is not a tope")


def defines_proper_face(M: OrientedMatroid, e: int, P: SignVector) -> bool:
    """True iff some nonzero covector F <= P has F_e = 0."""
    _check_tope(M, P)
    bit = 1 << e
    return any(x.zeros & bit and not x.is_zero() for x in M.faces_below(P))


def max_face_at(M: OrientedMatroid, P: SignVector, e: int) -> SignVector:
    """The largest covector F <= P with F_e = 0 (composition of all such)."""
    _check_tope(M, P)
    bit = 1 << e
    out = SignVector.zero(M.n)
    for x in M.faces_below(P):
        if x.zeros & bit:
            out = compose(out, x)
    return out
