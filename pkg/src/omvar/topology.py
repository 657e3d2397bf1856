"""Tope posets, Möbius values over half spaces, supertopes and their topology.

The tope poset T_R orders topes by inclusion of their separator from the
base tope R.  For an element e, T_{R,e} is the set of topes on the far side
of e from R with a new bottom element adjoined.  Most routines here work on
separator bitmasks; FinitePoset objects are only materialized on request.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .homology import DEFAULT_MAX_FACES, is_homology_contractible, order_complex, reduced_homology
from .om import OMError, OrientedMatroid, _as_mask, defines_proper_face, max_face_at, reorient, star
from .poset import FinitePoset
from .report import Report
from .signs import SignVector, bits, separator_mask

HAT0 = "0^"


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _check_tope(M: OrientedMatroid, P: SignVector) -> None:
    if P not in M.tope_set:
        raise OMError(f"{P} is not a tope")


def _opposite(R: SignVector, P: SignVector, e: int) -> bool:
    return P[e] != 0 and P[e] == -R[e]


class TopePoset(FinitePoset):
    """T_R: topes with P <= Q iff Sep(R, P) is a subset of Sep(R, Q)."""

    def __init__(self, M: OrientedMatroid, R: SignVector):
        _check_tope(M, R)
        self.base = R
        seps = [separator_mask(R, T) for T in M.topes]
        down = [sum(1 << j for j, s in enumerate(seps) if s & ~si == 0) for si in seps]
        super().__init__(M.topes, down)


def tope_poset(M: OrientedMatroid, R: SignVector) -> TopePoset:
    return TopePoset(M, R)


def covector_poset(vectors: Iterable[SignVector]) -> FinitePoset:
    """Covectors ordered by the product order 0 < +, -."""
    return FinitePoset.from_relation(list(vectors), lambda a, b: a <= b)


# --- the half-space posets T_{R,e} ---------------------------------------


def half_poset(M: OrientedMatroid, R: SignVector, e: int) -> FinitePoset:
    """T_{R,e} with bottom element HAT0."""
    _check_tope(M, R)
    members = [T for T in M.topes if _opposite(R, T, e)]
    seps = [separator_mask(R, T) for T in members]
    down = [1]
    for si in seps:
        m = 1
        for j, s in enumerate(seps):
            if s & ~si == 0:
                m |= 1 << (j + 1)
        down.append(m)
    return FinitePoset([HAT0, *members], down)


def half_interval(M: OrientedMatroid, R: SignVector, e: int, P: SignVector) -> FinitePoset:
    """The open interval (0^, P) in T_{R,e}."""
    _check_tope(M, P)
    if not _opposite(R, P, e):
        raise OMError(f"{P} is not on the far side of element {e} from {R}")
    return half_poset(M, R, e).open_interval(HAT0, P)


@lru_cache(maxsize=4096)
def half_mobius_table(M: OrientedMatroid, R: SignVector, e: int) -> dict[SignVector, int]:
    """mu(0^, Q) in T_{R,e} for every tope Q with Q_e = -R_e."""
    _check_tope(M, R)
    members = [T for T in M.topes if _opposite(R, T, e)]
    seps = {T: separator_mask(R, T) for T in members}
    mu: dict[SignVector, int] = {}
    for T in sorted(members, key=lambda T: _popcount(seps[T])):
        s = seps[T]
        mu[T] = -1 - sum(v for Q, v in mu.items() if seps[Q] & ~s == 0 and seps[Q] != s)
    return mu


def mobius_half(M: OrientedMatroid, R: SignVector, e: int, P: SignVector) -> int:
    """mu(0^, P) in T_{R,e}, i.e. the Möbius number of (0^, P)_{R,e}."""
    _check_tope(M, P)
    if not _opposite(R, P, e):
        raise OMError(f"{P} is not on the far side of element {e} from {R}")
    return half_mobius_table(M, R, e)[P]


# --- intervals that are stars --------------------------------------------


def interval_star(M: OrientedMatroid, R: SignVector, Q: SignVector, P: SignVector) -> SignVector | None:
    """The covector X with [Q, P]_R = star(X), or None if there is none."""
    sq, sp = separator_mask(R, Q), separator_mask(R, P)
    if sq & ~sp:
        raise OMError(f"{Q} is not below {P} in the tope poset of {R}")
    interval = [T for T in M.topes if sq & ~separator_mask(R, T) == 0 and separator_mask(R, T) & ~sp == 0]
    plus, minus = M.full, M.full
    for T in interval:
        plus &= T.plus
        minus &= T.minus
    X = SignVector(M.n, plus, minus)
    if X in M and set(star(M, X)) == set(interval):
        return X
    return None


def triangle_interval(M: OrientedMatroid, R: SignVector, e: int, P: SignVector) -> FinitePoset:
    """Elements Q of (0^, P)_{R,e} for which [Q, P]_R is the star of a covector."""
    iv = half_interval(M, R, e, P)
    keep = [Q for Q in iv if interval_star(M, R, Q, P) is not None]
    return iv.subposet(keep)


def f_r_filter(M: OrientedMatroid, R: SignVector, P: SignVector) -> FinitePoset:
    """F_R(P): covectors 0 < X < P with z(X) inside Sep(P, R)."""
    _check_tope(M, R)
    _check_tope(M, P)
    sep = separator_mask(P, R)
    inner = [X for X in M.faces_below(P) if X != P and not X.is_zero()]
    F = [X for X in inner if X.zeros & ~sep == 0]
    chosen = set(F)
    for X in F:
        for Y in inner:
            if X <= Y:
                assert Y in chosen, f"F_R(P) is not a filter: {X} <= {Y}"
    return covector_poset(F)


def w_set(M: OrientedMatroid, R: SignVector, e: int, P: SignVector) -> FinitePoset:
    """W_{R,e}(P) as a subposet of the covector poset."""
    _check_tope(M, P)
    if not _opposite(R, P, e):
        raise OMError(f"{P} is not on the far side of element {e} from {R}")
    sep = separator_mask(P, R)
    S = M.full & ~sep
    S1 = sep & ~(1 << e)
    out = []
    for F in M.faces_below(P):
        if F == P or F.is_zero() or F[e] != -R[e]:
            continue
        # F|_S = P|_S and F|_{S'} <= P|_{S'}
        if F.plus & S != P.plus & S or F.minus & S != P.minus & S:
            continue
        if F.plus & S1 & ~P.plus or F.minus & S1 & ~P.minus:
            continue
        out.append(F)
    return covector_poset(out)


def alpha_map(M: OrientedMatroid, R: SignVector, e: int, P: SignVector, C: SignVector) -> SignVector:
    """alpha_P(C): the covector whose star is the interval [C, P]_R."""
    iv = half_interval(M, R, e, P)
    if C not in iv.index:
        raise OMError(f"{C} is not in the open interval below {P}")
    X = interval_star(M, R, C, P)
    if X is None:
        raise OMError(f"[{C}, {P}] is not the star of a covector")
    assert X.zeros == separator_mask(C, P)
    assert X in w_set(M, R, e, P).index
    return X


def check_alpha(M: OrientedMatroid, R: SignVector, e: int, P: SignVector) -> Report:
    """z(alpha(C)) = Sep(C, P), alpha lands in W and is monotone, and F o R is
    the unique maximal element of each fiber alpha^{-1}(W_{<= F})."""
    tri = triangle_interval(M, R, e, P)
    W = w_set(M, R, e, P)
    alpha = {C: alpha_map(M, R, e, P, C) for C in tri}
    bad = []
    for C in tri:
        for D in tri:
            if tri.leq(C, D) and not alpha[C] <= alpha[D]:
                bad.append({"monotone": [str(C), str(D)]})
    for F in W:
        fiber = [C for C in tri if alpha[C] <= F]
        top = F.compose(R)
        maxi = [C for C in fiber if all(tri.leq(D, C) for D in fiber)]
        if maxi != [top]:
            bad.append({"fiber": str(F), "maximum": [str(C) for C in maxi]})
    return Report("alpha map", not bad, bad[:5])


# --- supertopes ----------------------------------------------------------


class EmptySupertopeError(OMError):
    pass


@dataclass(frozen=True)
class Supertope:
    plus: int
    minus: int
    topes: tuple[SignVector, ...]

    def subposet(self, M: OrientedMatroid, R: SignVector) -> FinitePoset:
        return tope_poset(M, R).subposet(self.topes)

    def to_json(self) -> dict:
        return {"plus": list(bits(self.plus)), "minus": list(bits(self.minus)), "topes": [str(t) for t in self.topes]}


def _pattern_topes(M: OrientedMatroid, plus: int, minus: int) -> tuple[SignVector, ...]:
    return tuple(T for T in M.topes if plus & ~T.plus == 0 and minus & ~T.minus == 0)


def _pattern(M: OrientedMatroid, S_plus, S_minus) -> tuple[int, int]:
    plus = _as_mask(M, S_plus) & M.full
    minus = _as_mask(M, S_minus) & M.full
    if plus & minus:
        raise OMError("S+ and S- overlap")
    if not plus | minus:
        raise OMError("S+ and S- are both empty")
    return plus, minus


def supertope(M: OrientedMatroid, S_plus, S_minus) -> Supertope:
    plus, minus = _pattern(M, S_plus, S_minus)
    topes = _pattern_topes(M, plus, minus)
    if not topes:
        raise EmptySupertopeError("the supertope is empty")
    return Supertope(plus, minus, topes)


def is_closed_supertope(M: OrientedMatroid, S_plus, S_minus) -> bool:
    """Every strict extension of the sign pattern strictly shrinks the tope set.

    It suffices to extend by one element: an extension that keeps all topes
    keeps them under each of its one-element sub-extensions too.
    """
    st = supertope(M, S_plus, S_minus)
    for f in bits(M.full & ~(st.plus | st.minus)):
        signs = {T[f] for T in st.topes}
        if len(signs) < 2:
            return False
    return True


def is_closed_supertope_bruteforce(M: OrientedMatroid, S_plus, S_minus) -> bool:
    st = supertope(M, S_plus, S_minus)
    free = list(bits(M.full & ~(st.plus | st.minus)))
    for choice in itertools.product((0, 1, -1), repeat=len(free)):
        if not any(choice):
            continue
        plus, minus = st.plus, st.minus
        for f, c in zip(free, choice):
            if c == 1:
                plus |= 1 << f
            elif c == -1:
                minus |= 1 << f
        if len(_pattern_topes(M, plus, minus)) == len(st.topes):
            return False
    return True


def all_patterns(n: int) -> Iterable[tuple[int, int]]:
    """Every (S+, S-) with disjoint parts and nonempty union."""
    for code in itertools.product((0, 1, -1), repeat=n):
        plus = sum(1 << i for i, c in enumerate(code) if c == 1)
        minus = sum(1 << i for i, c in enumerate(code) if c == -1)
        if plus | minus:
            yield plus, minus


def supertope_homology(M: OrientedMatroid, st: Supertope, R: SignVector, max_faces: int = DEFAULT_MAX_FACES):
    return reduced_homology(order_complex(st.subposet(M, R)), max_faces)


def supertope_sweep(M: OrientedMatroid, max_faces: int = DEFAULT_MAX_FACES) -> Report:
    """Every nonempty supertope, under every base tope, is homologically trivial."""
    sets = {}
    for plus, minus in all_patterns(M.n):
        topes = _pattern_topes(M, plus, minus)
        if topes:
            sets.setdefault(topes, (plus, minus))
    bad = []
    checked = 0
    for R in M.topes:
        TR = tope_poset(M, R)
        for topes, (plus, minus) in sets.items():
            K = order_complex(TR.subposet(topes))
            checked += 1
            if not is_homology_contractible(K, max_faces):
                bad.append({"base": str(R), "plus": list(bits(plus)), "minus": list(bits(minus))})
    return Report("supertopes are homologically trivial", not bad, bad[:5], {"checked": checked, "supertopes": len(sets)})


# --- crucial Möbius sums -------------------------------------------------


def crucial_groups(M: OrientedMatroid, R: SignVector, e: int, P: SignVector) -> dict[int, list[SignVector]]:
    """Topes Q with Q_e = -R_e grouped by Sep(P, Q) & Sep(Q, R)."""
    if not _opposite(R, P, e):
        raise OMError(f"{P} is not on the far side of element {e} from {R}")
    groups: dict[int, list[SignVector]] = {}
    for Q in half_mobius_table(M, R, e):
        groups.setdefault(separator_mask(P, Q) & separator_mask(Q, R), []).append(Q)
    return groups


def crucial_sum(M: OrientedMatroid, R: SignVector, e: int, P: SignVector, S) -> int:
    """Sum of mu(0^, Q) in T_{R,e} over Q with Sep(P, Q) & Sep(Q, R) = S.

    Separators and tope posets are unchanged by reorientation, so the sum is
    taken directly over {Q : Q_e = -R_e} without normalizing R first.
    """
    _check_tope(M, R)
    _check_tope(M, P)
    mask = _as_mask(M, S)
    if mask >> e & 1:
        raise OMError("S must not contain e")
    mu = half_mobius_table(M, R, e)
    return sum(mu[Q] for Q in crucial_groups(M, R, e, P).get(mask, ()))


def check_crucial_sums(M: OrientedMatroid) -> Report:
    """Exhaustive check over all (R, e, P, S); S values with no Q sum to 0."""
    bad = []
    count = 0
    for R in M.topes:
        for e in range(M.n):
            mu = half_mobius_table(M, R, e)
            for P in mu:
                groups = crucial_groups(M, R, e, P)
                if 0 not in groups:
                    bad.append({"R": str(R), "e": e, "P": str(P), "S": [], "sum": 0})
                for S, Qs in groups.items():
                    count += 1
                    total = sum(mu[Q] for Q in Qs)
                    if total != (-1 if S == 0 else 0):
                        bad.append({"R": str(R), "e": e, "P": str(P), "S": list(bits(S)), "sum": total})
    return Report("crucial Möbius sums", not bad, bad[:5], {"groups": count})


def two_maximal_witness(M: OrientedMatroid) -> dict | None:
    """Some group {Q : Q_e = -R_e, Sep(P,Q) & Sep(Q,R) = S} with two or more
    maximal elements in T_R, or None."""
    for R in M.topes:
        for e in range(M.n):
            mu = half_mobius_table(M, R, e)
            seps = {Q: separator_mask(R, Q) for Q in mu}
            for P in mu:
                for S, Qs in crucial_groups(M, R, e, P).items():
                    maxi = [Q for Q in Qs if not any(Q != Q2 and seps[Q] & ~seps[Q2] == 0 for Q2 in Qs)]
                    if len(maxi) >= 2:
                        return {
                            "R": str(R),
                            "e": e,
                            "P": str(P),
                            "S": list(bits(S)),
                            "maximal": [str(Q) for Q in maxi],
                        }
    return None


# --- trichotomy and fibers ----------------------------------------------


@dataclass(frozen=True)
class TrichotomyWitness:
    kind: str  # "max", "min" or "covector"
    vector: SignVector


def trichotomy_witness(M: OrientedMatroid, S_plus, S_minus, S_star) -> TrichotomyWitness:
    plus, minus, st = (_as_mask(M, S) & M.full for S in (S_plus, S_minus, S_star))
    if not (plus and minus and st):
        raise OMError("all three parts must be nonempty")
    if plus & minus or plus & st or minus & st or plus | minus | st != M.full:
        raise OMError("the three parts must partition the ground set")
    for f in bits(st):
        Tf = SignVector(M.n, plus | 1 << f, minus | (st & ~(1 << f)))
        if Tf not in M.tope_set:
            raise OMError(f"precondition fails: {Tf} is not a tope")
    top = SignVector(M.n, plus, minus | st)
    if top in M.tope_set:
        return TrichotomyWitness("max", top)
    bottom = SignVector(M.n, plus | st, minus)
    if bottom in M.tope_set:
        return TrichotomyWitness("min", bottom)
    for Y in M.covectors:
        if Y.plus != plus or minus & ~Y.minus or Y.minus & ~(minus | st):
            continue
        if Y.zeros and Y.zeros & ~st == 0:
            return TrichotomyWitness("covector", Y)
    raise AssertionError("no witness found for the trichotomy")


def fiber_check(M: OrientedMatroid, S_plus, S_minus, f: int, base: SignVector | None = None) -> bool:
    """Fiber identity for restriction to E minus f, with R normalized to all plus."""
    R = M.topes[0] if base is None else base
    _check_tope(M, R)
    plus, minus = _pattern(M, S_plus, S_minus)
    if (plus | minus) >> f & 1:
        raise OMError("f must lie outside S+ and S-")
    A = R.minus
    N = reorient(M, A)
    plus, minus = (plus & ~A) | (minus & A), (minus & ~A) | (plus & A)
    bit = 1 << f
    sup = _pattern_topes(N, plus, minus)
    deleted = {(T.plus & ~bit, T.minus & ~bit) for T in N.topes}
    for qp, qm in deleted:
        if plus & ~qp or minus & ~qm:
            continue
        lhs = {T for T in sup if (T.minus & ~bit) & ~qm == 0}
        rhs = set(_pattern_topes(N, qp, minus))
        if lhs != rhs:
            return False
    return True


def check_fibers(M: OrientedMatroid, base: SignVector | None = None) -> Report:
    bad = []
    for plus, minus in all_patterns(M.n):
        for f in bits(M.full & ~(plus | minus)):
            if not fiber_check(M, plus, minus, f, base):
                bad.append({"plus": list(bits(plus)), "minus": list(bits(minus)), "f": f})
    return Report("fiber identity", not bad, bad[:5])


# --- Möbius consequences of the topology ---------------------------------


def check_interval_spheres(M: OrientedMatroid) -> Report:
    """mu_{T_R}(T1, T2) is (-1)^(r - rank X - 2) when [T1, T2] = star(X), else 0."""
    bad = []
    r = M.rank
    for R in M.topes:
        TR = tope_poset(M, R)
        for T1 in M.topes:
            mu = TR.mobius_from(T1)
            for T2, v in mu.items():
                if T2 == T1:
                    continue
                X = interval_star(M, R, T1, T2)
                want = (-1) ** (r - M.covector_rank(X) - 2) if X is not None else 0
                if v != want:
                    bad.append({"R": str(R), "T1": str(T1), "T2": str(T2), "mu": v, "expected": want})
    return Report("tope intervals are spheres or contractible", not bad, bad[:5])


def check_bounded_mobius(M: OrientedMatroid) -> Report:
    """mu(0^, P) is 0 or (-1)^rank when e does not define a proper face of P."""
    bad = []
    count = 0
    for R in M.topes:
        for e in range(M.n):
            for P, v in half_mobius_table(M, R, e).items():
                if defines_proper_face(M, e, P):
                    continue
                count += 1
                want = (-1) ** M.rank if P == -R else 0
                if v != want:
                    bad.append({"R": str(R), "e": e, "P": str(P), "mu": v, "expected": want})
    return Report("bounded-tope Möbius values", not bad, bad[:5], {"cases": count})


def check_outside_star(M: OrientedMatroid) -> Report:
    """mu(0^, P) = 0 for P outside star(F), F the largest face of R at e."""
    bad = []
    count = 0
    for R in M.topes:
        for e in range(M.n):
            if not defines_proper_face(M, e, R):
                continue
            F = max_face_at(M, R, e)
            for P, v in half_mobius_table(M, R, e).items():
                if F <= P:
                    continue
                count += 1
                if v != 0:
                    bad.append({"R": str(R), "e": e, "P": str(P), "mu": v})
    return Report("Möbius values outside the star vanish", not bad, bad[:5], {"cases": count})


def check_small_posets(M: OrientedMatroid) -> Report:
    """The half interval, its star-interval part and W_{R,e}(P) share Möbius numbers."""
    bad = []
    for R in M.topes:
        for e in range(M.n):
            for P, v in half_mobius_table(M, R, e).items():
                tri = triangle_interval(M, R, e, P).mobius_number()
                w = w_set(M, R, e, P).mobius_number()
                if not v == tri == w:
                    bad.append({"R": str(R), "e": e, "P": str(P), "mu": v, "triangle": tri, "w": w})
    return Report("half interval, triangle subposet and W agree", not bad, bad[:5])


def check_filters(M: OrientedMatroid) -> Report:
    """F_R(P) has vanishing Möbius number when P is neither R nor -R."""
    bad = []
    for R in M.topes:
        for P in M.topes:
            if P == R or P == -R:
                continue
            v = f_r_filter(M, R, P).mobius_number()
            if v != 0:
                bad.append({"R": str(R), "P": str(P), "mu": v})
    return Report("F_R(P) filters", not bad, bad[:5])
