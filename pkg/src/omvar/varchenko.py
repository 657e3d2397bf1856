"""Varchenko matrices, their Möbius-weighted factorization and determinant formulas.

Rows and columns are labeled by topes.  The default tope order is the
canonical covector order; routines that need a special order (the +/- pairing,
the block order) build it themselves and pass it explicitly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .matroid import underlying
from .om import OMError, OrientedMatroid, contraction, max_face_at, reorient, restriction
from .polyalg import (
    DEFAULT_MAX_SYMBOLIC,
    DEFAULT_PRIME,
    DEFAULT_TRIALS,
    MultiPoly,
    PolyMatrix,
    SizeGuardError,
    det_mod,
    det_symbolic,
    matmul_mod,
)
from .report import Report
from .signs import Sign, SignVector, bits, compose, separator_mask
from .topology import half_mobius_table, is_closed_supertope, supertope


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _top(mask: int) -> int:
    """Largest element of a nonempty set (ground-set order is index order)."""
    return mask.bit_length() - 1


def monomial(n: int, mask: int) -> MultiPoly:
    return MultiPoly.monomial(n, bits(mask))


def a_of(M: OrientedMatroid, F: SignVector) -> MultiPoly:
    """a(F), the product of U_e over z(F)."""
    return monomial(M.n, F.zeros)


def flat_factor(n: int, zeros: int) -> MultiPoly:
    """1 - prod_{e in zeros} U_e^2."""
    m = monomial(n, zeros)
    return MultiPoly.one(n) - m * m


def _tope_order(M: OrientedMatroid, order: Sequence[SignVector] | None) -> list[SignVector]:
    if order is None:
        return list(M.topes)
    order = list(order)
    if len(order) != len(M.topes) or set(order) != M.tope_set:
        raise OMError("tope order must list every tope exactly once")
    return order


# --- the matrices --------------------------------------------------------


@dataclass
class VarchenkoMatrix:
    matrix: PolyMatrix
    tope_order: list[SignVector]


def build_varchenko(M: OrientedMatroid, tope_order: Sequence[SignVector] | None = None) -> VarchenkoMatrix:
    order = _tope_order(M, tope_order)
    n = M.n
    mat = PolyMatrix.build(order, order, n, lambda P, Q: monomial(n, separator_mask(P, Q)))
    return VarchenkoMatrix(mat, order)


def varchenko_matrix(M: OrientedMatroid, tope_order: Sequence[SignVector] | None = None) -> PolyMatrix:
    return build_varchenko(M, tope_order).matrix


def negative_side(M: OrientedMatroid, e: int) -> list[SignVector]:
    """T(0, {e}) in canonical order."""
    return [T for T in M.topes if T[e] == Sign.MINUS]


def paired_order(M: OrientedMatroid, e: int) -> list[SignVector]:
    """P_1..P_l with P_e = -, followed by -P_1..-P_l."""
    neg = negative_side(M, e)
    return neg + [-Q for Q in neg]


def calMe_entry(M: OrientedMatroid, e: int, Q: SignVector, R: SignVector) -> MultiPoly:
    """Entry (Q, R) of the identity-bordered matrix for e, in any tope order."""
    n = M.n
    if Q == R:
        return MultiPoly.one(n)
    if Q[e] == R[e]:
        return MultiPoly.zero(n)
    sep = separator_mask(Q, R)
    if _top(sep) != e:
        return MultiPoly.zero(n)
    if R[e] == Sign.PLUS:
        mu = half_mobius_table(M, R, e)[Q]
    else:
        mu = half_mobius_table(M, -R, e)[-Q]
    return MultiPoly.monomial(n, bits(sep), -mu)


def build_Me(M: OrientedMatroid, e: int, rows: Sequence[SignVector] | None = None) -> PolyMatrix:
    """The l x l matrix M^e.

    Rows are T(0, {e}) (canonical order unless given), columns are the
    negatives of the rows, so that columns run over T({e}, 0) in paired order.
    """
    rows = negative_side(M, e) if rows is None else list(rows)
    cols = [-Q for Q in rows]
    return PolyMatrix.build(rows, cols, M.n, lambda Q, R: calMe_entry(M, e, Q, R))


def build_calMe(M: OrientedMatroid, e: int, tope_order: Sequence[SignVector] | None = None) -> PolyMatrix:
    order = _tope_order(M, tope_order)
    return PolyMatrix.build(order, order, M.n, lambda Q, R: calMe_entry(M, e, Q, R))


def calMe_block_form(M: OrientedMatroid, e: int) -> PolyMatrix:
    """[[I, M^e], [M^e, I]] in the paired order."""
    order = paired_order(M, e)
    if set(order) != M.tope_set:
        raise OMError("topes are not closed under negation")
    Me = build_Me(M, e, order[: len(order) // 2])
    l = Me.rows
    n = M.n
    one, zero = MultiPoly.one(n), MultiPoly.zero(n)
    rows = []
    for i in range(2 * l):
        row = []
        for j in range(2 * l):
            if (i < l) == (j < l):
                row.append(one if i == j else zero)
            else:
                row.append(Me[i % l, j % l])
        rows.append(row)
    return PolyMatrix(rows, n, order, order)


# --- factorization -------------------------------------------------------


def _points(n: int, trials: int, seed: int, p: int) -> list[list[int]]:
    rng = random.Random(seed)
    return [[rng.randrange(p) for _ in range(n)] for _ in range(trials)]


def _zeroed(point: Sequence[int], mask: int) -> list[int]:
    return [0 if mask >> i & 1 else x for i, x in enumerate(point)]


def half_block_identity(M: OrientedMatroid) -> bool:
    """For e = max E: V restricted to (T(0,{e}), T({e},0)) equals V(-,-) M^e."""
    e = M.n - 1
    neg = negative_side(M, e)
    pos = [-Q for Q in neg]
    V = varchenko_matrix(M)
    idx = {T: i for i, T in enumerate(M.topes)}
    vmp = V.select([idx[q] for q in neg], [idx[q] for q in pos])
    vmm = V.select([idx[q] for q in neg])
    return (vmm @ build_Me(M, e, neg)) == vmp


def verify_factorization(
    M: OrientedMatroid,
    tope_order: Sequence[SignVector] | None = None,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    max_symbolic: int = DEFAULT_MAX_SYMBOLIC,
) -> Report:
    """V = M^{e_1} ... M^{e_r} together with the intermediate identities
    V_{U_{i+1..r}=0} = V_{U_{i..r}=0} M^{e_i}."""
    order = _tope_order(M, tope_order)
    n = M.n
    V = varchenko_matrix(M, order)
    factors = [build_calMe(M, e, order) for e in range(n)]
    # zeroing mask for U_i..U_{r}
    tail = [sum(1 << j for j in range(i, n)) for i in range(n + 1)]
    symbolic = len(order) <= max_symbolic
    checks: dict[str, bool] = {}
    if symbolic:
        prod = factors[0]
        for f in factors[1:]:
            prod = prod @ f
        checks["product"] = prod == V
        steps = []
        for i in range(n):
            lhs = V.map(lambda x: x.substitute_zeros(bits(tail[i + 1])))
            rhs = V.map(lambda x: x.substitute_zeros(bits(tail[i]))) @ factors[i]
            steps.append(lhs == rhs)
        checks["steps"] = all(steps)
        checks["last_step"] = steps[-1] if steps else True
        bound = None
    else:
        ok_prod, ok_steps, ok_last = True, True, True
        for pt in _points(n, trials, seed, prime):
            vals = [f.evaluate(pt, prime) for f in factors]
            prod = vals[0]
            for v in vals[1:]:
                prod = matmul_mod(prod, v, prime)
            Vp = V.evaluate(pt, prime)
            ok_prod &= prod == Vp
            for i in range(n):
                lhs = V.evaluate(_zeroed(pt, tail[i + 1]), prime)
                rhs = matmul_mod(V.evaluate(_zeroed(pt, tail[i]), prime), vals[i], prime)
                ok_steps &= lhs == rhs
                if i == n - 1:
                    ok_last &= lhs == rhs
        checks = {"product": ok_prod, "steps": ok_steps, "last_step": ok_last}
        # entries of the product have degree at most n * n
        bound = f"{n * n}/{prime}"
    checks["half_block"] = half_block_identity(M)
    checks["paired_form"] = all(calMe_block_form(M, e) == build_calMe(M, e, paired_order(M, e)) for e in range(n))
    details = {"mode": "symbolic" if symbolic else "modp", "checks": checks, "topes": len(order)}
    if bound is not None:
        details.update({"trials": trials, "seed": seed, "per_trial_error_bound": bound})
    failed = [k for k, v in checks.items() if not v]
    return Report("Varchenko matrix factorization", not failed, failed, details)


# --- block sets and exponents --------------------------------------------


@lru_cache(maxsize=256)
def _max_face_table(M: OrientedMatroid) -> dict[int, dict[SignVector, SignVector]]:
    return {e: {P: max_face_at(M, P, e) for P in M.topes} for e in range(M.n)}


def t_F_e(M: OrientedMatroid, F: SignVector, e: int) -> tuple[SignVector, ...]:
    """Topes P whose largest face vanishing at e is F."""
    if F not in M:
        raise OMError(f"{F} is not a covector")
    if F[e] != 0:
        raise OMError(f"{F} does not vanish at {e}")
    table = _max_face_table(M)[e]
    return tuple(P for P in M.topes if table[P] == F)


def b_F_e(M: OrientedMatroid, F: SignVector, e: int) -> int:
    T = t_F_e(M, F, e)
    if _top(F.zeros) != e:
        return 0
    assert len(T) % 2 == 0
    return len(T) // 2


def b_F(M: OrientedMatroid, F: SignVector) -> int:
    if not F.zeros:
        return 0
    return b_F_e(M, F, _top(F.zeros))


@dataclass(frozen=True)
class FactorTerm:
    flat_covector: SignVector | None
    zeros: int
    exponent: int
    nvars: int

    @property
    def factor(self) -> MultiPoly:
        return flat_factor(self.nvars, self.zeros)

    def to_json(self) -> dict:
        return {"zeros": list(bits(self.zeros)), "exponent": self.exponent}


def det_formula(M: OrientedMatroid) -> list[FactorTerm]:
    out = []
    for F in M.covectors:
        if not F.zeros:
            continue
        b = b_F(M, F)
        if b:
            out.append(FactorTerm(F, F.zeros, b, M.n))
    return out


def aggregate(terms: Sequence[FactorTerm]) -> dict[int, int]:
    """Exponents summed by zero set."""
    out: dict[int, int] = {}
    for t in terms:
        out[t.zeros] = out.get(t.zeros, 0) + t.exponent
    return out


def aggregated_terms(M: OrientedMatroid) -> list[FactorTerm]:
    agg = aggregate(det_formula(M))
    return [FactorTerm(None, z, k, M.n) for z, k in sorted(agg.items(), key=lambda kv: (_popcount(kv[0]), kv[0]))]


def expand(n: int, terms: Sequence[FactorTerm]) -> MultiPoly:
    out = MultiPoly.one(n)
    for t in terms:
        out = out * t.factor ** t.exponent
    return out


def eval_formula_modp(terms: Sequence[FactorTerm], point: Sequence[int], p: int = DEFAULT_PRIME) -> int:
    out = 1
    for t in terms:
        a = 1
        for e in bits(t.zeros):
            a = a * point[e] % p
        out = out * pow((1 - a * a) % p, t.exponent, p) % p
    return out


def refined_formula(M: OrientedMatroid) -> list[tuple[int, int]]:
    """(A, m_A) for nonempty flats A with m_A = #topes(L/A) * beta(Mat(L|_A)) nonzero."""
    UM = underlying(M)
    out = []
    for flat in sorted(UM.rank_of_flat, key=lambda f: (_popcount(f), f)):
        if not flat:
            continue
        beta = UM.beta(flat)
        if beta:
            out.append((flat, len(contraction(M, flat).topes) * beta))
    return out


def verify_det(
    M: OrientedMatroid,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    max_symbolic: int = DEFAULT_MAX_SYMBOLIC,
) -> Report:
    """Compare det(V) with the product formula, symbolically when small."""
    terms = det_formula(M)
    V = varchenko_matrix(M)
    details: dict = {"topes": len(M.topes), "factors": [t.to_json() for t in aggregated_terms(M)]}
    if len(M.topes) <= max_symbolic:
        d = det_symbolic(V, max_symbolic)
        ok = d == expand(M.n, terms)
        details.update({"mode": "symbolic", "det": str(d)})
        bad = [] if ok else [{"det": str(d), "formula": str(expand(M.n, terms))}]
    else:
        bad = []
        for pt in _points(M.n, trials, seed, prime):
            lhs = det_mod(V.evaluate(pt, prime), prime)
            rhs = eval_formula_modp(terms, pt, prime)
            if lhs != rhs:
                bad.append({"point": pt, "det": lhs, "formula": rhs})
        deg = 2 * sum(_popcount(t.zeros) * t.exponent for t in terms)
        details.update(
            {"mode": "modp", "trials": trials, "seed": seed, "per_trial_error_bound": f"{max(deg, M.n * len(M.topes))}/{prime}"}
        )
    return Report("determinant formula", not bad, bad[:5], details)


# --- block structure -----------------------------------------------------


@dataclass
class BlockLayout:
    e: int
    order: list[SignVector]
    blocks: list[tuple[SignVector, int, int]]  # (F, start, stop) in ``order``

    def to_json(self) -> dict:
        return {
            "e": self.e,
            "order": [str(T) for T in self.order],
            "blocks": [{"F": str(F), "start": a, "stop": b} for F, a, b in self.blocks],
        }


def _pair_up(F: SignVector, topes: Sequence[SignVector]) -> list[SignVector]:
    remaining = sorted(topes, key=SignVector.sort_key)
    out = []
    while remaining:
        R = remaining.pop(0)
        partner = compose(F, -R)
        if partner not in remaining:
            raise AssertionError(f"{R} has no partner in its block")
        remaining.remove(partner)
        out += [R, partner]
    return out


def block_layout(M: OrientedMatroid, e: int) -> BlockLayout:
    """Topes grouped into the sets T^{F,e}, blocks sorted by rank of F
    (a linear extension of the covector order), pairs R, F o (-R) adjacent."""
    table = _max_face_table(M)[e]
    groups: dict[SignVector, list[SignVector]] = {}
    for P in M.topes:
        groups.setdefault(table[P], []).append(P)
    order: list[SignVector] = []
    blocks = []
    for F in sorted(groups, key=lambda F: (M.covector_rank(F), F.sort_key())):
        start = len(order)
        order += _pair_up(F, groups[F])
        blocks.append((F, start, len(order)))
    return BlockLayout(e, order, blocks)


def _restriction_rank(M: OrientedMatroid, F: SignVector) -> int:
    return restriction(M, F.zeros).rank


def verify_block_structure(
    M: OrientedMatroid, e: int, max_symbolic: int = DEFAULT_MAX_SYMBOLIC, prime: int = DEFAULT_PRIME, seed: int = 0
) -> tuple[BlockLayout, Report]:
    layout = block_layout(M, e)
    mat = build_calMe(M, e, layout.order)
    n = M.n
    bad: list = []
    where = [0] * len(layout.order)
    for k, (_, a, b) in enumerate(layout.blocks):
        for i in range(a, b):
            where[i] = k
    for i in range(mat.rows):
        for j in range(mat.cols):
            if where[i] < where[j] and not mat[i, j].is_zero():
                bad.append({"above_block": [str(layout.order[i]), str(layout.order[j])]})
    dets = []
    for F, a, b in layout.blocks:
        sub = mat.select(range(a, b))
        size = b - a
        is_top = _top(F.zeros) == e
        expo = size // 2 if is_top else 0
        if expo != b_F_e(M, F, e):
            bad.append({"F": str(F), "count": size, "b": b_F_e(M, F, e)})
        # paired 2x2 diagonal structure
        aF = a_of(M, F)
        off = aF * (-((-1) ** _restriction_rank(M, F))) if is_top else MultiPoly.zero(n)
        for i in range(size):
            for j in range(size):
                want = MultiPoly.one(n) if i == j else (off if i // 2 == j // 2 else MultiPoly.zero(n))
                if sub[i, j] != want:
                    bad.append({"F": str(F), "entry": [str(sub.row_labels[i]), str(sub.col_labels[j])], "value": str(sub[i, j])})
        target = flat_factor(n, F.zeros) ** expo
        if size <= max_symbolic:
            d = det_symbolic(sub, max_symbolic)
            ok = d == target
        else:
            pts = _points(n, DEFAULT_TRIALS, seed, prime)
            ok = all(det_mod(sub.evaluate(pt, prime), prime) == target.eval_modp(pt, prime) for pt in pts)
            d = None
        if not ok:
            bad.append({"F": str(F), "det": str(d), "expected": str(target)})
        dets.append({"F": str(F), "size": size, "exponent": expo})
    rep = Report("block lower triangular structure", not bad, bad[:5], {"e": e, "blocks": dets})
    return layout, rep


def block_det(M: OrientedMatroid, F: SignVector, e: int, max_symbolic: int = DEFAULT_MAX_SYMBOLIC) -> MultiPoly:
    T = t_F_e(M, F, e)
    if not T:
        raise OMError(f"no topes have {F} as their largest face at {e}")
    order = _pair_up(F, T)
    sub = PolyMatrix.build(order, order, M.n, lambda Q, R: calMe_entry(M, e, Q, R))
    return det_symbolic(sub, max_symbolic)


def block_mobius_check(M: OrientedMatroid, F: SignVector, e: int | None = None) -> Report:
    """Möbius values between paired block topes against their closed form.

    For Q, R in T^{F,e} with Q_e = -R_e the values mu(0^, Q) in T_{R,e} and
    mu(0^, -Q) in T_{-R,e} are (-1)^rank(L|z(F)) when Q and R are opposite
    on z(F), and 0 otherwise.
    """
    if F not in M or not F.zeros:
        raise OMError(f"{F} is not a covector with a zero")
    e = _top(F.zeros) if e is None else e
    if _top(F.zeros) != e:
        raise OMError(f"{e} is not the largest element of z(F)")
    T = t_F_e(M, F, e)
    if not T:
        raise OMError("empty block")
    z = F.zeros
    sign = (-1) ** _restriction_rank(M, F)
    bad = []
    pairs = 0
    for Q in T:
        for R in T:
            if Q[e] == R[e]:
                continue
            pairs += 1
            opposite = Q.plus & z == R.minus & z and Q.minus & z == R.plus & z
            want = sign if opposite else 0
            got = (half_mobius_table(M, R, e)[Q], half_mobius_table(M, -R, e)[-Q])
            if got != (want, want):
                bad.append({"Q": str(Q), "R": str(R), "mu": list(got), "expected": want})
    return Report("Möbius values on block topes", not bad, bad[:5], {"F": str(F), "e": e, "pairs": pairs})


def check_all_block_mobius(M: OrientedMatroid) -> Report:
    bad = []
    for F in M.covectors:
        if not F.zeros:
            continue
        if t_F_e(M, F, _top(F.zeros)):
            r = block_mobius_check(M, F)
            if not r:
                bad += r.witnesses
    return Report("Möbius values on block topes", not bad, bad[:5])


# --- cones over closed supertopes ----------------------------------------


def _signs_masks(M: OrientedMatroid, signs) -> tuple[int, int]:
    if isinstance(signs, tuple) and len(signs) == 2 and all(isinstance(x, int) for x in signs):
        return signs
    plus = minus = 0
    for e, s in dict(signs).items():
        s = int(s)
        if s == 1:
            plus |= 1 << e
        elif s == -1:
            minus |= 1 << e
        else:
            raise OMError(f"sign for {e} must be + or -")
    return plus, minus


def cone_matrix(M: OrientedMatroid, signs) -> PolyMatrix:
    """V restricted to the topes of the closed supertope given by ``signs``.

    ``signs`` is a mapping element -> +1/-1 or a (plus mask, minus mask) pair.
    """
    plus, minus = _signs_masks(M, signs)
    st = supertope(M, plus, minus)
    if not is_closed_supertope(M, plus, minus):
        raise OMError("the supertope is not closed")
    V = varchenko_matrix(M)
    keep = set(st.topes)
    return V.select([i for i, T in enumerate(M.topes) if T in keep])


def verify_cone_det(
    M: OrientedMatroid,
    signs,
    max_symbolic: int = DEFAULT_MAX_SYMBOLIC,
    prime: int = DEFAULT_PRIME,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> Report:
    plus, minus = _signs_masks(M, signs)
    Ve = cone_matrix(M, (plus, minus))
    if Ve.rows > max_symbolic:
        raise SizeGuardError(f"{Ve.rows}x{Ve.rows} exceeds the symbolic size guard {max_symbolic}")
    n = M.n
    d = det_symbolic(Ve, max_symbolic)
    used = plus | minus
    candidates = sorted({F.zeros for F in M.covectors if F.zeros and not F.zeros & used}, key=lambda z: (_popcount(z), z))
    rest = d
    exps: dict[int, int] = {}
    for z in candidates:
        f = flat_factor(n, z)
        k = 0
        while True:
            q, r = rest.divmod(f)
            if r:
                break
            rest, k = q, k + 1
        if k:
            exps[z] = k
    checks = {"residual_one": rest == 1, "constant_term_one": d.constant_term() == 1}
    bad: list = []
    if _popcount(used) == 1:
        e = _top(used)
        agg = aggregate(det_formula(M))
        want = {z: m // 2 for z, m in agg.items() if not z >> e & 1}
        checks["half_exponents"] = all(agg[z] % 2 == 0 for z in want) and want == exps
        # det V_{U_e=0} = det(V_eps)^2, tested by evaluation
        V = varchenko_matrix(M)
        sq = True
        for pt in _points(n, trials, seed, prime):
            pz = _zeroed(pt, used)
            sq &= det_mod(V.evaluate(pz, prime), prime) == pow(d.eval_modp(pz, prime), 2, prime)
        checks["square_of_full"] = sq
    bad = [k for k, v in checks.items() if not v]
    details = {
        "size": Ve.rows,
        "det": str(d),
        "factors": [{"zeros": list(bits(z)), "exponent": k} for z, k in exps.items()],
        "checks": checks,
    }
    return Report("cone determinant formula", not bad, bad, details)


# --- matroid invariance --------------------------------------------------


def verify_refined(M: OrientedMatroid) -> Report:
    """m_A from topes of L/A and beta agrees with the aggregated exponents."""
    agg = aggregate(det_formula(M))
    ref = dict(refined_formula(M))
    ok = agg == ref
    bad = [] if ok else [{"aggregated": {str(list(bits(k))): v for k, v in agg.items()}, "refined": {str(list(bits(k))): v for k, v in ref.items()}}]
    return Report("refined exponents", ok, bad)


def verify_matroid_invariance(M: OrientedMatroid, A) -> Report:
    N = reorient(M, A)
    ref_m, ref_n = refined_formula(M), refined_formula(N)
    agg_m, agg_n = aggregate(det_formula(M)), aggregate(det_formula(N))
    checks = {
        "refined_equal": ref_m == ref_n,
        "formula_equal": agg_m == agg_n,
        "refined_matches_formula": dict(ref_m) == agg_m,
    }
    bad = [k for k, v in checks.items() if not v]
    details = {"checks": checks, "factors": [{"zeros": list(bits(z)), "exponent": k} for z, k in ref_m]}
    return Report("determinant depends only on the matroid", not bad, bad, details)
