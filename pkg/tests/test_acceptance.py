"""Acceptance gate: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import random
import sys
import time

import pytest

from omvar import fixtures
from omvar.matroid import bounded_tope_count, underlying
from omvar.om import from_arrangement, reorient
from omvar.polyalg import DEFAULT_PRIME, det_symbolic
from omvar.signs import SignVector
from omvar.topology import (
    EmptySupertopeError,
    all_patterns,
    check_bounded_mobius,
    check_crucial_sums,
    check_outside_star,
    crucial_sum,
    is_closed_supertope,
    supertope_sweep,
    two_maximal_witness,
)
from omvar.varchenko import (
    aggregate,
    b_F_e,
    check_all_block_mobius,
    det_formula,
    expand,
    refined_formula,
    t_F_e,
    varchenko_matrix,
    verify_block_structure,
    verify_cone_det,
    verify_det,
    verify_factorization,
    verify_matroid_invariance,
)

SYMBOLIC_LIMIT = 12
TRIALS = 20
RANDOM_COUNT = 10

_lines: list[str] = []


def _fixtures():
    return [("F1", fixtures.F1()), ("F2", fixtures.F2()), ("F3", fixtures.F3()), ("F4", fixtures.F4())]


def _randoms(count=RANDOM_COUNT):
    return [(f"rand{i}", M) for i, (_, M) in enumerate(fixtures.random_instances(count, seed=0))]


def _all_instances():
    return _fixtures() + [("AP", fixtures.antiparallel()), ("TWOMAX", fixtures.two_max())] + _randoms()


def _small(limit=5):
    return [(name, M) for name, M in _all_instances() if M.n <= limit]


def report(capsys, number, title, ok, info=""):
    line = f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title}" + (f" :: {info}" if info else "")
    _lines.append(line)
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)
    assert ok, line


def c1_determinant():
    t0 = time.time()
    insts = _fixtures() + _randoms()
    bad, sym, mod = [], 0, 0
    for name, M in insts:
        terms = det_formula(M)
        if len(M.topes) <= SYMBOLIC_LIMIT:
            sym += 1
            if det_symbolic(varchenko_matrix(M), SYMBOLIC_LIMIT) != expand(M.n, terms):
                bad.append(name)
        else:
            mod += 1
            rep = verify_det(M, prime=DEFAULT_PRIME, trials=TRIALS, seed=1, max_symbolic=0)
            if not rep.passed or rep.details["trials"] < 20:
                bad.append(name)
    dt = time.time() - t0
    ok = not bad and dt < 60 and len(insts) >= 14
    return ok, f"{len(insts)} instances ({sym} symbolic, {mod} mod p x{TRIALS}), mismatches={bad}, {dt:.1f}s (<60s)"


def c2_factorization():
    bad = []
    for name, M in _fixtures()[:3]:
        rep = verify_factorization(M, max_symbolic=SYMBOLIC_LIMIT)
        if not rep.passed or rep.details["mode"] != "symbolic":
            bad.append(name)
    insts = _randoms() + [("F4", fixtures.F4()), ("AP", fixtures.antiparallel()), ("TWOMAX", fixtures.two_max())]
    for name, M in insts:
        rep = verify_factorization(M, trials=TRIALS, seed=2, max_symbolic=0)
        if not rep.passed or not rep.details["checks"]["last_step"]:
            bad.append(name)
    return not bad, f"3 symbolic + {len(insts)} mod p (20 points), last-element step included, failures={bad}"


def c3_blocks():
    bad, blocks, biggest = [], 0, 0
    for name, M in _all_instances():
        for e in range(M.n):
            layout, rep = verify_block_structure(M, e, max_symbolic=SYMBOLIC_LIMIT)
            for F, a, b in layout.blocks:
                blocks += 1
                biggest = max(biggest, b - a)
                want = len(t_F_e(M, F, e)) // 2 if e == max(i for i in range(M.n) if F.zeros >> i & 1) else 0
                if want != b_F_e(M, F, e):
                    bad.append((name, e, str(F)))
            if not rep.passed:
                bad.append((name, e))
    ok = not bad and biggest <= SYMBOLIC_LIMIT
    return ok, f"{blocks} blocks, largest {biggest} (all symbolic), failures={bad[:3]}"


def c4_crucial():
    bad, groups = [], 0
    insts = _small()
    for name, M in insts:
        rep = check_crucial_sums(M)
        groups += rep.details["groups"]
        if not rep.passed:
            bad.append(name)
    return not bad, f"{len(insts)} instances with |E|<=5, {groups} nonempty groups, failures={bad}"


def c5_supertopes():
    t0 = time.time()
    bad, checked = [], 0
    insts = _small()
    for name, M in insts:
        rep = supertope_sweep(M)
        checked += rep.details["checked"]
        if not rep.passed:
            bad.append(name)
    dt = time.time() - t0
    return not bad and dt < 120, f"{checked} (supertope, base) pairs on {len(insts)} instances, failures={bad}, {dt:.1f}s (<120s)"


def c6_mobius():
    bad = []
    cases = 0
    for name, M in _all_instances():
        a, b, c = check_bounded_mobius(M), check_outside_star(M), check_all_block_mobius(M)
        cases += a.details["cases"] + b.details["cases"]
        for tag, rep in (("bounded", a), ("outside-star", b), ("block", c)):
            if not rep.passed:
                bad.append((name, tag))
    return not bad, f"{cases} bounded/outside-star cases plus all block pairs, failures={bad}"


def c7_invariance():
    rng = random.Random(7)
    insts = [("F3", fixtures.F3())] + _randoms(5)
    bad = []
    for name, M in insts:
        base = sorted(aggregate(det_formula(M)).items())
        ref = dict(refined_formula(M))
        if ref != dict(base):
            bad.append((name, "refined"))
        for _ in range(4):
            A = rng.getrandbits(M.n)
            N = reorient(M, A)
            if sorted(aggregate(det_formula(N)).items()) != base or not verify_matroid_invariance(M, A).passed:
                bad.append((name, A))
    return not bad, f"{len(insts)} instances x 4 reorientations, failures={bad}"


def c8_beta():
    bad = []
    for name, M in _all_instances():
        beta = underlying(M).beta()
        if any(bounded_tope_count(M, e) != 2 * beta for e in range(M.n)):
            bad.append(name)
    return not bad, f"{len(_all_instances())} instances, all elements, failures={bad}"


def c9_cones():
    bad, count, singles = [], 0, 0
    for name, M in _fixtures()[1:]:
        for plus, minus in all_patterns(M.n):
            try:
                if not is_closed_supertope(M, plus, minus):
                    continue
            except EmptySupertopeError:
                continue
            size = sum(1 for T in M.topes if plus & ~T.plus == 0 and minus & ~T.minus == 0)
            if size > SYMBOLIC_LIMIT:
                continue
            count += 1
            rep = verify_cone_det(M, (plus, minus), max_symbolic=SYMBOLIC_LIMIT)
            exps = [f["exponent"] for f in rep.details["factors"]]
            if bin(plus | minus).count("1") == 1:
                singles += 1
                if not rep.details["checks"].get("half_exponents"):
                    bad.append((name, plus, minus, "half"))
            if not rep.passed or any(k < 0 for k in exps):
                bad.append((name, plus, minus))
    return not bad, f"{count} closed supertopes of F2-F4 ({singles} single-element), failures={bad}"


def c10_two_maximal():
    M = fixtures.two_max()
    w = two_maximal_witness(M)
    ok = w is not None and len(w["maximal"]) >= 2
    if ok:
        s = crucial_sum(M, SignVector.parse(w["R"]), w["e"], SignVector.parse(w["P"]), w["S"])
        ok = s == (-1 if not w["S"] else 0)
    ok = ok and check_crucial_sums(M).passed
    # the same property never shows up for central rank-3 arrangements in a seeded sample
    rng = random.Random(3)
    hits = 0
    for _ in range(15):
        N = fixtures.random_normals(rng, 3, rng.randint(5, 6), 3)
        hits += two_maximal_witness(from_arrangement(N)) is not None
    info = (
        f"fixture rank {M.rank} central (4 planes in affine 3-space plus infinity), |E|={M.n}, "
        f"maximal={w['maximal'] if w else None}, sums still pass; rank-3 sample witnesses={hits}/15 "
        "(no rank-3 witness found; the rank-4 fixture is used instead)"
    )
    return ok, info


CRITERIA = [
    (1, "determinant formula vs symbolic / mod-p determinant", c1_determinant),
    (2, "product of transfer matrices equals V", c2_factorization),
    (3, "block lower-triangular structure and block determinants", c3_blocks),
    (4, "crucial Möbius sums are -1 or 0", c4_crucial),
    (5, "supertopes homologically trivial under every base", c5_supertopes),
    (6, "closed forms for Möbius values", c6_mobius),
    (7, "determinant depends only on the matroid", c7_invariance),
    (8, "bounded topes = 2 beta", c8_beta),
    (9, "cone determinant exponent recovery", c9_cones),
    (10, "two-maximal-elements regression fixture", c10_two_maximal),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(number, title, fn, capsys):
    ok, info = fn()
    report(capsys, number, title, ok, info)


if __name__ == "__main__":
    failed = 0
    for number, title, fn in CRITERIA:
        ok, info = fn()
        print(f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {title} :: {info}", flush=True)
        failed += not ok
    sys.exit(1 if failed else 0)
