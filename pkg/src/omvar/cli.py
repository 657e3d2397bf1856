"""Command line front end: ``omvar <command> --input FILE [options]``.

Exit codes: 0 pass, 1 verification failure, 2 input error, 3 size guard.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .homology import DEFAULT_MAX_FACES, ComplexTooLarge
from .io import InputError, load
from .matroid import bounded_tope_count, underlying
from .om import OMError, OrientedMatroid, check_axioms, permute
from .polyalg import (
    DEFAULT_MAX_SYMBOLIC,
    DEFAULT_PRIME,
    DEFAULT_TRIALS,
    SizeGuardError,
    det_mod,
    det_symbolic,
    is_probable_prime,
)
from .signs import SignVector, bits
from .topology import (
    EmptySupertopeError,
    is_closed_supertope,
    is_closed_supertope_bruteforce,
    supertope,
    supertope_homology,
)
from .varchenko import (
    _points,
    aggregated_terms,
    det_formula,
    eval_formula_modp,
    expand,
    varchenko_matrix,
    verify_block_structure,
    verify_cone_det,
    verify_factorization,
    verify_matroid_invariance,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _elements(M: OrientedMatroid, text: str | None) -> list[int]:
    if not text:
        return []
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        try:
            out.append(M.ground.index(tok))
        except OMError as exc:
            raise UsageError(f"unknown element {tok!r}: {exc}") from None
    return out


def _mask(M, text) -> int:
    return sum(1 << e for e in set(_elements(M, text)))


def parse_signs(M: OrientedMatroid, text: str) -> dict[int, int]:
    """"0:+,2:-" -> {0: 1, 2: -1}."""
    out: dict[int, int] = {}
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        if ":" not in tok:
            raise UsageError(f"bad sign item {tok!r}, expected element:sign")
        name, s = tok.rsplit(":", 1)
        if s not in ("+", "-"):
            raise UsageError(f"sign must be + or -, got {s!r}")
        (e,) = _elements(M, name)
        if e in out:
            raise UsageError(f"element {name!r} given twice")
        out[e] = 1 if s == "+" else -1
    if not out:
        raise UsageError("no signs given")
    return out


def _tope(M: OrientedMatroid, text: str) -> SignVector:
    try:
        T = SignVector.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if T not in M.tope_set:
        raise UsageError(f"{text} is not a tope")
    return T


# --- commands ------------------------------------------------------------


def cmd_axioms(M, args) -> tuple[dict, bool]:
    rep = check_axioms(M)
    return {"report": rep.to_json(), "covectors": len(M.covectors), "topes": len(M.topes)}, rep.passed


def cmd_det(M, args) -> tuple[dict, bool]:
    modes = args.mode or ["formula", "modp"] + (["symbolic"] if len(M.topes) <= args.max_symbolic else [])
    V = varchenko_matrix(M)
    terms = det_formula(M)
    out: dict = {"topes": len(M.topes), "modes": sorted(set(modes))}
    ok = True
    poly = d = None
    if "formula" in modes:
        out["formula"] = [t.to_json() for t in aggregated_terms(M)]
        poly = expand(M.n, terms) if len(M.topes) <= args.max_symbolic else None
    if "symbolic" in modes:
        d = det_symbolic(V, args.max_symbolic)
        out["symbolic"] = str(d)
        if "formula" in modes:
            same = d == expand(M.n, terms)
            out["symbolic_equals_formula"] = same
            ok &= same
    if "modp" in modes:
        pts = _points(M.n, args.trials, args.seed, args.prime)
        vals = [det_mod(V.evaluate(p, args.prime), args.prime) for p in pts]
        out["modp"] = {"prime": args.prime, "seed": args.seed, "trials": args.trials, "values": vals}
        if "formula" in modes:
            same = all(v == eval_formula_modp(terms, p, args.prime) for v, p in zip(vals, pts))
            out["modp_equals_formula"] = same
            ok &= same
        if d is not None:
            same = all(v == d.eval_modp(p, args.prime) for v, p in zip(vals, pts))
            out["modp_equals_symbolic"] = same
            ok &= same
    if poly is not None:
        out["expanded"] = str(poly)
    return out, ok


def cmd_factorize(M, args) -> tuple[dict, bool]:
    rep = verify_factorization(M, prime=args.prime, trials=args.trials, seed=args.seed, max_symbolic=args.max_symbolic)
    return {"report": rep.to_json()}, rep.passed


def cmd_blocks(M, args) -> tuple[dict, bool]:
    es = _elements(M, args.element) or list(range(M.n))
    out, ok = [], True
    for e in es:
        layout, rep = verify_block_structure(M, e, args.max_symbolic, args.prime, args.seed)
        out.append({"layout": layout.to_json(), "report": rep.to_json()})
        ok &= rep.passed
    return {"blocks": out}, ok


def cmd_supertope(M, args) -> tuple[dict, bool]:
    plus, minus = _mask(M, args.plus), _mask(M, args.minus)
    st = supertope(M, plus, minus)
    closed = is_closed_supertope(M, plus, minus)
    brute = is_closed_supertope_bruteforce(M, plus, minus)
    bases = [_tope(M, args.base)] if args.base else list(M.topes)
    per_base = []
    trivial = True
    for R in bases:
        H = supertope_homology(M, st, R, args.max_faces)
        t = all(h.is_trivial() for h in H)
        trivial &= t
        per_base.append({"base": str(R), "homology": [str(h) for h in H], "trivial": t})
    out = {
        "supertope": st.to_json(),
        "closed": closed,
        "closed_bruteforce": brute,
        "bases": per_base,
        "contractible_surrogate": trivial,
    }
    return out, trivial and closed == brute


def cmd_cone(M, args) -> tuple[dict, bool]:
    signs = parse_signs(M, args.signs)
    rep = verify_cone_det(M, signs, args.max_symbolic, args.prime, args.trials, args.seed)
    return {"signs": {str(k): v for k, v in sorted(signs.items())}, "report": rep.to_json()}, rep.passed


def cmd_invariance(M, args) -> tuple[dict, bool]:
    if args.reorient is not None:
        sets = [_mask(M, args.reorient)]
    else:
        rng = random.Random(args.seed)
        sets = [rng.getrandbits(M.n) for _ in range(4)]
    reps = []
    ok = True
    for A in sets:
        rep = verify_matroid_invariance(M, A)
        reps.append({"reorient": list(bits(A)), "report": rep.to_json()})
        ok &= rep.passed
    return {"runs": reps}, ok


def cmd_matroid(M, args) -> tuple[dict, bool]:
    U = underlying(M)
    beta = U.beta()
    counts = {str(e): bounded_tope_count(M, e) for e in range(M.n)}
    ok = all(c == 2 * beta for c in counts.values())
    flats = [{"flat": sorted(f), "rank": U.rank_fn(f)} for f in U.flats]
    return {"rank": U.rank, "beta": beta, "flats": flats, "bounded_topes": counts, "bounded_equals_two_beta": ok}, ok


COMMANDS = {
    "axioms": cmd_axioms,
    "det": cmd_det,
    "factorize": cmd_factorize,
    "blocks": cmd_blocks,
    "supertope": cmd_supertope,
    "cone": cmd_cone,
    "invariance": cmd_invariance,
    "matroid": cmd_matroid,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="covector file or arrangement JSON")
    common.add_argument("--kind", choices=["arrangement", "covectors"], help="default: by file extension")
    common.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-symbolic", type=int, default=DEFAULT_MAX_SYMBOLIC)
    common.add_argument("--max-faces", type=int, default=DEFAULT_MAX_FACES)
    common.add_argument("--json-out", help="write JSON here instead of stdout")
    common.add_argument("--element-order", help="comma separated permutation of the ground set")

    p = argparse.ArgumentParser(prog="omvar", description="Varchenko matrices of oriented matroids")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("axioms", parents=[common], help="check the covector axioms")
    d = sub.add_parser("det", parents=[common], help="determinant: symbolic, mod p and product formula")
    d.add_argument("--mode", action="append", choices=["symbolic", "modp", "formula"])
    sub.add_parser("factorize", parents=[common], help="check V = M^{e1} ... M^{er}")
    b = sub.add_parser("blocks", parents=[common], help="block triangular structure of M^e")
    b.add_argument("--element", help="elements to check (default all)")
    s = sub.add_parser("supertope", parents=[common], help="homology of a supertope")
    s.add_argument("--plus", default="")
    s.add_argument("--minus", default="")
    s.add_argument("--base", help="base tope as a sign string (default: every tope)")
    c = sub.add_parser("cone", parents=[common], help="determinant over a closed supertope")
    c.add_argument("--signs", required=True, help='e.g. "0:+,2:-"')
    i = sub.add_parser("invariance", parents=[common], help="formula is unchanged by reorientation")
    i.add_argument("--reorient", help="elements to reorient (default: 4 seeded random sets)")
    sub.add_parser("matroid", parents=[common], help="flats, beta and bounded tope counts")
    return p


def _emit(payload: dict, path: str | None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    err = {"command": args.command}
    try:
        if args.trials < 1:
            raise UsageError("--trials must be at least 1")
        if args.max_symbolic < 0:
            raise UsageError("--max-symbolic must be nonnegative")
        if not is_probable_prime(args.prime):
            raise UsageError(f"--prime {args.prime} is not prime")
        M = load(args.input, args.kind)
        if args.element_order:
            order = _elements(M, args.element_order)
            if sorted(order) != list(range(M.n)):
                raise UsageError("--element-order must be a permutation of the ground set")
            M = permute(M, order)
    except (InputError, UsageError, OMError) as exc:
        _emit({**err, "status": "error", "error": str(exc)}, args.json_out)
        return EXIT_INPUT
    try:
        payload, ok = COMMANDS[args.command](M, args)
    except UsageError as exc:
        _emit({**err, "status": "error", "error": str(exc)}, args.json_out)
        return EXIT_INPUT
    except (SizeGuardError, ComplexTooLarge) as exc:
        _emit({**err, "status": "guard", "error": str(exc)}, args.json_out)
        return EXIT_GUARD
    except (EmptySupertopeError, OMError) as exc:
        _emit({**err, "status": "fail", "error": str(exc)}, args.json_out)
        return EXIT_FAIL
    payload = {**err, **payload, "status": "pass" if ok else "fail"}
    _emit(payload, args.json_out)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
