"""Reading covector files and arrangement JSON."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path

from .om import GroundSet, OMError, OrientedMatroid, from_arrangement
from .signs import SignVector

_RAT = re.compile(r"^-?\d+(/\d+)?$")


class InputError(ValueError):
    """Malformed input file."""


def parse_rational(s) -> Fraction:
    """A rational written "p" or "p/q" in lowest terms with q > 0."""
    if isinstance(s, bool):
        raise InputError(f"not a rational: {s!r}")
    if isinstance(s, int):
        return Fraction(s)
    if not isinstance(s, str) or not _RAT.match(s.strip()):
        raise InputError(f"not a rational: {s!r}")
    s = s.strip()
    if "/" in s:
        p, q = s.split("/")
        if int(q) == 0:
            raise InputError(f"zero denominator in {s!r}")
        x = Fraction(int(p), int(q))
        if x.denominator != int(q):
            raise InputError(f"{s!r} is not in lowest terms")
        return x
    return Fraction(int(s))


def parse_covectors(text: str, labels: tuple[str, ...] | None = None) -> OrientedMatroid:
    vecs = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            vecs.append(SignVector.parse(line))
        except ValueError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    if not vecs:
        raise InputError("no sign vectors found")
    n = vecs[0].n
    if any(v.n != n for v in vecs):
        raise InputError("sign vectors have different lengths")
    try:
        return OrientedMatroid(GroundSet(n, labels), vecs)
    except OMError as exc:
        raise InputError(str(exc)) from None


def parse_arrangement(data: dict) -> OrientedMatroid:
    if not isinstance(data, dict) or "normals" not in data:
        raise InputError('arrangement JSON needs a "normals" list')
    normals = data["normals"]
    if not isinstance(normals, list) or not normals:
        raise InputError("normals must be a nonempty list")
    d = data.get("dimension")
    rows = []
    for row in normals:
        if not isinstance(row, list):
            raise InputError("each normal must be a list")
        rows.append([parse_rational(x) for x in row])
    if d is not None and any(len(r) != d for r in rows):
        raise InputError(f"normals do not all have dimension {d}")
    try:
        return from_arrangement(rows)
    except OMError as exc:
        raise InputError(str(exc)) from None


def load(path: str | Path, kind: str | None = None) -> OrientedMatroid:
    """Load an OM from a covector file or an arrangement JSON file.

    ``kind`` is "arrangement" or "covectors"; by default it is guessed from
    the file extension.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    if kind is None:
        kind = "arrangement" if path.suffix == ".json" else "covectors"
    if kind == "arrangement":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from None
        return parse_arrangement(data)
    if kind == "covectors":
        return parse_covectors(text)
    raise InputError(f"unknown input kind {kind!r}")


def dump_covectors(M: OrientedMatroid) -> str:
    return "".join(f"{x}\n" for x in M.covectors)


def dump_arrangement(normals) -> str:
    rows = [[str(Fraction(x)) for x in r] for r in normals]
    return json.dumps({"dimension": len(rows[0]), "normals": rows}, indent=2) + "\n"
