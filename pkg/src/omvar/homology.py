"""Order complexes and reduced integral homology via Smith normal form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .poset import FinitePoset

DEFAULT_MAX_FACES = 5000


class ComplexTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class HomologyGroup:
    """Z^rank + Z/t1 + Z/t2 + ... in one dimension."""

    dim: int
    rank: int
    torsion: tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass
class SimplicialComplex:
    """Simplicial complex given by its facets (sorted vertex-index tuples)."""

    vertices: tuple[Hashable, ...]
    facets: tuple[tuple[int, ...], ...]
    _faces: list[list[tuple[int, ...]]] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        fs = sorted({tuple(sorted(f)) for f in self.facets if f}, key=lambda f: (len(f), f))
        kept = [f for f in fs if not any(f != g and set(f) <= set(g) for g in fs)]
        object.__setattr__(self, "facets", tuple(kept))

    @property
    def dimension(self) -> int:
        return max((len(f) - 1 for f in self.facets), default=-1)

    def faces(self, max_faces: int = DEFAULT_MAX_FACES) -> list[list[tuple[int, ...]]]:
        """Faces grouped by dimension, index 0 holding dimension 0."""
        if self._faces is not None:
            return self._faces
        seen: set[tuple[int, ...]] = set()
        for f in self.facets:
            for k in range(1, len(f) + 1):
                for sub in itertools.combinations(f, k):
                    seen.add(sub)
                    if len(seen) > max_faces:
                        raise ComplexTooLarge(f"complex has more than {max_faces} faces")
        out: list[list[tuple[int, ...]]] = [[] for _ in range(self.dimension + 1)]
        for s in seen:
            out[len(s) - 1].append(s)
        for lst in out:
            lst.sort()
        self._faces = out
        return out

    def f_vector(self, max_faces: int = DEFAULT_MAX_FACES) -> list[int]:
        return [len(x) for x in self.faces(max_faces)]

    def reduced_euler_characteristic(self, max_faces: int = DEFAULT_MAX_FACES) -> int:
        return -1 + sum((-1) ** k * n for k, n in enumerate(self.f_vector(max_faces)))

    def to_json(self) -> dict:
        return {"vertices": [str(v) for v in self.vertices], "facets": [list(f) for f in self.facets]}


def order_complex(P: FinitePoset) -> SimplicialComplex:
    """Complex of chains of P; facets are the maximal chains."""
    covers: dict[int, list[int]] = {i: [] for i in range(len(P))}
    for i, j in P.covers():
        covers[i].append(j)
    chains: list[tuple[int, ...]] = []
    minimal = [P.index[x] for x in P.minimal()]

    def walk(path: list[int]) -> None:
        nxt = covers[path[-1]]
        if not nxt:
            chains.append(tuple(path))
            return
        for j in nxt:
            path.append(j)
            walk(path)
            path.pop()

    for m in minimal:
        walk([m])
    return SimplicialComplex(P.elements, tuple(chains))


def _dense_divisors(m: list[list[int]]) -> list[int]:
    m = [list(r) for r in m]
    nr = len(m)
    nc = len(m[0]) if m else 0
    out = []
    t = 0
    while t < min(nr, nc):
        cand = [(abs(m[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if m[i][j]]
        if not cand:
            break
        _, pi, pj = min(cand)
        m[t], m[pi] = m[pi], m[t]
        for r in m:
            r[t], r[pj] = r[pj], r[t]
        while True:
            done = True
            p = m[t][t]
            for i in range(t + 1, nr):
                if m[i][t]:
                    q = m[i][t] // p
                    ri, rt = m[i], m[t]
                    for j in range(t, nc):
                        ri[j] -= q * rt[j]
                    if ri[t]:
                        done = False
            for j in range(t + 1, nc):
                if m[t][j]:
                    q = m[t][j] // p
                    for r in m:
                        r[j] -= q * r[t]
                    if m[t][j]:
                        done = False
            if done:
                bad = next(
                    (i for i in range(t + 1, nr) for j in range(t + 1, nc) if m[i][j] % p), None
                )
                if bad is None:
                    break
                m[t] = [a + b for a, b in zip(m[t], m[bad])]
            # bring the smallest entry of row t / column t into the pivot
            cand = [(abs(m[i][t]), i, t) for i in range(t, nr) if m[i][t]]
            cand += [(abs(m[t][j]), t, j) for j in range(t, nc) if m[t][j]]
            _, pi, pj = min(cand)
            m[t], m[pi] = m[pi], m[t]
            for r in m:
                r[t], r[pj] = r[pj], r[t]
        out.append(abs(m[t][t]))
        t += 1
    return out


def elementary_divisors(columns: Sequence[dict[int, int]]) -> list[int]:
    """Nonzero elementary divisors of a sparse integer matrix given by columns."""
    rows: dict[int, dict[int, int]] = {}
    colsets: dict[int, set[int]] = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
                colsets.setdefault(c, set()).add(r)
    divisors: list[int] = []

    def pivot(r: int, c: int) -> None:
        prow = rows.pop(r)
        v = prow[c]
        for c2 in prow:
            colsets[c2].discard(r)
        for r2 in list(colsets.get(c, ())):
            row2 = rows[r2]
            f = row2[c] * v  # v is a unit, so v^-1 == v
            for c2, x in prow.items():
                nv = row2.get(c2, 0) - f * x
                if nv:
                    if c2 not in row2:
                        colsets[c2].add(r2)
                    row2[c2] = nv
                else:
                    if c2 in row2:
                        del row2[c2]
                        colsets[c2].discard(r2)
            if not row2:
                del rows[r2]
        colsets.pop(c, None)
        divisors.append(1)

    progress = True
    while progress:
        progress = False
        for r in list(rows):
            row = rows.get(r)
            if not row:
                continue
            c = next((c for c, v in row.items() if v in (1, -1)), None)
            if c is not None:
                pivot(r, c)
                progress = True

    if rows:
        rid = sorted(rows)
        cid = sorted({c for row in rows.values() for c in row})
        dense = [[rows[r].get(c, 0) for c in cid] for r in rid]
        divisors += _dense_divisors(dense)
    return sorted(divisors)


def boundary_columns(lower: list[tuple[int, ...]], upper: list[tuple[int, ...]]) -> list[dict[int, int]]:
    idx = {f: i for i, f in enumerate(lower)}
    cols = []
    for s in upper:
        col = {}
        for i in range(len(s)):
            col[idx[s[:i] + s[i + 1:]]] = -1 if i % 2 else 1
        cols.append(col)
    return cols


def reduced_homology(K: SimplicialComplex, max_faces: int = DEFAULT_MAX_FACES) -> list[HomologyGroup]:
    """Reduced integral homology in dimensions -1 .. dim K."""
    faces = [[()]] + K.faces(max_faces)  # index k+1 holds dimension k
    ranks = [0] * (len(faces) + 1)
    torsion: list[tuple[int, ...]] = [()] * (len(faces) + 1)
    for k in range(1, len(faces)):
        divs = elementary_divisors(boundary_columns(faces[k - 1], faces[k]))
        ranks[k] = len(divs)
        torsion[k] = tuple(d for d in divs if d > 1)
    out = []
    for k in range(len(faces)):
        betti = len(faces[k]) - ranks[k] - ranks[k + 1]
        out.append(HomologyGroup(k - 1, betti, torsion[k + 1]))
    return out


def is_homology_contractible(K: SimplicialComplex, max_faces: int = DEFAULT_MAX_FACES) -> bool:
    """All reduced homology vanishes (a necessary condition for contractibility)."""
    return all(h.is_trivial() for h in reduced_homology(K, max_faces))
