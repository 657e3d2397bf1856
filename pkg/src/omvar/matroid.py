"""The matroid underlying an oriented matroid, read off covector zero sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .om import GroundSet, OrientedMatroid, defines_proper_face
from .signs import bits, to_mask


def _popcount(m: int) -> int:
    return bin(m).count("1")


@dataclass(frozen=True)
class UnderlyingMatroid:
    """Flats (as bitmasks) with their ranks.

    The flats are the zero sets of covectors; the rank of the flat z(F) is
    rank(L) - rank_L(F).
    """

    ground: GroundSet
    rank_of_flat: dict[int, int]

    @property
    def flats(self) -> list[frozenset[int]]:
        return [frozenset(bits(f)) for f in sorted(self.rank_of_flat, key=lambda f: (_popcount(f), f))]

    @property
    def full(self) -> int:
        return self.ground.full

    @property
    def rank(self) -> int:
        return self.rank_of_flat[self.full]

    def closure_mask(self, A: int) -> int:
        out = self.full
        for f in self.rank_of_flat:
            if A & ~f == 0:
                out &= f
        return out

    def closure(self, A: Iterable[int]) -> frozenset[int]:
        return frozenset(bits(self.closure_mask(to_mask(A))))

    def rank_mask(self, A: int) -> int:
        return self.rank_of_flat[self.closure_mask(A)]

    def rank_fn(self, A: Iterable[int]) -> int:
        return self.rank_mask(to_mask(A))

    def is_closed(self, A: Iterable[int]) -> bool:
        return to_mask(A) in self.rank_of_flat

    def beta(self, A: Iterable[int] | int | None = None) -> int:
        """Crapo's beta invariant of the restriction to ``A`` (default: E).

        beta(M) = (-1)^r(E) * sum over B subset of E of (-1)^|B| r(B).
        """
        if A is None:
            mask = self.full
        elif isinstance(A, int):
            mask = A
        else:
            mask = to_mask(A)
        if not mask:
            raise ValueError("beta is undefined on the empty ground set")
        elems = list(bits(mask))
        total = 0
        # enumerate subsets of the restricted ground set
        for code in range(1 << len(elems)):
            sub = 0
            for j, e in enumerate(elems):
                if code >> j & 1:
                    sub |= 1 << e
            r = self.rank_mask(sub)
            total += -r if _popcount(sub) & 1 else r
        return total if self.rank_mask(mask) % 2 == 0 else -total


def underlying(M: OrientedMatroid) -> UnderlyingMatroid:
    r = M.rank
    ranks: dict[int, int] = {}
    for x in M.covectors:
        ranks.setdefault(x.zeros, r - M.covector_rank(x))
    ranks.setdefault(M.full, r)
    return UnderlyingMatroid(M.ground, ranks)


def bounded_tope_count(M: OrientedMatroid, e: int) -> int:
    """Number of topes P for which e does not define a proper face."""
    return sum(1 for P in M.topes if not defines_proper_face(M, e, P))
