"""Finite posets stored as reflexive-transitive bit matrices, and Möbius functions."""

from __future__ import annotations

from typing import Any, Callable, Hashable, Iterable, Sequence

from .signs import bits


class PosetError(ValueError):
    pass


class FinitePoset:
    """A finite poset on ``elements`` (opaque hashable ids).

    ``down[i]`` is the bitmask of indices j with elements[j] <= elements[i].
    """

    def __init__(self, elements: Sequence[Hashable], down: Sequence[int], check: bool = False):
        self.elements = tuple(elements)
        self.down = tuple(down)
        n = len(self.elements)
        if len(self.down) != n:
            raise PosetError("relation size does not match element count")
        self.index = {x: i for i, x in enumerate(self.elements)}
        if len(self.index) != n:
            raise PosetError("duplicate poset elements")
        up = [0] * n
        for i, d in enumerate(self.down):
            for j in bits(d):
                up[j] |= 1 << i
        self.up = tuple(up)
        if check:
            self.check()

    @classmethod
    def from_relation(
        cls, elements: Sequence[Hashable], leq: Callable[[Any, Any], bool], check: bool = False
    ) -> "FinitePoset":
        els = list(elements)
        down = []
        for b in els:
            m = 0
            for j, a in enumerate(els):
                if leq(a, b):
                    m |= 1 << j
            down.append(m)
        return cls(els, down, check=check)

    def check(self) -> None:
        n = len(self)
        for i in range(n):
            if not self.down[i] >> i & 1:
                raise PosetError("relation is not reflexive")
            for j in bits(self.down[i]):
                if j != i and self.down[j] >> i & 1:
                    raise PosetError("relation is not antisymmetric")
                if self.down[j] & ~self.down[i]:
                    raise PosetError("relation is not transitive")

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self) -> str:
        return f"<FinitePoset with {len(self)} elements>"

    def leq(self, a, b) -> bool:
        return bool(self.down[self.index[b]] >> self.index[a] & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def _sub(self, mask: int) -> "FinitePoset":
        idx = list(bits(mask))
        remap = {j: k for k, j in enumerate(idx)}
        down = []
        for j in idx:
            m = 0
            for t in bits(self.down[j] & mask):
                m |= 1 << remap[t]
            down.append(m)
        return FinitePoset([self.elements[j] for j in idx], down)

    def subposet(self, elements: Iterable[Hashable]) -> "FinitePoset":
        mask = 0
        for x in elements:
            mask |= 1 << self.index[x]
        return self._sub(mask)

    def open_interval(self, a, b) -> "FinitePoset":
        ia, ib = self.index[a], self.index[b]
        if not self.down[ib] >> ia & 1:
            raise PosetError(f"{a!r} is not below {b!r}")
        mask = self.up[ia] & self.down[ib] & ~(1 << ia) & ~(1 << ib)
        return self._sub(mask)

    def closed_interval(self, a, b) -> "FinitePoset":
        ia, ib = self.index[a], self.index[b]
        if not self.down[ib] >> ia & 1:
            raise PosetError(f"{a!r} is not below {b!r}")
        return self._sub(self.up[ia] & self.down[ib])

    def minimal(self) -> list:
        return [x for i, x in enumerate(self.elements) if self.down[i] == 1 << i]

    def maximal(self) -> list:
        return [x for i, x in enumerate(self.elements) if self.up[i] == 1 << i]

    def covers(self) -> list[tuple[int, int]]:
        """Pairs (i, j) of indices with elements[j] covering elements[i]."""
        out = []
        for j in range(len(self)):
            below = self.down[j] & ~(1 << j)
            for i in bits(below):
                # i is covered by j iff nothing strictly between them
                if not (self.up[i] & below & ~(1 << i)):
                    out.append((i, j))
        return out

    def linear_extension(self) -> list[int]:
        """Indices sorted so that every element comes after everything below it."""
        return sorted(range(len(self)), key=lambda i: bin(self.down[i]).count("1"))

    def mobius_from(self, a) -> dict[Hashable, int]:
        """mu(a, x) for every x >= a."""
        ia = self.index[a]
        up = self.up[ia]
        mu: dict[int, int] = {}
        for i in self.linear_extension():
            if not up >> i & 1:
                continue
            if i == ia:
                mu[i] = 1
            else:
                mu[i] = -sum(mu[j] for j in bits(self.down[i] & up & ~(1 << i)))
        return {self.elements[i]: v for i, v in mu.items()}

    def mobius(self, a, b) -> int:
        ia, ib = self.index[a], self.index[b]
        if not self.down[ib] >> ia & 1:
            raise PosetError(f"mobius of incomparable pair {a!r}, {b!r}")
        return self.closed_interval(a, b).mobius_from(a)[b]

    def mobius_number(self) -> int:
        """mu(0^, 1^) after adjoining a new bottom and top.

        Equals the reduced Euler characteristic of the order complex.
        """
        mu: dict[int, int] = {}
        for i in self.linear_extension():
            # mu(0^, x) = -1 - sum over 0^ < y < x
            mu[i] = -1 - sum(mu[j] for j in bits(self.down[i] & ~(1 << i)))
        return -1 - sum(mu.values())

    def to_json(self) -> dict:
        return {
            "elements": [str(x) for x in self.elements],
            "covers": [[i, j] for i, j in self.covers()],
        }


def chain_poset(n: int) -> FinitePoset:
    return FinitePoset(range(n), [(1 << (i + 1)) - 1 for i in range(n)])


def antichain(n: int) -> FinitePoset:
    return FinitePoset(range(n), [1 << i for i in range(n)])


def boolean_lattice(k: int) -> FinitePoset:
    return FinitePoset.from_relation(range(1 << k), lambda a, b: a & ~b == 0)
