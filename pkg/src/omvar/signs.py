"""Sign vectors in {+, -, 0}^E.

A sign vector on ``n`` elements is stored as two disjoint bitmasks (positive
part and negative part).  Element ``i`` of the ground set is bit ``i``.
"""

from __future__ import annotations

import enum
from typing import Iterable, Iterator


class Sign(enum.IntEnum):
    ZERO = 0
    PLUS = 1
    MINUS = -1

    def __neg__(self) -> "Sign":
        return Sign(-int(self))

    @property
    def char(self) -> str:
        return _CHARS[self]

    @classmethod
    def from_char(cls, c: str) -> "Sign":
        try:
            return _FROM_CHAR[c]
        except KeyError:
            raise ValueError(f"not a sign character: {c!r}") from None


_CHARS = {Sign.ZERO: "0", Sign.PLUS: "+", Sign.MINUS: "-"}
_FROM_CHAR = {"0": Sign.ZERO, "+": Sign.PLUS, "-": Sign.MINUS}
# canonical order on entries: 0 < + < -
_ORDER_CHAR = {"0": "0", "+": "1", "-": "2"}


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


class SignVector:
    """Immutable element of {+,-,0}^n."""

    __slots__ = ("n", "plus", "minus", "_hash")

    def __init__(self, n: int, plus: int = 0, minus: int = 0):
        if plus & minus:
            raise ValueError("positive and negative parts overlap")
        if (plus | minus) >> n:
            raise ValueError("support exceeds length")
        self.n = n
        self.plus = plus
        self.minus = minus
        self._hash = hash((n, plus, minus))

    @classmethod
    def parse(cls, s: str) -> "SignVector":
        plus = minus = 0
        for i, c in enumerate(s):
            sg = Sign.from_char(c)
            if sg is Sign.PLUS:
                plus |= 1 << i
            elif sg is Sign.MINUS:
                minus |= 1 << i
        return cls(len(s), plus, minus)

    @classmethod
    def from_signs(cls, signs: Iterable[int]) -> "SignVector":
        plus = minus = 0
        n = 0
        for i, v in enumerate(signs):
            n = i + 1
            if v > 0:
                plus |= 1 << i
            elif v < 0:
                minus |= 1 << i
        return cls(n, plus, minus)

    @classmethod
    def zero(cls, n: int) -> "SignVector":
        return cls(n)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @property
    def support(self) -> int:
        return self.plus | self.minus

    @property
    def zeros(self) -> int:
        """Bitmask of the zero set z(X)."""
        return self.full & ~(self.plus | self.minus)

    def zero_set(self) -> frozenset[int]:
        return frozenset(bits(self.zeros))

    def __getitem__(self, i: int) -> Sign:
        if not 0 <= i < self.n:
            raise IndexError(i)
        if self.plus >> i & 1:
            return Sign.PLUS
        if self.minus >> i & 1:
            return Sign.MINUS
        return Sign.ZERO

    def __iter__(self) -> Iterator[Sign]:
        return (self[i] for i in range(self.n))

    def __len__(self) -> int:
        return self.n

    def __neg__(self) -> "SignVector":
        return SignVector(self.n, self.minus, self.plus)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignVector):
            return NotImplemented
        return self.n == other.n and self.plus == other.plus and self.minus == other.minus

    def __hash__(self) -> int:
        return self._hash

    def __le__(self, other: "SignVector") -> bool:
        """Product order induced by 0 < +, -."""
        _check_len(self, other)
        return (self.plus & ~other.plus) == 0 and (self.minus & ~other.minus) == 0

    def __lt__(self, other: "SignVector") -> bool:
        return self <= other and self != other

    def __ge__(self, other: "SignVector") -> bool:
        return other <= self

    def __gt__(self, other: "SignVector") -> bool:
        return other < self

    def is_zero(self) -> bool:
        return not (self.plus | self.minus)

    def compose(self, other: "SignVector") -> "SignVector":
        return compose(self, other)

    def restrict(self, positions: list[int]) -> "SignVector":
        """Restriction to the given positions, renumbered 0..k-1 in the given order."""
        plus = minus = 0
        for j, i in enumerate(positions):
            if self.plus >> i & 1:
                plus |= 1 << j
            elif self.minus >> i & 1:
                minus |= 1 << j
        return SignVector(len(positions), plus, minus)

    def reorient(self, mask: int) -> "SignVector":
        return SignVector(
            self.n, (self.plus & ~mask) | (self.minus & mask), (self.minus & ~mask) | (self.plus & mask)
        )

    def sort_key(self) -> str:
        return "".join(_ORDER_CHAR[c] for c in str(self))

    def __str__(self) -> str:
        return "".join(self[i].char for i in range(self.n))

    def __repr__(self) -> str:
        return f"SignVector({str(self)!r})"


def _check_len(x: SignVector, y: SignVector) -> None:
    if x.n != y.n:
        raise ValueError(f"length mismatch: {x.n} != {y.n}")


def compose(x: SignVector, y: SignVector) -> SignVector:
    """X o Y: take X's sign where X is nonzero, otherwise Y's."""
    _check_len(x, y)
    return SignVector(x.n, x.plus | (y.plus & ~x.minus), x.minus | (y.minus & ~x.plus))


def separator_mask(p: SignVector, q: SignVector) -> int:
    _check_len(p, q)
    return (p.plus & q.minus) | (p.minus & q.plus)


def separator(p: SignVector, q: SignVector) -> frozenset[int]:
    """Sep(P, Q) = {e : P_e = -Q_e != 0}."""
    return frozenset(bits(separator_mask(p, q)))
