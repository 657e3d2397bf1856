"""Sparse integer polynomials in U_0..U_{n-1}, prime fields and dense matrices.

Exponent vectors are packed into one Python int, 9 bits per variable with
U_0 in the most significant field.  Exponents are limited to 8 bits; the
ninth bit of every field is a guard that detects overflow on multiplication.
Comparing packed keys as integers is the lexicographic monomial order.
"""

from __future__ import annotations

import heapq
import random
import re
from typing import Callable, Iterable, Mapping, Sequence

WIDTH = 9
FIELD = (1 << WIDTH) - 1
MAX_EXP = (1 << (WIDTH - 1)) - 1

DEFAULT_PRIME = (1 << 61) - 1
DEFAULT_TRIALS = 20
DEFAULT_MAX_SYMBOLIC = 12


class UniverseMismatch(ValueError):
    pass


class SizeGuardError(RuntimeError):
    """A symbolic computation was refused because the input is too large."""


def _guard_mask(nvars: int) -> int:
    g = 0
    for i in range(nvars):
        g |= 1 << (i * WIDTH + WIDTH - 1)
    return g


_GUARDS: dict[int, int] = {}


def guard_mask(nvars: int) -> int:
    g = _GUARDS.get(nvars)
    if g is None:
        g = _GUARDS[nvars] = _guard_mask(nvars)
    return g


def pack(exps: Sequence[int]) -> int:
    key = 0
    for x in exps:
        if not 0 <= x <= MAX_EXP:
            raise OverflowError(f"exponent {x} outside 0..{MAX_EXP}")
        key = (key << WIDTH) | x
    return key


def unpack(key: int, nvars: int) -> tuple[int, ...]:
    out = [0] * nvars
    for i in range(nvars - 1, -1, -1):
        out[i] = key & FIELD
        key >>= WIDTH
    return tuple(out)


class MultiPoly:
    """Polynomial with integer coefficients in a fixed set of variables."""

    __slots__ = ("nvars", "_t")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], int] | None = None):
        self.nvars = nvars
        self._t: dict[int, int] = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise UniverseMismatch(f"exponent vector {exps} has wrong length")
                if c:
                    k = pack(exps)
                    v = self._t.get(k, 0) + c
                    if v:
                        self._t[k] = v
                    else:
                        self._t.pop(k, None)

    @classmethod
    def _raw(cls, nvars: int, t: dict[int, int]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._t = t
        return p

    @classmethod
    def constant(cls, nvars: int, c: int) -> "MultiPoly":
        return cls._raw(nvars, {0: c} if c else {})

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {})

    @classmethod
    def one(cls, nvars: int) -> "MultiPoly":
        return cls._raw(nvars, {0: 1})

    @classmethod
    def var(cls, nvars: int, i: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(i)
        return cls._raw(nvars, {1 << ((nvars - 1 - i) * WIDTH): 1})

    @classmethod
    def monomial(cls, nvars: int, variables: Iterable[int], coeff: int = 1) -> "MultiPoly":
        """coeff * prod of U_i over ``variables`` (repeats raise the power)."""
        exps = [0] * nvars
        for i in variables:
            exps[i] += 1
        return cls._raw(nvars, {pack(exps): coeff} if coeff else {})

    # -- basic protocol ---------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise UniverseMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, int):
            return MultiPoly.constant(self.nvars, other)
        raise TypeError(f"cannot combine MultiPoly with {type(other).__name__}")

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = MultiPoly.constant(self.nvars, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._t == other._t

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self._t.items())))

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_term(self) -> int:
        return self._t.get(0, 0)

    def __len__(self) -> int:
        return len(self._t)

    # -- ring operations --------------------------------------------------

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        t = dict(self._t)
        for k, c in other._t.items():
            v = t.get(k, 0) + c
            if v:
                t[k] = v
            else:
                t.pop(k, None)
        return MultiPoly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.nvars, {k: -c for k, c in self._t.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, int):
            if not other:
                return MultiPoly.zero(self.nvars)
            return MultiPoly._raw(self.nvars, {k: c * other for k, c in self._t.items()})
        other = self._coerce(other)
        a, b = self._t, other._t
        if len(a) < len(b):
            a, b = b, a
        g = guard_mask(self.nvars)
        t: dict[int, int] = {}
        get = t.get
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb
                t[k] = get(k, 0) + ca * cb
        if any(k & g for k in t):
            raise OverflowError("exponent overflow (more than 8 bits)")
        return MultiPoly._raw(self.nvars, {k: c for k, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power")
        out = MultiPoly.one(self.nvars)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def leading(self) -> tuple[int, int]:
        k = max(self._t)
        return k, self._t[k]

    def divmod(self, d: "MultiPoly") -> tuple["MultiPoly", "MultiPoly"]:
        """Division by ``d`` in lex order with integer leading-coefficient steps.

        Returns (q, r) with self = q*d + r; a term is moved to r when the
        leading monomial of d does not divide it or the coefficient division
        is not exact.
        """
        d = self._coerce(d)
        if d.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        n = self.nvars
        g = guard_mask(n)
        ld, lc = d.leading()
        rest = [(k, c) for k, c in d._t.items() if k != ld]
        rem = dict(self._t)
        heap = [-k for k in rem]
        heapq.heapify(heap)
        q: dict[int, int] = {}
        r: dict[int, int] = {}
        while heap:
            k = -heapq.heappop(heap)
            c = rem.pop(k, 0)
            if not c:
                continue
            diff = (k | g) - ld
            qc, rc = divmod(c, lc)
            if diff & g != g or rc:
                r[k] = c
                continue
            mk = diff ^ g
            q[mk] = qc
            for dk, dc in rest:
                nk = mk + dk
                v = rem.get(nk, 0) - qc * dc
                if v:
                    if nk not in rem:
                        heapq.heappush(heap, -nk)
                    rem[nk] = v
                else:
                    rem.pop(nk, None)
        return MultiPoly._raw(n, q), MultiPoly._raw(n, r)

    def exact_div(self, d: "MultiPoly") -> "MultiPoly":
        if isinstance(d, MultiPoly) and d.is_constant():
            c = d.constant_term()
            if c == 0:
                raise ZeroDivisionError("polynomial division by zero")
            if c == 1:
                return self
            t = {}
            for k, v in self._t.items():
                qv, rv = divmod(v, c)
                if rv:
                    raise ArithmeticError("inexact division")
                t[k] = qv
            return MultiPoly._raw(self.nvars, t)
        q, r = self.divmod(d)
        if r:
            raise ArithmeticError("inexact division")
        return q

    def divides(self, other: "MultiPoly") -> bool:
        return not other.divmod(self)[1]

    # -- inspection -------------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in graded-lex order: ascending total degree, then U_0 first."""
        items = [(unpack(k, self.nvars), c) for k, c in self._t.items()]
        items.sort(key=lambda it: (sum(it[0]), [-x for x in it[0]]))
        return items

    def total_degree(self) -> int:
        if not self._t:
            return -1
        return max(sum(unpack(k, self.nvars)) for k in self._t)

    def degree_in(self, i: int) -> int:
        if not self._t:
            return -1
        shift = (self.nvars - 1 - i) * WIDTH
        return max((k >> shift) & FIELD for k in self._t)

    def substitute_zero(self, e: int) -> "MultiPoly":
        """Set U_e = 0."""
        shift = (self.nvars - 1 - e) * WIDTH
        return MultiPoly._raw(self.nvars, {k: c for k, c in self._t.items() if not (k >> shift) & FIELD})

    def substitute_zeros(self, es: Iterable[int]) -> "MultiPoly":
        out = self
        for e in es:
            out = out.substitute_zero(e)
        return out

    def eval_modp(self, point: Mapping[int, int] | Sequence[int], p: int = DEFAULT_PRIME) -> int:
        n = self.nvars
        total = 0
        for k, c in self._t.items():
            v = c % p
            for i in range(n - 1, -1, -1):
                x = k & FIELD
                k >>= WIDTH
                if x:
                    try:
                        base = point[i]
                    except (KeyError, IndexError):
                        raise ValueError(f"no value for U{i}") from None
                    v = v * pow(base, x, p) % p
            total += v
        return total % p

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for exps, c in self.terms():
            mono = "*".join(f"U{i}" if x == 1 else f"U{i}^{x}" for i, x in enumerate(exps) if x)
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sg, body in parts[1:]:
            s += f" {sg} {body}"
        return s

    def __repr__(self) -> str:
        return f"MultiPoly({str(self)!r})"

    @classmethod
    def parse(cls, s: str, nvars: int) -> "MultiPoly":
        """Inverse of ``str``: e.g. ``"1 - U0^2*U1^2"``."""
        text = s.replace(" ", "")
        if not text:
            raise ValueError("empty polynomial")
        if text[0] not in "+-":
            text = "+" + text
        out = cls.zero(nvars)
        for sign, body in re.findall(r"([+-])([^+-]+)", text):
            coeff = 1
            exps = [0] * nvars
            for factor in body.split("*"):
                m = re.fullmatch(r"U(\d+)(?:\^(\d+))?", factor)
                if m:
                    i = int(m.group(1))
                    if i >= nvars:
                        raise UniverseMismatch(f"U{i} outside {nvars} variables")
                    exps[i] += int(m.group(2) or 1)
                elif re.fullmatch(r"\d+", factor):
                    coeff *= int(factor)
                else:
                    raise ValueError(f"bad factor {factor!r} in {s!r}")
            out = out + cls._raw(nvars, {pack(exps): -coeff if sign == "-" else coeff})
        return out


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class PrimeField:
    """Arithmetic modulo a prime; elements are plain ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __call__(self, x: int) -> int:
        return x % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def random_point(self, rng: random.Random, nvars: int) -> list[int]:
        return [rng.randrange(self.p) for _ in range(nvars)]

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class PolyMatrix:
    """Dense matrix of MultiPoly entries with optional row/column labels."""

    def __init__(
        self,
        entries: Sequence[Sequence[MultiPoly]],
        nvars: int,
        row_labels: Sequence | None = None,
        col_labels: Sequence | None = None,
    ):
        self.entries = [list(r) for r in entries]
        self.nvars = nvars
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.entries else 0
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("ragged matrix")
            for x in r:
                if x.nvars != nvars:
                    raise UniverseMismatch("entry has wrong number of variables")
        for labels, size in ((row_labels, self.rows), (col_labels, self.cols)):
            if labels is not None:
                if len(labels) != size:
                    raise ValueError("label count does not match dimension")
                if len(set(labels)) != size:
                    raise ValueError("labels are not unique")
        self.row_labels = list(row_labels) if row_labels is not None else None
        self.col_labels = list(col_labels) if col_labels is not None else None

    @classmethod
    def identity(cls, size: int, nvars: int, labels: Sequence | None = None) -> "PolyMatrix":
        one, zero = MultiPoly.one(nvars), MultiPoly.zero(nvars)
        rows = [[one if i == j else zero for j in range(size)] for i in range(size)]
        return cls(rows, nvars, labels, labels)

    @classmethod
    def build(
        cls,
        row_labels: Sequence,
        col_labels: Sequence,
        nvars: int,
        f: Callable[[object, object], MultiPoly],
    ) -> "PolyMatrix":
        return cls([[f(r, c) for c in col_labels] for r in row_labels], nvars, row_labels, col_labels)

    def __getitem__(self, ij: tuple[int, int]) -> MultiPoly:
        i, j = ij
        return self.entries[i][j]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        return mat_mul(self, other)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return mat_sub(self, other)

    def map(self, f: Callable[[MultiPoly], MultiPoly]) -> "PolyMatrix":
        return PolyMatrix([[f(x) for x in r] for r in self.entries], self.nvars, self.row_labels, self.col_labels)

    def substitute_zero(self, e: int) -> "PolyMatrix":
        return self.map(lambda x: x.substitute_zero(e))

    def select(self, rows: Sequence[int], cols: Sequence[int] | None = None) -> "PolyMatrix":
        cols = rows if cols is None else cols
        return PolyMatrix(
            [[self.entries[i][j] for j in cols] for i in rows],
            self.nvars,
            [self.row_labels[i] for i in rows] if self.row_labels is not None else None,
            [self.col_labels[j] for j in cols] if self.col_labels is not None else None,
        )

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def evaluate(self, point: Sequence[int], p: int = DEFAULT_PRIME) -> list[list[int]]:
        return [[x.eval_modp(point, p) for x in r] for r in self.entries]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]], nvars: int) -> "PolyMatrix":
        return cls([[MultiPoly.parse(s, nvars) for s in r] for r in data], nvars)

    def __repr__(self) -> str:
        return f"<PolyMatrix {self.rows}x{self.cols}>"


def mat_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.nvars != b.nvars:
        raise UniverseMismatch("matrices over different variable sets")
    n = a.nvars
    out = []
    bt = list(zip(*b.entries)) if b.rows else [()] * b.cols
    for row in a.entries:
        new = []
        for col in bt:
            acc = MultiPoly.zero(n)
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return PolyMatrix(out, n, a.row_labels, b.col_labels)


def mat_sub(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    return PolyMatrix(
        [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a.entries, b.entries)], a.nvars, a.row_labels, a.col_labels
    )


def is_identity(a: PolyMatrix) -> bool:
    if not a.is_square():
        return False
    return all((x == 1) if i == j else x.is_zero() for i, r in enumerate(a.entries) for j, x in enumerate(r))


def det_minors(a: PolyMatrix) -> MultiPoly:
    """Exact determinant by expansion over column subsets, row by row.

    Needs no division. Every step multiplies a minor by one matrix entry, which
    is cheap when the entries are monomials (as for Varchenko matrices).
    """
    n = a.rows
    nv = a.nvars
    g = guard_mask(nv)
    layer: dict[int, dict[int, int]] = {0: {0: 1}}
    for k in range(n):
        row = [x._t for x in a.entries[k]]
        nxt: dict[int, dict[int, int]] = {}
        for S, minor in layer.items():
            for j in range(n):
                if S >> j & 1 or not row[j]:
                    continue
                # column j lands after the columns of S below it
                sign = -1 if bin(S >> j).count("1") & 1 else 1
                T = S | 1 << j
                acc = nxt.setdefault(T, {})
                get = acc.get
                for ke, ce in row[j].items():
                    ce *= sign
                    for km, cm in minor.items():
                        kk = ke + km
                        acc[kk] = get(kk, 0) + ce * cm
        layer = {}
        for T, acc in nxt.items():
            t = {kk: c for kk, c in acc.items() if c}
            if t:
                if any(kk & g for kk in t):
                    raise OverflowError("exponent overflow (more than 8 bits)")
                layer[T] = t
    return MultiPoly._raw(nv, layer.get((1 << n) - 1, {}))


def _monomial_entries(a: PolyMatrix) -> bool:
    return all(len(x._t) <= 1 for r in a.entries for x in r)


def det_symbolic(
    a: PolyMatrix, max_size: int = DEFAULT_MAX_SYMBOLIC, force: bool = False, method: str = "auto"
) -> MultiPoly:
    """Exact determinant.

    ``method`` is "bareiss" (fraction-free elimination), "minors" (subset
    expansion) or "auto", which picks minors for monomial matrices.
    """
    if not a.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = a.rows
    if n > max_size and not force:
        raise SizeGuardError(f"{n}x{n} exceeds the symbolic size guard {max_size}")
    if method == "auto":
        method = "minors" if n and _monomial_entries(a) else "bareiss"
    if method == "minors":
        return det_minors(a) if n else MultiPoly.one(a.nvars)
    if method != "bareiss":
        raise ValueError(f"unknown determinant method {method!r}")
    nv = a.nvars
    if n == 0:
        return MultiPoly.one(nv)
    m = [list(r) for r in a.entries]
    sign = 1
    prev = MultiPoly.one(nv)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return MultiPoly.zero(nv)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                v = pivot * row_i[j]
                if mik and row_k[j]:
                    v = v - mik * row_k[j]
                row_i[j] = v.exact_div(prev)
        prev = pivot
    d = m[n - 1][n - 1]
    return d if sign > 0 else -d


def det_mod(rows: Sequence[Sequence[int]], p: int = DEFAULT_PRIME) -> int:
    """Determinant of an integer matrix modulo p by Gaussian elimination."""
    m = [[x % p for x in r] for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pk = m[k][k]
        det = det * pk % p
        inv = pow(pk, -1, p)
        rk = m[k]
        for i in range(k + 1, n):
            f = m[i][k] * inv % p
            if f:
                ri = m[i]
                for j in range(k, n):
                    ri[j] = (ri[j] - f * rk[j]) % p
    return det % p


def det_modp(a: PolyMatrix, point: Sequence[int], p: int = DEFAULT_PRIME) -> int:
    if not a.is_square():
        raise ValueError("determinant of a non-square matrix")
    return det_mod(a.evaluate(point, p), p)


def matmul_mod(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int = DEFAULT_PRIME) -> list[list[int]]:
    if a and len(a[0]) != len(b):
        raise ValueError("dimension mismatch")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) % p for c in bt] for r in a]
