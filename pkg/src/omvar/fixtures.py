"""Named small oriented matroids and a seeded generator of random arrangements."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from importlib import resources

from .om import OrientedMatroid, from_arrangement, matrix_rank

F1_NORMALS = [[1]]
F2_NORMALS = [[1, 0], [0, 1]]
F3_NORMALS = [[1, 0], [0, 1], [1, 1]]
F4_NORMALS = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
# two antiparallel lines plus two generic ones; the smallest shape where a
# pattern with all three parts nonempty meets the trichotomy preconditions
ANTIPARALLEL_NORMALS = [[1, 0], [-1, 0], [0, 1], [1, -1]]


def F1() -> OrientedMatroid:
    return from_arrangement(F1_NORMALS)


def F2() -> OrientedMatroid:
    return from_arrangement(F2_NORMALS)


def F3() -> OrientedMatroid:
    return from_arrangement(F3_NORMALS)


def F4() -> OrientedMatroid:
    return from_arrangement(F4_NORMALS)


def antiparallel() -> OrientedMatroid:
    return from_arrangement(ANTIPARALLEL_NORMALS)


def fixture_path(name: str):
    return resources.files("omvar") / "fixtures" / name


def two_max_normals() -> list[list[Fraction]]:
    data = json.loads(fixture_path("two_max.json").read_text(encoding="utf-8"))
    return [[Fraction(x) for x in row] for row in data["normals"]]


def two_max() -> OrientedMatroid:
    """Central arrangement of 5 hyperplanes in R^4 (an affine arrangement of 4
    planes in 3-space plus the plane at infinity) where a crucial-sum group has
    two maximal elements."""
    return from_arrangement(two_max_normals())


NAMED = {"F1": F1, "F2": F2, "F3": F3, "F4": F4, "AP": antiparallel, "TWOMAX": two_max}


def random_normals(rng: random.Random, dim: int, n: int, coord: int) -> list[list[int]]:
    """n nonzero integer normals in R^dim spanning it, coordinates in [-coord, coord]."""
    while True:
        N = [[rng.randint(-coord, coord) for _ in range(dim)] for _ in range(n)]
        if any(not any(v) for v in N):
            continue
        if matrix_rank([[Fraction(x) for x in r] for r in N], dim) == dim:
            return N


def random_instance(
    seed: int, max_n: int = 6, max_rank: int = 4, coord: int = 3
) -> tuple[list[list[Fraction]], OrientedMatroid]:
    """Random central arrangement with rational normals p/q, |p| <= coord, q <= 3."""
    rng = random.Random(seed)
    d = rng.randint(2, max_rank)
    n = rng.randint(d, max(d, max_n))
    N = [[Fraction(x, rng.randint(1, 3)) for x in row] for row in random_normals(rng, d, n, coord)]
    return N, from_arrangement(N)


def random_instances(count: int, seed: int = 0, **kw) -> list[tuple[list[list[Fraction]], OrientedMatroid]]:
    return [random_instance(seed * 1000 + i, **kw) for i in range(count)]


def search_two_maximal(seed: int, dim: int, n_range=(5, 6), coord: int = 2, attempts: int = 200):
    """Seeded search for an arrangement with a two-maximal crucial group.

    Returns (normals, witness) or None.
    """
    from .topology import two_maximal_witness

    rng = random.Random(seed)
    for _ in range(attempts):
        n = rng.randint(*n_range)
        N = [[rng.randint(-coord, coord) for _ in range(dim)] for _ in range(n)]
        if any(not any(v) for v in N):
            continue
        if matrix_rank([[Fraction(x) for x in r] for r in N], dim) != dim:
            continue
        w = two_maximal_witness(from_arrangement(N))
        if w:
            return N, w
    return None
