"""Finite ultrametric spaces with exact rational distances."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AsymmetricMatrix,
    EmptySubset,
    NegativeDistance,
    NonzeroDiagonal,
    NotSquare,
    StrongTriangleViolation,
    ZeroOffDiagonal,
)

ZERO = Fraction(0)


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or numeric string ("3", "1.25", "5/4") to a Fraction.

    Floats are refused: their binary expansion would silently break ties.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact distance")


def default_names(n: int) -> tuple[str, ...]:
    return tuple(f"x{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class UltraSpace:
    """A validated finite ultrametric space.

    Points are identified by position ``0..n-1``; ``points`` holds cosmetic
    names.  Build instances with :func:`validate` rather than directly.
    """

    dist: tuple[tuple[Fraction, ...], ...]
    points: tuple[str, ...]
    _memo: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return len(self.dist)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    @property
    def diam(self) -> Fraction:
        return max((max(row) for row in self.dist), default=ZERO)

    def matrix(self) -> list[list[Fraction]]:
        return [list(row) for row in self.dist]

    def __eq__(self, other):
        if not isinstance(other, UltraSpace):
            return NotImplemented
        return self.dist == other.dist and self.points == other.points

    def __hash__(self):
        return hash((self.dist, self.points))

    def __len__(self):
        return self.n

    def __repr__(self):
        return f"UltraSpace(n={self.n}, spectrum={[str(s) for s in spectrum(self)]})"


@dataclass(frozen=True)
class Ball:
    members: frozenset[int]
    diameter: Fraction

    @property
    def singular(self) -> bool:
        return len(self.members) == 1

    def __len__(self):
        return len(self.members)


def validate(matrix: Sequence[Sequence], names: Sequence[str] | None = None) -> UltraSpace:
    """Check the ultrametric axioms on a square matrix and wrap it.

    Every ordered triple is inspected for the strong triangle inequality.
    """
    n = len(matrix)
    if n == 0:
        raise NotSquare("matrix is empty")
    rows = []
    for i, row in enumerate(matrix):
        if len(row) != n:
            raise NotSquare(f"row {i} has {len(row)} entries, expected {n}")
        rows.append(tuple(as_rational(v) for v in row))
    for i in range(n):
        if rows[i][i] != 0:
            raise NonzeroDiagonal(i)
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise AsymmetricMatrix(i, j)
            if rows[i][j] < 0:
                raise NegativeDistance(f"d({i},{j}) < 0")
            if rows[i][j] == 0:
                raise ZeroOffDiagonal(i, j)
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            dij = ri[j]
            rj = rows[j]
            for k in range(n):
                if dij > ri[k] and dij > rj[k]:
                    raise StrongTriangleViolation(i, j, k)
    if names is None:
        names = default_names(n)
    else:
        names = tuple(str(s) for s in names)
        if len(names) != n:
            raise NotSquare(f"{len(names)} names for {n} points")
        if len(set(names)) != n:
            raise NotSquare("point names must be distinct")
    return UltraSpace(tuple(rows), names)


def is_ultrametric(space: UltraSpace) -> bool:
    """Re-check the strong triangle inequality post hoc."""
    n = space.n
    D = space.dist
    return all(D[i][j] <= max(D[i][k], D[k][j])
               for i in range(n) for j in range(n) for k in range(n))


def spectrum(space: UltraSpace) -> tuple[Fraction, ...]:
    """Sorted distinct distances, 0 included; the last value is the diameter."""
    memo = space._memo
    if "spectrum" not in memo:
        memo["spectrum"] = tuple(sorted({v for row in space.dist for v in row}))
    return memo["spectrum"]


def ball(space: UltraSpace, center: int, radius) -> Ball:
    if not 0 <= center < space.n:
        raise IndexError(f"no point {center}")
    radius = as_rational(radius)
    row = space.dist[center]
    members = frozenset(x for x in range(space.n) if row[x] <= radius)
    return Ball(members, set_diameter(space, members))


def set_diameter(space: UltraSpace, members: Iterable[int]) -> Fraction:
    members = list(members)
    D = space.dist
    return max((D[a][b] for a in members for b in members), default=ZERO)


def all_balls(space: UltraSpace) -> tuple[Ball, ...]:
    """Every distinct ball B_r(c), found by scanning all centers and radii.

    This is the metric-side enumeration; it never consults a tree.
    """
    memo = space._memo
    if "balls" not in memo:
        seen = set()
        for c in range(space.n):
            row = space.dist[c]
            for r in set(row):
                seen.add(frozenset(x for x in range(space.n) if row[x] <= r))
        out = [Ball(m, set_diameter(space, m)) for m in seen]
        out.sort(key=lambda b: (-len(b.members), sorted(b.members)))
        memo["balls"] = tuple(out)
    return memo["balls"]


def subspace(space: UltraSpace, subset: Iterable[int]) -> UltraSpace:
    """Restrict to ``subset`` (kept in increasing index order)."""
    idx = sorted(set(subset))
    if not idx:
        raise EmptySubset("subspace needs at least one point")
    for i in idx:
        if not 0 <= i < space.n:
            raise IndexError(f"no point {i}")
    D = space.dist
    rows = tuple(tuple(D[i][j] for j in idx) for i in idx)
    # restriction of an ultrametric is an ultrametric; skip the O(n^3) recheck
    return UltraSpace(rows, tuple(space.points[i] for i in idx))


def scaled(space: UltraSpace, factor) -> UltraSpace:
    """Multiply every distance by a positive rational."""
    factor = as_rational(factor)
    if factor <= 0:
        raise NegativeDistance("scale factor must be positive")
    return UltraSpace(tuple(tuple(v * factor for v in row) for row in space.dist), space.points)


def permuted(space: UltraSpace, order: Sequence[int]) -> UltraSpace:
    """The same space with points listed in ``order`` (new i = old order[i])."""
    if sorted(order) != list(range(space.n)):
        raise ValueError("order must be a permutation of the point indices")
    D = space.dist
    rows = tuple(tuple(D[a][b] for b in order) for a in order)
    return UltraSpace(rows, tuple(space.points[a] for a in order))


def hausdorff(space: UltraSpace, A: Iterable[int], B: Iterable[int]) -> Fraction:
    """Two-sided Hausdorff distance between nonempty point sets."""
    A, B = list(A), list(B)
    D = space.dist
    ab = max(min(D[a][b] for b in B) for a in A)
    ba = max(min(D[a][b] for a in A) for b in B)
    return max(ab, ba)


def equilateral(n: int, side=1) -> UltraSpace:
    side = as_rational(side)
    return validate([[ZERO if i == j else side for j in range(n)] for i in range(n)])
