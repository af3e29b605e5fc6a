"""Finite metric and pseudometric spaces with exact rational distances.

Every distance is a `fractions.Fraction`, so the identities the rest of the
package relies on (diameter scaling, realized Hausdorff distances, gluing
weights) are checked with equality, never with tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AsymmetricEntry,
    DifferentAmbientSpaces,
    MetricValidationError,
    NegativeEntry,
    NonpositiveScale,
    NonzeroDiagonal,
    TriangleViolation,
    ZeroDistanceDistinctPoints,
)

STRICT = "strict"
PSEUDO = "pseudo"

_MODES = (STRICT, PSEUDO)


def as_fraction(value: int | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected int or Fraction, got {type(value).__name__}")


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Labeled points with a symmetric matrix of exact distances.

    Instances are immutable; construct through :func:`validate` (axioms
    checked) or one of the derived constructors elsewhere in the package
    (valid by construction).
    """

    labels: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]
    mode: str = STRICT

    def __post_init__(self) -> None:
        if self.mode not in _MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        n = len(self.labels)
        if n == 0:
            raise ValueError("a space needs at least one point")
        if len(set(self.labels)) != n:
            raise ValueError("labels must be distinct")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise ValueError("distance matrix shape does not match labels")

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def index_of(self, label: str) -> int:
        return self.labels.index(label)


def validate(
    matrix: Sequence[Sequence[int | Fraction]],
    mode: str = STRICT,
    labels: Sequence[str] | None = None,
) -> FiniteMetricSpace:
    """Check every metric axiom on `matrix` and build a space.

    On failure raises :class:`MetricValidationError` carrying the full list
    of violations (not just the first), each with witnessing indices.
    Pseudo mode permits zero distances between distinct points.
    """
    rows = tuple(tuple(as_fraction(x) for x in row) for row in matrix)
    n = len(rows)
    if n == 0:
        raise ValueError("matrix must be nonempty")
    if any(len(row) != n for row in rows):
        raise ValueError("matrix must be square")
    if mode not in _MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(labels)

    violations: list = []
    for i in range(n):
        if rows[i][i] != 0:
            violations.append(NonzeroDiagonal(i))
    for i in range(n):
        for j in range(n):
            if i != j and rows[i][j] < 0:
                violations.append(NegativeEntry(i, j))
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                violations.append(AsymmetricEntry(i, j))
    if mode == STRICT:
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] == 0:
                    violations.append(ZeroDistanceDistinctPoints(i, j))
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                if k != i and k != j and rows[i][j] > rows[i][k] + rows[k][j]:
                    violations.append(TriangleViolation(i, j, k))
    if violations:
        raise MetricValidationError(violations)
    return FiniteMetricSpace(labels, rows, mode)


def diameter(space: FiniteMetricSpace) -> Fraction:
    """Largest pairwise distance; 0 for a one-point space."""
    return max(max(row) for row in space.dist)


def scale(space: FiniteMetricSpace, factor: int | Fraction) -> FiniteMetricSpace:
    """Multiply every distance by a positive factor (similarity)."""
    lam = as_fraction(factor)
    if lam <= 0:
        raise NonpositiveScale(f"scale factor must be positive, got {lam}")
    rows = tuple(tuple(x * lam for x in row) for row in space.dist)
    return FiniteMetricSpace(space.labels, rows, space.mode)


def one_point_space(label: str = "pt") -> FiniteMetricSpace:
    return FiniteMetricSpace((label,), ((Fraction(0),),), STRICT)


@dataclass(frozen=True)
class SubsetRef:
    """A nonempty subset of one space's points, by index."""

    space: FiniteMetricSpace
    indices: frozenset[int]

    def __post_init__(self) -> None:
        if not self.indices:
            raise ValueError("subset must be nonempty")
        n = len(self.space)
        if any(i < 0 or i >= n for i in self.indices):
            raise ValueError("subset index out of range")


def subset(space: FiniteMetricSpace, indices: Iterable[int]) -> SubsetRef:
    return SubsetRef(space, frozenset(indices))


def whole(space: FiniteMetricSpace) -> SubsetRef:
    return SubsetRef(space, frozenset(range(len(space))))


def hausdorff(a: SubsetRef, b: SubsetRef) -> Fraction:
    """Hausdorff distance between two subsets of one space.

    Finite max-min form: the infimum over enclosing radii is attained at
    max(max_a min_b |ab|, max_b min_a |ab|).
    """
    if a.space is not b.space and a.space != b.space:
        raise DifferentAmbientSpaces("subsets live in different spaces")
    d = a.space.dist

    def directed(src: frozenset[int], dst: frozenset[int]) -> Fraction:
        return max(min(d[i][j] for j in dst) for i in src)

    return max(directed(a.indices, b.indices), directed(b.indices, a.indices))
