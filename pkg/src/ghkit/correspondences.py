"""Correspondences (both-ways surjective relations) and their distortion."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import TooLarge
from .spaces import FiniteMetricSpace

ENUMERATION_CELL_GUARD = 20


@dataclass(frozen=True)
class Correspondence:
    """A relation between two point sets covering every point on both sides."""

    left: FiniteMetricSpace
    right: FiniteMetricSpace
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if not self.pairs:
            raise ValueError("a correspondence needs at least one pair")
        n, m = len(self.left), len(self.right)
        for i, j in self.pairs:
            if not (0 <= i < n and 0 <= j < m):
                raise ValueError(f"pair ({i}, {j}) out of range")
        if {i for i, _ in self.pairs} != set(range(n)):
            raise ValueError("not surjective onto the left space")
        if {j for _, j in self.pairs} != set(range(m)):
            raise ValueError("not surjective onto the right space")

    def image(self, i: int) -> frozenset[int]:
        return frozenset(j for a, j in self.pairs if a == i)

    def sorted_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.pairs))


def distortion(rel: Correspondence) -> Fraction:
    """max over matched pairs (x,y), (x',y') of | |xx'| - |yy'| |."""
    dx, dy = rel.left.dist, rel.right.dist
    pairs = rel.sorted_pairs()
    worst = Fraction(0)
    for a in range(len(pairs)):
        i, j = pairs[a]
        for b in range(a, len(pairs)):
            k, l = pairs[b]
            gap = abs(dx[i][k] - dy[j][l])
            if gap > worst:
                worst = gap
    return worst


def identity_correspondence(space: FiniteMetricSpace) -> Correspondence:
    return Correspondence(space, space, frozenset((i, i) for i in range(len(space))))


def full_correspondence(x: FiniteMetricSpace, y: FiniteMetricSpace) -> Correspondence:
    return Correspondence(
        x, y, frozenset((i, j) for i in range(len(x)) for j in range(len(y)))
    )


def inverse(rel: Correspondence) -> Correspondence:
    return Correspondence(rel.right, rel.left, frozenset((j, i) for i, j in rel.pairs))


def scaled_integer_matrices(
    x: FiniteMetricSpace, y: FiniteMetricSpace
) -> tuple[int, list[list[int]], list[list[int]]]:
    """Rescale both distance matrices to a shared integer grid.

    Returns (denominator L, X matrix * L, Y matrix * L); exact, and lets hot
    search loops run on machine integers instead of Fractions.
    """
    denom = 1
    for space in (x, y):
        for row in space.dist:
            for value in row:
                denom = denom * value.denominator // math.gcd(denom, value.denominator)
    dx = [[int(value * denom) for value in row] for row in x.dist]
    dy = [[int(value * denom) for value in row] for row in y.dist]
    return denom, dx, dy


def _guard_cells(n: int, m: int, max_cells: int) -> None:
    if n < 1 or m < 1:
        raise ValueError("sizes must be positive")
    if n * m > max_cells:
        raise TooLarge(f"{n}x{m} grid has {n * m} cells, guard is {max_cells}")


def enumerate_pair_sets(
    n: int, m: int, max_cells: int = ENUMERATION_CELL_GUARD
) -> Iterator[frozenset[tuple[int, int]]]:
    """Yield every both-ways surjective relation on an n x m grid exactly once.

    Bitmask sweep over all 2^(n*m) subsets, filtered by row/column coverage;
    guarded by n*m <= max_cells.
    """
    _guard_cells(n, m, max_cells)
    cells = [(i, j) for i in range(n) for j in range(m)]
    row_masks = [0] * n
    col_masks = [0] * m
    for bit, (i, j) in enumerate(cells):
        row_masks[i] |= 1 << bit
        col_masks[j] |= 1 << bit
    for mask in range(1, 1 << (n * m)):
        if all(mask & rm for rm in row_masks) and all(mask & cm for cm in col_masks):
            yield frozenset(
                cells[bit] for bit in range(n * m) if mask & (1 << bit)
            )


def enumerate_correspondences(
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    max_cells: int = ENUMERATION_CELL_GUARD,
) -> Iterator[Correspondence]:
    for pairs in enumerate_pair_sets(len(x), len(y), max_cells):
        yield Correspondence(x, y, pairs)


def min_distortion_by_enumeration(
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    max_cells: int = ENUMERATION_CELL_GUARD,
) -> tuple[Fraction, Correspondence]:
    """Exact minimum distortion over ALL correspondences, by full sweep.

    Independent oracle for the branch-and-bound solver: visits every
    both-ways surjective relation and tracks the minimum (first minimizer in
    mask order wins ties). Same n*m <= max_cells guard as the enumerators.
    """
    n, m = len(x), len(y)
    _guard_cells(n, m, max_cells)
    denom, dx, dy = scaled_integer_matrices(x, y)
    cells = [(i, j) for i in range(n) for j in range(m)]
    nm = n * m
    # flat |dx - dy| table over cell pairs
    diff = [0] * (nm * nm)
    for a, (i, j) in enumerate(cells):
        for b, (k, l) in enumerate(cells):
            diff[a * nm + b] = abs(dx[i][k] - dy[j][l])
    row_masks = [0] * n
    col_masks = [0] * m
    for bit, (i, j) in enumerate(cells):
        row_masks[i] |= 1 << bit
        col_masks[j] |= 1 << bit

    full_mask = (1 << nm) - 1

    def relation_distortion(mask: int, cutoff: int) -> int:
        """Distortion of the relation; returns cutoff as soon as it is reached."""
        bits = []
        rest = mask
        while rest:
            low = rest & -rest
            bits.append(low.bit_length() - 1)
            rest ^= low
        worst = 0
        for a_idx, a in enumerate(bits):
            base = a * nm
            for b_idx in range(a_idx, len(bits)):
                gap = diff[base + bits[b_idx]]
                if gap > worst:
                    worst = gap
                    if worst >= cutoff:
                        return cutoff
        return worst

    best = relation_distortion(full_mask, 1 << 62)
    best_mask = full_mask
    for mask in range(1, full_mask):
        if not all(mask & rm for rm in row_masks):
            continue
        if not all(mask & cm for cm in col_masks):
            continue
        dis = relation_distortion(mask, best)
        if dis < best:
            best = dis
            best_mask = mask
    witness = frozenset(
        cells[bit] for bit in range(nm) if best_mask & (1 << bit)
    )
    return Fraction(best, denom), Correspondence(x, y, witness)
