"""The Tuzhilin two-space family: hedgehog-type spaces at small Hausdorff gaps.

Needle n carries the coordinates {1 + 1/k : 1 <= k <= n}. The first space
uses needles 1..N+1; the second replaces needle N+1 with a long needle whose
coordinates are {1 + 1/k : k <= K} together with the limit coordinate 1.
Points on one needle are at |x - x'|, points on different needles at x + x'
(intrinsic metric through the center, which is not itself a point).

Re-slotting the long needle onto needle m (and shifting needles m..N up by
one) is distance-preserving and realizes Hausdorff distance exactly 1/m
against the first space, witnessed by the pair (m, 1) vs (m, 1 + 1/m).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import IndexOutOfRange
from .spaces import STRICT, FiniteMetricSpace, SubsetRef, hausdorff

INF_NEEDLE = "inf"

Point = tuple[str, Fraction]  # (needle id, coordinate)


@dataclass(frozen=True)
class TuzhilinConfig:
    n: int  # finite needles 1..n are shared; the first space also has needle n+1
    k: int  # truncation depth of the long needle

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.k < self.n:
            raise ValueError("k must be at least n")


def _coords(depth: int) -> list[Fraction]:
    return [1 + Fraction(1, k) for k in range(1, depth + 1)]


def needle_space(points: Sequence[Point]) -> FiniteMetricSpace:
    """Metric space on labeled needle points: same needle |x-x'|, else x+x'."""
    seen = sorted(set(points), key=lambda p: (p[0], p[1]))
    labels = tuple(f"{needle}:{coord}" for needle, coord in seen)
    rows = []
    for a_needle, a_coord in seen:
        row = []
        for b_needle, b_coord in seen:
            if a_needle == b_needle:
                row.append(abs(a_coord - b_coord))
            else:
                row.append(a_coord + b_coord)
        rows.append(tuple(row))
    return FiniteMetricSpace(labels, tuple(rows), STRICT)


def _x_points(cfg: TuzhilinConfig) -> list[Point]:
    return [
        (str(n), c) for n in range(1, cfg.n + 2) for c in _coords(n)
    ]


def _y_points(cfg: TuzhilinConfig) -> list[Point]:
    pts: list[Point] = [
        (str(n), c) for n in range(1, cfg.n + 1) for c in _coords(n)
    ]
    pts.extend((INF_NEEDLE, c) for c in _coords(cfg.k))
    pts.append((INF_NEEDLE, Fraction(1)))
    return pts


def tuzhilin_spaces(
    cfg: TuzhilinConfig,
) -> tuple[FiniteMetricSpace, FiniteMetricSpace]:
    return needle_space(_x_points(cfg)), needle_space(_y_points(cfg))


def _relocate(cfg: TuzhilinConfig, m: int, point: Point) -> Point:
    needle, coord = point
    if needle == INF_NEEDLE:
        return (str(m), coord)
    n = int(needle)
    return (str(n), coord) if n < m else (str(n + 1), coord)


@dataclass(frozen=True)
class TuzhilinEmbedding:
    """The re-slotted second space placed beside the first in one ambient space."""

    ambient: FiniteMetricSpace
    x_part: SubsetRef
    image_part: SubsetRef
    mapping: tuple[tuple[str, str], ...]  # second-space label -> ambient label
    distance_preserving: bool
    hausdorff_value: Fraction
    expected: Fraction


def tuzhilin_isometry(cfg: TuzhilinConfig, m: int) -> TuzhilinEmbedding:
    """Embed the second space via the needle shift h_m and measure the gap."""
    if not (1 <= m <= cfg.n):
        raise IndexOutOfRange(f"m must be in 1..{cfg.n}, got {m}")
    x_points = _x_points(cfg)
    y_points = _y_points(cfg)
    y_space = needle_space(y_points)
    image_points = [_relocate(cfg, m, p) for p in y_points]

    ambient_points = sorted(set(x_points) | set(image_points))
    ambient = needle_space(ambient_points)

    def locate(p: Point) -> int:
        return ambient.index_of(f"{p[0]}:{p[1]}")

    x_part = SubsetRef(ambient, frozenset(locate(p) for p in x_points))
    image_part = SubsetRef(ambient, frozenset(locate(p) for p in image_points))

    y_sorted = sorted(set(y_points), key=lambda p: (p[0], p[1]))
    mapping = tuple(
        (f"{p[0]}:{p[1]}", f"{q[0]}:{q[1]}")
        for p, q in ((p, _relocate(cfg, m, p)) for p in y_sorted)
    )

    preserved = True
    for i, p in enumerate(y_sorted):
        gi = locate(_relocate(cfg, m, p))
        for j in range(i + 1, len(y_sorted)):
            q = y_sorted[j]
            gj = locate(_relocate(cfg, m, q))
            if y_space.dist[i][j] != ambient.dist[gi][gj]:
                preserved = False
                break
        if not preserved:
            break

    return TuzhilinEmbedding(
        ambient=ambient,
        x_part=x_part,
        image_part=image_part,
        mapping=mapping,
        distance_preserving=preserved,
        hausdorff_value=hausdorff(x_part, image_part),
        expected=Fraction(1, m),
    )


def needle_set_hausdorff(n: int, m: int) -> Fraction:
    """Hausdorff distance between needle sets n and m placed on one needle.

    Both coordinate sets live on a single line with |x - y| distances; the
    value is exactly |1/n - 1/m|.
    """
    if n < 1 or m < 1:
        raise ValueError("needle indices must be positive")
    coords = sorted(set(_coords(n)) | set(_coords(m)))
    line = needle_space([("1", c) for c in coords])
    idx = {c: line.index_of(f"1:{c}") for c in coords}
    a = SubsetRef(line, frozenset(idx[c] for c in _coords(n)))
    b = SubsetRef(line, frozenset(idx[c] for c in _coords(m)))
    return hausdorff(a, b)
