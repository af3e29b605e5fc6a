"""Seeded generators for spaces, correspondences, hedgehogs, and trees.

Random metric spaces are built by sampling points with rational coordinates
and taking the sup-distance, which satisfies the triangle inequality by
construction; everything downstream is therefore valid without rejection.
All generators are deterministic functions of the supplied Random instance.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .correspondences import Correspondence, distortion
from .gluing import GluingTree
from .hedgehogs import HedgehogSpec, compile_hedgehog
from .spaces import STRICT, FiniteMetricSpace, as_fraction

DEFAULT_SEED = 7


def rng_from_seed(seed: int) -> random.Random:
    return random.Random(seed)


def random_metric_space(
    rng: random.Random,
    n: int,
    denominator: int = 6,
    coord_max: int = 60,
    dims: int = 3,
    distinct_distances: bool = False,
    label_prefix: str = "p",
) -> FiniteMetricSpace:
    """n points in a rational box under the sup metric; strict by construction."""
    if n < 1:
        raise ValueError("need at least one point")
    for _ in range(1000):
        points = []
        seen = set()
        while len(points) < n:
            candidate = tuple(rng.randrange(coord_max + 1) for _ in range(dims))
            if candidate in seen:
                continue
            seen.add(candidate)
            points.append(candidate)
        rows = [
            [
                Fraction(max(abs(a - b) for a, b in zip(p, q)), denominator)
                for q in points
            ]
            for p in points
        ]
        if distinct_distances:
            values = [rows[i][j] for i in range(n) for j in range(i + 1, n)]
            if len(set(values)) != len(values):
                continue
        labels = tuple(f"{label_prefix}{i}" for i in range(n))
        return FiniteMetricSpace(
            labels, tuple(tuple(row) for row in rows), STRICT
        )
    raise RuntimeError("could not sample a space with the requested properties")


def random_correspondence(
    rng: random.Random,
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    extra_prob: float = 0.25,
    require_positive_distortion: bool = True,
) -> Correspondence:
    """Random covering relation: a map each way plus sprinkled extra pairs."""
    n, m = len(x), len(y)
    for _ in range(1000):
        pairs = {(i, rng.randrange(m)) for i in range(n)}
        pairs.update((rng.randrange(n), j) for j in range(m))
        for i in range(n):
            for j in range(m):
                if rng.random() < extra_prob:
                    pairs.add((i, j))
        rel = Correspondence(x, y, frozenset(pairs))
        if not require_positive_distortion or distortion(rel) > 0:
            return rel
    raise RuntimeError("could not sample a correspondence with positive distortion")


def random_gluing_tree(
    rng: random.Random,
    n_vertices: int,
    space_size: int = 3,
) -> GluingTree:
    """Random tree shape with random spaces and random edge correspondences."""
    if n_vertices < 2:
        raise ValueError("need at least two vertices")
    vertices = tuple(
        random_metric_space(rng, space_size, label_prefix=f"v{i}p")
        for i in range(n_vertices)
    )
    edges = []
    for w in range(1, n_vertices):
        u = rng.randrange(w)  # attach each vertex below an earlier one
        rel = random_correspondence(rng, vertices[u], vertices[w])
        edges.append((u, w, rel))
    return GluingTree(vertices, tuple(edges))


def grid_hedgehog(eps: int | Fraction, diam: int | Fraction) -> HedgehogSpec:
    """Needles eps, 2*eps, ..., diam (diam must be a multiple of eps)."""
    eps = as_fraction(eps)
    diam = as_fraction(diam)
    if eps <= 0 or diam < eps:
        raise ValueError("need 0 < eps <= diam")
    steps = diam / eps
    if steps.denominator != 1:
        raise ValueError("diam must be an integer multiple of eps")
    return HedgehogSpec.from_pairs((eps * k, 1) for k in range(1, steps.numerator + 1))


def dense_hedgehog_spec(
    rng: random.Random,
    count: int,
    max_length: int | Fraction,
    denominator: int = 8,
    max_multiplicity: int = 2,
) -> HedgehogSpec:
    """Random spec with `count` distinct needle lengths on a rational grid."""
    max_length = as_fraction(max_length)
    grid_size = int(max_length * denominator)
    if count > grid_size:
        raise ValueError("not enough grid points for the requested count")
    numerators = rng.sample(range(1, grid_size + 1), count)
    return HedgehogSpec.from_pairs(
        (Fraction(num, denominator), rng.randrange(1, max_multiplicity + 1))
        for num in numerators
    )


def perturbed_hedgehog(
    rng: random.Random,
    spec: HedgehogSpec,
    delta: int | Fraction,
    denominator: int = 64,
) -> tuple[HedgehogSpec, Correspondence]:
    """Nudge every needle by less than delta; return the perturbed spec and
    the needle-to-needle correspondence (centers matched) on compiled spaces.

    Both compilations list needles ascending and sorted matching minimizes
    the bottleneck gap on a line, so identity index pairing matches every
    needle within delta of one of its nudged copies; the distortion is then
    below 2*delta, and positive (zero perturbations are resampled).
    """
    delta = as_fraction(delta)
    if delta <= 0:
        raise ValueError("delta must be positive")
    lengths = spec.expanded()
    compiled = compile_hedgehog(spec)
    for _ in range(1000):
        moved = []
        for x in lengths:
            step = Fraction(rng.randrange(-denominator + 1, denominator), denominator)
            shift = step * delta
            if x + shift <= 0:
                shift = -shift
            moved.append(x + shift)
        other = HedgehogSpec.from_pairs((x, 1) for x in moved)
        compiled_other = compile_hedgehog(other)
        pairs = frozenset((i, i) for i in range(spec.point_count))
        rel = Correspondence(compiled, compiled_other, pairs)
        if distortion(rel) > 0:
            return other, rel
    raise RuntimeError("could not build a positive-distortion perturbation")
