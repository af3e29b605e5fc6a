"""Chains of correspondences, their finite limits, and scaling dynamics.

A chain X_1 -R_1-> X_2 -> ... -> X_k induces threads (one point per layer,
consecutive points linked).  The last-layer distance is a pseudometric on
threads; its zero-distance quotient is the chain's finite limit, and each
layer n gets a certificate: half the distortion of the relation matching
limit classes to layer-n points.  Under the budget dis R_n < 1/2^n the
certificate at layer n is below 1/2^(n-1).

The scaling side probes d(lam) = d_GH(X, lam*X), its inversion and
subdivision identities, the geometric-series bound for d(lam^n), center
iteration with a certified Cauchy tail, and finite stabilizers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .correspondences import Correspondence, distortion
from .errors import BrokenLink, ThreadCapExceeded
from .hedgehogs import HedgehogSpec, hedgehog_isometric
from .solver import DEFAULT_SIZE_CAP, gh_exact
from .spaces import PSEUDO, STRICT, FiniteMetricSpace, as_fraction, scale

THREAD_CAP = 10**6


@dataclass(frozen=True)
class ThreadChain:
    """Consecutively linked spaces; budget_checked records dis R_n < 1/2^n."""

    spaces: tuple[FiniteMetricSpace, ...]
    links: tuple[Correspondence, ...]
    budget_checked: bool = field(init=False)

    def __post_init__(self) -> None:
        if not self.spaces:
            raise ValueError("a chain needs at least one space")
        if len(self.links) != len(self.spaces) - 1:
            raise ValueError("a chain of k spaces needs k-1 links")
        for n, link in enumerate(self.links):
            if link.left != self.spaces[n] or link.right != self.spaces[n + 1]:
                raise ValueError(f"link {n + 1} does not join spaces {n + 1} and {n + 2}")
        budget = all(
            distortion(link) < Fraction(1, 2 ** (n + 1))
            for n, link in enumerate(self.links)
        )
        object.__setattr__(self, "budget_checked", budget)

    @property
    def depth(self) -> int:
        return len(self.spaces)


@dataclass(frozen=True)
class ThreadLimitResult:
    chain: ThreadChain
    threads: tuple[tuple[int, ...], ...]
    thread_classes: tuple[int, ...]  # thread index -> limit class
    approx: FiniteMetricSpace
    projections: tuple[Correspondence, ...]  # limit -> layer n relation
    certificates: tuple[Fraction, ...]  # half distortion of each projection

    def layer_distance(self, t1: int, t2: int, layer: int) -> Fraction:
        """Pseudodistance between two threads read off at a 1-based layer."""
        space = self.chain.spaces[layer - 1]
        return space.dist[self.threads[t1][layer - 1]][self.threads[t2][layer - 1]]

    def thread_space(self, cap: int = 2000) -> FiniteMetricSpace:
        """The pre-quotient pseudometric space of all threads (small chains only)."""
        count = len(self.threads)
        if count > cap:
            raise ThreadCapExceeded(count, cap)
        last = self.chain.spaces[-1]
        labels = tuple(
            "|".join(
                self.chain.spaces[n].labels[p] for n, p in enumerate(thread)
            )
            for thread in self.threads
        )
        rows = tuple(
            tuple(last.dist[t1[-1]][t2[-1]] for t2 in self.threads)
            for t1 in self.threads
        )
        return FiniteMetricSpace(labels, rows, PSEUDO)


def _zero_classes(space: FiniteMetricSpace) -> tuple[list[int], list[int]]:
    """(representative index per class, class id per point) for d = 0 grouping."""
    assignment = [-1] * len(space)
    reps: list[int] = []
    for i in range(len(space)):
        if assignment[i] >= 0:
            continue
        cls = len(reps)
        reps.append(i)
        assignment[i] = cls
        for j in range(i + 1, len(space)):
            if assignment[j] < 0 and space.dist[i][j] == 0:
                assignment[j] = cls
    return reps, assignment


def thread_limit(chain: ThreadChain, cap: int = THREAD_CAP) -> ThreadLimitResult:
    """Enumerate threads, quotient by zero distance, certify every layer."""
    spaces = chain.spaces
    links = chain.links
    k = len(spaces)

    successors: list[list[list[int]]] = []
    for n, link in enumerate(links):
        table: list[list[int]] = [[] for _ in range(len(spaces[n]))]
        for i, j in sorted(link.pairs):
            table[i].append(j)
        successors.append(table)
        reached = {j for outs in table for j in outs}
        if reached != set(range(len(spaces[n + 1]))):
            raise BrokenLink(n + 1)

    # thread count by dynamic programming, before any materialization
    counts = [1] * len(spaces[0])
    for n, table in enumerate(successors):
        nxt = [0] * len(spaces[n + 1])
        for i, outs in enumerate(table):
            for j in outs:
                nxt[j] += counts[i]
        counts = nxt
    total = sum(counts)
    if total > cap:
        raise ThreadCapExceeded(total, cap)

    threads: list[tuple[int, ...]] = []
    prefix: list[int] = []

    def grow(layer: int) -> None:
        if layer == k:
            threads.append(tuple(prefix))
            return
        if layer == 0:
            choices: Iterable[int] = range(len(spaces[0]))
        else:
            choices = successors[layer - 1][prefix[-1]]
        for p in choices:
            prefix.append(p)
            grow(layer + 1)
            prefix.pop()

    grow(0)

    last = spaces[-1]
    reps, assignment = _zero_classes(last)
    thread_classes = tuple(assignment[t[-1]] for t in threads)
    approx = FiniteMetricSpace(
        labels=tuple(last.labels[r] for r in reps),
        dist=tuple(tuple(last.dist[a][b] for b in reps) for a in reps),
        mode=STRICT,
    )

    # realized (layer-n point, last-layer point) pairs via backward composition;
    # identical to reading the pairs off all threads, without the quadratic sweep
    projections = []
    certificates = []
    composed: list[set[tuple[int, int]]] = [set() for _ in range(k)]
    composed[k - 1] = {(p, p) for p in range(len(last))}
    for n in range(k - 2, -1, -1):
        table = successors[n]
        nxt = composed[n + 1]
        by_left: dict[int, set[int]] = {}
        for a, b in nxt:
            by_left.setdefault(a, set()).add(b)
        composed[n] = {
            (i, b) for i, outs in enumerate(table) for j in outs for b in by_left[j]
        }
    for n in range(k):
        pairs = frozenset(
            (assignment[b], i) for i, b in composed[n]
        )
        projection = Correspondence(approx, spaces[n], pairs)
        projections.append(projection)
        certificates.append(distortion(projection) / 2)

    return ThreadLimitResult(
        chain=chain,
        threads=tuple(threads),
        thread_classes=thread_classes,
        approx=approx,
        projections=tuple(projections),
        certificates=tuple(certificates),
    )


# ---------------------------------------------------------------------------
# scaling dynamics


@dataclass(frozen=True)
class LambdaProbe:
    space: FiniteMetricSpace
    samples: tuple[tuple[Fraction, Fraction], ...]  # (lam, d(lam))

    def value(self, lam: int | Fraction) -> Fraction:
        lam = as_fraction(lam)
        for factor, dval in self.samples:
            if factor == lam:
                return dval
        raise KeyError(f"lambda {lam} was not sampled")


def d_lambda(
    space: FiniteMetricSpace, lam: int | Fraction, cap: int = DEFAULT_SIZE_CAP
) -> Fraction:
    """d(lam) = d_GH(X, lam*X), computed exactly by the solver."""
    return gh_exact(space, scale(space, lam), cap=cap).value


def d_lambda_probe(
    space: FiniteMetricSpace,
    factors: Sequence[int | Fraction],
    cap: int = DEFAULT_SIZE_CAP,
) -> LambdaProbe:
    samples = tuple(
        (as_fraction(lam), d_lambda(space, lam, cap=cap)) for lam in factors
    )
    return LambdaProbe(space, samples)


@dataclass(frozen=True)
class GeometricBoundRow:
    n: int
    lhs: Fraction  # d(lam^n)
    bound: Fraction  # (1 - lam^n) / (1 - lam) * d(lam)
    strict_cap: Fraction  # d(lam) / (1 - lam)
    within_bound: bool
    below_cap: bool


@dataclass(frozen=True)
class GeometricBoundReport:
    space: FiniteMetricSpace
    lam: Fraction
    base: Fraction  # d(lam)
    rows: tuple[GeometricBoundRow, ...]

    @property
    def passed(self) -> bool:
        # the strict cap degenerates to 0 < 0 when d(lam) = 0
        return all(
            row.within_bound and (self.base == 0 or row.below_cap)
            for row in self.rows
        )


def geometric_bound_check(
    space: FiniteMetricSpace,
    lam: int | Fraction,
    nmax: int,
    cap: int = DEFAULT_SIZE_CAP,
) -> GeometricBoundReport:
    """Check d(lam^n) <= (1 - lam^n)/(1 - lam) * d(lam) < d(lam)/(1 - lam) exactly."""
    lam = as_fraction(lam)
    if not (0 < lam < 1):
        raise ValueError("lambda must lie strictly between 0 and 1")
    if nmax < 1:
        raise ValueError("nmax must be at least 1")
    base = d_lambda(space, lam, cap=cap)
    strict_cap = base / (1 - lam)
    rows = []
    for n in range(1, nmax + 1):
        power = lam**n
        lhs = d_lambda(space, power, cap=cap)
        bound = (1 - power) / (1 - lam) * base
        rows.append(
            GeometricBoundRow(
                n=n,
                lhs=lhs,
                bound=bound,
                strict_cap=strict_cap,
                within_bound=lhs <= bound,
                below_cap=bound < strict_cap,
            )
        )
    return GeometricBoundReport(space=space, lam=lam, base=base, rows=tuple(rows))


@dataclass(frozen=True)
class CenterIterate:
    iterate: FiniteMetricSpace  # scale(X, lam^n)
    tail_bound: Fraction  # lam^n * d(lam) / (1 - lam)
    step_distance: Fraction  # d(lam)


def center_iterate(
    space: FiniteMetricSpace,
    lam: int | Fraction,
    n: int,
    cap: int = DEFAULT_SIZE_CAP,
) -> CenterIterate:
    """n-th contraction iterate with the Cauchy tail certifying convergence."""
    lam = as_fraction(lam)
    if not (0 < lam < 1):
        raise ValueError("lambda must lie strictly between 0 and 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    base = d_lambda(space, lam, cap=cap)
    return CenterIterate(
        iterate=scale(space, lam**n),
        tail_bound=lam**n * base / (1 - lam),
        step_distance=base,
    )


@dataclass(frozen=True)
class StabilizerReport:
    accepted: tuple[Fraction, ...]  # factors whose scaled copy is isometric
    candidates: tuple[Fraction, ...]
    zero_distance_sampled: tuple[Fraction, ...]
    finite_sampled: tuple[Fraction, ...]
    note: str


DEFAULT_SAMPLED_FACTORS = (
    Fraction(1, 3),
    Fraction(1, 2),
    Fraction(2, 3),
    Fraction(1),
    Fraction(3, 2),
    Fraction(2),
    Fraction(3),
)


def stabilizer_finite(
    obj: FiniteMetricSpace | HedgehogSpec,
    sampled: Sequence[int | Fraction] = DEFAULT_SAMPLED_FACTORS,
    cap: int = DEFAULT_SIZE_CAP,
) -> StabilizerReport:
    """Factors lam with lam*X isometric to X, by candidate enumeration.

    Only ratios of realized positive values can permute a finite set, so the
    candidates are those ratios plus the sampled factors.  Hedgehogs are
    decided by needle-multiset equality, general spaces by an exact solver
    run.  For any finite space of positive diameter the answer is {1}; a
    one-point space accepts every factor.
    """
    sampled_factors = tuple(as_fraction(x) for x in sampled)

    if isinstance(obj, HedgehogSpec):
        values = sorted({length for length, _ in obj.needles})

        def accepts(lam: Fraction) -> bool:
            return hedgehog_isometric(obj.scaled(lam), obj)

    else:
        values = sorted({x for row in obj.dist for x in row if x > 0})

        def accepts(lam: Fraction) -> bool:
            return gh_exact(scale(obj, lam), obj, cap=cap).value == 0

    ratios = {b / a for a in values for b in values}
    candidates = sorted(ratios | set(sampled_factors) | {Fraction(1)})
    accepted = tuple(lam for lam in candidates if accepts(lam))
    zero_sampled = tuple(lam for lam in sampled_factors if accepts(lam))
    note = (
        "zero-distance stabilizer is {1} for positive diameter, everything "
        "for a one-point space; every factor keeps a finite space at finite distance"
    )
    return StabilizerReport(
        accepted=accepted,
        candidates=tuple(candidates),
        zero_distance_sampled=zero_sampled,
        finite_sampled=sampled_factors,
        note=note,
    )
