from fractions import Fraction

import pytest
from hypothesis import strategies as st

from ghkit.spaces import STRICT, FiniteMetricSpace, validate


@pytest.fixture
def two_point():
    def build(gap):
        return validate([[0, gap], [gap, 0]])

    return build


@pytest.fixture
def hedgehog_12_matrix():
    return [[0, 1, 2], [1, 0, 3], [2, 3, 0]]


@st.composite
def sup_metric_spaces(draw, min_points=1, max_points=4):
    """Valid strict spaces: integer points in a box under the sup distance."""
    n = draw(st.integers(min_points, max_points))
    points = draw(
        st.lists(
            st.tuples(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8)),
            min_size=n,
            max_size=n,
            unique=True,
        )
    )
    denominator = draw(st.sampled_from([1, 2, 3, 6]))
    rows = tuple(
        tuple(
            Fraction(max(abs(a - b) for a, b in zip(p, q)), denominator)
            for q in points
        )
        for p in points
    )
    labels = tuple(f"p{i}" for i in range(n))
    return FiniteMetricSpace(labels, rows, STRICT)


positive_fractions = st.builds(
    Fraction, st.integers(1, 12), st.integers(1, 12)
)
