from fractions import Fraction as F

import pytest

from ghkit.correspondences import Correspondence, identity_correspondence
from ghkit.dynamics import (
    DEFAULT_SAMPLED_FACTORS,
    ThreadChain,
    center_iterate,
    d_lambda,
    d_lambda_probe,
    geometric_bound_check,
    stabilizer_finite,
    thread_limit,
)
from ghkit.errors import ThreadCapExceeded
from ghkit.generate import random_metric_space, rng_from_seed
from ghkit.hedgehogs import HedgehogSpec
from ghkit.solver import gh_exact, gh_upper_from
from ghkit.spaces import (
    PSEUDO,
    diameter,
    one_point_space,
    scale,
    validate,
)


@pytest.fixture
def base_space():
    return validate([[0, 1, F(1, 2)], [1, 0, F(3, 4)], [F(1, 2), F(3, 4), 0]])


def identity_link(left, right):
    return Correspondence(left, right, frozenset((i, i) for i in range(len(left))))


def contraction_chain(space, lam, depth):
    spaces = tuple(scale(space, lam**n) for n in range(1, depth + 1))
    links = tuple(
        identity_link(spaces[i], spaces[i + 1]) for i in range(depth - 1)
    )
    return ThreadChain(spaces, links)


def test_chain_validation(base_space):
    other = validate([[0, 2], [2, 0]])
    with pytest.raises(ValueError):
        ThreadChain((base_space, other), (identity_correspondence(base_space),))


def test_budget_flag(base_space):
    chain = contraction_chain(base_space, F(1, 2), 6)
    assert chain.budget_checked  # dis R_n = diam/2^(n+1) < 1/2^n since diam < 2
    wide = contraction_chain(scale(base_space, 4), F(1, 2), 6)
    assert not wide.budget_checked


def test_constant_chain_limit(base_space):
    chain = ThreadChain(
        (base_space,) * 4,
        tuple(identity_correspondence(base_space) for _ in range(3)),
    )
    result = thread_limit(chain)
    assert len(result.threads) == 3
    assert gh_exact(result.approx, base_space).value == 0
    assert all(cert == 0 for cert in result.certificates)


def test_contraction_chain_limit(base_space):
    lam, depth = F(1, 2), 8
    chain = contraction_chain(base_space, lam, depth)
    result = thread_limit(chain)
    assert diameter(result.approx) == lam**depth * diameter(base_space)
    for layer, cert in enumerate(result.certificates, start=1):
        assert cert <= F(1, 2 ** (layer - 1))
        assert cert <= F(1, 2**layer)  # the derivation actually gives this


def test_budget_chain_layer_distances_drift_slowly(base_space):
    # with dis R_n < 1/2^n, layer readings of any two threads differ by
    # less than 1/2^(n-1) across all later layers
    chain = contraction_chain(base_space, F(1, 2), 7)
    assert chain.budget_checked
    result = thread_limit(chain)
    for t1 in range(len(result.threads)):
        for t2 in range(len(result.threads)):
            for n in range(1, 8):
                for later in range(n, 8):
                    drift = abs(
                        result.layer_distance(t1, t2, n)
                        - result.layer_distance(t1, t2, later)
                    )
                    assert drift < F(1, 2 ** (n - 1))


def test_certificates_bound_exact_distance(base_space):
    chain = contraction_chain(base_space, F(1, 2), 4)
    result = thread_limit(chain)
    for layer in range(1, 5):
        projection = result.projections[layer - 1]
        exact = gh_exact(result.approx, chain.spaces[layer - 1]).value
        assert gh_upper_from(projection) >= exact
        assert result.certificates[layer - 1] == gh_upper_from(projection)


def test_thread_enumeration_and_layers(base_space):
    x = base_space
    y = scale(x, F(1, 2))
    fan = Correspondence(x, y, frozenset({(0, 0), (0, 1), (1, 1), (2, 2)}))
    chain = ThreadChain((x, y), (fan,))
    result = thread_limit(chain)
    assert result.threads == ((0, 0), (0, 1), (1, 1), (2, 2))
    # layer pseudodistances obey the triangle inequality at every layer
    t = range(len(result.threads))
    for layer in (1, 2):
        for a in t:
            for b in t:
                for c in t:
                    assert result.layer_distance(a, c, layer) <= (
                        result.layer_distance(a, b, layer)
                        + result.layer_distance(b, c, layer)
                    )


def test_thread_space_is_pseudometric(base_space):
    x = base_space
    y = scale(x, F(1, 2))
    fan = Correspondence(x, y, frozenset({(0, 0), (0, 1), (1, 1), (2, 2)}))
    result = thread_limit(ThreadChain((x, y), (fan,)))
    pseudo = result.thread_space()
    assert pseudo.mode == PSEUDO
    # threads (0,1) and (1,1) share the last point: distance zero, quotient merges
    assert pseudo.dist[1][2] == 0
    assert len(result.approx) == 3
    # quotient projection preserves last-layer distances
    for t1 in range(len(result.threads)):
        for t2 in range(len(result.threads)):
            c1, c2 = result.thread_classes[t1], result.thread_classes[t2]
            assert pseudo.dist[t1][t2] == result.approx.dist[c1][c2]


def test_thread_cap(base_space):
    x = base_space
    full = Correspondence(
        x, x, frozenset((i, j) for i in range(3) for j in range(3))
    )
    chain = ThreadChain((x, x, x), (full, full))
    with pytest.raises(ThreadCapExceeded):
        thread_limit(chain, cap=10)  # 27 threads


def test_d_lambda_probe_identities(base_space):
    probe = d_lambda_probe(base_space, [F(1), F(1, 2), F(2)])
    assert probe.value(F(1)) == 0
    assert probe.value(F(1, 2)) == diameter(base_space) / 4
    assert probe.value(F(2)) == diameter(base_space) / 2
    # inversion identity
    assert probe.value(F(1, 2)) == probe.value(F(2)) / 2


def test_geometric_bound_is_tight_for_two_points():
    space = validate([[0, 1], [1, 0]])
    report = geometric_bound_check(space, F(1, 2), 3)
    assert report.base == F(1, 4)
    row = report.rows[2]  # n = 3
    assert row.lhs == F(7, 16)
    assert row.bound == F(7, 16)  # the bound is attained exactly
    assert report.passed


def test_geometric_bound_argument_validation(base_space):
    with pytest.raises(ValueError):
        geometric_bound_check(base_space, F(3, 2), 2)
    with pytest.raises(ValueError):
        geometric_bound_check(base_space, F(1, 2), 0)


def test_center_iterate_zero_and_tail(base_space):
    state = center_iterate(base_space, F(1, 2), 0)
    assert state.iterate == base_space
    assert state.tail_bound == state.step_distance * 2
    lam = F(1, 2)
    for n, m in ((0, 2), (1, 3), (2, 5)):
        state = center_iterate(base_space, lam, n)
        actual = gh_exact(state.iterate, scale(base_space, lam**m)).value
        assert actual == (lam**n - lam**m) * diameter(base_space) / 2
        assert actual <= state.tail_bound


def test_stabilizer_of_needle_pair():
    report = stabilizer_finite(HedgehogSpec.of(1, 2))
    assert report.accepted == (F(1),)
    assert F(1, 2) in report.candidates and F(2) in report.candidates


def test_stabilizer_of_distinct_distance_space():
    rng = rng_from_seed(3)
    space = random_metric_space(rng, 3, distinct_distances=True)
    report = stabilizer_finite(space)
    assert report.accepted == (F(1),)
    assert report.zero_distance_sampled == (F(1),)
    assert report.finite_sampled == DEFAULT_SAMPLED_FACTORS


def test_stabilizer_of_point_accepts_everything():
    report = stabilizer_finite(one_point_space())
    for lam in DEFAULT_SAMPLED_FACTORS:
        assert lam in report.accepted
    assert report.zero_distance_sampled == DEFAULT_SAMPLED_FACTORS


def test_d_lambda_matches_closed_form(base_space):
    for lam in (F(1, 3), F(4, 5), F(7, 2)):
        assert d_lambda(base_space, lam) == abs(lam - 1) * diameter(base_space) / 2
