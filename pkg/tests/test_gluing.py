from fractions import Fraction as F

import pytest

from ghkit.correspondences import (
    Correspondence,
    distortion,
    identity_correspondence,
)
from ghkit.errors import DistortionBudgetExceeded, NotATree, ZeroDistortion
from ghkit.generate import random_correspondence, random_metric_space, rng_from_seed
from ghkit.gluing import GluingTree, glue_pair, glue_star, glue_tree
from ghkit.spaces import STRICT, hausdorff, scale, validate


@pytest.fixture
def gap_pair():
    return validate([[0, 1], [1, 0]]), validate([[0, 3], [3, 0]])


@pytest.fixture
def gap_bijection(gap_pair):
    x, y = gap_pair
    return Correspondence(x, y, frozenset({(0, 0), (1, 1)}))


def test_glue_pair_cross_distances(gap_pair, gap_bijection):
    x, y = gap_pair
    glued = glue_pair(x, y, gap_bijection)
    d = glued.carrier.dist
    x0, x1 = glued.locate(0, 0), glued.locate(0, 1)
    y0, y1 = glued.locate(1, 0), glued.locate(1, 1)
    assert d[x0][y0] == 1  # matched pair sits at half the distortion
    assert d[x1][y1] == 1
    assert d[x0][y1] == 2  # min(0 + 3 + 1, 1 + 0 + 1)
    assert d[x1][y0] == 2


def test_glue_pair_realizes_half_distortion(gap_pair, gap_bijection):
    x, y = gap_pair
    glued = glue_pair(x, y, gap_bijection)
    assert hausdorff(glued.part(0), glued.part(1)) == distortion(gap_bijection) / 2


def test_glue_pair_carrier_is_strict_metric(gap_pair, gap_bijection):
    x, y = gap_pair
    glued = glue_pair(x, y, gap_bijection)
    validate(glued.carrier.dist, STRICT, glued.carrier.labels)  # must not raise


def test_glue_pair_embeds_isometric_copies(gap_pair, gap_bijection):
    x, y = gap_pair
    glued = glue_pair(x, y, gap_bijection)
    for vertex, space in ((0, x), (1, y)):
        idx = [glued.locate(vertex, p) for p in range(len(space))]
        for p in range(len(space)):
            for q in range(len(space)):
                assert glued.carrier.dist[idx[p]][idx[q]] == space.dist[p][q]


def test_glue_pair_matched_pairs_sit_at_omega(gap_pair):
    x, y = gap_pair
    rel = Correspondence(x, y, frozenset({(0, 0), (1, 1), (0, 1)}))
    omega = distortion(rel) / 2
    glued = glue_pair(x, y, rel)
    for i, j in rel.pairs:
        assert glued.carrier.dist[glued.locate(0, i)][glued.locate(1, j)] == omega


def test_glue_pair_rejects_zero_distortion(gap_pair):
    x, _ = gap_pair
    with pytest.raises(ZeroDistortion):
        glue_pair(x, x, identity_correspondence(x))


def test_glue_pair_labels_carry_provenance(gap_pair, gap_bijection):
    x, y = gap_pair
    glued = glue_pair(x, y, gap_bijection)
    assert glued.carrier.labels == ("0.0", "0.1", "1.0", "1.1")
    assert glued.provenance == ((0, 0), (0, 1), (1, 0), (1, 1))


def test_single_edge_tree_equals_pair(gap_pair, gap_bijection):
    x, y = gap_pair
    tree = GluingTree((x, y), ((0, 1, gap_bijection),))
    assert glue_tree(tree).carrier == glue_pair(x, y, gap_bijection).carrier


def test_path_tree_relays_through_middle():
    rng = rng_from_seed(11)
    spaces = [random_metric_space(rng, 3, label_prefix=f"s{i}") for i in range(3)]
    rels = [
        random_correspondence(rng, spaces[0], spaces[1]),
        random_correspondence(rng, spaces[1], spaces[2]),
    ]
    tree = GluingTree(
        tuple(spaces), ((0, 1, rels[0]), (1, 2, rels[1]))
    )
    glued = glue_tree(tree)
    # relay oracle: |x z| = min over y of |x y| + |y z| with pair-glue hops
    pair01 = glue_pair(spaces[0], spaces[1], rels[0])
    pair12 = glue_pair(spaces[1], spaces[2], rels[1])
    for x_local in range(3):
        for z_local in range(3):
            relay = min(
                pair01.carrier.dist[pair01.locate(0, x_local)][pair01.locate(1, y)]
                + pair12.carrier.dist[pair12.locate(0, y)][pair12.locate(1, z_local)]
                for y in range(3)
            )
            direct = glued.carrier.dist[glued.locate(0, x_local)][
                glued.locate(2, z_local)
            ]
            assert direct == relay


def test_tree_metric_is_min_plus_closure():
    # independent oracle: start from within-vertex and adjacent pair-glue
    # distances with infinity elsewhere, run Floyd-Warshall, compare
    rng = rng_from_seed(17)
    spaces = [random_metric_space(rng, 3, label_prefix=f"s{i}") for i in range(4)]
    rels = [
        random_correspondence(rng, spaces[0], spaces[1]),
        random_correspondence(rng, spaces[1], spaces[2]),
        random_correspondence(rng, spaces[1], spaces[3]),
    ]
    tree = GluingTree(
        tuple(spaces),
        ((0, 1, rels[0]), (1, 2, rels[1]), (1, 3, rels[2])),
    )
    glued = glue_tree(tree)
    total = len(glued.carrier)
    INF = None
    seed: list[list] = [[INF] * total for _ in range(total)]
    for vertex, space in enumerate(spaces):
        for p in range(3):
            for q in range(3):
                seed[glued.locate(vertex, p)][glued.locate(vertex, q)] = (
                    space.dist[p][q]
                )
    for u, v, rel in tree.edges:
        block = glue_pair(spaces[u], spaces[v], rel)
        for p in range(3):
            for q in range(3):
                value = block.carrier.dist[block.locate(0, p)][block.locate(1, q)]
                seed[glued.locate(u, p)][glued.locate(v, q)] = value
                seed[glued.locate(v, q)][glued.locate(u, p)] = value
    for k in range(total):
        for i in range(total):
            if seed[i][k] is INF:
                continue
            for j in range(total):
                if seed[k][j] is INF:
                    continue
                through = seed[i][k] + seed[k][j]
                if seed[i][j] is INF or through < seed[i][j]:
                    seed[i][j] = through
    assert [list(row) for row in glued.carrier.dist] == seed


def test_tree_edges_realize_their_weights():
    rng = rng_from_seed(23)
    spaces = [random_metric_space(rng, 3, label_prefix=f"s{i}") for i in range(4)]
    rels = [
        random_correspondence(rng, spaces[0], spaces[1]),
        random_correspondence(rng, spaces[0], spaces[2]),
        random_correspondence(rng, spaces[2], spaces[3]),
    ]
    tree = GluingTree(
        tuple(spaces),
        ((0, 1, rels[0]), (0, 2, rels[1]), (2, 3, rels[2])),
    )
    glued = glue_tree(tree)
    validate(glued.carrier.dist, STRICT, glued.carrier.labels)
    for e, (u, v, _) in enumerate(tree.edges):
        assert hausdorff(glued.part(u), glued.part(v)) == tree.weight(e)


def test_tree_shape_validation(gap_pair, gap_bijection):
    x, y = gap_pair
    with pytest.raises(NotATree):
        GluingTree((x, y), ())  # wrong edge count
    with pytest.raises(NotATree):
        GluingTree((x, y), ((0, 0, gap_bijection),))  # self loop
    back = Correspondence(y, x, frozenset({(0, 0), (1, 1)}))
    with pytest.raises(NotATree):
        # two edges between the same vertices: right count, but a cycle
        GluingTree((x, y, x), ((0, 1, gap_bijection), (0, 1, gap_bijection)))
    with pytest.raises(ValueError):
        GluingTree((x, y), ((0, 1, back),))  # mismatched edge spaces


def test_glue_star_budgets_and_gaps():
    rng = rng_from_seed(5)
    center = random_metric_space(rng, 3, label_prefix="c")
    leaves = []
    for k in range(2):
        leaf = scale(center, 1 + F(k + 1, 10))
        rel = Correspondence(
            center, leaf, frozenset((i, i) for i in range(len(center)))
        )
        leaves.append((leaf, rel, distortion(rel)))  # M = dis < 2M
    glued = glue_star(center, leaves)
    for k, (leaf, rel, budget) in enumerate(leaves):
        gap = hausdorff(glued.part(0), glued.part(k + 1))
        assert gap == distortion(rel) / 2
        assert gap < budget


def test_glue_star_relay_bound_between_leaves():
    rng = rng_from_seed(9)
    center = random_metric_space(rng, 3, label_prefix="c")
    leaves = []
    for k in range(2):
        leaf = scale(center, 1 + F(k + 1, 7))
        rel = Correspondence(
            center, leaf, frozenset((i, i) for i in range(len(center)))
        )
        leaves.append((leaf, rel, distortion(rel)))
    glued = glue_star(center, leaves)
    bound = distortion(leaves[0][1]) / 2 + distortion(leaves[1][1]) / 2
    assert hausdorff(glued.part(1), glued.part(2)) <= bound


def test_glue_star_monotone_under_new_leaves():
    rng = rng_from_seed(31)
    center = random_metric_space(rng, 3, label_prefix="c")
    leaves = []
    for k in range(3):
        leaf = scale(center, 1 + F(k + 1, 9))
        rel = Correspondence(
            center, leaf, frozenset((i, i) for i in range(len(center)))
        )
        leaves.append((leaf, rel, distortion(rel)))
    small = glue_star(center, leaves[:2]).carrier
    large = glue_star(center, leaves).carrier
    for p in range(len(small)):
        for q in range(len(small)):
            assert small.dist[p][q] == large.dist[p][q]


def test_glue_star_single_leaf_equals_pair(gap_pair, gap_bijection):
    x, y = gap_pair
    star = glue_star(x, [(y, gap_bijection, F(3))])
    assert star.carrier == glue_pair(x, y, gap_bijection).carrier


def test_glue_star_error_cases(gap_pair):
    x, _ = gap_pair
    bigger = scale(x, 2)
    rel = Correspondence(x, bigger, frozenset({(0, 0), (1, 1)}))
    with pytest.raises(DistortionBudgetExceeded):
        glue_star(x, [(bigger, rel, distortion(rel) / 2)])
    with pytest.raises(ZeroDistortion):
        glue_star(x, [(x, identity_correspondence(x), F(1))])
