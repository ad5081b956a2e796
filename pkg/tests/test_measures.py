"""Clustering substrate: distances, cohesion/separation, percentile ranks,
quartiles."""

import numpy as np
import pytest

from evoclust.measures import (Clustering, assign_nearest, euclidean,
                               group_indices, inter_cluster, intra_cluster,
                               pairwise_min_distance, percentile_rank,
                               percentile_ranks, quartiles, solution_inter)


def test_euclidean_basic():
    assert euclidean([0, 0], [3, 4]) == 5.0
    assert euclidean([1, 2, 3], [1, 2, 3]) == 0.0
    with pytest.raises(ValueError):
        euclidean([1, 2], [1, 2, 3])


def test_euclidean_matches_formula():
    rng = np.random.Generator(np.random.PCG64(3))
    for _ in range(50):
        x, y = rng.normal(size=(2, 7))
        assert euclidean(x, y) == pytest.approx(np.sqrt(((x - y) ** 2).sum()), rel=1e-12)


def test_intra_cluster_singleton_is_zero():
    assert intra_cluster([[5.0, 5.0]]) == 0.0


def test_intra_cluster_two_points():
    # both ordered pairs at distance 2, normalizer 1/2
    assert intra_cluster([[0, 0], [0, 2]]) == pytest.approx(2.0)


def test_intra_cluster_three_points():
    # ordered pair distances: 1,3,1,2,3,2 -> mean 2
    assert intra_cluster([[0, 0], [0, 1], [0, 3]]) == pytest.approx(2.0)


def test_intra_cluster_empty_rejected():
    with pytest.raises(ValueError):
        intra_cluster(np.zeros((0, 2)))


def test_inter_cluster_singletons():
    assert inter_cluster([[0, 0]], [[2, 0]]) == pytest.approx(2.0)


def test_inter_cluster_identical_singletons():
    assert inter_cluster([[1, 1]], [[1, 1]]) == 0.0


def test_inter_cluster_symmetry_and_oracle():
    A = np.array([[0.0, 0], [1, 0], [0, 1]])
    B = np.array([[4.0, 4], [5, 5]])
    va, vb = A.mean(axis=0), B.mean(axis=0)
    expect = (sum(np.linalg.norm(a - vb) for a in A)
              + sum(np.linalg.norm(b - va) for b in B)) / 5
    assert inter_cluster(A, B) == pytest.approx(expect, rel=1e-12)
    assert inter_cluster(A, B) == pytest.approx(inter_cluster(B, A), rel=1e-12)
    with pytest.raises(ValueError):
        inter_cluster(A, np.zeros((0, 2)))


def test_solution_inter_pair_mean():
    a = [[0.0, 0]]
    b = [[2.0, 0]]
    c = [[0.0, 4]]
    got = solution_inter([a, b, c])
    expect = np.mean([inter_cluster(a, b), inter_cluster(a, c), inter_cluster(b, c)])
    assert got == pytest.approx(expect, rel=1e-12)


def test_solution_inter_degenerate():
    assert solution_inter([[[1.0, 1.0]]]) == 0.0
    assert solution_inter([[[1.0, 1.0]], np.zeros((0, 2))]) == 0.0


def test_percentile_rank_hand_values():
    values = [1, 2, 3, 4]
    assert percentile_rank(values, 1) == 12.5
    assert percentile_rank(values, 4) == 87.5
    assert percentile_rank(values, 2.5) == 50.0


def test_percentile_rank_all_equal():
    assert percentile_rank([7, 7, 7], 7) == 50.0


def test_percentile_rank_monotone():
    rng = np.random.Generator(np.random.PCG64(4))
    values = rng.normal(size=30)
    probes = np.sort(rng.normal(size=20))
    ranks = [percentile_rank(values, p) for p in probes]
    assert all(a <= b for a, b in zip(ranks, ranks[1:]))


def test_percentile_ranks_vectorized_matches_scalar():
    rng = np.random.Generator(np.random.PCG64(5))
    values = np.round(rng.normal(size=40), 1)  # force some ties
    vec = percentile_ranks(values)
    scalar = [percentile_rank(values, v) for v in values]
    assert vec == pytest.approx(scalar, rel=1e-12)


def test_quartiles_hand_values():
    assert quartiles([5]) == (5.0, 5.0, 5.0)
    assert quartiles([1, 2, 3, 4, 5]) == (2.0, 3.0, 4.0)
    q1, q2, q3 = quartiles([1, 1, 1, 9])
    assert q2 == 1.0
    assert q1 <= q2 <= q3
    with pytest.raises(ValueError):
        quartiles([])


def test_quartiles_are_interpolated():
    # {1,2,3,4}: positions 0.25*(n-1)=0.75 -> 1.75, 2.5, 3.25
    assert quartiles([1, 2, 3, 4]) == pytest.approx((1.75, 2.5, 3.25))


def test_pairwise_min_distance():
    A = [[0.0, 0], [0, 1]]
    B = [[0.0, 3], [10, 10]]
    assert pairwise_min_distance(A, B) == pytest.approx(2.0)


def test_assign_nearest_and_tie_break():
    pts = np.array([[0.0, 0], [1, 0], [0.5, 0]])
    cents = np.array([[0.0, 0], [1.0, 0]])
    labels = assign_nearest(pts, cents)
    assert labels.tolist() == [0, 1, 0]  # midpoint ties to the lower index


def test_group_indices_covers_everything():
    labels = np.array([0, 2, 1, 2, 0])
    groups = group_indices(labels, 3)
    assert [g.tolist() for g in groups] == [[0, 4], [2], [1, 3]]


def test_clustering_record():
    c = Clustering(assignment=np.array([0, 0, 1]),
                   centroids=np.array([[0.0, 0], [5, 5]]))
    assert c.k == 2
    pts = np.array([[0.0, 0], [0, 1], [5, 5]])
    assert c.members(pts, 0).shape == (2, 2)
