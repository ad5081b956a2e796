"""Shared clustering substrate: distances, intra/inter-cluster measures,
percentile ranks, quartiles, and the Clustering result record."""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist, pdist


def euclidean(x, y):
    """Plain L2 distance between two equal-dimension vectors."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return float(np.linalg.norm(x - y))


def intra_cluster(points):
    """Mean distance over ordered point pairs within one cluster.

    Sum of d(x, y) over all x != y divided by |A|(|A|-1); a singleton has no
    pairs and scores 0 by convention.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n = points.shape[0]
    if n == 0:
        raise ValueError("intra_cluster of an empty cluster is undefined")
    if n == 1:
        return 0.0
    # pdist gives each unordered pair once; ordered pairs double it
    return float(2.0 * pdist(points).sum() / (n * (n - 1)))


def inter_cluster(a_points, b_points):
    """Cross-cluster separation: members of each cluster measured against the
    other cluster's mean, averaged over all |A|+|B| members."""
    A = np.atleast_2d(np.asarray(a_points, dtype=float))
    B = np.atleast_2d(np.asarray(b_points, dtype=float))
    if A.shape[0] == 0 or B.shape[0] == 0:
        raise ValueError("inter_cluster requires two nonempty clusters")
    v_a = A.mean(axis=0)
    v_b = B.mean(axis=0)
    total = np.linalg.norm(A - v_b, axis=1).sum() + np.linalg.norm(B - v_a, axis=1).sum()
    return float(total / (A.shape[0] + B.shape[0]))


def solution_inter(clusters):
    """One scalar separation score for a whole clustering: the mean of
    inter_cluster over all unordered pairs of nonempty clusters (0 when fewer
    than two clusters are nonempty)."""
    live = [np.atleast_2d(np.asarray(c, dtype=float)) for c in clusters]
    live = [c for c in live if c.shape[0] > 0]
    if len(live) < 2:
        return 0.0
    vals = [inter_cluster(live[i], live[j])
            for i in range(len(live)) for j in range(i + 1, len(live))]
    return float(np.mean(vals))


def percentile_rank(values, x):
    """Mid-count percentile rank of x within values:
    100 * (#below + 0.5 * #equal) / N."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("percentile_rank of an empty sample is undefined")
    less = np.count_nonzero(v < x)
    equal = np.count_nonzero(v == x)
    return 100.0 * (less + 0.5 * equal) / v.size


def percentile_ranks(values):
    """Vectorized percentile rank of each value within its own sample."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("percentile_ranks of an empty sample is undefined")
    order = np.argsort(v, kind="stable")
    sorted_v = v[order]
    less = np.searchsorted(sorted_v, v, side="left")
    upto = np.searchsorted(sorted_v, v, side="right")
    return 100.0 * (less + 0.5 * (upto - less)) / v.size


def quartiles(values):
    """(Q1, Q2, Q3) by linear interpolation between order statistics."""
    v = np.asarray(values, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("quartiles of an empty sample are undefined")
    q1, q2, q3 = np.quantile(v, [0.25, 0.5, 0.75])
    return float(q1), float(q2), float(q3)


def pairwise_min_distance(A, B):
    """Smallest distance between any member of A and any member of B."""
    A = np.atleast_2d(np.asarray(A, dtype=float))
    B = np.atleast_2d(np.asarray(B, dtype=float))
    if A.shape[0] == 0 or B.shape[0] == 0:
        raise ValueError("pairwise_min_distance requires nonempty inputs")
    return float(cdist(A, B).min())


def assign_nearest(points, centroids):
    """Label each point with the index of its nearest centroid (ties break
    toward the lower index)."""
    points = np.atleast_2d(np.asarray(points, dtype=float))
    centroids = np.atleast_2d(np.asarray(centroids, dtype=float))
    if centroids.shape[0] == 0:
        raise ValueError("assign_nearest requires at least one centroid")
    return cdist(points, centroids).argmin(axis=1)


def group_indices(assignment, k):
    """Member-index arrays for clusters 0..k-1 (possibly empty)."""
    assignment = np.asarray(assignment)
    return [np.flatnonzero(assignment == i) for i in range(int(k))]


@dataclass
class Clustering:
    """A partition of a dataset with the centroid bookkeeping the evolutionary
    clusterer maintains: current and historical centroids plus the cohesion
    and separation scores of both."""

    assignment: np.ndarray  # N cluster ids
    centroids: np.ndarray  # K x D
    historical_centroids: Optional[np.ndarray] = None
    intra: Optional[np.ndarray] = None  # per-cluster
    old_intra: Optional[np.ndarray] = None
    inter: Optional[float] = None
    old_inter: Optional[float] = None

    @property
    def k(self):
        return int(self.centroids.shape[0])

    def members(self, points, i):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        return points[np.asarray(self.assignment) == i]
