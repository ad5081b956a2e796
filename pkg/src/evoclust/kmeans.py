"""K-means and K-means++ baselines sharing the Clustering result type."""

from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .measures import Clustering, assign_nearest
from .rng import RngStream


@dataclass
class KmConfig:
    k: int
    max_iters: int = 300
    seed: int = 0
    init: str = "random"  # or "plusplus"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.init not in ("random", "plusplus"):
            raise ValueError("init must be 'random' or 'plusplus'")


def _dsq_weights(points, chosen):
    """Squared distance from each point to its nearest already-chosen seed."""
    d = cdist(points, np.atleast_2d(chosen))
    return d.min(axis=1) ** 2


def kmeans_pp_seed(points, k, rng):
    """Sequential D^2-weighted seeding; every seed is a dataset point.

    When all remaining weights are zero (every point coincides with a chosen
    seed) the next seed is drawn uniformly from the not-yet-chosen indices, so
    duplicate-free data with k = N selects each point exactly once.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    n = points.shape[0]
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in [1, {n}], got {k}")
    chosen = [int(rng.generator.integers(n))]
    while len(chosen) < k:
        w = _dsq_weights(points, points[chosen])
        total = w.sum()
        if total > 0:
            u = rng.generator.random() * total
            idx = int(np.searchsorted(np.cumsum(w), u, side="right"))
            idx = min(idx, n - 1)
        else:
            remaining = np.setdiff1d(np.arange(n), np.asarray(chosen))
            idx = int(remaining[rng.generator.integers(remaining.size)])
        chosen.append(idx)
    return points[chosen].copy()


def _repair_empty(points, centroids, labels):
    """Reseed each empty cluster to the point currently farthest from its
    own centroid (a standard Lloyd repair)."""
    k = centroids.shape[0]
    counts = np.bincount(labels, minlength=k)
    for i in np.flatnonzero(counts == 0):
        dist_to_own = np.linalg.norm(points - centroids[labels], axis=1)
        far = int(np.argmax(dist_to_own))
        centroids[i] = points[far]
        labels[far] = i
        counts = np.bincount(labels, minlength=k)
    return centroids, labels


def kmeans(dataset, config):
    """Lloyd iterations from random or D^2-weighted seeds to an assignment
    fixpoint (or max_iters)."""
    points = np.atleast_2d(np.asarray(getattr(dataset, "points", dataset), dtype=float))
    n = points.shape[0]
    if config.k > n:
        raise ValueError(f"k={config.k} exceeds the {n} available points")
    rng = RngStream(config.seed)
    if config.init == "plusplus":
        centroids = kmeans_pp_seed(points, config.k, rng)
    else:
        pick = rng.generator.choice(n, size=config.k, replace=False)
        centroids = points[pick].copy()
    labels = assign_nearest(points, centroids)
    centroids, labels = _repair_empty(points, centroids, labels)
    for _ in range(config.max_iters):
        for i in range(config.k):
            mask = labels == i
            if mask.any():
                centroids[i] = points[mask].mean(axis=0)
        new_labels = assign_nearest(points, centroids)
        centroids, new_labels = _repair_empty(points, centroids, new_labels)
        if np.array_equal(new_labels, labels):
            break
        labels = new_labels
    for i in range(config.k):
        mask = labels == i
        if mask.any():
            centroids[i] = points[mask].mean(axis=0)
    return Clustering(assignment=labels, centroids=centroids)
