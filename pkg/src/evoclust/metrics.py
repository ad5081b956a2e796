"""Cluster-quality criteria: SSE, normalized MSE, and epsilon-ratio measure a
solution on its own; centroid index, cluster-similarity index, and normalized
mutual information compare it against ground truth."""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.spatial.distance import cdist

from .measures import Clustering, assign_nearest

DEFAULT_SSE_OPT = 0.001


@dataclass
class QualityReport:
    sse: float
    nmse: float
    eps_ratio: float
    ci: Optional[int] = None
    csi: Optional[float] = None
    nmi: Optional[float] = None

    COLUMNS = ("ci", "csi", "nmi", "sse", "nmse", "eps_ratio")

    def as_row(self):
        return [getattr(self, c) for c in self.COLUMNS]


def _points_of(dataset):
    return np.atleast_2d(np.asarray(getattr(dataset, "points", dataset), dtype=float))


def sse(dataset, clustering):
    """Sum of squared distances from each point to its own cluster centroid."""
    points = _points_of(dataset)
    labels = np.asarray(clustering.assignment)
    centroids = np.atleast_2d(np.asarray(clustering.centroids, dtype=float))
    diffs = points - centroids[labels]
    return float(np.einsum("ij,ij->", diffs, diffs))


def nmse(sse_value, n, d):
    """SSE normalized by point count times dimension."""
    n, d = int(n), int(d)
    if n < 1 or d < 1:
        raise ValueError("n and d must be >= 1")
    return float(sse_value) / (n * d)


def eps_ratio(sse_value, sse_opt=DEFAULT_SSE_OPT):
    """Relative excess of SSE over a (nominally optimal) target SSE."""
    if sse_opt <= 0:
        raise ValueError("sse_opt must be positive")
    return (float(sse_value) - sse_opt) / sse_opt


def centroid_index(solution_centroids, gt_centroids):
    """Structural mismatch count between two centroid sets.

    Each centroid maps to its nearest counterpart in the other set; a
    counterpart nobody mapped to is orphaned. The index is the larger of the
    two directional orphan counts, so it is symmetric and zero only when the
    sets cover each other one-to-one.
    """
    A = np.atleast_2d(np.asarray(solution_centroids, dtype=float))
    B = np.atleast_2d(np.asarray(gt_centroids, dtype=float))
    if A.shape[0] == 0 or B.shape[0] == 0:
        raise ValueError("centroid_index requires two nonempty centroid sets")

    def orphans(src, dst):
        hit = np.zeros(dst.shape[0], dtype=bool)
        hit[cdist(src, dst).argmin(axis=1)] = True
        return int(np.count_nonzero(~hit))

    return max(orphans(A, B), orphans(B, A))


def _greedy_pairs(sol_centroids, gt_centroids):
    """Pair clusters by globally nearest centroids, closest first; ties break
    toward the lower (row, column) index."""
    d = cdist(np.atleast_2d(sol_centroids), np.atleast_2d(gt_centroids))
    pairs = []
    live_r = set(range(d.shape[0]))
    live_c = set(range(d.shape[1]))
    while live_r and live_c:
        best = None
        for r in sorted(live_r):
            for c in sorted(live_c):
                if best is None or d[r, c] < d[best]:
                    best = (r, c)
        pairs.append(best)
        live_r.discard(best[0])
        live_c.discard(best[1])
    return pairs


def csi(solution, truth):
    """Fraction of points landing in the same cluster once clusters are
    matched by nearest centroids (1 = identical up to relabeling)."""
    la = np.asarray(solution.assignment)
    lb = np.asarray(truth.assignment)
    if la.shape[0] != lb.shape[0]:
        raise ValueError("clusterings cover different numbers of points")
    n = la.shape[0]
    agree = 0
    for r, c in _greedy_pairs(solution.centroids, truth.centroids):
        agree += int(np.count_nonzero((la == r) & (lb == c)))
    return agree / n


def nmi(labels_a, labels_b):
    """Mutual information normalized by the geometric mean of entropies
    (natural logs). A single-cluster partition has zero entropy; two
    single-cluster partitions are identical so score 1, and a single-cluster
    side against a split side scores 0.
    """
    a = np.asarray(labels_a).ravel()
    b = np.asarray(labels_b).ravel()
    if a.shape[0] != b.shape[0]:
        raise ValueError("label vectors cover different numbers of points")
    n = a.shape[0]
    if n == 0:
        raise ValueError("nmi of empty label vectors is undefined")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    ka, kb = ai.max() + 1, bi.max() + 1
    if ka == 1 or kb == 1:
        return 1.0 if ka == kb == 1 else 0.0
    table = np.zeros((ka, kb))
    np.add.at(table, (ai, bi), 1.0)
    pxy = table / n
    px = pxy.sum(axis=1)
    py = pxy.sum(axis=0)
    nz = pxy > 0
    mi = float((pxy[nz] * np.log(pxy[nz] / np.outer(px, py)[nz])).sum())
    hx = -float((px * np.log(px)).sum())
    hy = -float((py * np.log(py)).sum())
    return mi / math.sqrt(hx * hy)


def quality_report(dataset, clustering, gt_centroids=None, gt_labels=None,
                   sse_opt=DEFAULT_SSE_OPT):
    """Assemble the full report; ground-truth columns appear only when truth
    is supplied. Given centroids but no labels, truth labels default to the
    nearest-ground-truth-centroid assignment."""
    points = _points_of(dataset)
    n, d = points.shape
    s = sse(points, clustering)
    report = QualityReport(sse=s, nmse=nmse(s, n, d), eps_ratio=eps_ratio(s, sse_opt))
    if gt_centroids is None and gt_labels is None:
        return report
    if gt_centroids is None:
        gt_centroids = np.vstack([points[np.asarray(gt_labels) == u].mean(axis=0)
                                  for u in np.unique(gt_labels)])
    gt_centroids = np.atleast_2d(np.asarray(gt_centroids, dtype=float))
    if gt_labels is None:
        gt_labels = assign_nearest(points, gt_centroids)
    else:
        gt_labels = np.asarray(gt_labels)
        uniq = np.unique(gt_labels)
        remap = {int(u): i for i, u in enumerate(uniq)}
        if gt_centroids.shape[0] != uniq.size:
            gt_centroids = np.vstack([points[gt_labels == u].mean(axis=0) for u in uniq])
        gt_labels = np.asarray([remap[int(v)] for v in gt_labels])
    truth = Clustering(assignment=gt_labels, centroids=gt_centroids)
    report.ci = centroid_index(clustering.centroids, gt_centroids)
    report.csi = csi(clustering, truth)
    report.nmi = nmi(clustering.assignment, gt_labels)
    return report
