"""Evolutionary clustering with percentile-rank initialization.

One cycle runs four phases: quartile-based centroid formation with density
pruning (clustering I), an evolutionary centroid update that switches between
a Levy-scaled mutation and a uniform crossover of current and historical
centroids (mut-over), reassignment, and a minimum-distance merge of clusters
that touch (clustering II). Iteration stops when the cohesion/separation
fingerprint of the partition stops moving, or at the cycle cap.
"""

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .measures import (Clustering, assign_nearest, group_indices, intra_cluster,
                       pairwise_min_distance, percentile_ranks, quartiles,
                       solution_inter)
from .metrics import quality_report
from .optimizers import boundary_control
from .rng import LevyParams, RngStream, levy_step, uniform_matrix

INIT_CLUSTER_CAP = 4096
_STOP_TOL = 1e-9


@dataclass
class EcaParams:
    social_ranks: int = 2
    density_threshold: float = 0.01
    levy_alpha: float = 1.001
    max_cycles: int = 50
    crossover_type: str = "uniform"
    seed: int = 0

    def __post_init__(self):
        if self.social_ranks < 2:
            raise ValueError("social_ranks must be >= 2")
        if not 0 < self.density_threshold < 1:
            raise ValueError("density_threshold must lie in (0, 1)")
        if self.max_cycles < 1:
            raise ValueError("max_cycles must be >= 1")
        if self.crossover_type != "uniform":
            raise ValueError("only uniform crossover is supported")
        if not 1.0 < self.levy_alpha <= 2.0:
            raise ValueError("levy_alpha must lie in (1, 2]")


@dataclass
class EcaState:
    """Per-cycle working data: the operative assignment plus the candidate
    centroid sets and their quality scores."""

    assignment: np.ndarray
    centroids: Optional[np.ndarray] = None  # quartile-mean centroids C
    historical: Optional[np.ndarray] = None  # quartile-box draws oldC
    selected: Optional[np.ndarray] = None  # per-cluster pick of the two
    intra: Optional[np.ndarray] = None
    old_intra: Optional[np.ndarray] = None
    inter: float = 0.0
    old_inter: float = 0.0
    hi: Optional[np.ndarray] = None
    mo: Optional[np.ndarray] = None
    density: Optional[np.ndarray] = None
    k_empty: int = 0
    k_dth: int = 0
    levy: LevyParams = field(default_factory=LevyParams)
    bounds: Optional[tuple] = None
    params: Optional[EcaParams] = None

    @property
    def k(self):
        return 0 if self.centroids is None else int(self.centroids.shape[0])


def _relabel(assignment, keep):
    """Compress cluster ids to 0..len(keep)-1 following the order of keep."""
    mapping = {int(old): new for new, old in enumerate(keep)}
    return np.asarray([mapping[int(c)] for c in assignment])


def init_assign(dataset, s, cap=INIT_CLUSTER_CAP):
    """Initial partition from per-gene percentile ranks.

    Each gene's rank picks one of ``s`` classes; the class digits combine as a
    mixed-radix id, so up to s^D clusters exist. When s^D would exceed the
    cap, only the highest-variance dimensions that fit are used for the ids
    (everything downstream still sees full dimensionality).
    """
    points = np.atleast_2d(np.asarray(getattr(dataset, "points", dataset), dtype=float))
    n, d = points.shape
    s = int(s)
    if s < 2:
        raise ValueError("social rank count must be >= 2")
    if d * math.log(s) <= math.log(cap):
        dims = np.arange(d)
    else:
        d_eff = int(math.floor(math.log(cap) / math.log(s)))
        if d_eff < 1:
            raise ValueError(
                f"social rank count {s} exceeds the initialization cap {cap}; lower it")
        variances = points.var(axis=0)
        dims = np.sort(np.argsort(-variances, kind="stable")[:d_eff])
    k = s ** len(dims)
    ids = np.zeros(n, dtype=int)
    weight = 1
    for j in dims:
        ranks = percentile_ranks(points[:, j])
        digits = np.minimum((ranks * s / 100.0).astype(int), s - 1)
        ids += digits * weight
        weight *= s
    return k, ids


def _quartile_stats(members):
    """Per-dimension (Q1, Q2, Q3) stacked as three D-vectors."""
    qs = np.array([quartiles(members[:, j]) for j in range(members.shape[1])])
    return qs[:, 0], qs[:, 1], qs[:, 2]


def _induced_quality(points, centroids):
    """Cohesion per centroid and one separation scalar for the partition the
    centroid set induces by nearest-centroid assignment."""
    labels = assign_nearest(points, centroids)
    groups = group_indices(labels, centroids.shape[0])
    intra = np.array([intra_cluster(points[g]) if g.size else 0.0 for g in groups])
    inter = solution_inter([points[g] for g in groups if g.size])
    return intra, inter


def clustering_one(state, dataset, rng):
    """Prune empty clusters, fold low-density clusters into their nearest
    surviving neighbor, then build the two candidate centroid sets and score
    the partitions they induce."""
    points = np.atleast_2d(np.asarray(getattr(dataset, "points", dataset), dtype=float))
    n = points.shape[0]
    assignment = np.asarray(state.assignment)
    if assignment.shape[0] != n or n == 0:
        raise ValueError("assignment does not cover the dataset")

    k0 = int(assignment.max()) + 1 if assignment.size else 0
    groups = group_indices(assignment, k0)
    nonempty = [i for i, g in enumerate(groups) if g.size]
    if not nonempty:
        raise ValueError("no nonempty clusters to work with")
    k_empty = k0 - len(nonempty)
    assignment = _relabel(assignment, nonempty)
    groups = group_indices(assignment, len(nonempty))

    density = np.array([g.size / n for g in groups])
    flagged = np.flatnonzero(density < _density_threshold(state))
    if flagged.size == len(groups):
        # everything is sparse; the largest cluster survives as the anchor
        flagged = np.delete(flagged, int(np.argmax(density)))
    k_dth = int(flagged.size)
    if k_dth:
        survivors = [i for i in range(len(groups)) if i not in set(flagged.tolist())]
        surv_means = np.array([points[groups[i]].mean(axis=0) for i in survivors])
        for i in flagged:
            mean_i = points[groups[i]].mean(axis=0)
            target = survivors[int(np.argmin(np.linalg.norm(surv_means - mean_i, axis=1)))]
            assignment[groups[i]] = target
        assignment = _relabel(assignment, survivors)
        groups = group_indices(assignment, len(survivors))
        density = np.array([g.size / n for g in groups])

    k = len(groups)
    d = points.shape[1]
    C = np.empty((k, d))
    oldC = np.empty((k, d))
    for i, g in enumerate(groups):
        q1, q2, q3 = _quartile_stats(points[g])
        C[i] = (q1 + q2 + q3) / 3.0
        oldC[i] = uniform_matrix(rng, q1, q3, (d,))

    intra, inter = _induced_quality(points, C)
    old_intra, old_inter = _induced_quality(points, oldC)
    selected = np.where((intra < old_intra)[:, None], C, oldC)

    return EcaState(assignment=assignment, centroids=C, historical=oldC,
                    selected=selected, intra=intra, old_intra=old_intra,
                    inter=inter, old_inter=old_inter, density=density,
                    k_empty=k_empty, k_dth=k_dth, levy=state.levy,
                    bounds=state.bounds, params=state.params)


def _density_threshold(state):
    return state.params.density_threshold if state.params is not None else 0.01


def mut_over(state, rng):
    """Evolve each centroid either by a Levy-scaled jump along its historical
    direction or by a uniform crossover of the two candidate sets.

    Both candidates are formed first (one scalar Levy factor per cluster, one
    coin per gene), then the changeover picks the mutant exactly when the
    historical partition separated better than the current one; out-of-bounds
    coordinates are redrawn inside the data envelope.
    """
    C, oldC = state.centroids, state.historical
    k, d = C.shape
    better_now = state.intra < state.old_intra
    hi = np.where(better_now[:, None], oldC - C, C - oldC)
    F = np.array([levy_step(rng, state.levy) for _ in range(k)])
    mutant = C + F[:, None] * hi
    take_old = rng.generator.random((k, d)) < 0.5
    new_c = np.where(take_old, oldC, C)
    mo = mutant if state.old_inter > state.inter else new_c
    if state.bounds is not None:
        low, up = state.bounds
        mo = boundary_control(mo, low, up, rng)
    state.hi = hi
    state.mo = mo
    return mo


def clustering_two(points, assignment, mo):
    """Merge clusters whose gap is no larger than either one's spread.

    Adjacent live pairs (i, i+1) are tested on a snapshot: with Dmin the
    closest cross-cluster point distance and R each cluster's mean intra
    distance, the pair merges when min(Dmin - R_i, Dmin - R_j) <= 0. Merged
    centroids are the size-weighted mean of the members' centroids.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    assignment = np.asarray(assignment)
    mo = np.atleast_2d(np.asarray(mo, dtype=float))
    groups = group_indices(assignment, mo.shape[0])
    live = [i for i, g in enumerate(groups) if g.size]
    if not live:
        raise ValueError("no nonempty clusters to merge")
    assignment = _relabel(assignment, live)
    mo = mo[live]
    groups = [groups[i] for i in live]
    k = len(groups)

    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    radii = [intra_cluster(points[g]) for g in groups]
    for i in range(k - 1):
        j = i + 1
        dmin = pairwise_min_distance(points[groups[i]], points[groups[j]])
        sigma = min(dmin - radii[i], dmin - radii[j])
        if sigma <= 0:
            parent[find(j)] = find(i)

    roots = sorted({find(i) for i in range(k)})
    root_to_new = {r: idx for idx, r in enumerate(roots)}
    sizes = np.array([g.size for g in groups], dtype=float)
    new_mo = np.zeros((len(roots), mo.shape[1]))
    new_assignment = np.empty_like(assignment)
    weight = np.zeros(len(roots))
    for i in range(k):
        nid = root_to_new[find(i)]
        new_mo[nid] += sizes[i] * mo[i]
        weight[nid] += sizes[i]
        new_assignment[groups[i]] = nid
    new_mo /= weight[:, None]
    return new_assignment, new_mo


def _fingerprint(points, assignment, k):
    groups = group_indices(assignment, k)
    live = [points[g] for g in groups if g.size]
    intra_sorted = tuple(sorted(intra_cluster(g) for g in live))
    return (solution_inter(live),) + intra_sorted


def run_eca_star(dataset, params, gt_centroids=None, gt_labels=None):
    """Full clustering run; returns the final partition and its quality.

    Ground truth defaults to whatever the dataset carries; pass it explicitly
    to override.
    """
    points = np.atleast_2d(np.asarray(getattr(dataset, "points", dataset), dtype=float))
    if gt_centroids is None:
        gt_centroids = getattr(dataset, "true_centroids", None)
    if gt_labels is None:
        gt_labels = getattr(dataset, "true_labels", None)
    rng = RngStream(params.seed)
    low = points.min(axis=0)
    up = points.max(axis=0)
    scale = 0.01 * float(np.mean(up - low))
    levy = LevyParams(alpha=params.levy_alpha, scale=scale)

    _, assignment = init_assign(points, params.social_ranks)
    state = EcaState(assignment=assignment, levy=levy, bounds=(low, up),
                     params=params)

    prev = None
    mo = None
    for _ in range(params.max_cycles):
        state = clustering_one(state, points, rng)
        mo = mut_over(state, rng)
        assignment = assign_nearest(points, mo)
        assignment, mo = clustering_two(points, assignment, mo)
        state.assignment = assignment
        state.mo = mo
        sig = _fingerprint(points, assignment, mo.shape[0])
        if prev is not None and len(sig) == len(prev) \
                and max(abs(a - b) for a, b in zip(sig, prev)) <= _STOP_TOL:
            break
        prev = sig

    final_assignment = assign_nearest(points, mo)
    live = [i for i in range(mo.shape[0]) if np.any(final_assignment == i)]
    final_assignment = _relabel(final_assignment, live)
    mo = mo[live]
    result = Clustering(assignment=final_assignment, centroids=mo,
                        historical_centroids=state.historical,
                        intra=state.intra, old_intra=state.old_intra,
                        inter=state.inter, old_inter=state.old_inter)
    report = quality_report(points, result, gt_centroids=gt_centroids,
                            gt_labels=gt_labels)
    return result, report
