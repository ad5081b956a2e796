"""Dataset loading and synthetic data generation for the clustering tools.

The on-disk format is deliberately plain: one point per line, coordinates
separated by whitespace, ``#`` comments and blank lines ignored. Ground-truth
centroid files use the same layout.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .rng import uniform_matrix


@dataclass
class Dataset:
    points: np.ndarray  # N x D
    name: str = "dataset"
    true_centroids: Optional[np.ndarray] = None
    true_labels: Optional[np.ndarray] = None

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def dim(self):
        return self.points.shape[1]

    def bounds(self):
        """Per-dimension (low, up) envelope of the data."""
        return self.points.min(axis=0), self.points.max(axis=0)


def _parse_matrix(text, source):
    rows = []
    width = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            row = [float(p) for p in parts]
        except ValueError as exc:
            raise ValueError(f"{source}:{lineno}: non-numeric value ({exc})") from None
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise ValueError(
                f"{source}:{lineno}: expected {width} values, found {len(row)}")
        rows.append(row)
    if not rows:
        raise ValueError(f"{source}: no data points found")
    return np.asarray(rows, dtype=float)


def load_points(path):
    """Read a whitespace-separated matrix of points; errors carry line numbers."""
    path = Path(path)
    return _parse_matrix(path.read_text(), str(path))


def load_labels(path):
    """Read one integer label per line."""
    path = Path(path)
    values = _parse_matrix(path.read_text(), str(path))
    if values.shape[1] != 1:
        raise ValueError(f"{path}: labels must be one value per line")
    flat = values[:, 0]
    if not np.allclose(flat, np.round(flat)):
        raise ValueError(f"{path}: labels must be integers")
    return flat.astype(int)


def load_dataset(path, centroids_path=None, labels_path=None):
    """Load a dataset with optional ground-truth centroids and labels."""
    path = Path(path)
    points = load_points(path)
    centroids = None
    if centroids_path is not None:
        centroids = load_points(centroids_path)
        if centroids.shape[1] != points.shape[1]:
            raise ValueError(
                f"{centroids_path}: centroid dimension {centroids.shape[1]} "
                f"does not match data dimension {points.shape[1]}")
    labels = None
    if labels_path is not None:
        labels = load_labels(labels_path)
        if labels.shape[0] != points.shape[0]:
            raise ValueError(
                f"{labels_path}: {labels.shape[0]} labels for {points.shape[0]} points")
    return Dataset(points, name=path.stem, true_centroids=centroids, true_labels=labels)


def save_points(path, points):
    path = Path(path)
    points = np.asarray(points, dtype=float)
    lines = [" ".join(repr(float(v)) for v in row) for row in np.atleast_2d(points)]
    path.write_text("\n".join(lines) + "\n")


def gaussian_blobs(rng, centers, spread, points_per_cluster):
    """Isotropic Gaussian clusters around the given centers.

    Returns a Dataset whose true_centroids are the requested centers and
    whose true_labels record each point's source cluster.
    """
    centers = np.atleast_2d(np.asarray(centers, dtype=float))
    k, dim = centers.shape
    spreads = np.broadcast_to(np.asarray(spread, dtype=float), (k,))
    counts = np.broadcast_to(np.asarray(points_per_cluster, dtype=int), (k,))
    if np.any(counts < 1):
        raise ValueError("every cluster needs at least one point")
    blocks, labels = [], []
    for i in range(k):
        noise = rng.generator.standard_normal((int(counts[i]), dim))
        blocks.append(centers[i] + spreads[i] * noise)
        labels.extend([i] * int(counts[i]))
    return Dataset(np.vstack(blocks), name="blobs",
                   true_centroids=centers.copy(),
                   true_labels=np.asarray(labels, dtype=int))


def uniform_cloud(rng, n, low, up, dim):
    """Structure-free uniform points, handy as a null model."""
    return Dataset(uniform_matrix(rng, low, up, (int(n), int(dim))), name="uniform")
