"""Cluster synthetic gaussian blobs and compare against seeded k-means.

The evolutionary pass discovers the cluster count on its own; k-means++ gets
the true k handed to it and still serves as the SSE yardstick.

Run with: python3 demos/cluster_blobs.py
"""

import numpy as np

from evoclust.datasets import gaussian_blobs
from evoclust.ecastar import EcaParams, run_eca_star
from evoclust.kmeans import KmConfig, kmeans
from evoclust.metrics import quality_report
from evoclust.rng import RngStream

CENTERS = [(0, 0), (10, 0), (0, 10), (10, 10)]


def main():
    ds = gaussian_blobs(RngStream(7), centers=CENTERS, spread=0.6,
                        points_per_cluster=50)
    result, report = run_eca_star(ds, EcaParams(seed=1))
    print(f"evolutionary: k={result.k}  CI={report.ci}  "
          f"CSI={report.csi:.3f}  NMI={report.nmi:.3f}  SSE={report.sse:.2f}")

    km = kmeans(ds, KmConfig(k=len(CENTERS), seed=1, init="plusplus"))
    km_rep = quality_report(ds.points, km, gt_centroids=ds.true_centroids,
                            gt_labels=ds.true_labels)
    print(f"k-means++:    k={km.k}  CI={km_rep.ci}  "
          f"CSI={km_rep.csi:.3f}  NMI={km_rep.nmi:.3f}  SSE={km_rep.sse:.2f}")

    found = np.asarray(sorted(result.centroids.tolist()))
    print("recovered centroids (sorted):")
    for row in found:
        print(f"  ({row[0]:6.2f}, {row[1]:6.2f})")


if __name__ == "__main__":
    main()
