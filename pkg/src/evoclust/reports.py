"""Experiment harnesses and report emission.

Machine JSON carries full precision plus the resolved config and seed, so any
artifact can be reproduced from its own header. CSVs mirror the JSON rows:
the default flavor keeps full-precision floats (lossless re-parse), the
human flavor rounds to 4 significant digits in scientific notation.
Wall-clock fields always end in ``_time_s`` so they can be scrubbed before
byte-comparing reports.
"""

import csv
import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import benchmarks, fca, reducer
from .datasets import load_dataset
from .ecastar import EcaParams, run_eca_star
from .kmeans import KmConfig, kmeans
from .metrics import QualityReport, quality_report
from .optimizers import OptimizerConfig, run_repetitions
from .stats import success_ratio, summarize, wilcoxon_signed_rank

RANGES = {"R1": (-5.0, 5.0), "R2": (-250.0, 250.0), "R3": (-500.0, 500.0)}
OUT_DIR_ENV = "EVOCLUST_OUT_DIR"


def fmt_sig(value, digits=4):
    """Scientific notation with the given significant digits: 1.092E+02."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    v = float(value)
    return f"{v:.{digits - 1}E}"


def fmt_full(value):
    """Full-precision text that re-parses to the identical float."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


def scrub_timing(obj):
    """Recursively drop every key ending in ``_time_s``."""
    if isinstance(obj, dict):
        return {k: scrub_timing(v) for k, v in obj.items()
                if not str(k).endswith("_time_s")}
    if isinstance(obj, list):
        return [scrub_timing(v) for v in obj]
    return obj


def resolve_out(path):
    """Relative output paths land in $EVOCLUST_OUT_DIR when it is set."""
    path = Path(path)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_json(path, payload):
    path = resolve_out(path)
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return path


def write_csv(path, header, rows, human=False):
    """One CSV; floats full-precision by default, 4 significant digits when
    human formatting is requested."""
    path = resolve_out(path)
    fmt = fmt_sig if human else fmt_full
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return path


# ------------------------------------------------------------ bench suite

@dataclass
class BenchConfig:
    algos: Sequence[str] = ("bsa",)
    functions: Sequence[str] = ("all",)
    dim: int = 2
    range_name: str = "default"
    runs: int = 30
    seed: int = 0
    population_size: int = 30
    max_iterations: int = 2000
    tolerance: float = 1e-6
    stop_on_success: bool = True
    out: Optional[str] = None
    human: bool = False


def _bench_functions(names):
    requested = []
    for n in names:
        if str(n).lower() == "all":
            requested.extend(benchmarks.CATALOG)
        else:
            requested.append(benchmarks.get_function(n).id)
    seen = []
    for fid in requested:
        if fid not in seen:
            seen.append(fid)
    return seen


def _usable_dim(fn, dim):
    return 2 if fn.dimension_rule == "fixed-2" else dim


def run_bench_suite(config):
    """Optimize every requested function with every requested algorithm and
    aggregate stats, pairwise rank tests, and the success/failure table."""
    opt = OptimizerConfig(population_size=config.population_size,
                          max_iterations=config.max_iterations,
                          runs=config.runs,
                          success_tolerance=config.tolerance,
                          stop_on_success=config.stop_on_success)
    bounds = None if config.range_name == "default" else RANGES[config.range_name]
    fn_ids = _bench_functions(config.functions)
    algos = [a.strip().lower() for a in config.algos]
    suite_start = time.perf_counter()

    entries = {}
    for fid in fn_ids:
        fn = benchmarks.get_function(fid)
        dim = _usable_dim(fn, config.dim)
        for algo in algos:
            results = run_repetitions(algo, fn, opt, config.seed, dim=dim, bounds=bounds)
            entries[(fid, algo)] = results

    stats_rows = []
    runs_payload = []
    success_counts = {a: {} for a in algos}
    for (fid, algo), results in entries.items():
        fn = benchmarks.get_function(fid)
        it_stats = summarize(results, metric="iters")
        val_stats = summarize(results, metric="value")
        success_counts[algo][fid] = it_stats.n_success
        stats_rows.append([
            fid, fn.name, algo, results[0].dim,
            results[0].reference_min,
            it_stats.n_success, it_stats.n_failure,
            it_stats.mean, it_stats.sd, it_stats.best, it_stats.worst,
            val_stats.mean, val_stats.sd, val_stats.best, val_stats.worst,
            it_stats.mean_exec_time,
        ])
        runs_payload.append({
            "function": fid, "algo": algo, "dim": results[0].dim,
            "reference_min": results[0].reference_min,
            "runs": [
                {"seed": r.seed, "succeeded": r.succeeded,
                 "iterations_to_success": r.iterations_to_success,
                 "best_value": r.best_value, "run_time_s": r.wall_time}
                for r in results
            ],
        })

    pair_rows = []
    for fid in fn_ids:
        for i in range(len(algos)):
            for j in range(i + 1, len(algos)):
                a, b = algos[i], algos[j]
                ra, rb = entries[(fid, a)], entries[(fid, b)]
                xs, ys = [], []
                for run_a, run_b in zip(ra, rb):
                    if run_a.succeeded and run_b.succeeded:
                        xs.append(float(run_a.iterations_to_success))
                        ys.append(float(run_b.iterations_to_success))
                if xs:
                    w = wilcoxon_signed_rank(xs, ys)
                    winner = {"A": a, "B": b, "tie": "tie"}[w.winner]
                    pair_rows.append([fid, a, b, len(xs), w.r_plus, w.r_minus,
                                      w.p_value, winner])
                else:
                    pair_rows.append([fid, a, b, 0, None, None, None, "NC"])

    ratio = success_ratio(success_counts)
    ratio_rows = [[algo, solved, failed] for algo, (solved, failed) in ratio.items()]

    payload = {
        "config": {
            "algos": list(algos), "functions": list(fn_ids), "dim": config.dim,
            "range": config.range_name, "runs": config.runs, "seed": config.seed,
            "population_size": config.population_size,
            "max_iterations": config.max_iterations,
            "tolerance": config.tolerance,
            "stop_on_success": config.stop_on_success,
        },
        "stats": [dict(zip(STATS_HEADER, row)) for row in stats_rows],
        "pairwise": [dict(zip(PAIR_HEADER, row)) for row in pair_rows],
        "success_ratio": [dict(zip(RATIO_HEADER, row)) for row in ratio_rows],
        "detail": runs_payload,
        "suite_time_s": time.perf_counter() - suite_start,
    }

    written = {}
    if config.out:
        out = Path(config.out)
        written["csv"] = str(write_csv(out, STATS_HEADER, stats_rows, config.human))
        written["pairwise_csv"] = str(write_csv(
            out.with_name(out.stem + "_pairwise" + out.suffix),
            PAIR_HEADER, pair_rows, config.human))
        written["ratio_csv"] = str(write_csv(
            out.with_name(out.stem + "_ratio" + out.suffix),
            RATIO_HEADER, ratio_rows, config.human))
        written["json"] = str(write_json(out.with_suffix(".json"), payload))
    payload["written"] = written
    return payload


STATS_HEADER = ["function", "name", "algo", "dim", "reference_min",
                "n_success", "n_failure",
                "iters_mean", "iters_sd", "iters_best", "iters_worst",
                "value_mean", "value_sd", "value_best", "value_worst",
                "mean_exec_time_s"]
PAIR_HEADER = ["function", "algo_a", "algo_b", "n_pairs", "r_plus", "r_minus",
               "p_value", "winner"]
RATIO_HEADER = ["algo", "solved", "failed"]


# ---------------------------------------------------------- cluster suite

@dataclass
class ClusterConfig:
    algo: str = "eca-star"
    data: str = ""
    gt: Optional[str] = None
    labels: Optional[str] = None
    k: Optional[int] = None
    ranks: int = 2
    cycles: int = 50
    density_threshold: float = 0.01
    levy_alpha: float = 1.001
    runs: int = 30
    seed: int = 0
    out: Optional[str] = None
    human: bool = False


CLUSTER_HEADER = ["dataset", "algo", "runs", "k_mean",
                  "ci_mean", "csi_mean", "nmi_mean",
                  "sse_mean", "nmse_mean", "eps_ratio_mean", "mean_exec_time_s"]


def _cluster_once(algo, dataset, cfg, seed):
    start = time.perf_counter()
    if algo == "eca-star":
        params = EcaParams(social_ranks=cfg.ranks, max_cycles=cfg.cycles,
                           density_threshold=cfg.density_threshold,
                           levy_alpha=cfg.levy_alpha, seed=seed)
        clustering, report = run_eca_star(dataset, params)
    elif algo in ("km", "km++"):
        if cfg.k is None:
            raise ValueError("k-means needs --k")
        km_cfg = KmConfig(k=cfg.k, seed=seed,
                          init="plusplus" if algo == "km++" else "random")
        clustering = kmeans(dataset, km_cfg)
        report = quality_report(dataset, clustering,
                                gt_centroids=dataset.true_centroids,
                                gt_labels=dataset.true_labels)
    else:
        raise ValueError(f"unknown clustering algorithm: {algo!r}")
    return clustering, report, time.perf_counter() - start


def run_cluster_suite(config):
    """Repeated clustering runs on one dataset; emits the per-algorithm
    average quality row plus per-run detail."""
    dataset = load_dataset(config.data, centroids_path=config.gt,
                           labels_path=config.labels)
    algo = config.algo.lower()
    per_run = []
    for i in range(config.runs):
        clustering, report, elapsed = _cluster_once(algo, dataset, config,
                                                    config.seed + i)
        per_run.append((clustering, report, elapsed))

    def mean_of(attr):
        vals = [getattr(r, attr) for _, r, _ in per_run]
        if any(v is None for v in vals):
            return None
        return float(np.mean(vals))

    has_gt = dataset.true_centroids is not None or dataset.true_labels is not None
    row = [dataset.name, algo, config.runs,
           float(np.mean([c.centroids.shape[0] for c, _, _ in per_run])),
           mean_of("ci") if has_gt else None,
           mean_of("csi") if has_gt else None,
           mean_of("nmi") if has_gt else None,
           mean_of("sse"), mean_of("nmse"), mean_of("eps_ratio"),
           float(np.mean([t for _, _, t in per_run]))]

    detail = []
    for i, (clustering, report, elapsed) in enumerate(per_run):
        entry = {"seed": config.seed + i, "k": int(clustering.centroids.shape[0]),
                 "sse": report.sse, "nmse": report.nmse,
                 "eps_ratio": report.eps_ratio, "run_time_s": elapsed}
        if report.ci is not None:
            entry.update({"ci": report.ci, "csi": report.csi, "nmi": report.nmi})
        detail.append(entry)

    payload = {
        "config": {
            "algo": algo, "data": str(config.data),
            "gt": str(config.gt) if config.gt else None,
            "labels": str(config.labels) if config.labels else None,
            "k": config.k, "ranks": config.ranks, "cycles": config.cycles,
            "density_threshold": config.density_threshold,
            "levy_alpha": config.levy_alpha,
            "runs": config.runs, "seed": config.seed,
        },
        "summary": dict(zip(CLUSTER_HEADER, row)),
        "detail": detail,
    }
    written = {}
    if config.out:
        out = Path(config.out)
        written["csv"] = str(write_csv(out, CLUSTER_HEADER, [row], config.human))
        written["json"] = str(write_json(out.with_suffix(".json"), payload))
    payload["written"] = written
    return payload


# -------------------------------------------------------------- fca suite

@dataclass
class FcaConfig:
    ctx: str = ""
    tax: str = ""
    hyper_depth: int = 4
    hypo_depth: int = 4
    iters: int = 30
    quality_floor: float = 0.8
    seed: int = 0
    out: Optional[str] = None
    report: Optional[str] = None


def run_fca_suite(config):
    """Reduce one context against a taxonomy; emits the reduced context and
    a report with both lattices' invariants, the quality, and the trace."""
    ctx = fca.read_cxt(config.ctx)
    tax = reducer.load_taxonomy(config.tax)
    params = reducer.ReduceParams(hypernym_depth=config.hyper_depth,
                                  hyponym_depth=config.hypo_depth,
                                  max_iterations=config.iters,
                                  quality_floor=config.quality_floor)
    start = time.perf_counter()
    reduced, trace = reducer.reduce_context(ctx, tax, params)
    elapsed = time.perf_counter() - start
    lat_orig = fca.build_lattice(ctx)
    lat_red = fca.build_lattice(reduced)
    payload = {
        "config": {
            "ctx": str(config.ctx), "tax": str(config.tax),
            "hyper_depth": config.hyper_depth, "hypo_depth": config.hypo_depth,
            "iters": config.iters, "quality_floor": config.quality_floor,
            "seed": config.seed,
        },
        "original": fca.lattice_to_json(ctx, lat_orig)["invariants"],
        "reduced": fca.lattice_to_json(reduced, lat_red)["invariants"],
        "original_shape": list(ctx.shape),
        "reduced_shape": list(reduced.shape),
        "quality": fca.lattice_quality(lat_orig, lat_red),
        "trace": [list(e) for e in trace],
        "reduce_time_s": elapsed,
    }
    written = {}
    if config.out:
        out = resolve_out(config.out)
        fca.write_cxt(reduced, out, name=getattr(ctx, "name", "context"))
        written["cxt"] = str(out)
    if config.report:
        written["report"] = str(write_json(config.report, payload))
    payload["written"] = written
    return payload


# ------------------------------------------------------------- comparison

def run_report(in_path, compare, metric="iters", alpha=0.05, out=None):
    """Paired rank test between two algorithms from a bench-suite JSON."""
    data = json.loads(Path(in_path).read_text())
    algo_a, algo_b = [a.strip().lower() for a in compare]
    key = {"iters": "iterations_to_success", "value": "best_value"}[metric]
    by_fn = {}
    for block in data.get("detail", []):
        by_fn.setdefault(block["function"], {})[block["algo"]] = block["runs"]
    rows = []
    for fid, algos in sorted(by_fn.items()):
        if algo_a not in algos or algo_b not in algos:
            continue
        xs, ys = [], []
        for run_a, run_b in zip(algos[algo_a], algos[algo_b]):
            if metric == "iters" and not (run_a["succeeded"] and run_b["succeeded"]):
                continue
            xs.append(float(run_a[key]))
            ys.append(float(run_b[key]))
        if xs:
            w = wilcoxon_signed_rank(xs, ys, alpha=alpha)
            winner = {"A": algo_a, "B": algo_b, "tie": "tie"}[w.winner]
            rows.append([fid, algo_a, algo_b, len(xs), w.r_plus, w.r_minus,
                         w.p_value, winner])
        else:
            rows.append([fid, algo_a, algo_b, 0, None, None, None, "NC"])
    payload = {
        "config": {"in": str(in_path), "compare": [algo_a, algo_b],
                   "metric": metric, "alpha": alpha},
        "comparison": [dict(zip(PAIR_HEADER, row)) for row in rows],
    }
    written = {}
    if out:
        out = Path(out)
        written["csv"] = str(write_csv(out, PAIR_HEADER, rows))
        written["json"] = str(write_json(out.with_suffix(".json"), payload))
    payload["written"] = written
    return payload
