"""Race two optimizers over a handful of benchmark functions.

Run with: python3 demos/benchmark_race.py
"""

from evoclust.benchmarks import get_function
from evoclust.optimizers import OptimizerConfig, run_repetitions
from evoclust.stats import summarize

FUNCTIONS = ["F14", "F1", "F11", "F9"]  # sphere, ackley, rastrigin, griewank
ALGOS = ["bsa", "de"]


def main():
    cfg = OptimizerConfig(population_size=30, max_iterations=500, runs=10)
    print(f"{'function':<16}{'algo':<6}{'solved':<8}{'mean iters':<12}best value")
    for fid in FUNCTIONS:
        fn = get_function(fid)
        for algo in ALGOS:
            results = run_repetitions(algo, fn, cfg, base_seed=0, dim=2)
            stats = summarize(results, metric="iters")
            vals = summarize(results, metric="value")
            iters = "-" if stats.mean is None else f"{stats.mean:.1f}"
            solved = f"{stats.n_success}/10"
            print(f"{fn.name:<16}{algo:<6}{solved:<8}{iters:<12}{vals.best:.3e}")


if __name__ == "__main__":
    main()
