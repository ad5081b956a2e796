"""Paired signed-rank comparison of two optimizers on shared seeds.

Both algorithms attack the same functions from the same starting seeds with
the success stop disabled, so the per-run best values form honest pairs.
Smaller is better; a winner is declared only when the test is significant.

Run with: python3 demos/paired_ranks.py
"""

from evoclust.benchmarks import get_function
from evoclust.optimizers import OptimizerConfig, run_repetitions
from evoclust.stats import wilcoxon_signed_rank

FUNCTIONS = ["F14", "F9", "F3"]


def main():
    cfg = OptimizerConfig(population_size=30, max_iterations=300, runs=12,
                          stop_on_success=False)
    for fid in FUNCTIONS:
        fn = get_function(fid)
        bsa = run_repetitions("bsa", fn, cfg, base_seed=42, dim=2)
        pso = run_repetitions("pso", fn, cfg, base_seed=42, dim=2)
        w = wilcoxon_signed_rank([r.best_value for r in bsa],
                                 [r.best_value for r in pso])
        tag = {"A": "bsa", "B": "pso"}.get(w.winner, "tie")
        kind = "exact" if w.exact else "approx"
        print(f"{fn.name:<12} R+={w.r_plus:<6g} R-={w.r_minus:<6g} "
              f"p={w.p_value:.4f} ({kind}, n'={w.n_nonzero})  winner: {tag}")


if __name__ == "__main__":
    main()
