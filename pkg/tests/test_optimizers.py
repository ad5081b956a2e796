"""Dual-population search operators and the shared run loop."""

import numpy as np
import pytest

from evoclust.optimizers import (ALGORITHMS, OptimizerConfig, Population,
                                 boundary_control, bsa_crossover, bsa_init,
                                 bsa_mutation, bsa_selection1, bsa_selection2,
                                 run_optimizer, run_repetitions)
from evoclust.benchmarks import get_function
from evoclust.rng import RngStream


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(population_size=0)
    with pytest.raises(ValueError):
        OptimizerConfig(max_iterations=-1)
    with pytest.raises(ValueError):
        OptimizerConfig(success_tolerance=0.0)
    with pytest.raises(ValueError):
        OptimizerConfig(mixrate=0.0)


def test_init_draws_inside_bounds_and_evaluates():
    cfg = OptimizerConfig(population_size=40)
    P, Pold = bsa_init(get_function("F14"), 2, -1.0, 1.0, cfg, RngStream(3))
    assert P.shape == (40, 2) and Pold.shape == (40, 2)
    for pop in (P.individuals, Pold.individuals):
        assert pop.min() >= -1.0 and pop.max() <= 1.0
    assert P.fitness is not None and P.fitness.shape == (40,)
    assert P.fitness == pytest.approx(np.sum(P.individuals**2, axis=1))
    assert Pold.fitness is None


def test_selection1_returns_permutation_of_a_source():
    P = Population(np.arange(10.0).reshape(5, 2))
    Pold = Population(np.arange(10.0, 20.0).reshape(5, 2))
    seen_sources = set()
    for seed in range(40):
        out = bsa_selection1(P, Pold, RngStream(seed))
        rows = {tuple(r) for r in out.individuals}
        if rows == {tuple(r) for r in P.individuals}:
            seen_sources.add("P")
        elif rows == {tuple(r) for r in Pold.individuals}:
            seen_sources.add("Pold")
        else:
            pytest.fail("selection-I must permute one of the two populations")
    assert seen_sources == {"P", "Pold"}  # both branches occur


def test_mutation_hand_case():
    P = Population(np.array([[1.0, 2.0]]))
    Pold = Population(np.array([[3.0, 6.0]]))
    assert bsa_mutation(P, Pold, 0.5).tolist() == [[2.0, 4.0]]


def test_mutation_elementwise_oracle():
    rng = np.random.Generator(np.random.PCG64(2))
    P = Population(rng.normal(size=(5, 3)))
    Pold = Population(rng.normal(size=(5, 3)))
    F = 1.7
    out = bsa_mutation(P, Pold, F)
    for i in range(5):
        for j in range(3):
            expect = P.individuals[i, j] + F * (Pold.individuals[i, j] - P.individuals[i, j])
            assert out[i, j] == pytest.approx(expect, rel=1e-12)


def test_mutation_f_zero_keeps_population():
    P = Population(np.ones((3, 2)))
    Pold = Population(np.zeros((3, 2)))
    assert np.array_equal(bsa_mutation(P, Pold, 0.0), P.individuals)


def test_crossover_changes_at_least_one_position_per_row():
    rng_data = np.random.Generator(np.random.PCG64(5))
    P = Population(rng_data.normal(size=(30, 6)))
    mutant = P.individuals + 100.0  # any change is visible
    for seed in range(50):
        trial = bsa_crossover(P, mutant, 1.0, RngStream(seed))
        changed = trial != P.individuals
        assert np.all(changed.sum(axis=1) >= 1)
        # positions are copied from exactly one parent
        assert np.all((trial == P.individuals) | (trial == mutant))


def test_crossover_single_position_branch_exists():
    """Across seeds some draws flip exactly one coordinate per row."""
    P = Population(np.zeros((8, 5)))
    mutant = np.ones((8, 5))
    per_seed_counts = []
    for seed in range(60):
        trial = bsa_crossover(P, mutant, 1.0, RngStream(seed))
        per_seed_counts.append((trial != 0).sum(axis=1))
    assert any(np.all(c == 1) for c in per_seed_counts)
    assert any(np.any(c > 1) for c in per_seed_counts)


def test_low_mixrate_still_flips_one():
    P = Population(np.zeros((10, 8)))
    mutant = np.ones((10, 8))
    for seed in range(30):
        trial = bsa_crossover(P, mutant, 1e-9, RngStream(seed))
        assert np.all((trial != 0).sum(axis=1) >= 1)


def test_boundary_control_fuzz():
    rng = RngStream(7)
    T = np.random.Generator(np.random.PCG64(8)).normal(scale=5, size=(100, 100))
    out = boundary_control(T, -1.0, 1.0, rng)
    inside = (T >= -1.0) & (T <= 1.0)
    assert np.array_equal(out[inside], T[inside])  # untouched
    assert out.min() >= -1.0 and out.max() <= 1.0


def test_boundary_control_vector_bounds():
    rng = RngStream(9)
    T = np.array([[5.0, 5.0], [-5.0, 0.5]])
    low = np.array([0.0, -1.0])
    up = np.array([1.0, 1.0])
    out = boundary_control(T, low, up, rng)
    assert 0.0 <= out[0, 0] <= 1.0
    assert -1.0 <= out[0, 1] <= 1.0
    assert 0.0 <= out[1, 0] <= 1.0
    assert out[1, 1] == 0.5


def test_boundary_control_noop_returns_same_values():
    rng = RngStream(10)
    T = np.zeros((3, 3))
    assert np.array_equal(boundary_control(T, -1, 1, rng), T)


def test_selection2_greedy():
    P = Population(np.zeros((3, 2)), np.array([1.0, 5.0, 3.0]))
    T = Population(np.ones((3, 2)), np.array([2.0, 4.0, 3.0]))
    out = bsa_selection2(P, T)
    assert out.fitness.tolist() == [1.0, 4.0, 3.0]
    assert out.individuals[0].tolist() == [0.0, 0.0]  # P kept
    assert out.individuals[1].tolist() == [1.0, 1.0]  # T adopted
    assert out.individuals[2].tolist() == [0.0, 0.0]  # tie keeps P


def test_run_optimizer_success_and_fields():
    cfg = OptimizerConfig(max_iterations=500, runs=1)
    r = run_optimizer("bsa", "F14", cfg, seed=4, dim=2, bounds=(-1, 1))
    assert r.succeeded
    assert r.best_value <= 1e-6
    assert r.iterations_to_success is not None
    assert 0 <= r.iterations_to_success <= 500
    assert abs(r.best_point).max() <= 1.0
    assert r.algo == "bsa" and r.fn_id == "F14" and r.dim == 2 and r.seed == 4
    assert r.reference_min == 0.0
    assert r.wall_time > 0


def test_run_optimizer_same_seed_identical():
    cfg = OptimizerConfig(max_iterations=120, runs=1)
    a = run_optimizer("bsa", "F11", cfg, seed=5)
    b = run_optimizer("bsa", "F11", cfg, seed=5)
    assert a.best_value == b.best_value
    assert np.array_equal(a.best_point, b.best_point)
    c = run_optimizer("bsa", "F11", cfg, seed=6)
    assert c.best_value != a.best_value


@pytest.mark.parametrize("algo", ALGORITHMS)
def test_every_algorithm_optimizes_sphere(algo):
    cfg = OptimizerConfig(max_iterations=400, runs=1)
    r = run_optimizer(algo, "F14", cfg, seed=1, dim=2, bounds=(-1, 1))
    assert r.best_value < 1e-3, algo
    assert abs(r.best_point).max() <= 1.0


def test_stop_on_success_controls_early_exit():
    fast = OptimizerConfig(max_iterations=2000, runs=1, stop_on_success=True)
    slow = OptimizerConfig(max_iterations=2000, runs=1, stop_on_success=False)
    a = run_optimizer("bsa", "F14", fast, seed=2, dim=2, bounds=(-1, 1))
    b = run_optimizer("bsa", "F14", slow, seed=2, dim=2, bounds=(-1, 1))
    assert a.iterations_to_success == b.iterations_to_success  # same stream
    assert b.best_value <= a.best_value  # kept refining


def test_unknown_algorithm_and_bad_bounds():
    cfg = OptimizerConfig(runs=1)
    with pytest.raises(ValueError):
        run_optimizer("sa", "F14", cfg, seed=0)
    with pytest.raises(ValueError):
        run_optimizer("bsa", "F14", cfg, seed=0, bounds=(1.0, -1.0))


def test_run_repetitions_seeds():
    cfg = OptimizerConfig(max_iterations=30, runs=4)
    results = run_repetitions("de", "F14", cfg, base_seed=100, dim=2, bounds=(-1, 1))
    assert [r.seed for r in results] == [100, 101, 102, 103]
    solo = run_optimizer("de", "F14", cfg, seed=102, dim=2, bounds=(-1, 1))
    assert results[2].best_value == solo.best_value
