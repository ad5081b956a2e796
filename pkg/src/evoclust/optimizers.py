"""Population metaheuristics behind one interface: the dual-population
backtracking search algorithm (BSA) plus DE, PSO, ABC, and firefly
counterparts for head-to-head benchmarking.

Every run is single-threaded and fully determined by its seed; repetitions
use independently seeded streams.
"""

import math
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import benchmarks
from .rng import RngStream, permute, standard_normal, stream_for_run, uniform, uniform_matrix

ALGORITHMS = ("bsa", "de", "pso", "abc", "ff")


@dataclass
class Population:
    individuals: np.ndarray  # N x D
    fitness: Optional[np.ndarray] = None  # N, when marked fresh

    @property
    def shape(self):
        return self.individuals.shape


@dataclass
class OptimizerConfig:
    population_size: int = 30
    max_iterations: int = 2000
    runs: int = 30
    success_tolerance: float = 1e-6
    stop_on_success: bool = True
    # BSA
    mixrate: float = 1.0
    # DE/rand/1/bin
    de_f: float = 0.5
    de_cr: float = 0.9
    # PSO (constriction-style inertia)
    pso_w: float = 0.729
    pso_c1: float = 1.49445
    pso_c2: float = 1.49445
    # ABC
    abc_limit: int = 100
    # firefly
    ff_beta0: float = 1.0
    ff_gamma: float = 1.0
    ff_alpha: float = 0.2
    ff_alpha_decay: float = 0.97

    def __post_init__(self):
        if self.population_size < 1 or self.runs < 1:
            raise ValueError("population_size and runs must be >= 1")
        if self.max_iterations < 0:
            raise ValueError("max_iterations must be >= 0")
        if self.success_tolerance <= 0:
            raise ValueError("success_tolerance must be positive")
        if not 0 < self.mixrate <= 1:
            raise ValueError("mixrate must lie in (0, 1]")


@dataclass
class RunResult:
    algo: str
    fn_id: str
    dim: int
    seed: int
    best_value: float
    best_point: np.ndarray
    iterations_to_success: Optional[int]
    succeeded: bool
    wall_time: float
    reference_min: float


# ---------------------------------------------------------------- BSA steps

def bsa_init(fn, dim, low, up, config, rng):
    """Draw both populations uniformly in bounds; fitness evaluated for P."""
    n = config.population_size
    P = uniform_matrix(rng, low, up, (n, dim))
    Pold = uniform_matrix(rng, low, up, (n, dim))
    return (Population(P, benchmarks.evaluate_batch(fn, P)), Population(Pold))


def bsa_selection1(P, Pold, rng):
    """Historical-population refresh: adopt a copy of P when a < b for two
    uniform draws, then shuffle the rows."""
    a = uniform(rng, 0.0, 1.0)
    b = uniform(rng, 0.0, 1.0)
    source = P.individuals if a < b else Pold.individuals
    order = permute(rng, source.shape[0])
    return Population(source[order].copy())


def bsa_mutation(P, Pold, F):
    """Mutant = P + F * (Pold - P), elementwise."""
    return P.individuals + F * (Pold.individuals - P.individuals)


def bsa_crossover(P, Mutant, mixrate, rng):
    """Two-branch binary map: with even odds either ceil(mixrate*rand*D)
    random positions per row take the mutant, or exactly one does; every
    other position keeps P."""
    n, d = P.shape
    keep = np.ones((n, d), dtype=bool)
    if uniform(rng, 0.0, 1.0) < uniform(rng, 0.0, 1.0):
        for i in range(n):
            order = permute(rng, d)
            k = max(1, math.ceil(mixrate * uniform(rng, 0.0, 1.0) * d))
            keep[i, order[:k]] = False
    else:
        for i in range(n):
            keep[i, int(rng.generator.integers(d))] = False
    return np.where(keep, P.individuals, Mutant)


def boundary_control(T, low, up, rng):
    """Regenerate every out-of-bounds coordinate uniformly within its bounds;
    in-bounds entries are untouched."""
    T = np.asarray(T, dtype=float)
    lows = np.broadcast_to(np.asarray(low, dtype=float), T.shape)
    ups = np.broadcast_to(np.asarray(up, dtype=float), T.shape)
    mask = (T < lows) | (T > ups)
    if not mask.any():
        return T
    out = T.copy()
    draws = rng.generator.random(int(mask.sum()))
    out[mask] = lows[mask] + (ups[mask] - lows[mask]) * draws
    return out


def bsa_selection2(P, T):
    """Greedy per-individual selection; strict improvement adopts T."""
    better = T.fitness < P.fitness
    individuals = np.where(better[:, None], T.individuals, P.individuals)
    fitness = np.where(better, T.fitness, P.fitness)
    return Population(individuals, fitness)


# ---------------------------------------------------------------- run loops

class _BestTracker:
    def __init__(self, reference, tolerance):
        self.reference = reference
        self.tolerance = tolerance
        self.best_value = math.inf
        self.best_point = None
        self.iterations_to_success = None

    def update(self, values, points, iteration):
        i = int(np.argmin(values))
        if values[i] < self.best_value:
            self.best_value = float(values[i])
            self.best_point = np.array(points[i], dtype=float)
        if (self.iterations_to_success is None
                and abs(self.best_value - self.reference) <= self.tolerance):
            self.iterations_to_success = iteration
            return True
        return False

    @property
    def succeeded(self):
        return self.iterations_to_success is not None


def _run_bsa(fn, dim, low, up, config, rng, tracker):
    P, Pold = bsa_init(fn, dim, low, up, config, rng)
    hit = tracker.update(P.fitness, P.individuals, 0)
    for it in range(1, config.max_iterations + 1):
        if hit and config.stop_on_success:
            break
        Pold = bsa_selection1(P, Pold, rng)
        F = 3.0 * standard_normal(rng)
        mutant = bsa_mutation(P, Pold, F)
        trial = bsa_crossover(P, mutant, config.mixrate, rng)
        trial = boundary_control(trial, low, up, rng)
        T = Population(trial, benchmarks.evaluate_batch(fn, trial))
        P = bsa_selection2(P, T)
        hit = tracker.update(P.fitness, P.individuals, it) or hit


def _run_de(fn, dim, low, up, config, rng, tracker):
    n = config.population_size
    X = uniform_matrix(rng, low, up, (n, dim))
    fx = benchmarks.evaluate_batch(fn, X)
    hit = tracker.update(fx, X, 0)
    for it in range(1, config.max_iterations + 1):
        if hit and config.stop_on_success:
            break
        r = np.empty((n, 3), dtype=int)
        for i in range(n):
            pool = permute(rng, n)
            r[i] = pool[pool != i][:3]
        V = X[r[:, 0]] + config.de_f * (X[r[:, 1]] - X[r[:, 2]])
        cross = rng.generator.random((n, dim)) < config.de_cr
        cross[np.arange(n), rng.generator.integers(dim, size=n)] = True
        U = np.where(cross, V, X)
        U = boundary_control(U, low, up, rng)
        fu = benchmarks.evaluate_batch(fn, U)
        better = fu <= fx
        X = np.where(better[:, None], U, X)
        fx = np.where(better, fu, fx)
        hit = tracker.update(fx, X, it) or hit


def _run_pso(fn, dim, low, up, config, rng, tracker):
    n = config.population_size
    X = uniform_matrix(rng, low, up, (n, dim))
    V = np.zeros((n, dim))
    fx = benchmarks.evaluate_batch(fn, X)
    pbest, pf = X.copy(), fx.copy()
    g = int(np.argmin(pf))
    gbest, gf = pbest[g].copy(), float(pf[g])
    hit = tracker.update(fx, X, 0)
    for it in range(1, config.max_iterations + 1):
        if hit and config.stop_on_success:
            break
        r1 = rng.generator.random((n, dim))
        r2 = rng.generator.random((n, dim))
        V = (config.pso_w * V + config.pso_c1 * r1 * (pbest - X)
             + config.pso_c2 * r2 * (gbest - X))
        X = X + V
        outside = (X < low) | (X > up)
        X = np.clip(X, low, up)
        V[outside] = 0.0
        fx = benchmarks.evaluate_batch(fn, X)
        improved = fx < pf
        pbest[improved] = X[improved]
        pf[improved] = fx[improved]
        g = int(np.argmin(pf))
        if pf[g] < gf:
            gbest, gf = pbest[g].copy(), float(pf[g])
        hit = tracker.update(fx, X, it) or hit


def _run_abc(fn, dim, low, up, config, rng, tracker):
    n_food = max(2, config.population_size // 2)
    X = uniform_matrix(rng, low, up, (n_food, dim))
    fx = benchmarks.evaluate_batch(fn, X)
    trial = np.zeros(n_food, dtype=int)
    hit = tracker.update(fx, X, 0)

    def local_move(i):
        k = int(rng.generator.integers(n_food - 1))
        if k >= i:
            k += 1
        j = int(rng.generator.integers(dim))
        phi = uniform(rng, -1.0, 1.0)
        v = X[i].copy()
        v[j] = np.clip(v[j] + phi * (X[i, j] - X[k, j]), low, up)
        fv = benchmarks.evaluate_batch(fn, v[None, :])[0]
        if fv < fx[i]:
            X[i], fx[i], trial[i] = v, fv, 0
        else:
            trial[i] += 1

    for it in range(1, config.max_iterations + 1):
        if hit and config.stop_on_success:
            break
        for i in range(n_food):
            local_move(i)
        with np.errstate(divide="ignore"):
            quality = np.where(fx >= 0, 1.0 / (1.0 + fx), 1.0 + np.abs(fx))
        prob = quality / quality.sum()
        cum = np.cumsum(prob)
        for _ in range(config.population_size - n_food):
            pick = int(np.searchsorted(cum, uniform(rng, 0.0, 1.0)))
            local_move(min(pick, n_food - 1))
        worst = int(np.argmax(trial))
        if trial[worst] > config.abc_limit:
            X[worst] = uniform_matrix(rng, low, up, (dim,))
            fx[worst] = benchmarks.evaluate_batch(fn, X[worst][None, :])[0]
            trial[worst] = 0
        hit = tracker.update(fx, X, it) or hit


def _run_ff(fn, dim, low, up, config, rng, tracker):
    n = config.population_size
    X = uniform_matrix(rng, low, up, (n, dim))
    fx = benchmarks.evaluate_batch(fn, X)
    alpha = config.ff_alpha
    span = up - low
    hit = tracker.update(fx, X, 0)
    for it in range(1, config.max_iterations + 1):
        if hit and config.stop_on_success:
            break
        f_old = fx.copy()
        for i in range(n):
            xi = X[i].copy()
            for j in range(n):
                if f_old[j] < f_old[i]:
                    diff = X[j] - xi
                    beta = config.ff_beta0 * math.exp(-config.ff_gamma * float(diff @ diff))
                    eps = rng.generator.random(dim) - 0.5
                    xi = xi + beta * diff + alpha * eps * span
            X[i] = np.clip(xi, low, up)
        fx = benchmarks.evaluate_batch(fn, X)
        alpha *= config.ff_alpha_decay
        hit = tracker.update(fx, X, it) or hit


_RUNNERS = {"bsa": _run_bsa, "de": _run_de, "pso": _run_pso, "abc": _run_abc, "ff": _run_ff}


def run_optimizer(algo, fn, config, seed, dim=None, bounds=None):
    """One full optimization run of ``algo`` on benchmark ``fn``.

    ``dim`` defaults to 2; ``bounds`` defaults to the catalog search space.
    Success means the tracked best comes within the configured tolerance of
    the function's minimum on the active bounds.
    """
    algo = str(algo).lower()
    if algo not in _RUNNERS:
        raise ValueError(f"unknown algorithm: {algo!r} (expected one of {ALGORITHMS})")
    fn = benchmarks.get_function(fn)
    dim = int(dim) if dim is not None else 2
    low, up = bounds if bounds is not None else (fn.low, fn.up)
    if low >= up:
        raise ValueError("bounds must satisfy low < up")
    fn._check_dim(dim)
    reference = benchmarks.reference_minimum(fn, dim, low, up)
    rng = RngStream(seed)
    tracker = _BestTracker(reference, config.success_tolerance)
    start = time.perf_counter()
    _RUNNERS[algo](fn, dim, float(low), float(up), config, rng, tracker)
    wall = time.perf_counter() - start
    return RunResult(algo, fn.id, dim, int(seed), tracker.best_value,
                     tracker.best_point, tracker.iterations_to_success,
                     tracker.succeeded, wall, reference)


def run_repetitions(algo, fn, config, base_seed, dim=None, bounds=None):
    """The configured number of independent repetitions (seed = base + i)."""
    return [run_optimizer(algo, fn, config, stream_for_run(base_seed, i).seed,
                          dim=dim, bounds=bounds)
            for i in range(config.runs)]
