"""Seedable randomness services shared by every algorithm in the package.

All stochastic behavior flows through an RngStream so that a (seed, call
sequence) pair fully determines every result. The underlying generator is
numpy's PCG64, pinned by name so reference sequences stay reproducible.
"""

from dataclasses import dataclass

import numpy as np

GENERATOR_NAME = "PCG64"


class RngStream:
    """A single-owner random stream backed by a PCG64 generator.

    Streams are not shareable between concurrent tasks; parallel repetitions
    each get an independent stream via ``stream_for_run``.
    """

    def __init__(self, seed):
        seed = int(seed)
        if not 0 <= seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.seed = seed
        self.generator = np.random.Generator(np.random.PCG64(seed))

    def __repr__(self):
        return f"RngStream(seed={self.seed})"


def stream_for_run(base_seed, run_index):
    """Independent stream for repetition ``run_index`` (seed = base + index)."""
    return RngStream((int(base_seed) + int(run_index)) % 2**64)


@dataclass(frozen=True)
class LevyParams:
    """Stability exponent and step multiplier for Levy-flight steps."""

    alpha: float = 1.001
    scale: float = 0.01

    def __post_init__(self):
        if not 1.0 < self.alpha <= 2.0:
            raise ValueError("alpha must lie in (1, 2]")
        if self.scale < 0:
            raise ValueError("scale must be non-negative")


def uniform(rng, low, up):
    """One draw from U[low, up). Degenerate interval returns low exactly."""
    if low > up:
        raise ValueError(f"invalid bounds: low={low} > up={up}")
    return low + (up - low) * rng.generator.random()


def uniform_matrix(rng, low, up, shape):
    """Array of U[low, up) draws; low/up may be per-column vectors."""
    low = np.asarray(low, dtype=float)
    up = np.asarray(up, dtype=float)
    if np.any(low > up):
        raise ValueError("invalid bounds: low > up")
    return low + (up - low) * rng.generator.random(shape)


def standard_normal(rng):
    """One N(0, 1) variate."""
    return float(rng.generator.standard_normal())


def levy_step(rng, params):
    """One heavy-tailed symmetric step via Mantegna's algorithm.

    alpha = 2 is the Gaussian limit of the stable family; Mantegna's sigma_u
    degenerates to 0 there, so that case returns a plain normal draw.
    """
    if not isinstance(params, LevyParams):
        params = LevyParams(*params)
    if params.scale == 0:
        return 0.0
    if params.alpha == 2.0:
        return params.scale * standard_normal(rng)
    alpha = params.alpha
    from math import gamma, pi, sin

    num = gamma(1 + alpha) * sin(pi * alpha / 2)
    den = gamma((1 + alpha) / 2) * alpha * 2 ** ((alpha - 1) / 2)
    sigma_u = (num / den) ** (1 / alpha)
    u = sigma_u * rng.generator.standard_normal()
    v = rng.generator.standard_normal()
    while v == 0.0:  # probability-zero guard
        v = rng.generator.standard_normal()
    return params.scale * u / abs(v) ** (1 / alpha)


def permute(rng, n):
    """Uniformly random permutation of 0..n-1 (empty for n = 0)."""
    n = int(n)
    if n < 0:
        raise ValueError("n must be non-negative")
    return rng.generator.permutation(n)
