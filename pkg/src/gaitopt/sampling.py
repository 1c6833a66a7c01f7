"""Latin hypercube and uniform grid sampling over box-bounded spaces."""

from __future__ import annotations

import itertools

import numpy as np


def lhs_sample(bounds, n: int, seed: int) -> np.ndarray:
    """Latin hypercube sample of n points inside per-dimension [lo, hi] bounds.

    Each dimension is split into n equal-width bins and every bin receives
    exactly one point, jittered uniformly inside its bin; bin order is an
    independent permutation per dimension. Zero-width dimensions collapse to
    their constant value. Deterministic for a given seed.
    """
    bounds = np.asarray(bounds, dtype=float)
    if n < 1:
        raise ValueError("need at least one sample")
    if bounds.ndim != 2 or bounds.shape[1] != 2 or np.any(bounds[:, 1] < bounds[:, 0]):
        raise ValueError("bounds must be rows of [lo, hi] with hi >= lo")
    rng = np.random.default_rng(seed)
    d = bounds.shape[0]
    out = np.empty((n, d))
    for j in range(d):
        cells = rng.permutation(n)
        jitter = rng.random(n)
        unit = (cells + jitter) / n
        out[:, j] = bounds[j, 0] + unit * (bounds[j, 1] - bounds[j, 0])
    return out


def uniform_grid(bounds, counts) -> np.ndarray:
    """Cartesian product of per-dimension linspaces, endpoints inclusive."""
    bounds = np.asarray(bounds, dtype=float)
    counts = list(counts)
    if len(counts) != bounds.shape[0]:
        raise ValueError("one count per dimension required")
    if any(c < 1 for c in counts):
        raise ValueError("counts must be >= 1")
    axes = [
        np.linspace(lo, hi, c) if c > 1 else np.array([(lo + hi) / 2.0])
        for (lo, hi), c in zip(bounds, counts)
    ]
    return np.array(list(itertools.product(*axes)))


__all__ = ["lhs_sample", "uniform_grid"]
