"""Similarity metrics between simulated and reference time series.

NRMSE and Pearson correlation are pointwise metrics over equal-length series
(resample first if needed). NDTW is a dynamic-time-warping distance with
absolute-difference local cost and unit steps (1,0), (0,1), (1,1), full
boundary conditions, normalized by the reference amplitude range times the
optimal warping path length (cell count; cost ties broken toward the shorter
path).
"""

from __future__ import annotations

import numpy as np


class LengthMismatch(ValueError):
    pass


class ZeroRange(ValueError):
    pass


class ZeroVariance(ValueError):
    pass


def _as_series(x) -> np.ndarray:
    arr = np.asarray(x, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("empty series")
    if not np.all(np.isfinite(arr)):
        raise ValueError("series contains non-finite values")
    return arr


def nrmse(sim, exp) -> float:
    """RMSE normalized by the range of the reference series."""
    sim, exp = _as_series(sim), _as_series(exp)
    if sim.shape != exp.shape:
        raise LengthMismatch(f"{sim.size} vs {exp.size}")
    rng = exp.max() - exp.min()
    if rng <= 0:
        raise ZeroRange("reference series has zero range")
    return float(np.sqrt(np.mean((sim - exp) ** 2)) / rng)


def pearson_r(sim, exp) -> float:
    """Sample Pearson correlation coefficient."""
    sim, exp = _as_series(sim), _as_series(exp)
    if sim.shape != exp.shape:
        raise LengthMismatch(f"{sim.size} vs {exp.size}")
    if sim.size < 2:
        raise LengthMismatch("need at least 2 samples")
    ds, de = sim - sim.mean(), exp - exp.mean()
    denom = np.sqrt((ds ** 2).sum() * (de ** 2).sum())
    if denom == 0:
        raise ZeroVariance("a series is constant")
    return float((ds * de).sum() / denom)


def dtw_distance(sim, exp) -> tuple[float, int]:
    """Unnormalized DTW distance and the optimal path's cell count.

    Among equal-cost alignments the shorter path is preferred, so the
    returned length is well defined.
    """
    x, y = _as_series(sim), _as_series(exp)
    m, n = x.size, y.size
    inf = float("inf")
    cost = np.full((m + 1, n + 1), inf)
    length = np.zeros((m + 1, n + 1), dtype=np.int64)
    cost[0, 0] = 0.0
    for i in range(1, m + 1):
        xi = x[i - 1]
        for j in range(1, n + 1):
            local = abs(xi - y[j - 1])
            best_c, best_l = cost[i - 1, j - 1], length[i - 1, j - 1]
            for ci, cj in ((i - 1, j), (i, j - 1)):
                c, l = cost[ci, cj], length[ci, cj]
                if c < best_c or (c == best_c and l < best_l):
                    best_c, best_l = c, l
            cost[i, j] = best_c + local
            length[i, j] = best_l + 1
    return float(cost[m, n]), int(length[m, n])


def ndtw(sim, exp) -> float:
    """DTW distance normalized by reference range and optimal path length."""
    exp_arr = _as_series(exp)
    rng = exp_arr.max() - exp_arr.min()
    if rng <= 0:
        raise ZeroRange("reference series has zero range")
    dist, path_len = dtw_distance(sim, exp_arr)
    return dist / (rng * path_len)


def resample_linear(series, n: int) -> np.ndarray:
    """Linearly interpolate a series onto n evenly spaced points."""
    arr = _as_series(series)
    if n < 1:
        raise ValueError("n must be >= 1")
    if arr.size == 1:
        return np.full(n, arr[0])
    src = np.linspace(0.0, 1.0, arr.size)
    dst = np.linspace(0.0, 1.0, n)
    return np.interp(dst, src, arr)


__all__ = [
    "LengthMismatch", "ZeroRange", "ZeroVariance",
    "nrmse", "pearson_r", "dtw_distance", "ndtw", "resample_linear",
]
