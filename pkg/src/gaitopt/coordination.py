"""Muscle coordination losses and a box-constrained activation solver.

The torque-matching loss is ||tau_target - M a||^2 + w_reg ||a||^2 plus a
grouped coherence penalty that punishes activations straying more than 0.1
from their group mean. Instead of learning a network, each instance is solved
directly by projected gradient descent on [0, 1]^n; the losses are identical,
which keeps the coherence claim testable without any training infrastructure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

IMR_DEAD_ZONE = 0.1


class BadPartition(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class McnWeights:
    w_reg: float = 0.01
    w_imr: float = 0.1


def _check_partition(groups, n: int) -> list[np.ndarray]:
    idx_lists = [np.asarray(g, dtype=int) for g in groups]
    flat = np.concatenate(idx_lists) if idx_lists else np.array([], dtype=int)
    if sorted(flat.tolist()) != list(range(n)):
        raise BadPartition("group index sets must partition 0..n-1")
    return idx_lists


def imr_loss(a, groups) -> float:
    """Sum of squared deviations from group means beyond the dead zone."""
    a = np.asarray(a, dtype=float)
    total = 0.0
    for idx in _check_partition(groups, a.size):
        dev = a[idx] - a[idx].mean()
        mask = np.abs(dev) > IMR_DEAD_ZONE
        total += float((dev[mask] ** 2).sum())
    return total


def imr_grad(a, groups) -> np.ndarray:
    """Subgradient of imr_loss: zero inside the dead zone, quadratic outside."""
    a = np.asarray(a, dtype=float)
    g = np.zeros_like(a)
    for idx in _check_partition(groups, a.size):
        dev = a[idx] - a[idx].mean()
        active = np.where(np.abs(dev) > IMR_DEAD_ZONE, dev, 0.0)
        k = idx.size
        # d/da_k of sum_j active_j * dev_j with dev_j = a_j - mean
        g[idx] += 2.0 * (active - active.sum() / k)
    return g


def mcn_loss(a, tau_target, moment_matrix, w: McnWeights, groups) -> float:
    a = np.asarray(a, dtype=float)
    tau = np.asarray(tau_target, dtype=float)
    m = np.asarray(moment_matrix, dtype=float)
    if m.shape != (tau.size, a.size):
        raise DimensionMismatch(f"moment matrix {m.shape} vs joints {tau.size}, muscles {a.size}")
    residual = tau - m @ a
    return float(residual @ residual + w.w_reg * (a @ a) + w.w_imr * imr_loss(a, groups))


def mcn_grad(a, tau_target, moment_matrix, w: McnWeights, groups) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    tau = np.asarray(tau_target, dtype=float)
    m = np.asarray(moment_matrix, dtype=float)
    residual = tau - m @ a
    return -2.0 * (m.T @ residual) + 2.0 * w.w_reg * a + w.w_imr * imr_grad(a, groups)


def solve_activations(tau_target, moment_matrix, w: McnWeights, groups,
                      max_iters: int = 2000, seed: int = 0,
                      n_starts: int = 8, step_init: float = 1e-2):
    """Projected gradient descent on the coordination loss over [0, 1]^n.

    Multi-start (uniform 0.1, zero, and seeded random points); each start
    runs monotone descent with step halving on non-descent. Returns
    (activations, info) where info carries the final loss and a converged
    flag (False when any start hit max_iters with a non-negligible step).
    """
    m = np.asarray(moment_matrix, dtype=float)
    n = m.shape[1]
    _check_partition(groups, n)
    rng = np.random.default_rng(seed)

    starts = [np.full(n, 0.1), np.zeros(n)]
    starts += [rng.random(n) for _ in range(max(0, n_starts - len(starts)))]

    def run(a0):
        a = np.clip(a0, 0.0, 1.0)
        loss = mcn_loss(a, tau_target, m, w, groups)
        step = step_init
        converged = False
        for _ in range(max_iters):
            g = mcn_grad(a, tau_target, m, w, groups)
            cand = np.clip(a - step * g, 0.0, 1.0)
            cand_loss = mcn_loss(cand, tau_target, m, w, groups)
            while cand_loss > loss and step > 1e-12:
                step *= 0.5
                cand = np.clip(a - step * g, 0.0, 1.0)
                cand_loss = mcn_loss(cand, tau_target, m, w, groups)
            moved = np.linalg.norm(cand - a)
            a, loss = cand, cand_loss
            if moved <= 1e-8 * max(1.0, np.linalg.norm(a)):
                converged = True
                break
        return a, loss, converged

    best = None
    all_converged = True
    for a0 in starts:
        a, loss, conv = run(a0)
        all_converged &= conv
        if best is None or loss < best[1]:
            best = (a, loss)

    a, loss = best
    return a, {"loss": loss, "converged": all_converged}


__all__ = [
    "IMR_DEAD_ZONE", "BadPartition", "DimensionMismatch", "McnWeights",
    "imr_loss", "imr_grad", "mcn_loss", "mcn_grad", "solve_activations",
]
