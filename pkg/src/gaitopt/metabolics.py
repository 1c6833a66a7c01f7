"""Metabolic energy expenditure, cost of transport, and assistance benefit."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domain import ExoControlParams, MEEParams, MuscleSet


class DimensionMismatch(ValueError):
    pass


class ZeroDistance(ValueError):
    pass


class NonPositiveBaseline(ValueError):
    pass


class EmptyCurve(ValueError):
    pass


@dataclass
class EnergyAccumulator:
    """Running integral of metabolic rate (rectangle rule)."""

    accumulated_joules: float = 0.0
    elapsed: float = 0.0

    def add(self, rate_watts: float, dt: float) -> None:
        if dt < 0 or rate_watts < 0:
            raise ValueError("rate and dt must be non-negative")
        self.accumulated_joules += rate_watts * dt
        self.elapsed += dt


def mee_rate(activations, muscles: MuscleSet, params: MEEParams) -> float:
    """Instantaneous metabolic rate: basal + sum_i mass_i^a * activation_i^b."""
    a = np.asarray(activations, dtype=float)
    if a.shape[-1] != len(muscles.muscles):
        raise DimensionMismatch(
            f"got {a.shape[-1]} activations for {len(muscles.muscles)} muscles"
        )
    masses = np.array([m.mass for m in muscles.muscles])
    term = (masses ** params.mass_exponent * a ** params.activation_exponent).sum(axis=-1)
    if a.ndim == 1:
        return params.basal_rate + float(term)
    return params.basal_rate + term


def mee_rate_weights(muscles: MuscleSet, params: MEEParams) -> np.ndarray:
    """Per-muscle mass^a factors, for vectorized rate evaluation."""
    masses = np.array([m.mass for m in muscles.muscles])
    return masses ** params.mass_exponent


def cot(total_mee: float, distance: float) -> float:
    """Cost of transport: energy per unit distance traveled."""
    if distance <= 0:
        raise ZeroDistance(f"distance={distance}")
    return total_mee / distance


def metabolic_reduction_rate(cot_off: float, cot_on: float) -> float:
    """Fractional CoT drop of the assisted condition vs gain-zero baseline."""
    if cot_off <= 0:
        raise NonPositiveBaseline(f"cot_off={cot_off}")
    return (cot_off - cot_on) / cot_off


def benefit(cot_curve: dict[ExoControlParams, float], cot_off: float) -> float:
    """Baseline CoT minus the best assisted CoT over all gain>0 entries."""
    assisted = [v for c, v in cot_curve.items() if c.gain_kappa > 0]
    if not assisted:
        raise EmptyCurve("curve has no gain>0 entry")
    return cot_off - min(assisted)


__all__ = [
    "DimensionMismatch", "ZeroDistance", "NonPositiveBaseline", "EmptyCurve",
    "EnergyAccumulator", "mee_rate", "mee_rate_weights", "cot",
    "metabolic_reduction_rate", "benefit",
]
