"""Delayed-feedback hip assistance controller.

The assist torque at time t is gain * u(t - delay), where u is the difference
of the sines of the low-pass filtered right and left hip angles. The sine
bounds each term to [-1, 1], so |u| <= 2 and the torque is bounded by
2 * gain. Right and left assist torques are equal and opposite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domain import ExoControlParams

CONTROL_DT = 0.01           # 100 Hz control and simulation rate
DEFAULT_CUTOFF_HZ = 6.0     # hip-angle low-pass cutoff


class NonPositiveDt(ValueError):
    pass


class EmptySequence(ValueError):
    pass


def lowpass_coeff(dt: float, cutoff_hz: float) -> float:
    """First-order IIR blend coefficient for a given timestep and cutoff."""
    if dt <= 0:
        raise NonPositiveDt(f"dt={dt}")
    rc = 1.0 / (2.0 * math.pi * cutoff_hz)
    return dt / (dt + rc)


@dataclass
class FilterState:
    """Single-channel first-order low-pass filter state."""

    filtered_angle: float = 0.0
    cutoff_frequency: float = DEFAULT_CUTOFF_HZ

    def step(self, raw: float, dt: float) -> float:
        c = lowpass_coeff(dt, self.cutoff_frequency)
        self.filtered_angle = self.filtered_angle + c * (raw - self.filtered_angle)
        return self.filtered_angle


def lowpass_step(state: FilterState, raw: float, dt: float) -> float:
    return state.step(raw, dt)


def lowpass_series(raw: np.ndarray, dt: float, cutoff_hz: float,
                   initial: float | None = None) -> np.ndarray:
    """Vectorized first-order low-pass; initial state defaults to raw[0]."""
    from scipy.signal import lfilter

    c = lowpass_coeff(dt, cutoff_hz)
    y0 = raw[0] if initial is None else initial
    # y[n] = c*x[n] + (1-c)*y[n-1], seeded so y[-1] = y0
    y, _ = lfilter([c], [1.0, -(1.0 - c)], raw, zi=[(1.0 - c) * y0])
    return y


class DelayBuffer:
    """Ring buffer of (timestamp, u) samples supporting delayed linear lookup.

    Timestamps must be pushed in strictly increasing order. Lookups earlier
    than the oldest retained sample report cold (not warm); the caller is
    expected to emit zero torque until the buffer warms up.
    """

    def __init__(self, span: float = 1.0, control_dt: float = CONTROL_DT):
        self.capacity = max(2, int(math.ceil(span / control_dt)) + 2)
        self._t = np.empty(self.capacity)
        self._u = np.empty(self.capacity)
        self._n = 0
        self._head = 0  # next write position

    def push(self, t: float, u: float) -> None:
        if self._n and t <= self.latest_time:
            raise ValueError("timestamps must be strictly increasing")
        self._t[self._head] = t
        self._u[self._head] = u
        self._head = (self._head + 1) % self.capacity
        self._n = min(self._n + 1, self.capacity)

    @property
    def latest_time(self) -> float:
        return self._t[(self._head - 1) % self.capacity]

    @property
    def oldest_time(self) -> float:
        if self._n < self.capacity:
            return self._t[0]
        return self._t[self._head % self.capacity]

    def _ordered(self):
        if self._n < self.capacity:
            return self._t[: self._n], self._u[: self._n]
        idx = (np.arange(self.capacity) + self._head) % self.capacity
        return self._t[idx], self._u[idx]

    def sample(self, t_query: float) -> tuple[float, bool]:
        """Value at t_query by linear interpolation, plus a warm flag."""
        if self._n == 0 or t_query < self.oldest_time or t_query > self.latest_time:
            return 0.0, False
        t, u = self._ordered()
        return float(np.interp(t_query, t, u)), True


def control_signal(theta_right: float, theta_left: float) -> float:
    """Inter-leg signal: difference of sines of the filtered hip angles."""
    return math.sin(theta_right) - math.sin(theta_left)


def control_torque(c: ExoControlParams, buf: DelayBuffer, t: float) -> tuple[float, float]:
    """Per-side assist torque at time t; zero while the buffer is cold."""
    u, warm = buf.sample(t - c.delay_dt)
    if not warm:
        return 0.0, 0.0
    tau = c.gain_kappa * u
    return tau, -tau


def compensate_torque(tau_demand: float, tau_exo: float) -> float:
    """Net torque the muscles must supply once assistance is subtracted."""
    return tau_demand - tau_exo


@dataclass(frozen=True)
class ExoTorqueRecord:
    """One control tick: per-side torque, hip angular velocity, and power."""

    torque_right: float
    torque_left: float
    omega_right: float
    omega_left: float

    @property
    def power_right(self) -> float:
        return self.torque_right * self.omega_right

    @property
    def power_left(self) -> float:
        return self.torque_left * self.omega_left


def power_stats(records) -> dict[str, float]:
    """RMS assist moment and signed mean powers over a record sequence.

    Accepts a sequence of ExoTorqueRecord, or a dict of arrays with keys
    torque_right/torque_left/power_right/power_left (the rollout layout).
    """
    if isinstance(records, dict):
        tau = np.concatenate([records["torque_right"], records["torque_left"]])
        power = np.concatenate([records["power_right"], records["power_left"]])
    else:
        records = list(records)
        if not records:
            raise EmptySequence("no torque records")
        tau = np.array([[r.torque_right, r.torque_left] for r in records]).ravel()
        power = np.array([[r.power_right, r.power_left] for r in records]).ravel()
    if tau.size == 0:
        raise EmptySequence("no torque records")
    return {
        "rms_moment": float(np.sqrt(np.mean(tau ** 2))),
        "mean_assist_power": float(np.mean(np.maximum(power, 0.0))),
        "mean_resist_power": float(np.mean(np.minimum(power, 0.0))),
    }


__all__ = [
    "CONTROL_DT", "DEFAULT_CUTOFF_HZ", "NonPositiveDt", "EmptySequence",
    "FilterState", "lowpass_coeff", "lowpass_step", "lowpass_series",
    "DelayBuffer", "control_signal", "control_torque", "compensate_torque",
    "ExoTorqueRecord", "power_stats",
]
