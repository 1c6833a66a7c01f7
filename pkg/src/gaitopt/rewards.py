"""Reward terms used by the gait data generator's training objective.

Policy training itself is out of scope here; these functions make the reward
arithmetic directly evaluable and testable. Gated terms (head stability and
body sway) are exponentials of the excess over their threshold, so each
factor is exactly 1 at its gate and decays continuously beyond it; head
factors floor at k_alive.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field


@dataclass(frozen=True)
class RewardWeights:
    """Weights, scales, thresholds, and floors for all reward terms."""

    w_gait: float = 1.0
    w_energy: float = 0.35
    w_arm: float = 1.0
    w_hei: float = 0.1
    sigma_step: float = 1.581
    sigma_vel: float = 3.162
    sigma_head: float = 4.0
    sigma_sway: float = 0.816
    sigma_arm: float = 1.0
    k_alive: float = 0.1
    k_energy: float = 0.2
    lambda_r: float = 0.018
    lambda_v: float = 0.0105
    lambda_omega: float = 0.045
    delta_body: dict = field(default_factory=lambda: {
        "pelvis": math.radians(10.0),
        "spine": math.radians(3.0),
        "foot": math.radians(12.0),
    })


@dataclass(frozen=True)
class RewardBreakdown:
    r_step: float
    r_vel: float
    r_head: float
    r_sway: float
    r_gait: float
    r_arm: float
    r_energy: float
    r_hei: float
    r_total: float


def _gated_floor(value: float, threshold: float, sigma: float, k_alive: float) -> float:
    """1 inside the gate; floored exponential of the excess outside."""
    if value <= threshold:
        return 1.0
    excess = (value - threshold) / sigma
    return k_alive + (1.0 - k_alive) * math.exp(-excess * excess)


def _gated(value: float, threshold: float, sigma: float) -> float:
    if value <= threshold:
        return 1.0
    excess = (value - threshold) / sigma
    return math.exp(-excess * excess)


def gait_reward(foot_err: float, vel_err: float, head: dict, sway: dict,
                w: RewardWeights) -> dict:
    """Step/velocity tracking, head stability, and body sway factors.

    head: {"theta_head": rad, "a_lin": ..., "a_ang": ...}
    sway: {body: (angle, reference_angle)} for bodies named in w.delta_body
    """
    r_step = math.exp(-((foot_err / w.sigma_step) ** 2))
    r_vel = math.exp(-((vel_err / w.sigma_vel) ** 2))

    f_r = _gated_floor(abs(head["theta_head"]), w.lambda_r, w.sigma_head, w.k_alive)
    f_v = _gated_floor(abs(head["a_lin"]), w.lambda_v, w.sigma_head, w.k_alive)
    f_w = _gated_floor(abs(head["a_ang"]), w.lambda_omega, w.sigma_head, w.k_alive)
    r_head = f_r * f_v * f_w

    r_sway = 1.0
    for body, (angle, ref) in sway.items():
        r_sway *= _gated(abs(angle - ref), w.delta_body[body], w.sigma_sway)

    return {
        "r_step": r_step,
        "r_vel": r_vel,
        "r_head": r_head,
        "r_sway": r_sway,
        "r_gait": r_step * r_vel * r_head * r_sway,
    }


def arm_reward(joint_errors, sigma_arm: float) -> float:
    """Imitation factor for upper-arm joints: exp(-sum (err/sigma)^2)."""
    if sigma_arm <= 0:
        raise ValueError("sigma_arm must be positive")
    s = sum((e / sigma_arm) ** 2 for e in joint_errors)
    return math.exp(-s)


def energy_reward(mee_rate_value: float, k_energy: float) -> float:
    """1 - k_energy * metabolic rate; unbounded below by design."""
    return 1.0 - k_energy * mee_rate_value


def hei_reward(power_left: float, power_right: float, gain_kappa: float,
               variant: str = "resistance_min") -> float:
    """Human-exoskeleton interaction reward.

    resistance_min penalizes resistive (negative) exoskeleton power:
    1 + (1/gain) * sum of negative side powers, neutral (1) when gain is 0.
    assist_max credits positive power scaled by the same gain; none is 0.
    """
    if variant == "none":
        return 0.0
    if variant == "resistance_min":
        if gain_kappa == 0:
            return 1.0
        return 1.0 + (min(0.0, power_left) + min(0.0, power_right)) / gain_kappa
    if variant == "assist_max":
        if gain_kappa == 0:
            return 0.0
        return (max(0.0, power_left) + max(0.0, power_right)) / gain_kappa
    raise ValueError(f"unknown variant {variant!r}")


def total_reward(r_gait: float, r_arm: float, r_energy: float, r_hei: float,
                 w: RewardWeights) -> float:
    return (w.w_gait * r_gait + w.w_arm * r_arm
            + w.w_energy * r_energy + w.w_hei * r_hei)


def breakdown(foot_err, vel_err, head, sway, arm_errors, mee_rate_value,
              power_left, power_right, gain_kappa, w: RewardWeights,
              hei_variant: str = "resistance_min") -> RewardBreakdown:
    """Evaluate every term and the weighted total in one pass."""
    g = gait_reward(foot_err, vel_err, head, sway, w)
    r_arm = arm_reward(arm_errors, w.sigma_arm)
    r_energy = energy_reward(mee_rate_value, w.k_energy)
    r_hei = hei_reward(power_left, power_right, gain_kappa, hei_variant)
    total = total_reward(g["r_gait"], r_arm, r_energy, r_hei, w)
    return RewardBreakdown(
        r_step=g["r_step"], r_vel=g["r_vel"], r_head=g["r_head"],
        r_sway=g["r_sway"], r_gait=g["r_gait"], r_arm=r_arm,
        r_energy=r_energy, r_hei=r_hei, r_total=total,
    )


__all__ = [
    "RewardWeights", "RewardBreakdown", "gait_reward", "arm_reward",
    "energy_reward", "hei_reward", "total_reward", "breakdown",
]
