"""Shared value types: gait parameters, exoskeleton controls, pathology, muscles.

All types here are immutable; they can be shared freely across threads and
parallel rollouts. Parameter bounds are inclusive on both ends; gain 0 is the
legal exoskeleton-off condition.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

# Box bounds for the sampled simulation parameters.
STEP_LENGTH_RANGE = (0.134, 0.938)     # m
STEP_FREQUENCY_RANGE = (1.27, 2.55)    # steps/s
GAIN_RANGE = (0.0, 21.0)               # Nm
DELAY_RANGE = (0.0, 0.5)               # s
SEVERITY_RANGE = (0.0, 1.0)

PATHOLOGY_KINDS = ("none", "calcaneus", "footdrop", "waddling", "equinus", "crouch")


class OutOfRange(ValueError):
    """A field violated its box bound or structural invariant."""

    def __init__(self, field_name, value, bound):
        self.field = field_name
        self.value = value
        self.bound = bound
        super().__init__(f"{field_name}={value!r} outside {bound!r}")


@dataclass(frozen=True)
class GaitParams:
    """Commanded step length (m) and step frequency (steps/s)."""

    step_length: float
    step_frequency: float

    @property
    def walking_speed(self) -> float:
        return self.step_length * self.step_frequency


@dataclass(frozen=True)
class ExoControlParams:
    """Exoskeleton controller gain (Nm) and feedback delay (s)."""

    gain_kappa: float
    delay_dt: float


@dataclass(frozen=True)
class PathologyProfile:
    """Impairment kind and a severity scalar in [0, 1]."""

    kind: str = "none"
    severity: float = 0.0


@dataclass(frozen=True)
class MEEParams:
    """Metabolic energy model: rate = basal + sum_i mass_i^a * activation_i^b."""

    mass_exponent: float = 1.5
    activation_exponent: float = 1.0
    basal_rate: float = 80.0


@dataclass(frozen=True)
class Muscle:
    """One line muscle: mass is in model units, capacity in Nm."""

    name: str
    mass: float
    torque_capacity: float
    joint: str   # hip | knee | ankle
    side: str    # left | right


@dataclass(frozen=True)
class MuscleSet:
    """Line muscles plus a disjoint partition of their indices into groups."""

    muscles: tuple[Muscle, ...]
    group_index_sets: dict[str, tuple[int, ...]] = field(hash=False)

    def group_capacity(self, group: str) -> float:
        return sum(self.muscles[i].torque_capacity for i in self.group_index_sets[group])

    def group_joint(self, group: str) -> str:
        return self.muscles[self.group_index_sets[group][0]].joint

    def group_side(self, group: str) -> str:
        return self.muscles[self.group_index_sets[group][0]].side

    @property
    def group_names(self) -> tuple[str, ...]:
        return tuple(self.group_index_sets.keys())


def _check_range(name, value, lo, hi):
    if not (lo <= value <= hi):
        raise OutOfRange(name, value, (lo, hi))


def validate(params) -> None:
    """Raise OutOfRange naming the offending field; return None when valid."""
    if isinstance(params, GaitParams):
        _check_range("step_length", params.step_length, *STEP_LENGTH_RANGE)
        _check_range("step_frequency", params.step_frequency, *STEP_FREQUENCY_RANGE)
    elif isinstance(params, ExoControlParams):
        _check_range("gain_kappa", params.gain_kappa, *GAIN_RANGE)
        _check_range("delay_dt", params.delay_dt, *DELAY_RANGE)
    elif isinstance(params, PathologyProfile):
        if params.kind not in PATHOLOGY_KINDS:
            raise OutOfRange("kind", params.kind, PATHOLOGY_KINDS)
        _check_range("severity", params.severity, *SEVERITY_RANGE)
        if params.kind == "none" and params.severity != 0.0:
            raise OutOfRange("severity", params.severity, (0.0, 0.0))
    elif isinstance(params, MEEParams):
        if params.mass_exponent <= 0:
            raise OutOfRange("mass_exponent", params.mass_exponent, "(0, inf)")
        if params.activation_exponent <= 0:
            raise OutOfRange("activation_exponent", params.activation_exponent, "(0, inf)")
        if params.basal_rate < 0:
            raise OutOfRange("basal_rate", params.basal_rate, "[0, inf)")
    elif isinstance(params, MuscleSet):
        for m in params.muscles:
            if m.mass <= 0:
                raise OutOfRange("mass", m.mass, "(0, inf)")
            if m.torque_capacity <= 0:
                raise OutOfRange("torque_capacity", m.torque_capacity, "(0, inf)")
        seen = []
        for idx in params.group_index_sets.values():
            seen.extend(idx)
        if sorted(seen) != list(range(len(params.muscles))):
            raise OutOfRange("group_index_sets", sorted(seen), "disjoint cover of muscle indices")
    else:
        raise TypeError(f"cannot validate {type(params).__name__}")


def is_valid(params) -> bool:
    try:
        validate(params)
    except OutOfRange:
        return False
    return True


def _clip(value, lo, hi):
    return min(max(value, lo), hi)


def clamp(params):
    """Return a copy with every field clipped into its legal range."""
    if isinstance(params, GaitParams):
        return GaitParams(
            _clip(params.step_length, *STEP_LENGTH_RANGE),
            _clip(params.step_frequency, *STEP_FREQUENCY_RANGE),
        )
    if isinstance(params, ExoControlParams):
        return ExoControlParams(
            _clip(params.gain_kappa, *GAIN_RANGE),
            _clip(params.delay_dt, *DELAY_RANGE),
        )
    if isinstance(params, PathologyProfile):
        kind = params.kind if params.kind in PATHOLOGY_KINDS else "none"
        severity = 0.0 if kind == "none" else _clip(params.severity, *SEVERITY_RANGE)
        return PathologyProfile(kind, severity)
    raise TypeError(f"cannot clamp {type(params).__name__}")


def speed_of(gait: GaitParams) -> float:
    """Walking speed in m/s implied by the commanded gait."""
    return gait.step_length * gait.step_frequency


def default_muscle_set() -> MuscleSet:
    """Both-sides lower-limb muscle set used by the synthetic gait model.

    Masses are model units sized so that activation-driven metabolic rate is
    comparable to the basal rate near typical walking speeds; capacities are
    group-level torque limits split across line muscles.
    """
    muscles = []
    groups: dict[str, tuple[int, ...]] = {}

    def add_group(name, joint, side, specs):
        start = len(muscles)
        for i, (mass, cap) in enumerate(specs):
            muscles.append(Muscle(f"{name}_{i}", mass, cap, joint, side))
        groups[name] = tuple(range(start, len(muscles)))

    for side in ("right", "left"):
        s = side[0]
        add_group(f"hip_flexors_{s}", "hip", side, [(8.0, 5.0), (7.0, 4.0), (6.0, 3.0)])
        add_group(f"hip_abductors_{s}", "hip", side, [(5.0, 6.0), (4.0, 4.0)])
        add_group(f"knee_extensors_{s}", "knee", side, [(6.0, 11.0), (5.0, 9.0)])
        add_group(f"ankle_plantarflexors_{s}", "ankle", side, [(4.0, 9.0), (3.0, 7.0)])

    return MuscleSet(tuple(muscles), groups)


def gait_at_speed(step_length: float, speed: float) -> GaitParams:
    """Gait with the given step length whose frequency realizes `speed`."""
    return GaitParams(step_length, speed / step_length)


__all__ = [
    "STEP_LENGTH_RANGE", "STEP_FREQUENCY_RANGE", "GAIN_RANGE", "DELAY_RANGE",
    "SEVERITY_RANGE", "PATHOLOGY_KINDS", "OutOfRange",
    "GaitParams", "ExoControlParams", "PathologyProfile", "MEEParams",
    "Muscle", "MuscleSet", "validate", "is_valid", "clamp", "speed_of",
    "default_muscle_set", "gait_at_speed", "replace",
]
