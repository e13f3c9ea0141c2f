"""Time-dependent individual competence and its effect on group competence.

A learning profile maps deliberation time t to an individual competence
p(t), starting from the coin-flip level 1/2 and never decreasing.  Three
closed-form families are supported so that profiles stay serializable and
invertible:

* linear   p(t) = min(1/2 + c*t, 1)        (saturates at t = 1/(2c))
* power    p(t) = min(1/2 + t^alpha, 1)
* plateau  p(t) = min(1/2 + a*t, cap)      (competence capped below 1)

Profiles serialize to a compact text form, e.g. ``linear:c=1.0``,
``power:alpha=0.55``, ``plateau:a=1.0,cap=0.6667``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence, Union

from .errors import DomainError, UnattainableTargetError
from .votemath import MajorityRule, majority_prob_homogeneous

__all__ = [
    "LinearProfile",
    "PowerProfile",
    "PlateauProfile",
    "LearningProfile",
    "AllocationRule",
    "TimeAllocation",
    "group_competence",
    "competence_curve",
    "parse_profile",
    "format_profile",
]


def _check_time(t: float) -> float:
    t = float(t)
    if t < 0.0:
        raise DomainError(f"time must be non-negative, got {t!r}")
    return t


@dataclass(frozen=True)
class LinearProfile:
    """p(t) = min(1/2 + rate*t, 1)."""

    rate: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise DomainError(f"learning rate must be positive, got {self.rate!r}")

    @property
    def sup_competence(self) -> float:
        return 1.0

    def evaluate(self, t: float) -> float:
        return min(0.5 + self.rate * _check_time(t), 1.0)

    def time_to_reach(self, target: float) -> float:
        """Smallest t with p(t) = target, for target in [1/2, 1]."""
        if not 0.5 <= target <= 1.0:
            raise DomainError(f"target competence must lie in [1/2, 1], got {target!r}")
        return (target - 0.5) / self.rate


@dataclass(frozen=True)
class PowerProfile:
    """p(t) = min(1/2 + t**exponent, 1); concave for exponent < 1, convex above."""

    exponent: float

    def __post_init__(self):
        if not self.exponent > 0.0:
            raise DomainError(f"exponent must be positive, got {self.exponent!r}")

    @property
    def sup_competence(self) -> float:
        return 1.0

    def evaluate(self, t: float) -> float:
        return min(0.5 + _check_time(t) ** self.exponent, 1.0)

    def time_to_reach(self, target: float) -> float:
        if not 0.5 <= target <= 1.0:
            raise DomainError(f"target competence must lie in [1/2, 1], got {target!r}")
        return (target - 0.5) ** (1.0 / self.exponent)


@dataclass(frozen=True)
class PlateauProfile:
    """p(t) = min(1/2 + rate*t, cap) with cap in [1/2, 1]."""

    rate: float
    cap: float

    def __post_init__(self):
        if not self.rate > 0.0:
            raise DomainError(f"learning rate must be positive, got {self.rate!r}")
        if not 0.5 <= self.cap <= 1.0:
            raise DomainError(f"cap must lie in [1/2, 1], got {self.cap!r}")

    @property
    def sup_competence(self) -> float:
        return self.cap

    def evaluate(self, t: float) -> float:
        return min(0.5 + self.rate * _check_time(t), self.cap)

    def time_to_reach(self, target: float) -> float:
        if not 0.5 <= target <= 1.0:
            raise DomainError(f"target competence must lie in [1/2, 1], got {target!r}")
        if target > self.cap:
            raise UnattainableTargetError(
                f"profile is capped at {self.cap}, cannot reach {target}"
            )
        return (target - 0.5) / self.rate


LearningProfile = Union[LinearProfile, PowerProfile, PlateauProfile]


class AllocationRule(Enum):
    """How a total time budget T is shared among the group."""

    EQUAL_SPLIT = "equal-split"  # each of n voters studies for T/n
    FULL_TIME = "full-time"      # a fixed deadline: every voter studies for T


@dataclass(frozen=True)
class TimeAllocation:
    total_time: float
    group_size: int
    rule: AllocationRule = AllocationRule.EQUAL_SPLIT

    def __post_init__(self):
        if self.total_time < 0.0:
            raise DomainError(f"total time must be non-negative, got {self.total_time!r}")
        if self.group_size < 1 or self.group_size != int(self.group_size):
            raise DomainError(f"group size must be a positive integer, got {self.group_size!r}")

    @property
    def per_voter_time(self) -> float:
        if self.rule is AllocationRule.EQUAL_SPLIT:
            return self.total_time / self.group_size
        return self.total_time


def group_competence(
    profile: LearningProfile,
    alloc: TimeAllocation,
    rule: MajorityRule = MajorityRule.FAIL,
) -> float:
    """Majority probability of a group whose members all follow ``profile``."""
    p = profile.evaluate(alloc.per_voter_time)
    return majority_prob_homogeneous(alloc.group_size, p, rule)


def competence_curve(
    profile: LearningProfile,
    n: int,
    alloc_rule: AllocationRule,
    t_grid: Sequence[float],
    rule: MajorityRule = MajorityRule.FAIL,
) -> list[tuple[float, float]]:
    """Group competence sampled along an ascending grid of total times."""
    grid = [float(t) for t in t_grid]
    if any(t < 0.0 for t in grid):
        raise DomainError("time grid must be non-negative")
    if any(b < a for a, b in zip(grid, grid[1:])):
        raise DomainError("time grid must be sorted ascending")
    return [
        (t, group_competence(profile, TimeAllocation(t, n, alloc_rule), rule))
        for t in grid
    ]


def format_profile(profile: LearningProfile) -> str:
    if isinstance(profile, LinearProfile):
        return f"linear:c={profile.rate!r}"
    if isinstance(profile, PowerProfile):
        return f"power:alpha={profile.exponent!r}"
    if isinstance(profile, PlateauProfile):
        return f"plateau:a={profile.rate!r},cap={profile.cap!r}"
    raise DomainError(f"unknown profile type {type(profile).__name__}")


def parse_profile(spec: str) -> LearningProfile:
    """Parse ``linear:c=...``, ``power:alpha=...`` or ``plateau:a=...,cap=...``."""
    kind, _, body = spec.strip().partition(":")
    fields: dict[str, float] = {}
    if body:
        for item in body.split(","):
            key, eq, value = item.partition("=")
            if not eq:
                raise DomainError(f"malformed profile field {item!r} in {spec!r}")
            try:
                fields[key.strip()] = float(value)
            except ValueError:
                raise DomainError(f"non-numeric profile value {value!r} in {spec!r}") from None
    expected = {"linear": ("c",), "power": ("alpha",), "plateau": ("a", "cap")}
    if kind not in expected:
        raise DomainError(f"unknown profile kind {kind!r} (expected linear/power/plateau)")
    if set(fields) != set(expected[kind]):
        raise DomainError(
            f"profile kind {kind!r} takes fields {expected[kind]}, got {tuple(sorted(fields))}"
        )
    if kind == "linear":
        return LinearProfile(rate=fields["c"])
    if kind == "power":
        return PowerProfile(exponent=fields["alpha"])
    return PlateauProfile(rate=fields["a"], cap=fields["cap"])
